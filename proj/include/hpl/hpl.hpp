#pragma once

#include "hpl/csv.hpp"
#include "hpl/endpoint_density.hpp"
#include "hpl/optimizer.hpp"
#include "hpl/parallel.hpp"
#include "hpl/pointer_density.hpp"
#include "hpl/pointers.hpp"
#include "hpl/quadrature.hpp"
#include "hpl/quality.hpp"
#include "hpl/qubit.hpp"
#include "hpl/rng.hpp"
#include "hpl/simulate.hpp"
#include "hpl/special_functions.hpp"
#include "hpl/stats.hpp"
#include "hpl/version.hpp"
