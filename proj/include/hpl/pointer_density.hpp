#pragma once

// Frobenius-Perron push-forward of the endpoint law through the optimal
// pointers: r(x) for the sigma_x pointer, s(x) for the sigma_z pointer, and
// grid generation for the paper's figure data.  Both densities carry an
// integrable 1/sqrt singularity where preimages merge, so grid axes are
// refined geometrically toward those edges; the bulk stays uniform.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hpl/endpoint_density.hpp"
#include "hpl/optimizer.hpp"
#include "hpl/pointers.hpp"
#include "hpl/qubit.hpp"

namespace hpl {

/// Support of r: [-c1/(2 sqrt(eps)), +c1/(2 sqrt(eps))].
inline double support_half_width_x(const RationalX& h) {
    return h.c1 / (2.0 * std::sqrt(h.eps));
}

/// Support of s: [d3 + d2/delta, d3].
inline std::pair<double, double> support_z(const RationalZ& h) {
    return {h.d3 + h.d2 / h.delta, h.d3};
}

/// r(x) = sum_pm q(y_pm) (y_pm^2+eps)^2 / (c1 |y_pm^2 - eps|); zero outside
/// the support, +infinity exactly on its edges.
inline double density_r(double x, const RationalX& h, const TimeHorizon& horizon,
                        const BlochVector& rho) {
    const double w = support_half_width_x(h);
    if (std::abs(x) > w) return 0.0;
    if (std::abs(x) == w) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (double y : preimages_x(x, h.c1, h.eps)) {
        const double y2 = y * y;
        const double slope = h.c1 * std::abs(y2 - h.eps) / ((y2 + h.eps) * (y2 + h.eps));
        sum += scalar_density_q(y, horizon, rho) / slope;
    }
    return sum;
}

/// s(x) = sum_pm q(y_pm) (y_pm^2+delta)^2 / (2 |d2 y_pm|); zero outside the
/// support, +infinity on the lower edge (merged preimage at y = 0), zero at
/// the upper edge x = d3 (preimages at infinity).
inline double density_s(double x, const RationalZ& h, const TimeHorizon& horizon,
                        const BlochVector& rho) {
    const auto [lo, hi] = support_z(h);
    if (x < lo || x > hi) return 0.0;
    if (x == lo) return std::numeric_limits<double>::infinity();
    if (x == hi) return 0.0;
    double sum = 0.0;
    for (double y : preimages_z(x, h.d2, h.d3, h.delta)) {
        const double y2 = y * y;
        const double slope = 2.0 * std::abs(h.d2 * y) / ((y2 + h.delta) * (y2 + h.delta));
        if (slope == 0.0) return std::numeric_limits<double>::infinity();
        sum += scalar_density_q(y, horizon, rho) / slope;
    }
    return sum;
}

/// Density samples on an ordered axis; the trapezoidal mass over a grid
/// covering the support stays within 1e-3 of 1.
struct DensityGrid {
    std::vector<double> axis;
    std::vector<double> values;
    double support_lo = 0.0;
    double support_hi = 0.0;

    double trapezoid_mass() const {
        double m = 0.0;
        for (std::size_t i = 1; i < axis.size(); ++i)
            m += 0.5 * (values[i] + values[i - 1]) * (axis[i] - axis[i - 1]);
        return m;
    }
};

enum class FigureKind { endpoint, pointer_x, pointer_z };

namespace detail {

// Axis over [lo, hi] with geometric refinement toward singular edges: a
// graded zone of `edge_n` nodes spanning the first tenth of the interval,
// starting `eta` away from the edge, keeps the plain trapezoid rule
// accurate against the 1/sqrt blow-up.
inline std::vector<double> singular_axis(double lo, double hi, int n, bool lo_singular,
                                         bool hi_singular) {
    const double width = hi - lo;
    const double eta = width * 1e-8;
    const double zone = width * 0.1;
    const int edge_n = std::max(64, n / 5);

    std::vector<double> nodes;
    nodes.reserve(n);
    auto graded_from_lo = [&](double edge, int count, double sign) {
        // sign +1: grow away from a left edge; -1: from a right edge.
        const double ratio = std::pow(zone / eta, 1.0 / (count - 1));
        double off = eta;
        for (int i = 0; i < count; ++i) {
            nodes.push_back(edge + sign * off);
            off *= ratio;
        }
    };

    int bulk = n;
    if (lo_singular) bulk -= edge_n;
    if (hi_singular) bulk -= edge_n;
    const double bulk_lo = lo_singular ? lo + zone : lo;
    const double bulk_hi = hi_singular ? hi - zone : hi;

    if (lo_singular) graded_from_lo(lo, edge_n, +1.0);
    for (int i = 0; i < bulk; ++i)
        nodes.push_back(bulk_lo + (bulk_hi - bulk_lo) * (i + 1.0) / (bulk + 1.0));
    if (hi_singular) graded_from_lo(hi, edge_n, -1.0);

    std::sort(nodes.begin(), nodes.end());
    return nodes;
}

}  // namespace detail

/// Figure data: the endpoint density on [-6, 6], or the optimal-pointer
/// densities on their supports.  The pointer parameters are re-derived from
/// the horizon by the minimax optimizer, so beta = 1 reproduces the paper's
/// constants.
inline DensityGrid figure_grid(FigureKind which, const BlochVector& rho,
                               const TimeHorizon& horizon, int n = 513) {
    if (n < 64) throw std::invalid_argument("figure_grid: n must be >= 64");
    DensityGrid grid;
    if (which == FigureKind::endpoint) {
        grid.support_lo = -6.0;
        grid.support_hi = 6.0;
        grid.axis.resize(n);
        grid.values.resize(n);
        for (int i = 0; i < n; ++i) {
            grid.axis[i] = -6.0 + 12.0 * i / (n - 1);
            grid.values[i] = scalar_density_q(grid.axis[i], horizon, rho);
        }
        return grid;
    }
    if (which == FigureKind::pointer_x) {
        const RationalX h{rational_x_pointer(optimize_pointer_x(horizon.beta).argmin, horizon.beta)};
        const double w = support_half_width_x(h);
        grid.support_lo = -w;
        grid.support_hi = w;
        grid.axis = detail::singular_axis(-w, w, n, true, true);
        for (double x : grid.axis) grid.values.push_back(density_r(x, h, horizon, rho));
        return grid;
    }
    const RationalZ h{rational_z_pointer(optimize_pointer_z(horizon.beta).argmin, horizon.beta)};
    const auto [lo, hi] = support_z(h);
    grid.support_lo = lo;
    grid.support_hi = hi;
    grid.axis = detail::singular_axis(lo, hi, n, true, false);
    for (double x : grid.axis) grid.values.push_back(density_s(x, h, horizon, rho));
    return grid;
}

}  // namespace hpl
