#pragma once

// Monte Carlo engine.  Two routes to the endpoint law: exact inverse-CDF
// sampling of q(y), and Euler-Maruyama integration of the diffusive
// filtering equation driving the observed photocurrent.  The second exists
// to validate the first; the analytic density remains the source of truth.
// Sample i always draws from counter stream i, so results do not depend on
// the worker count.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hpl/endpoint_density.hpp"
#include "hpl/parallel.hpp"
#include "hpl/pointers.hpp"
#include "hpl/qubit.hpp"
#include "hpl/rng.hpp"

namespace hpl {

enum class SimMethod { endpoint_exact, filter_paths };

struct SimConfig {
    TimeHorizon horizon;
    double dt = 1e-3;
    std::int64_t n_samples = 1;
    std::uint64_t seed = 0;
    SimMethod method = SimMethod::endpoint_exact;
};

struct EndpointSample {
    double y = 0.0;
    std::vector<double> record;  // observed increments, kept only on request
};

/// Conditional qubit state; stored as a Bloch vector so the trace is one by
/// construction and positivity is the norm bound |a| <= 1.
struct FilterState {
    double ax = 0.0, ay = 0.0, az = 0.0;

    Hermitian2 density_matrix() const {
        return Hermitian2::from_parts(0.5 * (1.0 + az), 0.5 * complexd{ax, -ay},
                                      0.5 * (1.0 - az));
    }
    double norm_sq() const { return ax * ax + ay * ay + az * az; }
};

namespace detail {

/// Monotone cubic (Fritsch-Carlson) interpolant of the inverse CDF, built
/// on a 4096-node cumulative grid of q over [-8, 8].
class InverseCdfSampler {
  public:
    InverseCdfSampler(const BlochVector& rho, const TimeHorizon& horizon) {
        constexpr int kNodes = 4096;
        y_.resize(kNodes);
        f_.resize(kNodes);
        for (int i = 0; i < kNodes; ++i) {
            y_[i] = -8.0 + 16.0 * i / (kNodes - 1);
            f_[i] = scalar_cdf_q(y_[i], horizon, rho);
        }
        slopes();
    }

    double operator()(double u) const {
        if (u <= f_.front()) return y_.front();
        if (u >= f_.back()) return y_.back();
        std::size_t lo = 0, hi = f_.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (f_[mid] <= u ? lo : hi) = mid;
        }
        const double h = f_[lo + 1] - f_[lo];
        if (h < 1e-300) return y_[lo];
        const double s = (u - f_[lo]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return y_[lo] * (2.0 * s3 - 3.0 * s2 + 1.0) + h * m_[lo] * (s3 - 2.0 * s2 + s) +
               y_[lo + 1] * (-2.0 * s3 + 3.0 * s2) + h * m_[lo + 1] * (s3 - s2);
    }

  private:
    void slopes() {
        const std::size_t n = y_.size();
        std::vector<double> sec(n - 1), hh(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            hh[i] = f_[i + 1] - f_[i];
            sec[i] = hh[i] < 1e-300 ? 0.0 : (y_[i + 1] - y_[i]) / hh[i];
        }
        m_.assign(n, 0.0);
        m_[0] = sec[0];
        m_[n - 1] = sec[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (sec[i - 1] <= 0.0 || sec[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * hh[i] + hh[i - 1];
                const double w2 = hh[i] + 2.0 * hh[i - 1];
                m_[i] = (w1 + w2) / (w1 / sec[i - 1] + w2 / sec[i]);
            }
        }
    }

    std::vector<double> y_, f_, m_;
};

}  // namespace detail

/// i.i.d. samples of the normalized endpoint with law q; deterministic
/// given the seed and independent of the worker count.
inline std::vector<EndpointSample> sample_endpoints(const BlochVector& rho, const SimConfig& cfg) {
    if (cfg.method != SimMethod::endpoint_exact)
        throw std::invalid_argument("sample_endpoints: cfg.method must be endpoint_exact");
    if (cfg.n_samples < 1) throw std::invalid_argument("sample_endpoints: n_samples must be >= 1");
    const detail::InverseCdfSampler sampler(rho, cfg.horizon);
    std::vector<EndpointSample> out(cfg.n_samples);
    parallel_for(cfg.n_samples, [&](std::int64_t i) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        out[i].y = sampler(rng.uniform());
    });
    return out;
}

namespace detail {

inline FilterState euler_step(const FilterState& a, double dt, double dw) {
    const double gx = 1.0 + a.az - a.ax * a.ax;
    const double gy = -a.ax * a.ay;
    const double gz = -a.ax * (1.0 + a.az);
    return {a.ax - 0.5 * a.ax * dt + gx * dw, a.ay - 0.5 * a.ay * dt + gy * dw,
            a.az - (1.0 + a.az) * dt + gz * dw};
}

// One observed increment, recursively halved (with a Brownian-bridge split
// of dW) whenever the Euler update leaves the Bloch ball beyond tolerance.
// Returns the e^{-tau/2}-weighted record contribution.
inline double guarded_step(FilterState& a, double tau, double dt, double dw, CounterRng& rng,
                           int depth, std::vector<double>* record) {
    FilterState next = euler_step(a, dt, dw);
    const double n2 = next.norm_sq();
    if (n2 <= 1.0 + 4e-9) {  // |a| <= 1 + 2e-9, i.e. eigenvalues >= -1e-9
        const double dy = a.ax * dt + dw;
        if (record) record->push_back(dy);
        if (n2 > 1.0) {
            const double inv = 1.0 / std::sqrt(n2);
            next.ax *= inv;
            next.ay *= inv;
            next.az *= inv;
        }
        a = next;
        return std::exp(-0.5 * tau) * dy;
    }
    if (depth >= 24)
        throw std::runtime_error("simulate_filter_paths: positivity retry budget exhausted");
    const double half = 0.5 * dt;
    const double dw1 = 0.5 * dw + 0.5 * std::sqrt(dt) * rng.normal();
    const double dw2 = dw - dw1;
    double contrib = guarded_step(a, tau, half, dw1, rng, depth + 1, record);
    contrib += guarded_step(a, tau + half, half, dw2, rng, depth + 1, record);
    return contrib;
}

}  // namespace detail

/// Integrate the conditional-state equation along each observed record and
/// return the normalized weighted endpoints.  Their law converges to q as
/// dt -> 0.
inline std::vector<EndpointSample> simulate_filter_paths(const BlochVector& rho,
                                                         const SimConfig& cfg,
                                                         bool keep_records = false) {
    if (cfg.method != SimMethod::filter_paths)
        throw std::invalid_argument("simulate_filter_paths: cfg.method must be filter_paths");
    if (cfg.horizon.is_infinite())
        throw std::invalid_argument("simulate_filter_paths: horizon must be finite");
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.horizon.t / 100.0)
        throw std::invalid_argument("simulate_filter_paths: require 0 < dt <= t/100");
    if (cfg.n_samples < 1)
        throw std::invalid_argument("simulate_filter_paths: n_samples must be >= 1");

    const auto n_steps = static_cast<std::int64_t>(std::ceil(cfg.horizon.t / cfg.dt - 1e-12));
    const double dt = cfg.horizon.t / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);

    std::vector<EndpointSample> out(cfg.n_samples);
    parallel_for(cfg.n_samples, [&](std::int64_t i) {
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        FilterState a{rho.px, rho.py, rho.pz};
        std::vector<double>* rec = nullptr;
        if (keep_records) {
            out[i].record.reserve(n_steps);
            rec = &out[i].record;
        }
        double weighted = 0.0;
        double tau = 0.0;
        for (std::int64_t j = 0; j < n_steps; ++j, tau += dt) {
            const double dw = sqrt_dt * rng.normal();
            weighted += detail::guarded_step(a, tau, dt, dw, rng, 0, rec);
        }
        out[i].y = weighted / cfg.horizon.beta;
    });
    return out;
}

struct EmpiricalMoments {
    double mean = 0.0;
    double variance = 0.0;
    double expected_mean = 0.0;    // rho(target)
    double target_variance = 0.0;  // Var_rho(target)
};

/// Sample mean and variance of h over the endpoint draws.  The mean
/// estimates rho(target); variance - Var_rho(target) estimates the added
/// variance in this state, bounded by sigma^2 up to sampling error.
inline EmpiricalMoments empirical_quality(const std::vector<EndpointSample>& samples,
                                          const PointerFunction& h, const BlochVector& rho,
                                          const Hermitian2& target) {
    if (samples.size() < 1000)
        throw std::invalid_argument("empirical_quality: need at least 1000 samples");
    double mean = 0.0;
    for (const auto& s : samples) mean += evaluate(h, s.y);
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (const auto& s : samples) {
        const double d = evaluate(h, s.y) - mean;
        var += d * d;
    }
    var /= static_cast<double>(samples.size() - 1);

    const double em = expectation(rho, target);
    const double em2 = expectation(rho, Hermitian2(target.matrix() * target.matrix()));
    return {mean, var, em, em2 - em * em};
}

}  // namespace hpl
