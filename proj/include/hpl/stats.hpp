#pragma once

// Goodness-of-fit machinery for the Monte Carlo validation: one- and
// two-sample Kolmogorov-Smirnov tests and a chi-squared test against an
// analytic CDF with small-expectation bin merging.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hpl {

namespace detail {

// Regularized upper incomplete gamma Q(a, x); series for x < a+1,
// continued fraction otherwise.
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-16) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - lg);
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, f = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return f * std::exp(-x + a * std::log(x) - lg);
}

// Asymptotic Kolmogorov distribution complement.
inline double kolmogorov_p(double lambda) {
    if (lambda < 0.05) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace detail

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// 1% asymptotic critical value for the one-sample KS statistic.
inline double ks_critical_1pct(double n) { return 1.63 / std::sqrt(n); }

template <class Cdf>
KsResult ks_test(std::vector<double> samples, const Cdf& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::max((i + 1.0) / n - f, f - i / n));
    }
    const double sn = std::sqrt(n);
    return {d, detail::kolmogorov_p((sn + 0.12 + 0.11 / sn) * d)};
}

inline KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, detail::kolmogorov_p((ne + 0.12 + 0.11 / ne) * d)};
}

struct ChiSquaredResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 0.0;
};

/// Chi-squared test of samples against an analytic CDF over [lo, hi].
/// Tail mass folds into the edge bins; adjacent bins merge until every
/// expected count reaches 5.
template <class Cdf>
ChiSquaredResult chi_squared_test(const std::vector<double>& samples, const Cdf& cdf, double lo,
                                  double hi, int nbins) {
    if (nbins < 2) throw std::invalid_argument("chi_squared_test: nbins must be >= 2");
    const double n = static_cast<double>(samples.size());
    std::vector<double> observed(nbins, 0.0), expected(nbins, 0.0);
    const double w = (hi - lo) / nbins;
    for (double x : samples) {
        int b = static_cast<int>((x - lo) / w);
        b = std::clamp(b, 0, nbins - 1);
        observed[b] += 1.0;
    }
    double prev = 0.0;  // left tail into the first bin
    for (int b = 0; b < nbins; ++b) {
        const double f = b == nbins - 1 ? 1.0 : cdf(lo + w * (b + 1));
        expected[b] = n * (f - prev);
        prev = f;
    }

    std::vector<double> obs_m, exp_m;
    double o_acc = 0.0, e_acc = 0.0;
    for (int b = 0; b < nbins; ++b) {
        o_acc += observed[b];
        e_acc += expected[b];
        if (e_acc >= 5.0) {
            obs_m.push_back(o_acc);
            exp_m.push_back(e_acc);
            o_acc = e_acc = 0.0;
        }
    }
    if (e_acc > 0.0 && !exp_m.empty()) {
        obs_m.back() += o_acc;
        exp_m.back() += e_acc;
    }
    if (obs_m.size() < 2) throw std::runtime_error("chi_squared_test: too few usable bins");

    double stat = 0.0;
    for (std::size_t b = 0; b < obs_m.size(); ++b) {
        const double diff = obs_m[b] - exp_m[b];
        stat += diff * diff / exp_m[b];
    }
    const int dof = static_cast<int>(obs_m.size()) - 1;
    return {stat, dof, detail::gamma_q(0.5 * dof, 0.5 * stat)};
}

}  // namespace hpl
