// Command-line front end: reproduce the reported constants, emit figure
// data, run Monte Carlo simulations, and execute the verification suites.
// Exit codes: 0 success, 1 verification/acceptance failure, 2 usage error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hpl/hpl.hpp"

using json = nlohmann::ordered_json;
using namespace hpl;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

BlochVector parse_bloch(const std::string& text) {
    double px, py, pz;
    char c1, c2;
    std::istringstream is(text);
    if (!(is >> px >> c1 >> py >> c2 >> pz) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("--bloch", "expected PX,PY,PZ");
    try {
        return BlochVector{px, py, pz};
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--bloch", e.what());
    }
}

const std::map<std::string, BlochVector>& presets() {
    static const std::map<std::string, BlochVector> m = {
        {"plus_x", {1, 0, 0}},  {"minus_x", {-1, 0, 0}}, {"trace", {0, 0, 0}},
        {"up_z", {0, 0, 1}},    {"down_z", {0, 0, -1}},  {"ground", {0, 0, -1}},
    };
    return m;
}

BlochVector resolve_state(const std::string& bloch, const std::string& preset) {
    if (!preset.empty()) return presets().at(preset);
    if (!bloch.empty()) return parse_bloch(bloch);
    throw CLI::ValidationError("state", "one of --bloch or --preset is required");
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const json& parameters, std::optional<std::uint64_t> seed,
                    const std::vector<std::string>& outputs) {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["artifact_version"] = kVersion;
    if (seed) m["seed"] = *seed;
    m["outputs"] = outputs;
    write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

// ---------------------------------------------------------------- reproduce

struct Row {
    std::string name;
    double computed;
    std::optional<double> reference;
    double tolerance = 0.0;
    bool pass() const { return !reference || std::abs(computed - *reference) <= tolerance; }
};

std::vector<Row> reproduce_rows(double beta) {
    const bool paper = beta == 1.0;
    auto ref = [&](double v) -> std::optional<double> {
        return paper ? std::optional<double>(v) : std::nullopt;
    };

    std::vector<Row> rows;
    const auto nx = optimize_naive_time(NaiveAxis::x);
    const auto nz = optimize_naive_time(NaiveAxis::z);
    rows.push_back({"naive t* (sigma_x)", nx.argmin, ref(2.513), 1e-3});
    rows.push_back({"naive sigma^2", nx.objective, ref(2.228), 1e-3});
    rows.push_back({"naive sigma", std::sqrt(nx.objective), ref(1.493), 1e-3});
    rows.push_back({"naive t* (sigma_z)", nz.argmin, ref(2.513), 1e-3});
    rows.push_back({"naive sigma~^2", nz.objective, ref(8.836), 1e-3});
    rows.push_back({"naive sigma~", std::sqrt(nz.objective), ref(2.973), 1e-3});
    rows.push_back(
        {"naive sigma sigma~", std::sqrt(nx.objective * nz.objective), ref(4.437), 2e-3});

    const auto ox = optimize_pointer_x(beta);
    const auto qx = rational_x_quality(ox.argmin, beta);
    rows.push_back({"optimal eps", ox.argmin, ref(0.605), 5e-3});
    rows.push_back({"optimal d1=d2 (x)", ox.objective, ref(0.470), 2e-3});
    rows.push_back({"optimal C1", qx.c_first, ref(2.359), 5e-3});
    rows.push_back({"optimal sigma", std::sqrt(ox.objective), ref(0.685), 2e-3});

    const auto oz = optimize_pointer_z(beta);
    const auto qz = rational_z_quality(oz.argmin, beta);
    rows.push_back({"optimal delta", oz.argmin, ref(2.701), 1e-2});
    rows.push_back({"optimal d1=d2 (z)", oz.objective, ref(2.373), 1e-2});
    rows.push_back({"optimal D2", qz.c_first, ref(-21.649), 5e-2});
    rows.push_back({"optimal D3", qz.c_second, ref(5.391), 2e-2});
    rows.push_back({"optimal sigma~", std::sqrt(oz.objective), ref(1.540), 5e-3});
    rows.push_back({"optimal sigma sigma~", std::sqrt(ox.objective * oz.objective), ref(1.056),
                    5e-3});
    return rows;
}

int cmd_reproduce(double beta, bool as_json) {
    const auto rows = reproduce_rows(beta);
    bool all_pass = true;
    for (const auto& r : rows) all_pass = all_pass && r.pass();

    if (as_json) {
        json doc;
        doc["schema_version"] = 1;
        doc["artifact_version"] = kVersion;
        doc["beta"] = beta;
        doc["rows"] = json::array();
        for (const auto& r : rows) {
            json jr;
            jr["name"] = r.name;
            jr["computed"] = r.computed;
            if (r.reference) {
                jr["reference"] = *r.reference;
                jr["tolerance"] = r.tolerance;
                jr["pass"] = r.pass();
            }
            doc["rows"].push_back(jr);
        }
        doc["all_pass"] = all_pass;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("beta = %.6g\n", beta);
        std::printf("%-24s %14s %11s %9s  %s\n", "quantity", "computed", "reference", "tol",
                    "status");
        for (const auto& r : rows) {
            if (r.reference)
                std::printf("%-24s %14.6f %11.3f %9.0e  %s\n", r.name.c_str(), r.computed,
                            *r.reference, r.tolerance, r.pass() ? "PASS" : "FAIL");
            else
                std::printf("%-24s %14.6f %11s %9s  %s\n", r.name.c_str(), r.computed, "-", "-",
                            "-");
        }
        std::printf("%s\n", all_pass ? "ALL PASS" : "FAILURES PRESENT");
    }
    return all_pass ? 0 : 1;
}

// ------------------------------------------------------------------ density

int cmd_density(const std::string& which, const std::string& bloch, const std::string& preset,
                int n, double t, const std::string& out) {
    const BlochVector rho = resolve_state(bloch, preset);
    const TimeHorizon horizon = std::isinf(t) ? TimeHorizon::infinite() : TimeHorizon::finite(t);

    FigureKind kind;
    std::string axis_name, value_name;
    if (which == "endpoint") {
        kind = FigureKind::endpoint;
        axis_name = "y";
        value_name = "q";
    } else if (which == "pointer_x") {
        kind = FigureKind::pointer_x;
        axis_name = "x";
        value_name = "r";
    } else {
        kind = FigureKind::pointer_z;
        axis_name = "x";
        value_name = "s";
    }

    const auto grid = figure_grid(kind, rho, horizon, n);
    write_file(out, density_csv(grid, axis_name, value_name));

    json params;
    params["which"] = which;
    params["bloch"] = {rho.px, rho.py, rho.pz};
    params["n"] = n;
    params["t"] = std::isinf(t) ? json("inf") : json(t);
    params["beta"] = horizon.beta;
    write_manifest(out, "density", params, std::nullopt, {out});

    std::printf("wrote %s: %zu nodes on [%.6g, %.6g], trapezoid mass %.6f (beta = %.6g)\n",
                out.c_str(), grid.axis.size(), grid.support_lo, grid.support_hi,
                grid.trapezoid_mass(), horizon.beta);
    return 0;
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const std::string& method, const std::string& bloch, const std::string& preset,
                 std::int64_t n, double dt, double t, std::uint64_t seed,
                 const std::string& out) {
    const BlochVector rho = resolve_state(bloch, preset);
    SimConfig cfg;
    cfg.horizon = std::isinf(t) ? TimeHorizon::infinite() : TimeHorizon::finite(t);
    cfg.dt = dt;
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.method = method == "filter_paths" ? SimMethod::filter_paths : SimMethod::endpoint_exact;

    const auto samples = cfg.method == SimMethod::filter_paths
                             ? simulate_filter_paths(rho, cfg)
                             : sample_endpoints(rho, cfg);
    write_file(out, samples_csv(samples));

    std::vector<double> ys(samples.size());
    double mean = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ys[i] = samples[i].y;
        mean += samples[i].y;
    }
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (double y : ys) var += (y - mean) * (y - mean);
    var /= static_cast<double>(samples.size() - 1);

    const auto ks =
        ks_test(ys, [&](double v) { return scalar_cdf_q(v, cfg.horizon, rho); });

    const double beta = cfg.horizon.beta;
    json summary;
    summary["schema_version"] = 1;
    summary["artifact_version"] = kVersion;
    summary["method"] = method;
    summary["n"] = n;
    summary["seed"] = seed;
    summary["t"] = std::isinf(t) ? json("inf") : json(t);
    summary["beta"] = beta;
    if (cfg.method == SimMethod::filter_paths) summary["dt"] = dt;
    summary["endpoint"] = {{"mean", mean}, {"variance", var}};
    summary["ks_vs_analytic_q"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value}};
    double mean_x = 0.0;
    if (n >= 1000) {  // empirical pointer statistics need a real sample
        const auto ox = optimize_pointer_x(beta);
        const auto oz = optimize_pointer_z(beta);
        const PointerFunction hx{rational_x_pointer(ox.argmin, beta)};
        const PointerFunction hz{rational_z_pointer(oz.argmin, beta)};
        const auto ex = empirical_quality(samples, hx, rho, pauli::sigma_x);
        const auto ez = empirical_quality(samples, hz, rho, pauli::sigma_z);
        mean_x = ex.mean;
        summary["pointer_x"] = {{"empirical_mean", ex.mean},
                                {"empirical_variance", ex.variance},
                                {"expected_mean", ex.expected_mean}};
        summary["pointer_z"] = {{"empirical_mean", ez.mean},
                                {"empirical_variance", ez.variance},
                                {"expected_mean", ez.expected_mean}};
    }
    const std::string summary_path = out + ".summary.json";
    write_file(summary_path, summary.dump(2) + "\n");

    json params;
    params["method"] = method;
    params["bloch"] = {rho.px, rho.py, rho.pz};
    params["n"] = n;
    params["dt"] = dt;
    params["t"] = std::isinf(t) ? json("inf") : json(t);
    write_manifest(out, "simulate", params, seed, {out, summary_path});

    std::printf("wrote %s (+summary): mean %.4f, KS p %.4f, pointer mean x %.4f\n", out.c_str(),
                mean, ks.p_value, mean_x);
    return 0;
}

// ------------------------------------------------------------------- verify

struct Check {
    std::string name;
    std::function<std::string()> run;  // empty string = pass, otherwise detail
};

std::string check_lemma_integrals() {
    const double s2pi = std::sqrt(2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double eps = std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * i / 99.0);
        worst = std::max(worst,
                         std::abs(2.0 * eps * integral_J(eps) - (1.0 - eps) * integral_I(eps) -
                                  s2pi));
    }
    if (worst >= 1e-9) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "max |2 eps J - (1-eps) I - sqrt(2pi)| = %.3e >= 1e-9",
                      worst);
        return buf;
    }
    return {};
}

std::string check_integrals_vs_quadrature(int points) {
    for (int i = 0; i < points; ++i) {
        const double eps =
            std::exp(std::log(1e-3) + (std::log(50.0) - std::log(1e-3)) * i / (points - 1.0));
        const double iq =
            integrate([eps](double x) { return std::exp(-0.5 * x * x) / (x * x + eps); }, -kInf,
                      kInf, 1e-12, 20000);
        const double jq = integrate(
            [eps](double x) {
                const double d = x * x + eps;
                return std::exp(-0.5 * x * x) / (d * d);
            },
            -kInf, kInf, 1e-12, 20000);
        if (std::abs(integral_I(eps) / iq - 1.0) > 1e-8)
            return "I(eps) closed form deviates from quadrature at eps = " + std::to_string(eps);
        if (std::abs(integral_J(eps) / jq - 1.0) > 1e-8)
            return "J(eps) closed form deviates from quadrature at eps = " + std::to_string(eps);
    }
    return {};
}

std::string check_characteristic_ode(int steps) {
    for (double k : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0})
        for (double t : {0.1, 1.0, 2.513, 8.0}) {
            const double err = max_abs_diff(ode_oracle_Fk(k, t, steps), characteristic_matrix(k, t));
            if (err >= 1e-7) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "F_k mismatch %.3e at k=%.3g t=%.3g", err, k, t);
                return buf;
            }
        }
    return {};
}

std::string check_density_suite(int n_states) {
    CounterRng rng(424242, 0);
    for (int i = 0; i < n_states; ++i) {
        double x = 2.0 * rng.uniform() - 1.0, y = 2.0 * rng.uniform() - 1.0,
               z = 2.0 * rng.uniform() - 1.0;
        const double nn = x * x + y * y + z * z;
        if (nn > 1.0) {
            const double inv = 1.0 / std::sqrt(nn);
            x *= inv;
            y *= inv;
            z *= inv;
        }
        const BlochVector rho{x, y, z};
        const auto hor = i % 4 == 0 ? TimeHorizon::infinite()
                                    : TimeHorizon::finite(0.2 + 3.0 * rng.uniform());
        const double mass =
            integrate([&](double s) { return scalar_density_q(s, hor, rho); }, -kInf, kInf, 1e-11);
        if (std::abs(mass - 1.0) > 1e-9)
            return "q normalization failed: mass = " + std::to_string(mass);
        const double m1 = integrate([&](double s) { return s * scalar_density_q(s, hor, rho); },
                                    -kInf, kInf, 1e-11);
        if (std::abs(m1 - hor.beta * rho.px) > 1e-9) return "q first moment failed";
        for (double s = -8.0; s <= 8.0; s += 0.25)
            if (scalar_density_q(s, hor, rho) < -1e-12) return "q negativity detected";
        const BlochVector flipped{x, -y, z};
        for (double s = -6.0; s <= 6.0; s += 0.5)
            if (scalar_density_q(s, hor, rho) != scalar_density_q(s, hor, flipped))
                return "q depends on the sigma_y component";
    }
    return {};
}

std::string check_matrix_density_positivity() {
    for (int ti = 0; ti <= 50; ++ti) {
        const auto hor =
            ti == 50 ? TimeHorizon::infinite() : TimeHorizon::finite(0.05 + 0.2 * ti);
        for (double y = -8.0; y <= 8.0; y += 0.125)
            if (matrix_density_p(y, hor).eigenvalues()[0] < -1e-10)
                return "p(y) eigenvalue dropped below -1e-10";
    }
    return {};
}

std::string check_frobenius_perron() {
    const auto hor = TimeHorizon::infinite();
    const RationalX hx = rational_x_pointer(0.605, 1.0);
    const RationalZ hz = rational_z_pointer(2.701, 1.0);
    const double w = support_half_width_x(hx);
    const auto [lo, hi] = support_z(hz);
    auto edge_int = [](auto&& f, double a, double b, bool sl, bool sh) {
        const double mid = 0.5 * (a + b);
        double total = 0.0;
        if (sl)
            total += integrate([&](double u) { return 2.0 * u * f(a + u * u); }, 0.0,
                               std::sqrt(mid - a), 1e-9, 20000);
        else
            total += integrate(f, a, mid, 1e-9, 20000);
        if (sh)
            total += integrate([&](double u) { return 2.0 * u * f(b - u * u); }, 0.0,
                               std::sqrt(b - mid), 1e-9, 20000);
        else
            total += integrate(f, mid, b, 1e-9, 20000);
        return total;
    };
    for (const BlochVector rho :
         {BlochVector{0, 0, 0}, {0.8, 0.1, -0.2}, {-0.4, 0.5, 0.6}, {1, 0, 0}, {0, 0, 1}}) {
        const double mass =
            edge_int([&](double s) { return density_r(s, hx, hor, rho); }, -w, w, true, true);
        if (std::abs(mass - 1.0) > 1e-6) return "r normalization failed";
        const double mean =
            edge_int([&](double s) { return s * density_r(s, hx, hor, rho); }, -w, w, true, true);
        if (std::abs(mean - rho.px) > 1e-6) return "r mean failed to reproduce Px";
        const double mass_s =
            edge_int([&](double s) { return density_s(s, hz, hor, rho); }, lo, hi, true, false);
        if (std::abs(mass_s - 1.0) > 1e-6) return "s normalization failed";
        const double mean_s = edge_int([&](double s) { return s * density_s(s, hz, hor, rho); },
                                       lo, hi, true, false);
        if (std::abs(mean_s - rho.pz) > 1e-6) return "s mean failed to reproduce Pz";
    }
    return {};
}

std::string check_heisenberg_sweep() {
    double worst = kInf;
    for (int i = 0; i < 20; ++i) {
        const double eps = std::exp(std::log(0.05) + (std::log(20.0) - std::log(0.05)) * i / 19.0);
        const auto qx = rational_x_quality(eps, 1.0);
        for (int j = 0; j < 20; ++j) {
            const double delta =
                std::exp(std::log(0.05) + (std::log(20.0) - std::log(0.05)) * j / 19.0);
            const auto qz = rational_z_quality(delta, 1.0);
            const double prod =
                std::sqrt(std::max(qx.d1, qx.d2)) * std::sqrt(std::max(qz.d1, qz.d2));
            worst = std::min(worst, prod);
        }
    }
    if (worst < 1.0 - 1e-9) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "sigma sigma~ = %.12f < 1 on the sweep", worst);
        return buf;
    }
    return {};
}

std::string check_paper_constants() {
    for (const auto& r : reproduce_rows(1.0))
        if (!r.pass()) return "constant '" + r.name + "' off the reported value";
    return {};
}

std::string check_sampler_chi2() {
    SimConfig cfg;
    cfg.horizon = TimeHorizon::finite(8.0);
    cfg.n_samples = 200000;
    cfg.seed = 8675309;
    cfg.method = SimMethod::endpoint_exact;
    const BlochVector rho{0.6, 0.0, 0.35};
    const auto samples = sample_endpoints(rho, cfg);
    std::vector<double> ys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) ys[i] = samples[i].y;
    const auto chi = chi_squared_test(
        ys, [&](double v) { return scalar_cdf_q(v, cfg.horizon, rho); }, -8.0, 8.0, 150);
    if (chi.p_value <= 0.01) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "chi-squared p = %.4f <= 0.01", chi.p_value);
        return buf;
    }
    return {};
}

std::string check_filter_vs_exact() {
    SimConfig fc;
    fc.horizon = TimeHorizon::finite(6.0);
    fc.dt = 1e-3;
    fc.n_samples = 10000;
    fc.seed = 505;
    fc.method = SimMethod::filter_paths;
    const BlochVector rho{0.7, 0.0, 0.3};
    const auto filt = simulate_filter_paths(rho, fc);
    SimConfig ec = fc;
    ec.method = SimMethod::endpoint_exact;
    ec.seed = 506;
    const auto exact = sample_endpoints(rho, ec);
    std::vector<double> fy(filt.size()), ey(exact.size());
    for (std::size_t i = 0; i < filt.size(); ++i) fy[i] = filt[i].y;
    for (std::size_t i = 0; i < exact.size(); ++i) ey[i] = exact[i].y;
    const auto ks = ks_test_two_sample(fy, ey);
    if (ks.p_value <= 0.01) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "two-sample KS p = %.4f <= 0.01", ks.p_value);
        return buf;
    }
    return {};
}

int cmd_verify(const std::string& level) {
    const bool full = level == "full";
    std::vector<Check> checks = {
        {"lemma-integrals-identity", check_lemma_integrals},
        {"integrals-closed-form-vs-quadrature",
         [&] { return check_integrals_vs_quadrature(full ? 100 : 25); }},
        {"characteristic-ode-consistency", [&] { return check_characteristic_ode(full ? 4000 : 2000); }},
        {"endpoint-density-suite", [&] { return check_density_suite(full ? 1000 : 100); }},
        {"matrix-density-positivity", check_matrix_density_positivity},
        {"frobenius-perron-consistency", check_frobenius_perron},
        {"heisenberg-sweep", check_heisenberg_sweep},
        {"paper-constants", check_paper_constants},
    };
    if (full) {
        checks.push_back({"endpoint-sampler-chi2", check_sampler_chi2});
        checks.push_back({"filter-vs-exact-ks", check_filter_vs_exact});
    }

    int failures = 0;
    for (const auto& c : checks) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        try {
            detail = c.run();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (detail.empty()) {
            std::printf("[PASS] %-36s (%.0f ms)\n", c.name.c_str(), ms);
        } else {
            std::printf("[FAIL] %-36s %s\n", c.name.c_str(), detail.c_str());
            ++failures;
        }
    }
    if (failures) std::printf("%d verification check(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homodyne-pointer-lab: optimal pointers for joint sigma_x/sigma_z measurement "
                 "via homodyne detection"};
    app.require_subcommand(1);

    // reproduce
    auto* rep = app.add_subcommand("reproduce", "recompute the reported constants");
    double rep_beta = 1.0;
    bool rep_json = false;
    rep->add_option("--beta", rep_beta, "horizon parameter beta (default 1 = infinite time)")
        ->check(CLI::Range(1e-6, 1.0));
    rep->add_flag("--json", rep_json, "emit a machine-readable report");

    // density
    auto* den = app.add_subcommand("density", "write figure-data density grids");
    std::string den_which, den_bloch, den_preset, den_out;
    int den_n = 513;
    double den_t = kInf;
    den->add_option("--which", den_which, "which density")
        ->required()
        ->check(CLI::IsMember({"endpoint", "pointer_x", "pointer_z"}));
    den->add_option("--bloch", den_bloch, "initial state PX,PY,PZ");
    den->add_option("--preset", den_preset, "named initial state")
        ->check(CLI::IsMember({"plus_x", "minus_x", "trace", "up_z", "down_z", "ground"}));
    den->add_option("--n", den_n, "grid size (default 513)")->check(CLI::Range(64, 1 << 20));
    den->add_option("--t", den_t, "finite horizon time (default: infinite)");
    den->add_option("--out", den_out, "output CSV path")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo endpoint sampling");
    std::string sim_method, sim_bloch, sim_preset, sim_out;
    std::int64_t sim_n = 0;
    double sim_dt = 1e-3, sim_t = 8.0;
    std::uint64_t sim_seed = 0;
    sim->add_option("--method", sim_method, "sampling method")
        ->required()
        ->check(CLI::IsMember({"endpoint_exact", "filter_paths"}));
    sim->add_option("--bloch", sim_bloch, "initial state PX,PY,PZ");
    sim->add_option("--preset", sim_preset, "named initial state")
        ->check(CLI::IsMember({"plus_x", "minus_x", "trace", "up_z", "down_z", "ground"}));
    sim->add_option("--n", sim_n, "number of samples")->required()->check(CLI::PositiveNumber);
    sim->add_option("--dt", sim_dt, "time step (filter_paths)");
    sim->add_option("--t", sim_t, "horizon time (default 8)");
    sim->add_option("--seed", sim_seed, "RNG seed")->required();
    sim->add_option("--out", sim_out, "output CSV path")->required();

    // verify
    auto* ver = app.add_subcommand("verify", "run the oracle verification suites");
    std::string ver_level = "fast";
    ver->add_option("--level", ver_level, "fast or full")
        ->check(CLI::IsMember({"fast", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (rep->parsed()) return cmd_reproduce(rep_beta, rep_json);
        if (den->parsed()) return cmd_density(den_which, den_bloch, den_preset, den_n, den_t,
                                              den_out);
        if (sim->parsed())
            return cmd_simulate(sim_method, sim_bloch, sim_preset, sim_n, sim_dt, sim_t, sim_seed,
                                sim_out);
        if (ver->parsed()) return cmd_verify(ver_level);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
