#include "doctest.h"

#include <cmath>
#include <numbers>

#include "dnls/diagnostics.hpp"
#include "dnls/evolution.hpp"
#include "dnls/halfline_linear.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

Field modulated_gaussian(const GridSpec& g, double eps, double kappa) {
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        double x = g.x(j);
        f[j] = eps * std::exp(-x * x) * std::polar(1.0, kappa * x);
    }
    return f;
}

SolutionHistory free_history(const Field& g, std::size_t n_frames) {
    SolutionHistory h;
    h.grid = g.grid;
    for (std::size_t i = 0; i < n_frames; ++i) h.frames.push_back(free_propagate(g, static_cast<double>(i) * g.grid.dt()));
    return h;
}

Field halfline_bump(const GridSpec& g, double amp) {
    Field G(g, Side::half_line);
    for (std::size_t j = g.origin(); j < g.size(); ++j) {
        double x = g.x(j);
        G[j] = amp * (1.0 + x) * std::exp(-(x - 1.5) * (x - 1.5)) * std::polar(1.0, 0.3 * x);
    }
    return G;
}

TimeTrace decaying_trace(Complex h0, double dt, double T) {
    auto steps = static_cast<std::size_t>(std::llround(T / dt));
    ComplexVec v(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) * dt;
        v[i] = h0 * std::exp(-t) * std::polar(1.0, 2.0 * t);
    }
    return TimeTrace(0.0, dt, v);
}

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("zero inputs") {
    GridSpec g = make_grid(20, 256, 2e-3, 1);
    Field z(g);
    CHECK(energy_functional(z, EnergyVariant::E_half) == 0.0);
    CHECK(energy_functional(z, EnergyVariant::E_dnls) == 0.0);
    CHECK(mass_of(z) == 0.0);
    CHECK(xsb_norm(free_history(z, 251), 1.0, 0.45, 0.25) == 0.0);

    SolutionHistory hz;
    hz.grid = g;
    hz.frames.assign(11, Field(g, Side::half_line));
    TimeTrace h0(0.0, g.dt(), ComplexVec(11));
    auto ids = halfline_identities(hz, h0);
    CHECK(sup_abs(ids.mass_residual) == 0.0);
    CHECK(sup_abs(ids.energy_residual) == 0.0);
    CHECK(sup_abs(ids.I_t) == 0.0);
    CHECK(sup_abs(ids.It_residual) == 0.0);
}

TEST_CASE("energy functionals against closed forms") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Field real = modulated_gaussian(g, 0.7, 0.0);
    CHECK(std::abs(energy_functional(real, EnergyVariant::E_half) - gradient_mass_of(real)) <= 1e-14);

    const double eps = 0.3, kappa = 1.7;
    Field u = modulated_gaussian(g, eps, kappa);
    const double rp = std::sqrt(std::numbers::pi);
    double grad = eps * eps * std::sqrt(std::numbers::pi / 2.0) * (kappa * kappa + 1.0);
    double quartic = std::pow(eps, 4) * rp / 2.0;
    double sextic = std::pow(eps, 6) * std::sqrt(std::numbers::pi / 6.0);
    double e_half = grad - 0.5 * kappa * quartic;
    double e_dnls = grad - 1.5 * kappa * quartic + 0.5 * sextic;
    CHECK(std::abs(energy_functional(u, EnergyVariant::E_half) - e_half) <= 1e-8 * std::abs(e_half));
    CHECK(std::abs(energy_functional(u, EnergyVariant::E_dnls) - e_dnls) <= 1e-8 * std::abs(e_dnls));
    CHECK(std::abs(mass_of(u) - eps * eps * std::sqrt(std::numbers::pi / 2.0)) <= 1e-12);
}

TEST_CASE("Gagliardo-Nirenberg probe is stable under resampling") {
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    CHECK(gn_coercivity_probe({modulated_gaussian(g, 0.5, 0.0)}) == 0.0);
    std::vector<Field> samples;
    for (std::uint64_t i = 0; i < 400; ++i) samples.push_back(random_field(g, 4.0, 1.0, 1000 + i));
    double c200 = gn_coercivity_probe({samples.begin(), samples.begin() + 200});
    double c400 = gn_coercivity_probe(samples);
    MESSAGE("GN constant " << c200 << " " << c400);
    CHECK(c200 > 0.0);
    CHECK(std::isfinite(c400));
    CHECK(std::abs(c400 / c200 - 1.0) <= 0.2);
}

TEST_CASE("windowed X^{s,b} norm") {
    const double T_w = 0.25;
    auto hist_for = [&](double dt) {
        GridSpec g = make_grid(20, 256, dt, 1);
        return free_history(modulated_gaussian(g, 1.0, 1.0), static_cast<std::size_t>(std::llround(2 * T_w / dt)) + 1);
    };
    auto hist = hist_for(2e-3);
    double eta2 = 0.0;
    const std::size_t fine = 400000;
    const double h = 4.0 * T_w / fine;
    for (std::size_t i = 0; i <= fine; ++i) eta2 += std::pow(cutoff_eta(-2.0 + static_cast<double>(i) * h / T_w), 2);
    eta2 *= h;
    double hs = sobolev_norm(hist.frames[0], 1.0);
    double n0 = xsb_norm(hist, 1.0, 0.0, T_w);
    CHECK(std::abs(n0 / (std::sqrt(eta2) * hs) - 1.0) <= 1e-6);

    CHECK(xsb_norm(hist, 1.5, 0.4, T_w) > xsb_norm(hist, 1.0, 0.4, T_w));
    CHECK(xsb_norm(hist, 1.0, 0.45, T_w) > xsb_norm(hist, 1.0, 0.4, T_w));

    double a = xsb_norm(hist, 1.0, 0.4, T_w), b = xsb_norm(hist_for(1e-3), 1.0, 0.4, T_w);
    MESSAGE("X^{1,0.4} " << a << " " << b);
    CHECK(std::abs(b / a - 1.0) <= 0.1);
}

TEST_CASE("smoothing fit needs a nonlinear residual") {
    GridSpec g = make_grid(8, 512, 1e-3, 1);
    Field d = threshold_data(g, 1.0, 0.5, 42, 0.0, 4.0);
    auto lin = free_history(d, 21);
    CHECK_THROWS_AS(smoothing_fit(lin, lin, 1.0), Error);
    CHECK(smoothing_prediction(1.0, Side::full_line) == 0.5);
    CHECK(std::abs(smoothing_prediction(0.6, Side::full_line) - 0.2) <= 1e-15);
    CHECK(smoothing_prediction(1.0, Side::half_line) == 0.25);
}

TEST_CASE("full-line conservation over T = 1") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    auto hist = solve_fullline(modulated_gaussian(g, 0.1, 0.5), 1.0, 1e-3, EquationForm{-1.0});
    auto cs = conservation_series(hist);
    double md = sup_abs(cs.mass_drift_rel), ed = sup_abs(cs.energy_drift_rel);
    MESSAGE("drift mass " << md << " energy " << ed);
    CHECK(md <= 1e-6);
    CHECK(ed <= 1e-6);
    CHECK(cs.t.size() == hist.n_frames());
}

TEST_CASE("half-line identities on a small-data run") {
    const double dt = 2e-3, T = 0.2;
    GridSpec g = make_grid(20, 256, dt, 1);
    Field G = halfline_bump(g, 0.2);
    TimeTrace H = decaying_trace(G[g.origin()], dt, T);
    auto sol = solve_halfline_dnls(G, H, -0.5, T, 1e-9);
    auto ids = halfline_identities(sol.q, H);
    MESSAGE("mass " << sup_abs(ids.mass_residual) << " energy " << sup_abs(ids.energy_residual) << " I_t "
                    << sup_abs(ids.It_residual));
    CHECK(sup_abs(ids.mass_residual) <= 5e-3);
    CHECK(sup_abs(ids.energy_residual) <= 1e-2);
    CHECK(sup_abs(ids.It_residual) <= 1e-2);
    for (std::size_t i = 1; i < ids.I_t.size(); ++i) CHECK(ids.I_t[i] >= ids.I_t[i - 1]);
    CHECK(mass_identity_residual(sol.q, H) == doctest::Approx(sup_abs(ids.mass_residual)));
}

TEST_CASE("half-line mass with zero boundary data") {
    const double dt = 2e-3, T = 0.2;
    GridSpec g = make_grid(20, 256, dt, 1);
    Field G(g, Side::half_line);
    for (std::size_t j = g.origin(); j < g.size(); ++j) {
        double x = g.x(j);
        G[j] = 0.2 * std::exp(-2.0 * (x - 4.0) * (x - 4.0)) * std::polar(1.0, -0.5 * x);
    }
    TimeTrace H(0.0, dt, ComplexVec(101));
    auto sol = solve_halfline_dnls(G, H, -0.5, T, 1e-9);
    double m0 = mass_of(sol.q.frames[0]);
    double drift = 0.0;
    for (const auto& f : sol.q.frames) drift = std::max(drift, std::abs(mass_of(f) - m0));
    CHECK(drift <= 5e-3);
    CHECK(mass_identity_residual(sol.q, H) <= 5e-3);
}

TEST_CASE("estimate windows and ratio probes") {
    CHECK_THROWS_AS(check_estimate_window(EstimateId::smooth, 1.0, 0.6, 0.45), Error);
    CHECK_THROWS_AS(check_estimate_window(EstimateId::smooth3, 1.0, 0.4, 0.45), Error);
    CHECK_THROWS_AS(check_estimate_window(EstimateId::smooth5, 0.4, 0.1, 0.45), Error);
    CHECK_THROWS_AS(check_estimate_window(EstimateId::b38, 1.0, 0.1, 0.55), Error);
    CHECK_NOTHROW(check_estimate_window(EstimateId::smooth, 1.0, 0.4, 0.45));
    try {
        check_estimate_window(EstimateId::smooth, 1.0, 0.6, 0.45);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::window_violation);
    }
    CHECK(estimate_from_name("b38") == EstimateId::b38);
    CHECK_THROWS_AS(estimate_from_name("nope"), Error);

    GridSpec g = make_grid(20, 256, 2e-3, 1);
    auto p = multilinear_ratio_probe(EstimateId::smooth, 4, 1.0, 0.4, 0.45, g, 0.25, 7);
    auto q = multilinear_ratio_probe(EstimateId::smooth, 4, 1.0, 0.4, 0.45, g, 0.25, 7);
    REQUIRE(p.samples.size() == 4);
    CHECK(p.max_ratio > 0.0);
    CHECK(std::isfinite(p.max_ratio));
    for (std::size_t i = 0; i < 4; ++i) CHECK(p.samples[i].ratio == q.samples[i].ratio);
}
