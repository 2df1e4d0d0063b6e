#include "doctest.h"

#include <chrono>
#include <cmath>
#include <random>

#include "dnls/halfline_linear.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

Complex free_gaussian(double x, double t) {
    Complex d(1.0, 4.0 * t);
    return std::exp(-x * x / d) / std::sqrt(d);
}

TimeTrace gaussian_trace(double dt, std::size_t n) {
    ComplexVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = free_gaussian(0.0, static_cast<double>(i) * dt);
    return TimeTrace(0.0, dt, v);
}

Field half_gaussian(const GridSpec& g) {
    Field f(g, Side::half_line);
    for (std::size_t j = g.origin(); j < g.size(); ++j) f[j] = std::exp(-g.x(j) * g.x(j));
    return extend(f);
}

double max_diff_halfline(const SolutionHistory& h, double t_scale = 1.0) {
    double worst = 0.0;
    for (std::size_t i = 0; i < h.n_frames(); ++i)
        for (std::size_t j = h.grid.origin(); j < h.grid.size(); ++j) {
            double x = h.grid.x(j);
            if (x > 10) continue;
            worst = std::max(worst, std::abs(h.frames[i][j] - free_gaussian(x, h.time(i) * t_scale)));
        }
    return worst;
}

}  // namespace

TEST_CASE("free propagation") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::exp(-g.x(j) * g.x(j));
    Field u = free_propagate(f, 0.5);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (std::abs(g.x(j)) <= 10) CHECK(std::abs(u[j] - free_gaussian(g.x(j), 0.5)) <= 1e-8);
    CHECK(l2_norm(u) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
    Field same = free_propagate(f, 0.0);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(same[j] - f[j]) <= 1e-15);
    Field two = free_propagate(free_propagate(f, 0.2), 0.3);
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(two[j] - u[j]) <= 1e-12);
}

TEST_CASE("corrector trace") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Field ge(g);
    for (std::size_t j = 0; j < g.size(); ++j) ge[j] = std::exp(-g.x(j) * g.x(j));
    TimeTrace p = corrector_p(ge, 1e-3, 2501);
    CHECK(p.values[0] == ge[g.origin()]);
    for (std::size_t i = 0; i <= 1000; ++i)
        CHECK(std::abs(p.values[i] - free_gaussian(0, p.time(i))) <= 1e-8);
    CHECK(std::abs(p.values[2000]) == 0.0);
    TimeTrace z = corrector_p(Field(g), 1e-3, 10);
    for (auto v : z.values) CHECK(v == Complex{});
}

TEST_CASE("boundary operators") {
    GridSpec g = make_grid(20, 256, 1e-2, 1);
    const double dt = 1e-2;
    ComplexVec ev(3001), ev2(3001);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        double t = static_cast<double>(i) * dt;
        ev[i] = std::exp(-t);
        ev2[i] = Complex(0, 1) * t * std::exp(-2 * t);
    }
    TimeTrace h(0.0, dt, ev), h2(0.0, dt, ev2);
    Field zero = boundary_w1(TimeTrace(0.0, dt, ComplexVec(100)), g, 0.1);
    CHECK(zero.max_abs() == 0.0);
    CHECK(boundary_w2(TimeTrace(0.0, dt, ComplexVec(100)), g, 0.1).max_abs() == 0.0);

    Field a = boundary_w1(h, g, 0.1), b = boundary_w1(h2, g, 0.1);
    ComplexVec mix(ev.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = 2.0 * ev[i] - Complex(0, 3) * ev2[i];
    Field c = boundary_w1(TimeTrace(0.0, dt, mix), g, 0.1);
    double scale = a.max_abs();
    for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(c[j] - (2.0 * a[j] - Complex(0, 3) * b[j])) <= 1e-12 * scale);

    // refined quadrature at (x, t) = (1, 0.1)
    BoundaryPropagator coarse(g, {0.1}, dt, 3001 * dt);
    auto fine_q = make_beta_quadrature(std::sqrt(M_PI / dt), 10 * g.half_length(), 10 * 3001 * dt, 10000);
    std::size_t j1 = g.origin() + static_cast<std::size_t>(std::llround(1.0 / g.dx()));
    Complex oracle{};
    for (std::size_t k = 0; k < fine_q.beta.size(); ++k) {
        double be = fine_q.beta[k];
        oracle += fine_q.weight[k] * be * filon_fourier(ev, 0, dt, -be * be) *
                  std::polar(1.0, -be * be * 0.1 + be * g.x(j1)) / M_PI;
    }
    Complex got = coarse.apply(h, true, false)[0][j1];
    CHECK(std::abs(got - oracle) <= 1e-6 * std::abs(oracle));
    CHECK(std::abs(a[j1] - oracle) <= 1e-6 * std::abs(oracle));

    // W2 damping
    Field w2 = boundary_w2(h, g, 0.1);
    std::size_t j10 = g.origin() + static_cast<std::size_t>(std::llround(10.0 / g.dx()));
    // |W2 h(10, t)| <= (1/pi) \int beta e^{-10 beta} |\hat h| <= 1/(100 pi) since |\hat h| <= 1
    CHECK(std::abs(w2[j10]) <= 1.0 / (100 * M_PI));
    CHECK(std::abs(w2[j10]) <= 1e-2 * std::abs(w2[g.origin()]));
    // rho = 1 on x > 0, so there the x > 0 values do not depend on rho
    double prev_env = std::abs(w2[g.origin()]);
    for (std::size_t j = g.origin() + 1; j < g.size(); ++j) {
        CHECK(std::abs(w2[j]) <= prev_env * (1 + 1e-9));
        prev_env = std::max(std::abs(w2[j]), 0.0);
    }
}

TEST_CASE("linear IBVP with the exact Gaussian trace") {
    GridSpec g = make_grid(20, 512, 1e-3, 200);
    Field half = half_gaussian(g);
    TimeTrace h = gaussian_trace(1e-3, 201);
    auto t0 = std::chrono::steady_clock::now();
    Warnings w;
    SolutionHistory hist = linear_ibvp_solve(half, h, &w);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE("ibvp solve seconds: " << secs);
    CHECK(hist.n_frames() == 201);
    for (std::size_t j = g.origin(); j < g.size(); ++j) CHECK(hist.frames[0][j] == half[j]);
    double err = max_diff_halfline(hist);
    MESSAGE("max error vs free Gaussian: " << err);
    CHECK(err <= 1e-5);
    double terr = trace_error_l2(hist, h);
    MESSAGE("trace error: " << terr);
    CHECK(terr <= 1e-4);
    double res = pde_residual_linear(hist);
    MESSAGE("pde residual: " << res);
    CHECK(res <= 1e-4);
}

TEST_CASE("linear IBVP zero data and superposition") {
    GridSpec g = make_grid(20, 256, 2e-3, 50);
    SolutionHistory z = linear_ibvp_solve(Field(g, Side::half_line), TimeTrace(0.0, 2e-3, ComplexVec(51)));
    double m = 0.0;
    for (auto& f : z.frames) m = std::max(m, f.max_abs());
    CHECK(m <= 1e-10);

    Field g1 = half_gaussian(g);
    Field g2(g, Side::half_line);
    for (std::size_t j = g.origin(); j < g.size(); ++j) g2[j] = Complex(0, 0.5) * std::exp(-(g.x(j) - 2) * (g.x(j) - 2));
    g2 = extend(g2);
    ComplexVec h1(51), h2(51), hs(51);
    for (std::size_t i = 0; i < 51; ++i) {
        double t = static_cast<double>(i) * 2e-3;
        h1[i] = 1.0 + Complex(0.3, 0.1) * t;
        h2[i] = g2[g.origin()] + Complex(0, 1) * std::sin(5 * t);
        hs[i] = h1[i] + h2[i];
    }
    Field gs(g, Side::half_line);
    for (std::size_t j = 0; j < g.size(); ++j) gs[j] = g1[j] + g2[j];
    auto a = linear_ibvp_solve(g1, TimeTrace(0, 2e-3, h1));
    auto b = linear_ibvp_solve(g2, TimeTrace(0, 2e-3, h2));
    auto s = linear_ibvp_solve(gs, TimeTrace(0, 2e-3, hs));
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < s.n_frames(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
            worst = std::max(worst, std::abs(s.frames[i][j] - a.frames[i][j] - b.frames[i][j]));
            scale = std::max(scale, std::abs(s.frames[i][j]));
        }
    CHECK(worst <= 1e-10 * scale);

    CHECK_THROWS_AS(linear_ibvp_solve(g1, TimeTrace(0, 2e-3, ComplexVec(51))), Error);
}

TEST_CASE("linear PDE residual is second order") {
    double prev = 0.0;
    for (double dt : {2e-3, 1e-3}) {
        auto steps = static_cast<std::size_t>(std::llround(0.1 / dt));
        GridSpec g = make_grid(20, 512, dt, steps);
        auto hist = linear_ibvp_solve(half_gaussian(g), gaussian_trace(dt, steps + 1));
        double r = pde_residual_linear(hist);
        MESSAGE("dt " << dt << " residual " << r);
        if (prev > 0) CHECK(prev / r >= 3.0);
        prev = r;
    }
}

TEST_CASE("Kato trace ratio") {
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    CHECK(kato_trace_check(Field(g), 1.0) == 0.0);
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::exp(-g.x(j) * g.x(j)) * std::polar(1.0, g.x(j));
    Field f2 = f;
    for (auto& v : f2.values) v *= 2.0;
    CHECK(kato_trace_check(f, 1.0) == doctest::Approx(kato_trace_check(f2, 1.0)).epsilon(1e-12));
}
