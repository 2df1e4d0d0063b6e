#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "dnls/spectral.hpp"

using namespace dnls;
using std::numbers::pi;

namespace {

Field gaussian(const GridSpec& g, double width = 1.0) {
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::exp(-g.x(j) * g.x(j) / (width * width));
    return f;
}

Field random_smooth(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    Field f(g);
    double c1 = nd(rng), c2 = nd(rng), k = nd(rng);
    for (std::size_t j = 0; j < g.size(); ++j) {
        double x = g.x(j);
        f[j] = Complex(c1, c2) * std::exp(-0.5 * x * x) * std::polar(1.0, k * x);
    }
    return f;
}

}  // namespace

TEST_CASE("make_grid arithmetic and validation") {
    GridSpec g = make_grid(20, 256, 1e-3, 1000);
    CHECK(g.dx() == doctest::Approx(0.15625).epsilon(1e-15));
    CHECK(g.dxi() == doctest::Approx(pi / 20));
    CHECK(make_grid(40, 1024, 5e-4, 2000).dx() == 0.078125);
    CHECK_THROWS_AS(make_grid(20, 255, 1e-3, 10), Error);
    CHECK_THROWS_AS(make_grid(-1, 256, 1e-3, 10), Error);
    CHECK_THROWS_AS(make_grid(20, 256, 0.0, 10), Error);
    CHECK_THROWS_AS(make_grid(20, 8, 1e-3, 10), Error);
}

TEST_CASE("forward transform of a Gaussian") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Spectrum s = forward_transform(gaussian(g));
    double worst = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        double xi = g.xi(m);
        if (std::abs(xi) > 5) continue;
        Complex exact = std::sqrt(pi) * std::exp(-xi * xi / 4);
        worst = std::max(worst, std::abs(s.values[m] - exact) / std::abs(exact));
    }
    CHECK(worst <= 1e-10);

    Spectrum z = forward_transform(Field(g));
    for (auto& v : z.values) CHECK(v == Complex{});
}

TEST_CASE("round trip and Plancherel") {
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Field f = random_smooth(g, rng);
        Field back = inverse_transform(forward_transform(f));
        double err = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(back[j] - f[j]));
        CHECK(err <= 1e-12 * f.max_abs());
        CHECK(sobolev_norm(f, 0) == doctest::Approx(l2_norm(f)).epsilon(1e-10));
    }
}

TEST_CASE("Sobolev norms") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    CHECK(sobolev_norm(gaussian(g), 0) == doctest::Approx(std::pow(pi / 2, 0.25)).epsilon(1e-8));
    CHECK(sobolev_norm(Field(g), 1.3) == 0.0);
    // H^1 norm^2 of e^{-x^2} = sqrt(pi/2) (1 + 1)
    CHECK(sobolev_norm(gaussian(g), 1) == doctest::Approx(std::sqrt(2 * std::sqrt(pi / 2))).epsilon(1e-10));
}

TEST_CASE("half-line norm and extension") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Field half = restrict_halfline(gaussian(g));
    double lower = std::pow(pi / 8, 0.25);
    double prev = 0.0;
    for (double s : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        double v = halfline_sobolev_norm(half, s);
        CHECK(v >= lower);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(halfline_sobolev_norm(Field(g, Side::half_line), 1.0) == 0.0);
    CHECK(halfline_mass(gaussian(g)) == doctest::Approx(std::sqrt(pi / 8)).epsilon(1e-10));

    Field ex(g, Side::half_line);
    for (std::size_t j = g.origin(); j < g.size(); ++j) ex[j] = std::exp(-g.x(j));
    Field e = extend(ex);
    for (std::size_t j = g.origin(); j < g.size(); ++j) CHECK(e[j] == ex[j]);
    for (std::size_t j = 0; j < g.size(); ++j)
        if (g.x(j) <= -g.half_length() / 2) CHECK(e[j] == Complex{});
    // value, slope and curvature match at 0: mismatch is O(dx^3)
    std::size_t o = g.origin();
    double dx = g.dx();
    CHECK(std::abs(e[o - 1] - std::exp(dx)) < 5 * dx * dx * dx);
    CHECK(std::abs((e[o + 1] - e[o - 1]) / (2 * dx) + 1.0) < 5 * dx * dx);
}

TEST_CASE("extension difference constant") {
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Field a(g, Side::half_line), b(g, Side::half_line);
        double p[6];
        for (double& v : p) v = nd(rng);
        for (std::size_t j = g.origin(); j < g.size(); ++j) {
            double x = g.x(j);
            a[j] = Complex(p[0], p[1]) * std::exp(-x * x * (1 + 0.2 * std::abs(p[4])));
            b[j] = Complex(p[2], p[3]) * std::exp(-(x - 1) * (x - 1)) * std::cos(p[5] * x);
        }
        Field d(g, Side::half_line);
        for (std::size_t j = 0; j < g.size(); ++j) d[j] = a[j] - b[j];
        Field ea = extend(a), eb = extend(b);
        Field de(g);
        for (std::size_t j = 0; j < g.size(); ++j) de[j] = ea[j] - eb[j];
        double lhs = sobolev_norm(de, 1.0);
        double rhs = halfline_sobolev_norm(d, 1.0);
        worst = std::max(worst, lhs / rhs);
    }
    CHECK(worst <= 8.0);
}

TEST_CASE("cutoffs") {
    CHECK(cutoff_eta(0.5, 1) == 1.0);
    CHECK(cutoff_eta(3, 1) == 0.0);
    double mid = cutoff_eta(1.5, 1);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    double prev = 1.0;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
        double v = cutoff_eta(t, 1);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK(cutoff_rho(1) == 1.0);
    CHECK(cutoff_rho(-3) == 0.0);
    CHECK(cutoff_rho(-1) > 0.0);
    CHECK(cutoff_rho(-1) < 1.0);

    const double h = 1e-3;
    double worst_eta = 0.0, worst_rho = 0.0;
    for (double t = -5; t < 5; t += h) {
        worst_eta = std::max(worst_eta, std::abs(cutoff_eta(t + h, 1.7) - cutoff_eta(t, 1.7)) / h);
        worst_rho = std::max(worst_rho, std::abs(cutoff_rho(t + h) - cutoff_rho(t)) / h);
    }
    CHECK(worst_eta <= 3 / 1.7);
    CHECK(worst_rho <= 3);
    CHECK_THROWS_AS(cutoff_eta(0, 0), Error);
}

TEST_CASE("half-line time Fourier transform") {
    const double dt = 1e-3;
    ComplexVec v(40001);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-static_cast<double>(i) * dt);
    TimeTrace h(0.0, dt, v);
    Warnings w;
    CHECK(std::abs(halfline_time_fourier(h, 0.0, &w) - 1.0) <= 1e-8);
    CHECK(std::abs(halfline_time_fourier(h, 1.0, &w) - Complex(0.5, -0.5)) <= 1e-8);
    CHECK(w.empty());
    // high frequency: closed form stays accurate where plain Simpson fails
    double xi = 3000.0;
    Complex exact = 1.0 / Complex(1.0, xi);
    CHECK(std::abs(halfline_time_fourier(h, xi) - exact) <= 1e-8);

    TimeTrace zero(0.0, dt, ComplexVec(100));
    CHECK(halfline_time_fourier(zero, 2.0) == Complex{});

    ComplexVec short_v(1001);
    for (std::size_t i = 0; i < short_v.size(); ++i) short_v[i] = std::exp(-static_cast<double>(i) * dt);
    Warnings w2;
    halfline_time_fourier(TimeTrace(0.0, dt, short_v), 1.0, &w2);
    CHECK(!w2.empty());

    // linearity, odd sample count
    ComplexVec a(1000), b(1000), c(1000);
    for (std::size_t i = 0; i < a.size(); ++i) {
        double t = static_cast<double>(i) * dt;
        a[i] = std::sin(3 * t);
        b[i] = Complex(t * t, -t);
        c[i] = Complex(2, 1) * a[i] - 0.5 * b[i];
    }
    Complex fa = filon_fourier(a, 0, dt, 7.0), fb = filon_fourier(b, 0, dt, 7.0);
    CHECK(std::abs(filon_fourier(c, 0, dt, 7.0) - (Complex(2, 1) * fa - 0.5 * fb)) <= 1e-12);
}

TEST_CASE("quadrature helpers") {
    std::vector<double> f(101);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(0.01 * static_cast<double>(i));
    CHECK(simpson(f, 0.01) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-9));
    std::vector<double> f2(100);
    for (std::size_t i = 0; i < f2.size(); ++i) f2[i] = std::exp(0.01 * static_cast<double>(i));
    CHECK(simpson(f2, 0.01) == doctest::Approx(std::exp(0.99) - 1.0).epsilon(1e-9));
    auto rc = reverse_cumulative_integral(f, 0.01);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(rc[i] == doctest::Approx(std::exp(1.0) - std::exp(0.01 * static_cast<double>(i))).epsilon(1e-9));
}

TEST_CASE("spectral derivatives and time norm") {
    GridSpec g = make_grid(20, 512, 1e-3, 1);
    Field f = gaussian(g);
    Field d = spectral_derivative(f), d2 = spectral_second_derivative(f);
    for (std::size_t j = 0; j < g.size(); ++j) {
        double x = g.x(j);
        CHECK(std::abs(d[j] - (-2 * x * std::exp(-x * x))) < 1e-10);
        CHECK(std::abs(d2[j] - (4 * x * x - 2) * std::exp(-x * x)) < 1e-10);
    }
    ComplexVec tv(2048);
    for (std::size_t i = 0; i < tv.size(); ++i) {
        double t = -10 + static_cast<double>(i) * 0.01;
        tv[i] = std::exp(-t * t);
    }
    CHECK(sobolev_norm_time(tv, 0.01, 0) == doctest::Approx(std::pow(pi / 2, 0.25)).epsilon(1e-8));
}
