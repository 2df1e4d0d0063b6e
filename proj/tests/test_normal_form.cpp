#include "doctest.h"

#include <cmath>
#include <random>

#include "dnls/evolution.hpp"
#include "dnls/normal_form.hpp"
#include "dnls/spectral.hpp"

using namespace dnls;

namespace {

std::size_t slot(long k, std::size_t n) {
    return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<long>(n) + k);
}

Field random_band(const GridSpec& g, long band, std::uint64_t seed, double amp = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    ComplexVec c(g.size());
    for (long k = -band; k <= band; ++k) c[slot(k, g.size())] = amp * Complex(nd(rng), nd(rng)) / (1.0 + k * k * 0.01);
    return field_from_coefficients(g, c);
}

Field mode(const GridSpec& g, long k) {
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::polar(1.0, g.dxi() * static_cast<double>(k) * g.x(j));
    return f;
}

Field gaussian(const GridSpec& g, double amp) {
    Field f(g);
    for (std::size_t j = 0; j < g.size(); ++j) {
        double x = g.x(j);
        f[j] = amp * std::exp(-x * x) * std::polar(1.0, 0.5 * x);
    }
    return f;
}

double coef_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& v : coefficients(f)) acc += std::norm(v);
    return std::sqrt(acc);
}

double coef_diff(const Field& a, const Field& b) {
    auto ca = coefficients(a), cb = coefficients(b);
    double acc = 0.0;
    for (std::size_t m = 0; m < ca.size(); ++m) acc += std::norm(ca[m] - cb[m]);
    return std::sqrt(acc);
}

Field scaled(const Field& f, double s) {
    Field out = f;
    for (auto& v : out.values) v *= s;
    return out;
}

double residual_for(double amp, double dt) {
    GridSpec g = make_grid(20, 256, dt, 1);
    auto hist = solve_fullline(gaussian(g, amp), 0.1, dt, EquationForm{-1.0});
    return normal_form_residual(hist);
}

}  // namespace

TEST_CASE("resonance factorization") {
    CHECK(resonance_factor(2, 1, 0) == 4.0);
    CHECK(resonance_factor(1.3, 1.3, -0.7) == 0.0);
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    auto q = make_quadruple(g, 5, -3, 7);
    CHECK(q.k0 - q.k1 + q.k2 - q.k3 == 0);
    CHECK(resonance_factorization_check(g, 100000, 7) <= 1e-9);
}

TEST_CASE("trivial inputs") {
    GridSpec g = make_grid(20, 128, 1e-3, 1);
    Field z(g);
    Field u = random_band(g, 10, 3);
    CHECK(l2_norm(compute_B(z)) == 0.0);
    CHECK(l2_norm(compute_R(z)) == 0.0);
    CHECK(l2_norm(compute_w(z)) == 0.0);
    CHECK(l2_norm(compute_NR1(u, z)) == 0.0);
    CHECK(l2_norm(compute_NR2(u, z)) == 0.0);
    CHECK(l2_norm(compute_NR1(z, u)) == 0.0);
    CHECK(l2_norm(compute_NR2(z, u)) == 0.0);
}

TEST_CASE("single mode: B vanishes, R carries T") {
    GridSpec g = make_grid(20, 128, 1e-3, 1);
    long k = 7;
    double kappa = g.dxi() * k;
    Field u = mode(g, k);
    CHECK(coef_norm(compute_B(u)) <= 1e-12);
    Field R = compute_R(u), T = compute_T(u);
    CHECK(coef_diff(R, T) <= 1e-12);
    auto c = coefficients(R);
    CHECK(std::abs(c[slot(k, g.size())] - kappa) <= 1e-12);

    Field w = compute_w(u);
    Field expect(g);
    for (std::size_t j = 0; j < g.size(); ++j) expect[j] = (-kappa - 0.5) * u[j];
    CHECK(coef_diff(w, expect) <= 1e-12);
}

TEST_CASE("region partition and homogeneity") {
    GridSpec g = make_grid(20, 256, 1e-3, 1);
    Field u = random_band(g, 40, 11);
    Field T = compute_T(u), R = compute_R(u), S = compute_S(u);
    Field sum(g);
    for (std::size_t j = 0; j < g.size(); ++j) sum[j] = R[j] + S[j];
    CHECK(coef_diff(T, sum) <= 1e-10 * coef_norm(T));

    NormalFormStats st;
    Field B = compute_B(u, 1.0, &st);
    CHECK(st.min_abs_denominator >= 2.0);
    CHECK(st.terms > 0);
    Field B2 = compute_B(scaled(u, 2.0));
    CHECK(coef_diff(B2, scaled(B, 8.0)) <= 1e-12 * coef_norm(B2));
    Field R2 = compute_R(scaled(u, 2.0));
    CHECK(coef_diff(R2, scaled(R, 8.0)) <= 1e-12 * coef_norm(R2));

    Field w = random_band(g, 40, 12);
    Field N1 = compute_NR1(u, w), N2 = compute_NR2(u, w);
    Field N1s = compute_NR1(scaled(u, 2.0), scaled(w, 3.0)), N2s = compute_NR2(scaled(u, 2.0), scaled(w, 3.0));
    CHECK(coef_diff(N1s, scaled(N1, 12.0)) <= 1e-12 * coef_norm(N1s));
    CHECK(coef_diff(N2s, scaled(N2, 12.0)) <= 1e-12 * coef_norm(N2s));
}

TEST_CASE("band-limit violations") {
    GridSpec g = make_grid(20, 128, 1e-3, 1);
    Field u = random_band(g, 30, 5);
    CHECK_THROWS_AS(compute_B(u), Error);
    CHECK_THROWS_AS(compute_R(u), Error);
    CHECK_THROWS_AS(compute_T(u), Error);
    Field v = random_band(g, 20, 5);
    CHECK_THROWS_AS(compute_NR1(v, u), Error);
    CHECK_THROWS_AS(compute_B(v, 0.0), Error);
}

TEST_CASE("w matches the time derivative of the profile") {
    auto mismatch = [](double dt) {
        GridSpec g = make_grid(20, 256, dt, 1);
        auto hist = solve_fullline(gaussian(g, 0.5), 4 * dt, dt, EquationForm{-1.0});
        const long K = g.dealias_cutoff();
        const std::size_t n = g.size();
        std::vector<ComplexVec> c;
        for (const auto& f : hist.frames) c.push_back(coefficients(f));
        Field w = compute_w(hist.frames[2]);
        auto cw = coefficients(w);
        double acc = 0.0;
        for (long k = -K; k <= K; ++k) {
            double xi = g.dxi() * k;
            std::size_t m = slot(k, n);
            Complex up = std::polar(1.0, hist.time(3) * xi * xi) * c[3][m];
            Complex dn = std::polar(1.0, hist.time(1) * xi * xi) * c[1][m];
            Complex lhs = Complex(0, 1) * std::polar(1.0, -hist.time(2) * xi * xi) * (up - dn) / (2.0 * dt);
            acc += std::norm(lhs - cw[m]);
        }
        return std::sqrt(2.0 * g.half_length() * acc);
    };
    double e1 = mismatch(2e-3), e2 = mismatch(1e-3);
    MESSAGE("w mismatch " << e1 << " " << e2 << " ratio " << e1 / e2);
    CHECK(e1 / e2 >= 3.0);
    CHECK(e1 / e2 <= 5.0);
}

TEST_CASE("transformed evolution identity") {
    GridSpec g = make_grid(20, 256, 1e-3, 2);
    SolutionHistory zero(g);
    zero.frames.assign(3, Field(g));
    CHECK(normal_form_residual(zero) == 0.0);

    double r1 = residual_for(0.5, 1e-3), r2 = residual_for(0.5, 5e-4);
    MESSAGE("normal form residual " << r1 << " " << r2 << " ratio " << r1 / r2);
    CHECK(r1 <= 1e-4);
    CHECK(r1 / r2 >= 2.8);
    CHECK(r1 / r2 <= 5.2);

    double a = residual_for(0.1, 1e-3), b = residual_for(0.2, 1e-3);
    double slope = std::log(b / a) / std::log(2.0);
    MESSAGE("amplitude slope " << slope);
    CHECK(slope >= 2.5);
    CHECK(slope <= 3.5);
}
