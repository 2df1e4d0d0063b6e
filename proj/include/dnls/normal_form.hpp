#pragma once

#include <cstdint>

#include "dnls/types.hpp"

namespace dnls {

/// Lattice quadruple with k0 - k1 + k2 - k3 = 0.
struct FrequencyQuadruple {
    long k0 = 0, k1 = 0, k2 = 0, k3 = 0;
    double r = 0.0;  // xi0^2 - xi1^2 + xi2^2 - xi3^2
};

/// 2 (xi0 - xi1)(xi0 - xi3).
double resonance_factor(double xi0, double xi1, double xi3);

/// Quadruple with k2 = k1 + k3 - k0 and its resonance value by direct sum.
FrequencyQuadruple make_quadruple(const GridSpec& grid, long k0, long k1, long k3);

/// max over n random lattice triples of |factorized - direct| / (1 + |direct|).
double resonance_factorization_check(const GridSpec& grid, std::size_t n, std::uint64_t seed);

struct NormalFormStats {
    double min_abs_denominator = 0.0;  // over all summed non-resonant quadruples
    std::size_t terms = 0;
};

/// Sums below run over lattice quadruples xi - xi1 + xi2 - xi3 = 0 with
/// k1 outer ascending, k3 inner ascending, per-k1 row sums combined
/// pairwise; the non-resonant region is |xi - xi1|, |xi - xi3| >= threshold.
/// Inputs must be band-limited so that the summed output band fits the
/// lattice (bandlimit_violation otherwise). Coefficients below 1e-12 of the
/// peak are treated as outside the band.

/// B(u)^(xi) = sum_nonres xi2 u1 conj(u2) u3 / r.
Field compute_B(const Field& u, double threshold = 1.0, NormalFormStats* stats = nullptr);
/// R(u)^(xi) = sum_res xi2 u1 conj(u2) u3 (complementary region, no denominator).
Field compute_R(const Field& u, double threshold = 1.0);
/// Unrestricted trilinear sum T(u) = i u^2 conj(u_x), formed by physical products.
Field compute_T(const Field& u);
/// Non-resonant numerator sum, so that T = R + compute_S.
Field compute_S(const Field& u, double threshold = 1.0);
/// w = -i u^2 conj(u_x) - |u|^4 u / 2 with dealiased products.
Field compute_w(const Field& u);
/// NR1(u, w)^(xi) = 2 sum_nonres xi2 u1 conj(u2) w3 / r.
Field compute_NR1(const Field& u, const Field& w, double threshold = 1.0);
/// NR2(u, w)^(xi) = - sum_nonres xi2 u1 conj(w2) u3 / r.
Field compute_NR2(const Field& u, const Field& w, double threshold = 1.0);

/// max over interior frames of || i d/dt (e^{-it D}(u - B u)) + e^{-it D}(R + |u|^4 u / 2 + NR1 + NR2) ||_{L^2},
/// centered time differences, evaluated for the dealiased system on |k| <= (N-1)/3.
/// `hist` must come from solve_fullline with alpha = -1.
double normal_form_residual(const SolutionHistory& hist, double threshold = 1.0);

}  // namespace dnls
