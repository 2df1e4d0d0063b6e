#pragma once

#include <vector>

#include "dnls/types.hpp"

namespace dnls {

/// i u_t + u_xx + c1 u^2 conj(u)_x + c2 |u|^2 u_x + c3 |u|^4 u = 0.
struct EquationForm {
    double alpha = -1.0;

    Complex c1() const { return Complex(0.0, -(2.0 * alpha + 1.0)); }
    Complex c2() const { return Complex(0.0, -(2.0 * alpha + 2.0)); }
    double c3() const { return alpha * (2.0 * alpha + 1.0) / 2.0; }
};

struct PicardTrace {
    std::vector<double> iterate_distances;
    std::vector<double> contraction_factors;
    bool converged = false;
    double T_used = 0.0;
    std::size_t iterations() const { return iterate_distances.size(); }
};

/// Pointwise nonlinearity c1 u^2 conj(u_x) + c2 |u|^2 u_x + c3 |u|^4 u for
/// a given u and u_x.
ComplexVec nonlinearity(const ComplexVec& u, const ComplexVec& ux, const EquationForm& eq);

/// Expansion coefficients (FFT slot order, e^{i xi (x + L)} basis, weight 1/N)
/// of the dealiased nonlinearity: u is truncated to |k| <= (N-1)/3, products
/// are formed on a 2N-point grid, and the result is truncated again.
ComplexVec dealiased_nonlinearity(const ComplexVec& raw, const GridSpec& grid, const EquationForm& eq);

/// Same for c1 u^2 conj(u_x) + c2 |u|^2 u_x + c3 |u|^4 u with free coefficients.
ComplexVec dealiased_polynomial(const ComplexVec& raw, const GridSpec& grid, Complex c1, Complex c2, double c3);

/// One integrating-factor RK4 step. Throws blowup_detected when the result
/// is non-finite or max|u| exceeds 1e6.
Field step_fullline(const Field& u, double dt, const EquationForm& eq);

/// Frames at t_n = n dt, n = 0..T/dt, frame 0 = g.
SolutionHistory solve_fullline(const Field& g, double T, double dt, const EquationForm& eq);

/// Gamma u = W0(g, h) + D(u) - W0(0, q) with D(u) = i \int_0^t W_R(t - s) F(u(s)) ds,
/// F(u) = eta(s/T) (i u^2 conj(u_x) + |u|^4 u / 2) and q = D(u)(0, .).
/// Frames follow u_cand.grid; the eta(t) multipliers are 1 there since T < 1.
SolutionHistory duhamel_map(const SolutionHistory& u_cand, const Field& g, const TimeTrace& h, double T,
                            Warnings* warnings = nullptr);

struct HalflineSolution {
    SolutionHistory history;
    PicardTrace trace;
};

/// Picard iteration of Gamma from u_0 = W0(g, h) on the grid of g with
/// n_steps = T / g.grid.dt(). Distances are sup_t ||u_{n+1} - u_n||_{H^s}.
/// Throws no_contraction after three consecutive factors above 1 or when an
/// iterate trips the blowup guard.
HalflineSolution solve_halfline_gauged(const Field& g, const TimeTrace& h, double T, double tol,
                                       std::size_t max_iter, double s = 1.0, Warnings* warnings = nullptr);

/// max over interior frames of the equation residual in L^2(1 <= x <= L - 5);
/// centered time differences, spectral x-derivatives for full-line fields and
/// eighth-order differences for half-line fields.
double residual_pde(const SolutionHistory& hist, const EquationForm& eq);

struct DnlsSolution {
    SolutionHistory q;
    SolutionHistory u;
    TimeTrace gamma;
    std::vector<double> outer_distances;
    std::vector<double> anchor_errors;  // |mass of the inner solution at t = 0 - ||g||^2| per outer iterate
    PicardTrace last_inner;
};

/// Half-line problem for eq(alpha) with data (G, H): u = G_{-1-alpha} q solves
/// the alpha = -1 problem with boundary data exp(i (1 + alpha) gamma(t)) H(t),
/// gamma(t) = ||u(., t)||^2_{L^2(R^+)}; gamma is found by plain fixed-point
/// iteration from gamma = ||g||^2. Throws outer_no_contraction after 50
/// outer iterates.
DnlsSolution solve_halfline_dnls(const Field& G, const TimeTrace& H, double alpha, double T, double tol,
                                 double inner_tol = 1e-10, std::size_t max_inner = 30,
                                 Warnings* warnings = nullptr);

/// sup over interior frames of |d gamma/dt - 2 Im(conj(h) u_x(0, t)) - |h|^4 / 2|,
/// gamma(t) = ||u(., t)||^2_{L^2(R^+)}.
double gamma_rate_identity_check(const SolutionHistory& hist, const TimeTrace& h);

/// Right-hand side 2 Im(conj(h) u_x(0, t)) + |h|^4 / 2 of the mass rate
/// identity, u_x(0, t) by one-sided fourth-order differences.
std::vector<double> gamma_rate(const SolutionHistory& hist, const TimeTrace& h);

}  // namespace dnls
