#pragma once

#include <vector>

#include "dnls/types.hpp"

namespace dnls {

/// W_R(t) g: multiplies the spectrum by exp(-i t xi^2).
Field free_propagate(const Field& g, double t);

/// Gauss-Legendre panels on [0, beta_max] for the boundary beta-integrals.
/// Panel widths follow the local oscillation rate of
/// exp(i beta x - i beta^2 (t - s)) with |x| <= x_extent, |t - s| <= t_extent.
struct BetaQuadrature {
    std::vector<double> beta;
    std::vector<double> weight;
    double beta_max = 0.0;
};

BetaQuadrature make_beta_quadrature(double beta_max, double x_extent, double t_extent,
                                    std::size_t min_nodes = 1000);

/// Evaluates W1 b and W2 b on every grid point for a fixed list of times.
/// Deterministic: fixed node order and blocked products.
class BoundaryPropagator {
  public:
    /// `trace_dt` is the sampling step of the forcing traces, which fixes
    /// beta_max = sqrt(pi / trace_dt); `trace_extent` bounds their support.
    BoundaryPropagator(const GridSpec& grid, std::vector<double> times, double trace_dt,
                       double trace_extent);

    /// Frames [n][j] of (use_w1 ? W1 b : 0) + (use_w2 ? W2 b : 0).
    std::vector<ComplexVec> apply(const TimeTrace& b, bool use_w1, bool use_w2,
                                  Warnings* warnings = nullptr) const;

    const BetaQuadrature& quadrature() const { return quad_; }
    const GridSpec& grid() const { return grid_; }
    const std::vector<double>& times() const { return times_; }

  private:
    GridSpec grid_;
    std::vector<double> times_;
    double trace_dt_;
    double trace_extent_;
    BetaQuadrature quad_;
};

/// (1/pi) \int_0^{beta_max} exp(-i beta^2 t + i beta x) beta \hat h(-beta^2) dbeta on the grid.
Field boundary_w1(const TimeTrace& h, const GridSpec& grid, double t, Warnings* warnings = nullptr);
/// (1/pi) \int_0^{beta_max} exp(i beta^2 t - beta x) rho(beta x) beta \hat h(beta^2) dbeta on the grid.
Field boundary_w2(const TimeTrace& h, const GridSpec& grid, double t, Warnings* warnings = nullptr);

/// Trace at x = 0 of the free evolution of g_e at t_i = i dt, times eta(t_i).
TimeTrace corrector_p(const Field& g_e, double dt, std::size_t n_samples);

/// Values of f at x = 0 for every frame.
TimeTrace boundary_trace(const SolutionHistory& hist, TraceRole role = TraceRole::trace_D0);

/// Forcing trace used by the boundary operators: the samples of `b` on
/// [0, T] (T = n_steps dt) continued past T by a C^2 reflection and tapered
/// smoothly to zero at 4T/3. Values on [0, T] are unchanged, and by
/// causality so is the solution on x >= 0, t <= T.
TimeTrace boundary_forcing(const TimeTrace& b, std::size_t n_steps);

/// Boundary part W0(0, b) on every frame t_n = n dt, n = 0..n_steps, with
/// the propagator cached per grid.
std::vector<ComplexVec> boundary_solution(const GridSpec& grid, const TimeTrace& b,
                                          Warnings* warnings = nullptr);

/// Compatibility tolerance 1e-6 (1 + max|g|) on |g(0) - h(0)|.
void check_compatibility(const Field& g, const TimeTrace& h);

/// W0^t(g, h) = W_R(t) g_e + W0^t(0, h - p) on t_n = n dt, n = 0..n_steps of
/// g.grid. Frame 0 equals g on x >= 0 exactly.
SolutionHistory linear_ibvp_solve(const Field& g, const TimeTrace& h, Warnings* warnings = nullptr);

/// u_xx for residual evaluation: spectral for full-line fields, eighth-order
/// centered differences for half-line fields, whose boundary layers at x = 0
/// are not resolved by the grid and would leak into a global derivative.
Field residual_second_derivative(const Field& u);

/// max over interior frames of || i u_t + u_xx ||_{L^2(1 <= x <= L - 5)},
/// u_t by centered differences.
double pde_residual_linear(const SolutionHistory& hist);

/// L^2([0, T]) norm of u(0, t) - h(t) over the frames of hist.
double trace_error_l2(const SolutionHistory& hist, const TimeTrace& h);

/// max over 32 positions x of || eta W_R g (x, .) ||_{H^{(2s+1)/4}_t} / ||g||_{H^s}.
/// The time window is [-2, 2] sampled with step `dt`.
double kato_trace_check(const Field& g, double s, double dt = 2e-3);

/// L^2(a <= x <= b) norm by the trapezoid rule over grid points.
double windowed_l2(const GridSpec& grid, const ComplexVec& v, double a, double b);

}  // namespace dnls
