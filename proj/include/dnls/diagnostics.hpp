#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dnls/types.hpp"

namespace dnls {

// ------------------------------------------------ data generators

/// Uniform deviate in [0, 1) from the top 53 bits of a 64-bit draw; the
/// same on every platform.
double unit_uniform(std::uint64_t bits);

/// Rough data at the H^s threshold: |g^(xi)| = <xi>^{-s-1/2} with uniform
/// random phases on |k| <= (N-1)/3, multiplied by a smooth window equal to 1
/// on [center - width/2, center + width/2] with unit-length tapers, projected
/// back to |k| <= (N-1)/3 and scaled to max|g| = amplitude. For side
/// half_line the window must lie inside x > 0 and samples at x < 0 are zero.
Field threshold_data(const GridSpec& grid, double s, double amplitude, std::uint64_t seed, double center,
                     double width, Side side = Side::full_line);

/// Random band-limited field: Gaussian coefficients on |xi| <= xi_band
/// weighted by <xi>^{-1}, scaled to ||f||_{H^1} = h1_norm.
Field random_field(const GridSpec& grid, double xi_band, double h1_norm, std::uint64_t seed);

// ------------------------------------------------ smoothing exponent

struct SmoothingFit {
    double s = 0.0;
    double a_predicted = 0.0;
    double a_measured = 0.0;
    std::size_t dyadic_levels = 0;
    double residual_of_fit = 0.0;
    double slope_linear = 0.0;
    double slope_residual = 0.0;
    std::vector<int> levels;
    std::vector<double> E_linear, E_residual;
};

/// min(1/2, 2s - 1) on the full line, min(5/2 - s, 1/4, 2s - 1) on the half-line.
double smoothing_prediction(double s, Side domain);

/// Dyadic energies E_j = sum_{2^j <= |xi| < 2^{j+1}} |f^(xi)|^2 dxi of
/// r = u - linear and of the linear part at the middle frame. Half-line
/// fields are reflected before transforming (odd for the residual, even for
/// the linear part). Levels are complete bands below the dealiasing cutoff
/// with both energies above 1e-13; the fit uses the top five of them with
/// j >= 1. a_measured is half the slope gap of log2 E_j against j.
/// Throws insufficient_range below four levels.
SmoothingFit smoothing_fit(const SolutionHistory& hist, const SolutionHistory& linear, double s);

// ------------------------------------------------ energies and identities

enum class EnergyVariant { E_half, E_dnls };

/// E_half = ||u_x||^2 + 1/2 Im \int u conj(u_x) |u|^2,
/// E_dnls = ||q_x||^2 + 3/2 Im \int q conj(q_x) |q|^2 + 1/2 ||q||_6^6.
/// Full-line fields: spectral derivative and periodic trapezoid; half-line
/// fields: nine-point differences and Simpson over x >= 0.
double energy_functional(const Field& u, EnergyVariant variant);

/// ||u||_{L^2}^2 and ||u_x||_{L^2}^2 over the field's domain.
double mass_of(const Field& u);
double gradient_mass_of(const Field& u);

/// Per-frame bookkeeping of the half-line identities for
/// i u_t + u_xx - i |u|^2 u_x = 0 with u(0, t) = h(t).
struct HalflineIdentities {
    std::vector<double> t;
    std::vector<double> mass_residual;
    std::vector<double> energy_residual;
    std::vector<double> I_t;
    std::vector<double> It_residual;
};

/// u_x(0, t) by one-sided fourth-order differences, h' by centered
/// differences of the sampled trace, time integrals by the trapezoid rule.
HalflineIdentities halfline_identities(const SolutionHistory& hist, const TimeTrace& h);

/// sup_t | ||u(t)||^2 - ||g||^2 - 2 Im \int_0^t u_x(0) conj(h) + 1/2 \int_0^t |h|^4 |.
double mass_identity_residual(const SolutionHistory& hist, const TimeTrace& h);
/// sup_t | E_half(u(t)) - E_half(g) + 2 Re \int_0^t u_x(0) conj(h') - 1/2 Im \int_0^t conj(h) h' |h|^2 |.
double energy_identity_residual(const SolutionHistory& hist, const TimeTrace& h);

struct BoundaryIt {
    std::vector<double> I_t;  // \int_0^t |u_x(0, s)|^2 ds per frame
    double identity_residual = 0.0;
};
/// I_t against Re(i \int u conj(u_x) - i \int g conj(g') + i \int_0^t h conj(h')).
BoundaryIt boundary_It(const SolutionHistory& hist, const TimeTrace& h);

struct ConservationSeries {
    std::vector<double> t, mass, E_half, E_dnls, mass_drift_rel, energy_drift_rel;
};
/// For a full-line alpha = -1 history u: ||u||^2, E_half(G_{1/2} u) and
/// E_dnls(G_1 u) per frame; drifts are relative to frame 0 (energy drift
/// refers to E_dnls).
ConservationSeries conservation_series(const SolutionHistory& hist);

/// ||f||_{H^1(R^+)} from the x >= 0 samples.
double halfline_h1_norm(const Field& f);

struct GlobalBoundRun {
    std::vector<double> t;
    std::vector<double> h1;
    double initial = 0.0;
    double max_ratio = 0.0;  // sup_t h1(t) / h1(0)
};
/// Consecutive solve_halfline_dnls calls of length T_local up to T_total.
/// Each restart takes the last frame as data with its x = 0 sample set to
/// H(t) so that the compatibility condition holds exactly, and damps it by
/// a smooth sponge on [7L/8 - 1, L - 1] so that outgoing waves do not reach
/// the periodic edge.
GlobalBoundRun global_bound_run(const Field& G, const TimeTrace& H, double alpha, double T_total, double T_local,
                                double tol, Warnings* warnings = nullptr);

/// max over samples of (||u_x||^2 - E_half(u)) / (||u_x||^2 ||u||^2), clipped at 0.
double gn_coercivity_probe(const std::vector<Field>& samples);

// ------------------------------------------------ space-time norms

/// Windowed X^{s,b} norm: frames on [0, 2 T_w] are continued to [-2 T_w, 0)
/// by free evolution of frame 0, multiplied by eta(t / T_w), zero-padded to
/// a period of 8 T_w, and transformed in (x, t):
/// ( 2L dt / M * sum <xi>^{2s} <tau + xi^2>^{2b} |c(xi, tau)|^2 )^{1/2}.
double xsb_norm(const SolutionHistory& hist, double s, double b, double T_w);

enum class EstimateId { smooth, smooth3, smooth5, b38 };

const char* estimate_name(EstimateId id);
EstimateId estimate_from_name(const std::string& name);

/// Throws window_violation when (s, a, b) lies outside the stated range.
void check_estimate_window(EstimateId id, double s, double a, double b);

struct RatioSample {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

struct RatioProbe {
    EstimateId id = EstimateId::smooth;
    double s = 0.0, a = 0.0, b = 0.0;
    std::vector<RatioSample> samples;
    double max_ratio = 0.0;
};

/// LHS / RHS over random band-limited space-time fields u on grid
/// (|xi| <= 2, modulated free waves on [0, 2 T_w]):
///   smooth:  || |u|^4 u ||_{X^{s+a,-b}} / ||u||_{X^{s,b}}^5
///   smooth3: || u^2 conj(u_x) ||_{X^{s+a,-b}} / ||u||_{X^{s,b}}^3
///   smooth5: ||B(u(0))||_{H^{s+a}} / ||u(0)||_{H^s}^3
///   b38:     ||w||_{X^{s,-3/8}} / (X^3 + X^5), X = ||u||_{X^{s,1-b}}
/// Zero fields are excluded from the max.
RatioProbe multilinear_ratio_probe(EstimateId id, std::size_t samples, double s, double a, double b,
                                   const GridSpec& grid, double T_w, std::uint64_t seed);

// ------------------------------------------------ reports

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool upper = true;  // pass when value <= threshold, else value >= threshold
    bool passed = false;
};

struct DiagnosticsReport {
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> metadata;

    const CheckResult& add(std::string name, double value, double threshold, bool upper = true);
    bool all_passed() const;
};

}  // namespace dnls
