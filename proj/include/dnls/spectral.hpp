#pragma once

#include <span>
#include <string_view>

#include "dnls/types.hpp"

namespace dnls {

// ---------------------------------------------------------------- FFT

/// Unnormalized DFT, out[m] = sum_j in[j] exp(-2 pi i j m / n). n may be any
/// size FFTW accepts; plans are cached per (size, direction).
void dft_forward(std::span<const Complex> in, std::span<Complex> out);
/// Unnormalized inverse DFT (positive exponent, no 1/n).
void dft_backward(std::span<const Complex> in, std::span<Complex> out);

/// Periodic expansion coefficients c_m with f(x_j) = sum_m c_m exp(i xi_m x_j).
ComplexVec coefficients(const Field& f);
Field field_from_coefficients(const GridSpec& grid, const ComplexVec& c,
                              Side side = Side::full_line);

// ------------------------------------------------ continuum transforms

/// Samples of  \hat g(xi_m) = \int e^{-i x xi_m} g(x) dx  (factor dx, FFT slot order).
Spectrum forward_transform(const Field& f);
/// Inverse with weight dxi/(2 pi).
Field inverse_transform(const Spectrum& s, Side side = Side::full_line);

/// Discrete H^s(R) norm: (sum <xi>^{2s} |\hat g|^2 dxi / 2pi)^{1/2}.
double sobolev_norm(const Field& f, double s);
/// Same norm from expansion coefficients on `grid`.
double sobolev_norm_coefficients(const GridSpec& grid, const ComplexVec& c, double s);
/// L^2 norm by the periodic trapezoid rule (equals sobolev_norm(f, 0)).
double l2_norm(const Field& f);

/// Spectral x-derivative.
Field spectral_derivative(const Field& f);
/// Spectral second derivative.
Field spectral_second_derivative(const Field& f);

/// H^s norm of a sampled time function, treated as periodic on its window.
double sobolev_norm_time(std::span<const Complex> values, double dt, double s);

// ------------------------------------------------ half line

/// Identifier of the extension operator, recorded in run metadata.
std::string_view extension_id();

/// Right inverse of restriction: keeps x >= 0 samples and fills x < 0 by
/// g_e(-y) = w(y) g(y) - 2 exp(-(y/1.5)^4) (g'(0) y + g'''(0) y^3 / 6), an even
/// reflection with its odd Taylor terms flipped, so g_e is C^4 across 0.
/// Derivatives at 0 come from a degree-9 least-squares fit to 20 samples; w = eta(y, L/4)
/// vanishes for y >= L/2. `target_smoothness` is accepted for interface
/// symmetry.
Field extend(const Field& g, double target_smoothness = 2.0);

/// Zeroes the x < 0 samples and marks the field as half-line data.
Field restrict_halfline(const Field& f);

/// Upper bound for the H^s(R^+) norm: the full-line norm of extend(g).
double halfline_sobolev_norm(const Field& g, double s);

/// d/dx on the x >= 0 samples by nine-point stencils (centered where they
/// fit, shifted toward the interior at both ends); zero for x < 0.
Field halfline_derivative(const Field& f);

/// \int_0^{x_max} |f|^2 over the x >= 0 grid points (Simpson).
double halfline_mass(const Field& f);

// ------------------------------------------------ cutoffs

/// C^infinity smooth step: 0 for r <= 0, 1 for r >= 1.
double smooth_step(double r);
/// Smooth even bump: 1 on |t| <= T, 0 on |t| >= 2T.
double cutoff_eta(double t, double T_support = 1.0);
/// 1 on x >= 0, 0 on x <= -2, smooth monotone in between.
double cutoff_rho(double x);

// ------------------------------------------------ quadrature

/// Finite-difference weights at 0 for derivatives 0..m on nodes z (Fornberg).
std::vector<std::vector<double>> fd_weights(const std::vector<double>& z, int m);

/// Composite Simpson over uniformly spaced samples (3/8 rule closes an odd
/// interval count, trapezoid for a single interval).
double simpson(std::span<const double> f, double h);
Complex simpson(std::span<const Complex> f, double h);

/// out[j] = \int_{x_j}^{x_{n-1}} f, fourth-order per-interval weights,
/// accumulated from the right edge.
std::vector<double> reverse_cumulative_integral(std::span<const double> f, double h);

/// out[j] = \int_{t_0}^{t_j} f by the trapezoid rule.
ComplexVec cumulative_trapezoid(std::span<const Complex> f, double h);

/// \int_0^\infty e^{-i xi t} h(t) dt for samples on [t0, t_end] (t0 must be 0);
/// Filon quadrature on piecewise quadratics, exact in the oscillatory factor.
/// Adds a truncation warning when |h(t_end)| > 1e-8 max|h|.
Complex halfline_time_fourier(const TimeTrace& h, double xi, Warnings* warnings = nullptr);

/// Raw Filon integral \int_{t0}^{t0+(n-1)dt} e^{-i xi t} f(t) dt.
Complex filon_fourier(std::span<const Complex> f, double t0, double dt, double xi);

}  // namespace dnls
