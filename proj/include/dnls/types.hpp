#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

enum class ErrorCode {
    ok = 0,
    invalid_parameter,
    grid_mismatch,
    compatibility_violation,
    blowup_detected,
    no_contraction,
    outer_no_contraction,
    bandlimit_violation,
    insufficient_range,
    window_violation,
    division_guard,
    invalid_config,
    io_error,
};

const char* error_name(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code; the C API maps it onto
/// integer status values.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Non-fatal numerical conditions (truncation, bandwidth) collected by
/// operations that can detect them.
struct Warnings {
    std::vector<std::string> messages;
    void add(std::string msg) { messages.push_back(std::move(msg)); }
    bool empty() const { return messages.empty(); }
};

/// Uniform periodic grid on [-L, L) with N points, plus time stepping data.
class GridSpec {
  public:
    GridSpec() = default;

    double half_length() const { return L_; }
    std::size_t size() const { return n_; }
    double dx() const { return 2.0 * L_ / static_cast<double>(n_); }
    double dxi() const;  // pi / L
    double dt() const { return dt_; }
    std::size_t n_steps() const { return n_steps_; }

    double x(std::size_t j) const { return -L_ + static_cast<double>(j) * dx(); }
    /// Signed lattice index of FFT slot m.
    long wavenumber(std::size_t m) const {
        return m < n_ / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n_);
    }
    double xi(std::size_t m) const { return static_cast<double>(wavenumber(m)) * dxi(); }
    /// Index of the grid point x = 0.
    std::size_t origin() const { return n_ / 2; }
    /// Largest |k| retained by the 2/3 dealiasing rule (strictly below N/3).
    long dealias_cutoff() const { return static_cast<long>((n_ - 1) / 3); }

    bool same_space(const GridSpec& o) const { return n_ == o.n_ && L_ == o.L_; }
    bool operator==(const GridSpec& o) const {
        return n_ == o.n_ && L_ == o.L_ && dt_ == o.dt_ && n_steps_ == o.n_steps_;
    }

  private:
    friend GridSpec make_grid(double L, std::size_t N, double dt, std::size_t n_steps);
    double L_ = 1.0;
    std::size_t n_ = 16;
    double dt_ = 1.0;
    std::size_t n_steps_ = 1;
};

/// Validates and builds a grid; throws invalid_parameter.
GridSpec make_grid(double L, std::size_t N, double dt, std::size_t n_steps);

enum class Side { full_line, half_line };

struct Field {
    GridSpec grid;
    ComplexVec values;
    Side side = Side::full_line;

    Field() = default;
    Field(GridSpec g, Side s = Side::full_line) : grid(g), values(g.size()), side(s) {}
    Field(GridSpec g, ComplexVec v, Side s = Side::full_line);

    std::size_t size() const { return values.size(); }
    Complex& operator[](std::size_t j) { return values[j]; }
    const Complex& operator[](std::size_t j) const { return values[j]; }
    double max_abs() const;
    bool all_finite() const;
};

/// Transform-domain samples in FFT slot order (slot m <-> xi = grid.xi(m)).
struct Spectrum {
    GridSpec grid;
    ComplexVec values;
};

enum class TraceRole { boundary_h, boundary_H, trace_D0, gamma_phase, duhamel_trace };

struct TimeTrace {
    double t0 = 0.0;
    double dt = 1.0;
    ComplexVec values;
    TraceRole role = TraceRole::boundary_h;

    TimeTrace() = default;
    TimeTrace(double t0_, double dt_, ComplexVec v, TraceRole r = TraceRole::boundary_h);

    std::size_t size() const { return values.size(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double t_end() const { return values.empty() ? t0 : time(values.size() - 1); }
    double max_abs() const;
    /// Linear interpolation inside the sampled range, zero outside.
    Complex at(double t) const;
};

/// Frames u(., j*dt) for j = 0..n_steps on one grid.
struct SolutionHistory {
    GridSpec grid;
    std::vector<Field> frames;
    std::string extension_id;

    std::size_t n_frames() const { return frames.size(); }
    double time(std::size_t j) const { return static_cast<double>(j) * grid.dt(); }
};

struct SobolevParams {
    double s = 1.0;
    double a = 0.0;
    double b = 0.5;
    double alpha = -1.0;
};

}  // namespace dnls
