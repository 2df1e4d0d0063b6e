#include "dnls/types.hpp"

#include <cmath>
#include <numbers>

namespace dnls {

const char* error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ok: return "ok";
        case ErrorCode::invalid_parameter: return "invalid_parameter";
        case ErrorCode::grid_mismatch: return "grid_mismatch";
        case ErrorCode::compatibility_violation: return "compatibility_violation";
        case ErrorCode::blowup_detected: return "blowup_detected";
        case ErrorCode::no_contraction: return "no_contraction";
        case ErrorCode::outer_no_contraction: return "outer_no_contraction";
        case ErrorCode::bandlimit_violation: return "bandlimit_violation";
        case ErrorCode::insufficient_range: return "insufficient_range";
        case ErrorCode::window_violation: return "window_violation";
        case ErrorCode::division_guard: return "division_guard";
        case ErrorCode::invalid_config: return "invalid_config";
        case ErrorCode::io_error: return "io_error";
    }
    return "unknown";
}

double GridSpec::dxi() const { return std::numbers::pi / L_; }

GridSpec make_grid(double L, std::size_t N, double dt, std::size_t n_steps) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw Error(ErrorCode::invalid_parameter, "grid: L must be positive");
    if (N < 16 || (N & (N - 1)) != 0)
        throw Error(ErrorCode::invalid_parameter, "grid: N must be a power of two >= 16");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw Error(ErrorCode::invalid_parameter, "grid: dt must be positive");
    if (n_steps < 1) throw Error(ErrorCode::invalid_parameter, "grid: n_steps must be >= 1");
    GridSpec g;
    g.L_ = L;
    g.n_ = N;
    g.dt_ = dt;
    g.n_steps_ = n_steps;
    return g;
}

Field::Field(GridSpec g, ComplexVec v, Side s) : grid(g), values(std::move(v)), side(s) {
    if (values.size() != grid.size())
        throw Error(ErrorCode::grid_mismatch, "field: value count differs from grid size");
}

double Field::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

TimeTrace::TimeTrace(double t0_, double dt_, ComplexVec v, TraceRole r)
    : t0(t0_), dt(dt_), values(std::move(v)), role(r) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "trace: dt must be positive");
    for (const auto& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw Error(ErrorCode::invalid_parameter, "trace: non-finite sample");
    if (role == TraceRole::gamma_phase)
        for (auto& z : values)
            if (std::abs(z.imag()) > 1e-12)
                throw Error(ErrorCode::invalid_parameter, "trace: gamma phase must be real");
}

double TimeTrace::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

Complex TimeTrace::at(double t) const {
    if (values.empty()) return {};
    double r = (t - t0) / dt;
    if (r < 0.0 || r > static_cast<double>(values.size() - 1)) return {};
    auto i = static_cast<std::size_t>(std::floor(r));
    if (i + 1 >= values.size()) return values.back();
    double w = r - static_cast<double>(i);
    return (1.0 - w) * values[i] + w * values[i + 1];
}

}  // namespace dnls
