#include "dnls/dnls.h"

#include <fftw3.h>

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "dnls/diagnostics.hpp"
#include "dnls/evolution.hpp"
#include "dnls/gauge.hpp"
#include "dnls/halfline_linear.hpp"
#include "dnls/normal_form.hpp"
#include "dnls/spectral.hpp"

struct dnls_grid {
    dnls::GridSpec grid;
};
struct dnls_field {
    dnls::Field field;
};
struct dnls_trace {
    dnls::TimeTrace trace;
};
struct dnls_history {
    dnls::SolutionHistory hist;
};
struct dnls_halfline {
    dnls::DnlsSolution sol;
    dnls::TimeTrace h_u;
};
struct dnls_table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

namespace {

thread_local std::string g_last_error;

int status_of(dnls::ErrorCode code) {
    using dnls::ErrorCode;
    switch (code) {
        case ErrorCode::ok: return DNLS_OK;
        case ErrorCode::invalid_parameter: return DNLS_INVALID_PARAMETER;
        case ErrorCode::grid_mismatch: return DNLS_GRID_MISMATCH;
        case ErrorCode::compatibility_violation: return DNLS_COMPATIBILITY_VIOLATION;
        case ErrorCode::blowup_detected: return DNLS_BLOWUP_DETECTED;
        case ErrorCode::no_contraction: return DNLS_NO_CONTRACTION;
        case ErrorCode::outer_no_contraction: return DNLS_OUTER_NO_CONTRACTION;
        case ErrorCode::bandlimit_violation: return DNLS_BANDLIMIT_VIOLATION;
        case ErrorCode::insufficient_range: return DNLS_INSUFFICIENT_RANGE;
        case ErrorCode::window_violation: return DNLS_WINDOW_VIOLATION;
        case ErrorCode::division_guard: return DNLS_DIVISION_GUARD;
        case ErrorCode::invalid_config: return DNLS_INVALID_CONFIG;
        case ErrorCode::io_error: return DNLS_IO_ERROR;
    }
    return DNLS_INTERNAL_ERROR;
}

template <class F>
int guarded(F&& body) {
    try {
        body();
        g_last_error.clear();
        return DNLS_OK;
    } catch (const dnls::Error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return DNLS_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DNLS_INTERNAL_ERROR;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw dnls::Error(dnls::ErrorCode::invalid_parameter, what);
}

dnls::ComplexVec complex_from(const double* re, const double* im, std::size_t n) {
    dnls::ComplexVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = dnls::Complex(re ? re[j] : 0.0, im ? im[j] : 0.0);
    return v;
}

dnls_table* make_table(std::vector<std::string> columns) {
    auto* t = new dnls_table;
    t->columns = std::move(columns);
    return t;
}

dnls::GridSpec with_steps(const dnls::GridSpec& g, double T) {
    require(T > 0.0, "time horizon must be positive");
    auto steps = static_cast<std::size_t>(std::llround(T / g.dt()));
    require(steps >= 1, "time horizon shorter than one step");
    return dnls::make_grid(g.half_length(), g.size(), g.dt(), steps);
}

}  // namespace

extern "C" {

const char* dnls_version(void) { return "0.1.0"; }
const char* dnls_fftw_version(void) { return fftw_version; }

const char* dnls_extension_id(void) {
    static const std::string id(dnls::extension_id());
    return id.c_str();
}

const char* dnls_status_name(int status) {
    switch (status) {
        case DNLS_OK: return "ok";
        case DNLS_INVALID_PARAMETER: return "invalid_parameter";
        case DNLS_GRID_MISMATCH: return "grid_mismatch";
        case DNLS_COMPATIBILITY_VIOLATION: return "compatibility_violation";
        case DNLS_BLOWUP_DETECTED: return "blowup_detected";
        case DNLS_NO_CONTRACTION: return "no_contraction";
        case DNLS_OUTER_NO_CONTRACTION: return "outer_no_contraction";
        case DNLS_BANDLIMIT_VIOLATION: return "bandlimit_violation";
        case DNLS_INSUFFICIENT_RANGE: return "insufficient_range";
        case DNLS_WINDOW_VIOLATION: return "window_violation";
        case DNLS_DIVISION_GUARD: return "division_guard";
        case DNLS_INVALID_CONFIG: return "invalid_config";
        case DNLS_IO_ERROR: return "io_error";
        default: return "internal_error";
    }
}

const char* dnls_last_error(void) { return g_last_error.c_str(); }

// ---------------------------------------------------------------- grids

int dnls_grid_create(double L, size_t N, double dt, dnls_grid** out) {
    return guarded([&] {
        require(out != nullptr, "null output");
        *out = new dnls_grid{dnls::make_grid(L, N, dt, 1)};
    });
}

void dnls_grid_destroy(dnls_grid* grid) { delete grid; }
size_t dnls_grid_size(const dnls_grid* grid) { return grid ? grid->grid.size() : 0; }
double dnls_grid_dt(const dnls_grid* grid) { return grid ? grid->grid.dt() : 0.0; }

int dnls_grid_points(const dnls_grid* grid, double* x, size_t n) {
    return guarded([&] {
        require(grid && x && n == grid->grid.size(), "grid_points: size mismatch");
        for (std::size_t j = 0; j < n; ++j) x[j] = grid->grid.x(j);
    });
}

// ---------------------------------------------------------------- fields

int dnls_field_create(const dnls_grid* grid, const double* re, const double* im, size_t n, int half_line,
                      dnls_field** out) {
    return guarded([&] {
        require(grid && out && n == grid->grid.size(), "field_create: size mismatch");
        dnls::Field f(grid->grid, complex_from(re, im, n), half_line ? dnls::Side::half_line : dnls::Side::full_line);
        if (half_line)
            for (std::size_t j = 0; j < grid->grid.origin(); ++j) f[j] = 0.0;
        *out = new dnls_field{std::move(f)};
    });
}

void dnls_field_destroy(dnls_field* field) { delete field; }
size_t dnls_field_size(const dnls_field* field) { return field ? field->field.size() : 0; }

int dnls_field_values(const dnls_field* field, double* re, double* im, size_t n) {
    return guarded([&] {
        require(field && n == field->field.size(), "field_values: size mismatch");
        for (std::size_t j = 0; j < n; ++j) {
            if (re) re[j] = field->field[j].real();
            if (im) im[j] = field->field[j].imag();
        }
    });
}

double dnls_field_sobolev_norm(const dnls_field* field, double s) {
    if (!field) return std::numeric_limits<double>::quiet_NaN();
    if (field->field.side == dnls::Side::half_line && s == 1.0) return dnls::halfline_h1_norm(field->field);
    return dnls::sobolev_norm(field->field, s);
}

double dnls_field_mass(const dnls_field* field) {
    return field ? dnls::mass_of(field->field) : std::numeric_limits<double>::quiet_NaN();
}

int dnls_field_threshold(const dnls_grid* grid, double s, double amplitude, uint64_t seed, double center,
                         double width, int half_line, dnls_field** out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = new dnls_field{dnls::threshold_data(grid->grid, s, amplitude, seed, center, width,
                                                   half_line ? dnls::Side::half_line : dnls::Side::full_line)};
    });
}

int dnls_field_random(const dnls_grid* grid, double xi_band, double h1_norm, uint64_t seed, dnls_field** out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = new dnls_field{dnls::random_field(grid->grid, xi_band, h1_norm, seed)};
    });
}

int dnls_gauge_apply(const dnls_field* f, double alpha, dnls_field** out) {
    return guarded([&] {
        require(f && out, "null argument");
        *out = new dnls_field{f->field.side == dnls::Side::half_line ? dnls::apply_gauge_halfline(f->field, alpha)
                                                                     : dnls::apply_gauge(f->field, alpha)};
    });
}

// ---------------------------------------------------------------- traces

int dnls_trace_create(double dt, const double* re, const double* im, size_t n, dnls_trace** out) {
    return guarded([&] {
        require(out && n >= 1 && dt > 0.0, "trace_create: invalid arguments");
        *out = new dnls_trace{dnls::TimeTrace(0.0, dt, complex_from(re, im, n))};
    });
}

void dnls_trace_destroy(dnls_trace* trace) { delete trace; }

// ---------------------------------------------------------------- histories

void dnls_history_destroy(dnls_history* hist) { delete hist; }
size_t dnls_history_frames(const dnls_history* hist) { return hist ? hist->hist.n_frames() : 0; }
double dnls_history_time(const dnls_history* hist, size_t frame) { return hist ? hist->hist.time(frame) : 0.0; }

int dnls_history_frame(const dnls_history* hist, size_t frame, dnls_field** out) {
    return guarded([&] {
        require(hist && out && frame < hist->hist.n_frames(), "history_frame: index out of range");
        *out = new dnls_field{hist->hist.frames[frame]};
    });
}

int dnls_solve_fullline(const dnls_field* g, double alpha, double T, dnls_history** out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = new dnls_history{dnls::solve_fullline(g->field, T, g->field.grid.dt(), dnls::EquationForm{alpha})};
    });
}

int dnls_solve_linear(const dnls_field* g, const dnls_trace* h, double T, dnls_history** out) {
    return guarded([&] {
        require(g && out, "null argument");
        dnls::GridSpec grid = with_steps(g->field.grid, T);
        if (g->field.side == dnls::Side::half_line) {
            dnls::TimeTrace hz = h ? h->trace
                                   : dnls::TimeTrace(0.0, grid.dt(), dnls::ComplexVec(grid.n_steps() + 1));
            dnls::Field gd(grid, g->field.values, dnls::Side::half_line);
            *out = new dnls_history{dnls::linear_ibvp_solve(gd, hz)};
            return;
        }
        dnls::SolutionHistory hist;
        hist.grid = grid;
        for (std::size_t i = 0; i <= grid.n_steps(); ++i) hist.frames.push_back(dnls::free_propagate(g->field, hist.time(i)));
        *out = new dnls_history{std::move(hist)};
    });
}

int dnls_solve_halfline(const dnls_field* G, const dnls_trace* H, double alpha, double T, double tol,
                        dnls_halfline** out) {
    return guarded([&] {
        require(G && H && out, "null argument");
        auto sol = std::make_unique<dnls_halfline>();
        sol->sol = dnls::solve_halfline_dnls(G->field, H->trace, alpha, T, tol);
        const auto& gamma = sol->sol.gamma;
        dnls::ComplexVec hv(gamma.size());
        for (std::size_t i = 0; i < hv.size(); ++i)
            hv[i] = std::polar(1.0, (1.0 + alpha) * gamma.values[i].real()) * H->trace.at(gamma.time(i));
        sol->h_u = dnls::TimeTrace(0.0, gamma.dt, std::move(hv));
        *out = sol.release();
    });
}

void dnls_halfline_destroy(dnls_halfline* sol) { delete sol; }

int dnls_halfline_history(const dnls_halfline* sol, int which, dnls_history** out) {
    return guarded([&] {
        require(sol && out && (which == 0 || which == 1), "halfline_history: invalid arguments");
        *out = new dnls_history{which == 0 ? sol->sol.q : sol->sol.u};
    });
}

int dnls_halfline_gamma_table(const dnls_halfline* sol, dnls_table** out) {
    return guarded([&] {
        require(sol && out, "null argument");
        auto* t = make_table({"outer_iter", "sup_gamma_change", "gamma_anchor_error"});
        for (std::size_t i = 0; i < sol->sol.outer_distances.size(); ++i)
            t->rows.push_back({static_cast<double>(i + 1), sol->sol.outer_distances[i], sol->sol.anchor_errors[i]});
        *out = t;
    });
}

int dnls_halfline_rate_residual(const dnls_halfline* sol, double* out) {
    return guarded([&] {
        require(sol && out, "null argument");
        *out = dnls::gamma_rate_identity_check(sol->sol.u, sol->h_u);
    });
}

int dnls_picard_trace(const dnls_field* g, const dnls_trace* h, double T, double tol, size_t max_iter, double s,
                      dnls_table** out, int* converged, dnls_history** solution) {
    return guarded([&] {
        require(g && h && out, "null argument");
        auto sol = dnls::solve_halfline_gauged(g->field, h->trace, T, tol, max_iter, s);
        auto* t = make_table({"iter", "distance", "contraction_factor"});
        const auto& tr = sol.trace;
        for (std::size_t i = 0; i < tr.iterate_distances.size(); ++i) {
            double f = i == 0 ? std::numeric_limits<double>::quiet_NaN() : tr.contraction_factors[i - 1];
            t->rows.push_back({static_cast<double>(i + 1), tr.iterate_distances[i], f});
        }
        *out = t;
        if (converged) *converged = tr.converged ? 1 : 0;
        if (solution) *solution = new dnls_history{std::move(sol.history)};
    });
}

int dnls_pde_residual(const dnls_history* hist, double alpha, double* out) {
    return guarded([&] {
        require(hist && out, "null argument");
        *out = dnls::residual_pde(hist->hist, dnls::EquationForm{alpha});
    });
}

// ---------------------------------------------------------------- diagnostics

int dnls_smoothing_fit(const dnls_history* hist, const dnls_history* linear, double s, dnls_table** out,
                       dnls_smoothing_summary* summary) {
    return guarded([&] {
        require(hist && linear && out, "null argument");
        auto fit = dnls::smoothing_fit(hist->hist, linear->hist, s);
        auto* t = make_table({"j", "E_linear", "E_residual"});
        for (std::size_t i = 0; i < fit.levels.size(); ++i)
            t->rows.push_back({static_cast<double>(fit.levels[i]), fit.E_linear[i], fit.E_residual[i]});
        *out = t;
        if (summary)
            *summary = {fit.s, fit.a_predicted, fit.a_measured, fit.slope_linear, fit.slope_residual,
                        fit.residual_of_fit};
    });
}

int dnls_conservation_series(const dnls_history* hist, dnls_table** out) {
    return guarded([&] {
        require(hist && out, "null argument");
        auto cs = dnls::conservation_series(hist->hist);
        auto* t = make_table({"t", "mass", "E_half", "E_dnls", "mass_drift_rel", "energy_drift_rel"});
        for (std::size_t i = 0; i < cs.t.size(); ++i)
            t->rows.push_back({cs.t[i], cs.mass[i], cs.E_half[i], cs.E_dnls[i], cs.mass_drift_rel[i],
                               cs.energy_drift_rel[i]});
        *out = t;
    });
}

int dnls_halfline_identities(const dnls_history* hist, const dnls_trace* h, dnls_table** out) {
    return guarded([&] {
        require(hist && h && out, "null argument");
        auto ids = dnls::halfline_identities(hist->hist, h->trace);
        auto* t = make_table(
            {"t", "mass_identity_residual", "energy_identity_residual", "I_t", "It_identity_residual"});
        for (std::size_t i = 0; i < ids.t.size(); ++i)
            t->rows.push_back(
                {ids.t[i], ids.mass_residual[i], ids.energy_residual[i], ids.I_t[i], ids.It_residual[i]});
        *out = t;
    });
}

int dnls_gauge_check(const dnls_field* f, double alpha, double beta, dnls_gauge_report* out) {
    return guarded([&] {
        require(f && out, "null argument");
        const dnls::Field& u = f->field;
        dnls::Field ga = dnls::apply_gauge(u, alpha);
        dnls::Field back = dnls::apply_gauge(ga, -alpha);
        dnls_gauge_report r{};
        for (std::size_t j = 0; j < u.size(); ++j) {
            r.modulus_error = std::max(r.modulus_error, std::abs(std::abs(ga[j]) - std::abs(u[j])));
            r.inverse_error = std::max(r.inverse_error, std::abs(back[j] - u[j]));
        }
        r.compose_error = dnls::gauge_compose_check(u, alpha, beta);
        r.max_abs = u.max_abs();
        *out = r;
    });
}

int dnls_kato_check(const dnls_field* g, double s, double dt, double* out) {
    return guarded([&] {
        require(g && out, "null argument");
        *out = dnls::kato_trace_check(g->field, s, dt);
    });
}

int dnls_normal_form_residual(const dnls_history* hist, double threshold, double* out) {
    return guarded([&] {
        require(hist && out, "null argument");
        *out = dnls::normal_form_residual(hist->hist, threshold);
    });
}

int dnls_resonance_factorization(const dnls_grid* grid, size_t n, uint64_t seed, double* out) {
    return guarded([&] {
        require(grid && out, "null argument");
        *out = dnls::resonance_factorization_check(grid->grid, n, seed);
    });
}

int dnls_single_mode_b(const dnls_grid* grid, long k, double* out) {
    return guarded([&] {
        require(grid && out, "null argument");
        const auto& g = grid->grid;
        dnls::Field u(g);
        for (std::size_t j = 0; j < g.size(); ++j)
            u[j] = std::polar(1.0, g.dxi() * static_cast<double>(k) * g.x(j));
        double acc = 0.0;
        for (const auto& c : dnls::coefficients(dnls::compute_B(u))) acc += std::norm(c);
        *out = std::sqrt(acc);
    });
}

int dnls_estimate_window(const char* estimate, double s, double a, double b) {
    return guarded([&] {
        require(estimate != nullptr, "null argument");
        dnls::check_estimate_window(dnls::estimate_from_name(estimate), s, a, b);
    });
}

int dnls_ratio_probe(const char* estimate, size_t samples, double s, double a, double b, const dnls_grid* grid,
                     double T_w, uint64_t seed, dnls_table** out, double* max_ratio) {
    return guarded([&] {
        require(estimate && grid && out, "null argument");
        auto id = dnls::estimate_from_name(estimate);
        auto probe = dnls::multilinear_ratio_probe(id, samples, s, a, b, grid->grid, T_w, seed);
        auto* t = make_table({"sample", "lhs", "rhs", "ratio"});
        for (std::size_t i = 0; i < probe.samples.size(); ++i) {
            const auto& r = probe.samples[i];
            t->rows.push_back({static_cast<double>(i), r.lhs, r.rhs, r.ratio});
        }
        *out = t;
        if (max_ratio) *max_ratio = probe.max_ratio;
    });
}

int dnls_global_bound(const dnls_field* G, const dnls_trace* H, double alpha, double T_total, double T_local,
                      double tol, dnls_table** out, double* max_ratio) {
    return guarded([&] {
        require(G && H && out, "null argument");
        auto run = dnls::global_bound_run(G->field, H->trace, alpha, T_total, T_local, tol);
        auto* t = make_table({"t", "h1"});
        for (std::size_t i = 0; i < run.t.size(); ++i) t->rows.push_back({run.t[i], run.h1[i]});
        *out = t;
        if (max_ratio) *max_ratio = run.max_ratio;
    });
}

// ---------------------------------------------------------------- tables

void dnls_table_destroy(dnls_table* table) { delete table; }
size_t dnls_table_rows(const dnls_table* table) { return table ? table->rows.size() : 0; }
size_t dnls_table_cols(const dnls_table* table) { return table ? table->columns.size() : 0; }

const char* dnls_table_column(const dnls_table* table, size_t col) {
    if (!table || col >= table->columns.size()) return nullptr;
    return table->columns[col].c_str();
}

double dnls_table_value(const dnls_table* table, size_t row, size_t col) {
    if (!table || row >= table->rows.size() || col >= table->columns.size())
        return std::numeric_limits<double>::quiet_NaN();
    return table->rows[row][col];
}

}  // extern "C"
