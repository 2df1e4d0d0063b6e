#ifndef DNLS_DNLS_H
#define DNLS_DNLS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DNLS_API __declspec(dllexport)
#else
#define DNLS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int returns one of these; on a
 * nonzero status dnls_last_error() holds a one-line message for the
 * calling thread. */
enum {
    DNLS_OK = 0,
    DNLS_INVALID_PARAMETER = 1,
    DNLS_GRID_MISMATCH = 2,
    DNLS_COMPATIBILITY_VIOLATION = 3,
    DNLS_BLOWUP_DETECTED = 4,
    DNLS_NO_CONTRACTION = 5,
    DNLS_OUTER_NO_CONTRACTION = 6,
    DNLS_BANDLIMIT_VIOLATION = 7,
    DNLS_INSUFFICIENT_RANGE = 8,
    DNLS_WINDOW_VIOLATION = 9,
    DNLS_DIVISION_GUARD = 10,
    DNLS_INVALID_CONFIG = 11,
    DNLS_IO_ERROR = 12,
    DNLS_INTERNAL_ERROR = 13
};

typedef struct dnls_grid dnls_grid;
typedef struct dnls_field dnls_field;
typedef struct dnls_trace dnls_trace;
typedef struct dnls_history dnls_history;
typedef struct dnls_halfline dnls_halfline;
typedef struct dnls_table dnls_table;

DNLS_API const char* dnls_version(void);
DNLS_API const char* dnls_fftw_version(void);
DNLS_API const char* dnls_extension_id(void);
DNLS_API const char* dnls_status_name(int status);
DNLS_API const char* dnls_last_error(void);

/* ---------------------------------------------------------------- grids */

/* Periodic grid on [-L, L) with N points and time step dt. */
DNLS_API int dnls_grid_create(double L, size_t N, double dt, dnls_grid** out);
DNLS_API void dnls_grid_destroy(dnls_grid* grid);
DNLS_API size_t dnls_grid_size(const dnls_grid* grid);
DNLS_API double dnls_grid_dt(const dnls_grid* grid);
/* x[j] for j < N; n must equal N. */
DNLS_API int dnls_grid_points(const dnls_grid* grid, double* x, size_t n);

/* --------------------------------------------------------------- fields */

/* half_line != 0 marks half-line data; samples at x < 0 are ignored. */
DNLS_API int dnls_field_create(const dnls_grid* grid, const double* re, const double* im, size_t n,
                               int half_line, dnls_field** out);
DNLS_API void dnls_field_destroy(dnls_field* field);
DNLS_API size_t dnls_field_size(const dnls_field* field);
DNLS_API int dnls_field_values(const dnls_field* field, double* re, double* im, size_t n);
DNLS_API double dnls_field_sobolev_norm(const dnls_field* field, double s);
DNLS_API double dnls_field_mass(const dnls_field* field);

/* |g^| = <xi>^{-s-1/2} with seeded random phases, smoothly windowed on
 * [center - width/2, center + width/2], scaled to max|g| = amplitude. */
DNLS_API int dnls_field_threshold(const dnls_grid* grid, double s, double amplitude, uint64_t seed,
                                  double center, double width, int half_line, dnls_field** out);
/* Seeded Gaussian coefficients on |xi| <= xi_band, scaled to ||f||_{H^1} = h1_norm. */
DNLS_API int dnls_field_random(const dnls_grid* grid, double xi_band, double h1_norm, uint64_t seed,
                               dnls_field** out);

/* G_alpha f; half-line fields use the tail integral over x >= 0 only. */
DNLS_API int dnls_gauge_apply(const dnls_field* f, double alpha, dnls_field** out);

/* --------------------------------------------------------------- traces */

DNLS_API int dnls_trace_create(double dt, const double* re, const double* im, size_t n, dnls_trace** out);
DNLS_API void dnls_trace_destroy(dnls_trace* trace);

/* ------------------------------------------------------------ histories */

DNLS_API void dnls_history_destroy(dnls_history* hist);
DNLS_API size_t dnls_history_frames(const dnls_history* hist);
DNLS_API double dnls_history_time(const dnls_history* hist, size_t frame);
/* New field holding frame `frame`. */
DNLS_API int dnls_history_frame(const dnls_history* hist, size_t frame, dnls_field** out);

/* Full-line solution of i u_t + u_xx + eq(alpha) nonlinearity = 0 on [0, T]. */
DNLS_API int dnls_solve_fullline(const dnls_field* g, double alpha, double T, dnls_history** out);
/* Free evolution on [0, T]: full-line data by W_R(t), half-line data by the
 * linear boundary problem with boundary trace h (h may be NULL for zero). */
DNLS_API int dnls_solve_linear(const dnls_field* g, const dnls_trace* h, double T, dnls_history** out);

/* Half-line problem for eq(alpha) with data (G, H) via the gamma fixed point. */
DNLS_API int dnls_solve_halfline(const dnls_field* G, const dnls_trace* H, double alpha, double T, double tol,
                                 dnls_halfline** out);
DNLS_API void dnls_halfline_destroy(dnls_halfline* sol);
/* which = 0: solution q of eq(alpha); which = 1: gauged alpha = -1 solution u. */
DNLS_API int dnls_halfline_history(const dnls_halfline* sol, int which, dnls_history** out);
/* Columns outer_iter, sup_gamma_change, gamma_anchor_error. */
DNLS_API int dnls_halfline_gamma_table(const dnls_halfline* sol, dnls_table** out);
/* Mass-rate identity residual of u against its boundary data. */
DNLS_API int dnls_halfline_rate_residual(const dnls_halfline* sol, double* out);

/* Picard iteration of the gauged half-line map. Columns iter, distance,
 * contraction_factor (NaN for the first iterate). converged is set to 0/1. */
DNLS_API int dnls_picard_trace(const dnls_field* g, const dnls_trace* h, double T, double tol, size_t max_iter,
                               double s, dnls_table** out, int* converged, dnls_history** solution);

/* max interior-frame L^2 residual of eq(alpha). */
DNLS_API int dnls_pde_residual(const dnls_history* hist, double alpha, double* out);

/* ---------------------------------------------------------- diagnostics */

typedef struct dnls_smoothing_summary {
    double s;
    double a_predicted;
    double a_measured;
    double slope_linear;
    double slope_residual;
    double residual_of_fit;
} dnls_smoothing_summary;

/* Columns j, E_linear, E_residual. */
DNLS_API int dnls_smoothing_fit(const dnls_history* hist, const dnls_history* linear, double s,
                                dnls_table** out, dnls_smoothing_summary* summary);

/* Columns t, mass, E_half, E_dnls, mass_drift_rel, energy_drift_rel. */
DNLS_API int dnls_conservation_series(const dnls_history* hist, dnls_table** out);

/* Columns t, mass_identity_residual, energy_identity_residual, I_t, It_identity_residual. */
DNLS_API int dnls_halfline_identities(const dnls_history* hist, const dnls_trace* h, dnls_table** out);

typedef struct dnls_gauge_report {
    double modulus_error;  /* max | |G_alpha f| - |f| | */
    double compose_error;  /* max |G_beta G_alpha f - G_{alpha+beta} f| */
    double inverse_error;  /* max |G_{-alpha} G_alpha f - f| */
    double max_abs;        /* max |f| */
} dnls_gauge_report;

DNLS_API int dnls_gauge_check(const dnls_field* f, double alpha, double beta, dnls_gauge_report* out);

/* Kato trace ratio max_x ||eta W_R g(x, .)||_{H^{(2s+1)/4}_t} / ||g||_{H^s}. */
DNLS_API int dnls_kato_check(const dnls_field* g, double s, double dt, double* out);

DNLS_API int dnls_normal_form_residual(const dnls_history* hist, double threshold, double* out);
DNLS_API int dnls_resonance_factorization(const dnls_grid* grid, size_t n, uint64_t seed, double* out);
/* ||B(e^{i xi_k x})|| coefficient norm for lattice mode k. */
DNLS_API int dnls_single_mode_b(const dnls_grid* grid, long k, double* out);

/* DNLS_WINDOW_VIOLATION when (s, a, b) lies outside the estimate's range. */
DNLS_API int dnls_estimate_window(const char* estimate, double s, double a, double b);

/* Columns sample, lhs, rhs, ratio. estimate is one of smooth, smooth3,
 * smooth5, b38. */
DNLS_API int dnls_ratio_probe(const char* estimate, size_t samples, double s, double a, double b,
                              const dnls_grid* grid, double T_w, uint64_t seed, dnls_table** out,
                              double* max_ratio);

/* Columns t, h1. */
DNLS_API int dnls_global_bound(const dnls_field* G, const dnls_trace* H, double alpha, double T_total,
                               double T_local, double tol, dnls_table** out, double* max_ratio);

/* --------------------------------------------------------------- tables */

DNLS_API void dnls_table_destroy(dnls_table* table);
DNLS_API size_t dnls_table_rows(const dnls_table* table);
DNLS_API size_t dnls_table_cols(const dnls_table* table);
DNLS_API const char* dnls_table_column(const dnls_table* table, size_t col);
DNLS_API double dnls_table_value(const dnls_table* table, size_t row, size_t col);

#ifdef __cplusplus
}
#endif

#endif
