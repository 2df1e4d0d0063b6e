#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "dnls/dnls.h"

static int failures = 0;

#define EXPECT(cond)                                                        \
    do {                                                                    \
        if (!(cond)) {                                                      \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                     \
        }                                                                   \
    } while (0)

static void test_errors(void) {
    dnls_grid* g = NULL;
    EXPECT(dnls_grid_create(-1.0, 64, 1e-3, &g) == DNLS_INVALID_PARAMETER);
    EXPECT(g == NULL);
    EXPECT(strlen(dnls_last_error()) > 0);
    EXPECT(strcmp(dnls_status_name(DNLS_WINDOW_VIOLATION), "window_violation") == 0);
    EXPECT(dnls_estimate_window("smooth", 1.0, 0.6, 0.45) == DNLS_WINDOW_VIOLATION);
    EXPECT(dnls_estimate_window("smooth", 1.0, 0.4, 0.45) == DNLS_OK);
    EXPECT(dnls_estimate_window("unknown", 1.0, 0.4, 0.45) == DNLS_INVALID_PARAMETER);
    EXPECT(strlen(dnls_version()) > 0);
    EXPECT(strlen(dnls_extension_id()) > 0);
}

static void test_fullline(void) {
    dnls_grid* g = NULL;
    EXPECT(dnls_grid_create(20.0, 256, 1e-3, &g) == DNLS_OK);
    size_t n = dnls_grid_size(g);
    double* x = malloc(n * sizeof(double));
    double* re = calloc(n, sizeof(double));
    double* im = calloc(n, sizeof(double));
    EXPECT(dnls_grid_points(g, x, n) == DNLS_OK);
    EXPECT(x[0] == -20.0);
    for (size_t j = 0; j < n; ++j) {
        re[j] = 0.1 * exp(-x[j] * x[j]) * cos(0.5 * x[j]);
        im[j] = 0.1 * exp(-x[j] * x[j]) * sin(0.5 * x[j]);
    }
    dnls_field* f = NULL;
    EXPECT(dnls_field_create(g, re, im, n - 1, 0, &f) == DNLS_INVALID_PARAMETER);
    EXPECT(dnls_field_create(g, re, im, n, 0, &f) == DNLS_OK);
    EXPECT(fabs(dnls_field_mass(f) - 0.01 * sqrt(M_PI / 2.0)) < 1e-12);

    dnls_gauge_report r;
    EXPECT(dnls_gauge_check(f, 1.0, -0.5, &r) == DNLS_OK);
    EXPECT(r.modulus_error <= 1e-15);
    EXPECT(r.compose_error <= 1e-10 * r.max_abs);
    EXPECT(r.inverse_error <= 1e-10 * r.max_abs);

    dnls_history* h = NULL;
    EXPECT(dnls_solve_fullline(f, -1.0, 0.1, &h) == DNLS_OK);
    EXPECT(dnls_history_frames(h) == 101);
    EXPECT(fabs(dnls_history_time(h, 100) - 0.1) < 1e-12);

    dnls_table* t = NULL;
    EXPECT(dnls_conservation_series(h, &t) == DNLS_OK);
    EXPECT(dnls_table_rows(t) == 101);
    EXPECT(dnls_table_cols(t) == 6);
    EXPECT(strcmp(dnls_table_column(t, 3), "E_dnls") == 0);
    EXPECT(fabs(dnls_table_value(t, 100, 4)) <= 1e-12);
    EXPECT(isnan(dnls_table_value(t, 101, 0)));
    dnls_table_destroy(t);

    dnls_history* lin = NULL;
    EXPECT(dnls_solve_linear(f, NULL, 0.1, &lin) == DNLS_OK);
    dnls_smoothing_summary sum;
    t = NULL;
    EXPECT(dnls_smoothing_fit(lin, lin, 1.0, &t, &sum) == DNLS_INSUFFICIENT_RANGE);
    EXPECT(t == NULL);

    double res = 0.0;
    EXPECT(dnls_normal_form_residual(h, 1.0, &res) == DNLS_OK);
    EXPECT(res >= 0.0 && res < 1e-4);

    dnls_history_destroy(lin);
    dnls_history_destroy(h);
    dnls_field_destroy(f);
    free(x);
    free(re);
    free(im);
    dnls_grid_destroy(g);
}

static void test_halfline(void) {
    dnls_grid* g = NULL;
    EXPECT(dnls_grid_create(20.0, 256, 2e-3, &g) == DNLS_OK);
    size_t n = dnls_grid_size(g);
    double* re = calloc(n, sizeof(double));
    double* im = calloc(n, sizeof(double));
    dnls_field* z = NULL;
    EXPECT(dnls_field_create(g, re, im, n, 1, &z) == DNLS_OK);
    double hre[51] = {0}, him[51] = {0};
    dnls_trace* h = NULL;
    EXPECT(dnls_trace_create(2e-3, hre, him, 51, &h) == DNLS_OK);

    dnls_halfline* sol = NULL;
    EXPECT(dnls_solve_halfline(z, h, 0.0, 0.1, 1e-8, &sol) == DNLS_OK);
    dnls_table* gt = NULL;
    EXPECT(dnls_halfline_gamma_table(sol, &gt) == DNLS_OK);
    EXPECT(dnls_table_rows(gt) >= 1);
    EXPECT(dnls_table_value(gt, 0, 1) == 0.0);
    EXPECT(dnls_table_value(gt, 0, 2) == 0.0);
    dnls_table_destroy(gt);

    dnls_history* q = NULL;
    EXPECT(dnls_halfline_history(sol, 2, &q) == DNLS_INVALID_PARAMETER);
    EXPECT(dnls_halfline_history(sol, 0, &q) == DNLS_OK);
    dnls_field* last = NULL;
    EXPECT(dnls_history_frame(q, dnls_history_frames(q) - 1, &last) == DNLS_OK);
    EXPECT(dnls_field_values(last, re, im, n) == DNLS_OK);
    double mx = 0.0;
    for (size_t j = 0; j < n; ++j) mx = fmax(mx, fabs(re[j]) + fabs(im[j]));
    EXPECT(mx == 0.0);

    hre[0] = 1.0;
    dnls_trace* bad = NULL;
    EXPECT(dnls_trace_create(2e-3, hre, him, 51, &bad) == DNLS_OK);
    dnls_halfline* none = NULL;
    EXPECT(dnls_solve_halfline(z, bad, 0.0, 0.1, 1e-8, &none) == DNLS_COMPATIBILITY_VIOLATION);
    EXPECT(none == NULL);

    dnls_field_destroy(last);
    dnls_history_destroy(q);
    dnls_halfline_destroy(sol);
    dnls_trace_destroy(bad);
    dnls_trace_destroy(h);
    dnls_field_destroy(z);
    free(re);
    free(im);
    dnls_grid_destroy(g);
}

static void test_probes(void) {
    dnls_grid* g = NULL;
    EXPECT(dnls_grid_create(20.0, 256, 2e-3, &g) == DNLS_OK);
    dnls_table* t = NULL;
    double mx = 0.0;
    EXPECT(dnls_ratio_probe("smooth", 2, 1.0, 0.6, 0.45, g, 0.25, 7, &t, &mx) == DNLS_WINDOW_VIOLATION);
    EXPECT(dnls_ratio_probe("smooth5", 2, 1.0, 0.4, 0.45, g, 0.25, 7, &t, &mx) == DNLS_OK);
    EXPECT(dnls_table_rows(t) == 2);
    EXPECT(mx > 0.0 && isfinite(mx));
    dnls_table_destroy(t);
    double fact = 1.0, b = 1.0;
    EXPECT(dnls_resonance_factorization(g, 1000, 3, &fact) == DNLS_OK);
    EXPECT(fact <= 1e-9);
    EXPECT(dnls_single_mode_b(g, 5, &b) == DNLS_OK);
    EXPECT(b <= 1e-12);
    dnls_grid_destroy(g);
}

int main(void) {
    test_errors();
    test_fullline();
    test_halfline();
    test_probes();
    if (failures) {
        fprintf(stderr, "%d failure(s)\n", failures);
        return 1;
    }
    printf("c api: all checks passed\n");
    return 0;
}
