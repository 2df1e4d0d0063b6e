#pragma once

#include "dnls/types.hpp"

namespace dnls {

/// G_alpha f(x) = f(x) exp(-i alpha \int_x^inf |f|^2), tail integral from the
/// right grid edge. Adds a truncation warning when |f| at the right edge
/// exceeds 1e-8 max|f|.
Field apply_gauge(const Field& f, double alpha, Warnings* warnings = nullptr);

/// Gauge of half-line data: the tail integral uses only x >= 0 samples and
/// the x < 0 part is regenerated by extend().
Field apply_gauge_halfline(const Field& g, double alpha, Warnings* warnings = nullptr);

/// Phase \int_x^inf |f|^2 at every grid point.
std::vector<double> gauge_tail(const Field& f);

/// max_x |G_beta(G_alpha f) - G_{alpha+beta} f|.
double gauge_compose_check(const Field& f, double alpha, double beta);

struct LipschitzResult {
    double ratio = 0.0;
    bool division_guard = false;
};

/// ||G_alpha f - G_alpha g||_{H^s} / ||f - g||_{H^s}; division_guard is set
/// (and ratio left at 0) when ||f - g||_{H^s} < 1e-14.
LipschitzResult gauge_lipschitz_probe(const Field& f, const Field& g, double s, double alpha);

}  // namespace dnls
