#include "dnls/gauge.hpp"

#include <cmath>

#include "dnls/spectral.hpp"

namespace dnls {

namespace {

void check_decay(const Field& f, Warnings* warnings) {
    if (!warnings || f.size() == 0) return;
    double peak = f.max_abs();
    if (peak > 0.0 && std::abs(f.values.back()) > 1e-8 * peak)
        warnings->add("gauge: field not decayed at the right edge (tail truncation)");
}

}  // namespace

std::vector<double> gauge_tail(const Field& f) {
    std::vector<double> dens(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) dens[j] = std::norm(f[j]);
    return reverse_cumulative_integral(dens, f.grid.dx());
}

Field apply_gauge(const Field& f, double alpha, Warnings* warnings) {
    if (!std::isfinite(alpha)) throw Error(ErrorCode::invalid_parameter, "gauge: alpha must be finite");
    check_decay(f, warnings);
    Field out = f;
    if (alpha == 0.0) return out;
    auto tail = gauge_tail(f);
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = f[j] * std::polar(1.0, -alpha * tail[j]);
    return out;
}

Field apply_gauge_halfline(const Field& g, double alpha, Warnings* warnings) {
    if (!std::isfinite(alpha)) throw Error(ErrorCode::invalid_parameter, "gauge: alpha must be finite");
    check_decay(g, warnings);
    const std::size_t o = g.grid.origin();
    const std::size_t n = g.size();
    std::vector<double> dens(n - o);
    for (std::size_t j = o; j < n; ++j) dens[j - o] = std::norm(g[j]);
    auto tail = reverse_cumulative_integral(dens, g.grid.dx());
    Field gauged(g.grid, Side::half_line);
    for (std::size_t j = o; j < n; ++j) gauged[j] = g[j] * std::polar(1.0, -alpha * tail[j - o]);
    Field out = extend(gauged);
    out.side = Side::half_line;
    return out;
}

double gauge_compose_check(const Field& f, double alpha, double beta) {
    Field two = apply_gauge(apply_gauge(f, alpha), beta);
    Field one = apply_gauge(f, alpha + beta);
    double err = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) err = std::max(err, std::abs(two[j] - one[j]));
    return err;
}

LipschitzResult gauge_lipschitz_probe(const Field& f, const Field& g, double s, double alpha) {
    if (!f.grid.same_space(g.grid)) throw Error(ErrorCode::grid_mismatch, "gauge probe: grids differ");
    Field d(f.grid);
    for (std::size_t j = 0; j < f.size(); ++j) d[j] = f[j] - g[j];
    LipschitzResult r;
    double den = sobolev_norm(d, s);
    if (den < 1e-14) {
        r.division_guard = true;
        return r;
    }
    if (alpha == 0.0) {
        r.ratio = 1.0;
        return r;
    }
    Field gf = apply_gauge(f, alpha), gg = apply_gauge(g, alpha);
    for (std::size_t j = 0; j < f.size(); ++j) d[j] = gf[j] - gg[j];
    r.ratio = sobolev_norm(d, s) / den;
    return r;
}

}  // namespace dnls
