#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>

#include "dnls/dnls.h"

namespace dnls_cli {

namespace {

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};

using Grid = std::unique_ptr<dnls_grid, Deleter<dnls_grid, dnls_grid_destroy>>;
using FieldH = std::unique_ptr<dnls_field, Deleter<dnls_field, dnls_field_destroy>>;
using Trace = std::unique_ptr<dnls_trace, Deleter<dnls_trace, dnls_trace_destroy>>;
using History = std::unique_ptr<dnls_history, Deleter<dnls_history, dnls_history_destroy>>;
using Halfline = std::unique_ptr<dnls_halfline, Deleter<dnls_halfline, dnls_halfline_destroy>>;
using Table = std::unique_ptr<dnls_table, Deleter<dnls_table, dnls_table_destroy>>;

void call(int status) {
    if (status != DNLS_OK) throw ApiError(status, dnls_last_error());
}

template <class H, class F>
H make(F&& f) {
    typename H::pointer p = nullptr;
    call(f(&p));
    return H(p);
}

using Rows = std::vector<std::vector<std::string>>;

Rows table_rows(const dnls_table* t) {
    Rows rows(dnls_table_rows(t));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < dnls_table_cols(t); ++c) rows[r].push_back(format_number(dnls_table_value(t, r, c)));
    return rows;
}

std::vector<std::string> table_header(const dnls_table* t) {
    std::vector<std::string> h;
    for (std::size_t c = 0; c < dnls_table_cols(t); ++c) h.push_back(dnls_table_column(t, c));
    return h;
}

double column_max_abs(const dnls_table* t, std::size_t col, std::size_t first_row = 0) {
    double m = 0.0;
    for (std::size_t r = first_row; r < dnls_table_rows(t); ++r) {
        double v = dnls_table_value(t, r, col);
        if (!std::isnan(v)) m = std::max(m, std::abs(v));
    }
    return m;
}

void maybe_check(const Config& cfg, RunOutput& out, const std::string& name, double value, bool upper = true) {
    if (cfg.has("check", name)) out.add_check(name, value, cfg.number("check", name), upper);
}

// ---------------------------------------------------------------- setup

struct Setup {
    Grid grid;
    double T = 0.0;
    bool half = false;
    std::vector<double> x;
};

Setup make_setup(const Config& cfg, bool need_steps = true) {
    Setup s;
    double L = cfg.number("grid", "L");
    long N = cfg.integer("grid", "N");
    double dt = cfg.number("grid", "dt");
    if (!(L > 0.0)) throw ConfigError("grid.L", "grid.L must be positive");
    if (N < 16 || N % 2 != 0) throw ConfigError("grid.N", "grid.N must be an even integer >= 16");
    if (!(dt > 0.0)) throw ConfigError("grid.dt", "grid.dt must be positive");
    if (need_steps) {
        long steps = cfg.integer("grid", "n_steps");
        if (steps < 1) throw ConfigError("grid.n_steps", "grid.n_steps must be at least 1");
        s.T = static_cast<double>(steps) * dt;
    }
    std::string domain = cfg.text("equation", "domain", "full");
    if (domain != "full" && domain != "half")
        throw ConfigError("equation.domain", "equation.domain must be 'full' or 'half'");
    s.half = domain == "half";
    s.grid = make<Grid>([&](dnls_grid** p) { return dnls_grid_create(L, static_cast<std::size_t>(N), dt, p); });
    s.x.resize(static_cast<std::size_t>(N));
    call(dnls_grid_points(s.grid.get(), s.x.data(), s.x.size()));
    return s;
}

const std::map<std::string, bool> kGenerators = {
    {"zero", false}, {"gaussian", false}, {"halfline_bump", false}, {"threshold", true}, {"random", true},
    {"probe", true}};

std::string generator_of(const Config& cfg) {
    std::string gen = cfg.text("data", "generator");
    auto it = kGenerators.find(gen);
    if (it == kGenerators.end()) throw ConfigError("data.generator", "unknown generator '" + gen + "'");
    if (it->second && !cfg.has("data", "seed"))
        throw ConfigError("data.seed", "data.seed is required for generator '" + gen + "'");
    return gen;
}

FieldH analytic_field(const Setup& s, const std::function<std::complex<double>(double)>& f) {
    std::vector<double> re(s.x.size()), im(s.x.size());
    for (std::size_t j = 0; j < s.x.size(); ++j) {
        if (s.half && s.x[j] < 0.0) continue;
        auto v = f(s.x[j]);
        re[j] = v.real();
        im[j] = v.imag();
    }
    return make<FieldH>([&](dnls_field** p) {
        return dnls_field_create(s.grid.get(), re.data(), im.data(), re.size(), s.half ? 1 : 0, p);
    });
}

FieldH initial_data(const Config& cfg, const Setup& s, const dnls_grid* grid = nullptr,
                    std::uint64_t seed_offset = 0) {
    const dnls_grid* g = grid ? grid : s.grid.get();
    std::string gen = generator_of(cfg);
    if (gen == "zero") return analytic_field(s, [](double) { return std::complex<double>(0.0); });
    if (gen == "gaussian") {
        double amp = cfg.number("data", "amplitude"), c = cfg.number("data", "center", 0.0);
        double w = cfg.number("data", "width", 1.0), k = cfg.number("data", "kappa", 0.0);
        if (!(w > 0.0)) throw ConfigError("data.width", "data.width must be positive");
        return analytic_field(s, [=](double x) {
            double r = (x - c) / w;
            return amp * std::exp(-r * r) * std::polar(1.0, k * x);
        });
    }
    if (gen == "halfline_bump") {
        double amp = cfg.number("data", "amplitude"), c = cfg.number("data", "center", 1.5);
        double k = cfg.number("data", "kappa", 0.0);
        return analytic_field(s, [=](double x) {
            return amp * (1.0 + x) * std::exp(-(x - c) * (x - c)) * std::polar(1.0, k * x);
        });
    }
    std::uint64_t seed = cfg.seed("data", "seed") + seed_offset;
    if (gen == "threshold") {
        double sv = cfg.number("data", "s"), amp = cfg.number("data", "amplitude");
        double c = cfg.number("data", "center", 0.0), w = cfg.number("data", "width");
        return make<FieldH>([&](dnls_field** p) {
            return dnls_field_threshold(g, sv, amp, seed, c, w, s.half ? 1 : 0, p);
        });
    }
    if (gen == "random") {
        double band = cfg.number("data", "band", 4.0), h1 = cfg.number("data", "h1_norm", 1.0);
        return make<FieldH>([&](dnls_field** p) { return dnls_field_random(g, band, h1, seed, p); });
    }
    throw ConfigError("data.generator", "generator '" + gen + "' does not produce a single field");
}

std::complex<double> value_at_origin(const Setup& s, const dnls_field* f) {
    std::vector<double> re(s.x.size()), im(s.x.size());
    call(dnls_field_values(f, re.data(), im.data(), re.size()));
    std::size_t o = s.x.size() / 2;
    return {re[o], im[o]};
}

Trace boundary_data(const Config& cfg, const Setup& s, const dnls_field* g) {
    std::string gen = cfg.text("boundary", "generator", "zero");
    const double dt = dnls_grid_dt(s.grid.get());
    const auto n = static_cast<std::size_t>(std::llround(s.T / dt)) + 1;
    std::vector<double> re(n, 0.0), im(n, 0.0);
    if (gen == "decaying") {
        double rate = cfg.number("boundary", "rate", 1.0), freq = cfg.number("boundary", "frequency", 0.0);
        auto h0 = value_at_origin(s, g);
        for (std::size_t i = 0; i < n; ++i) {
            double t = static_cast<double>(i) * dt;
            auto v = h0 * std::exp(-rate * t) * std::polar(1.0, freq * t);
            re[i] = v.real();
            im[i] = v.imag();
        }
    } else if (gen != "zero") {
        throw ConfigError("boundary.generator", "unknown boundary generator '" + gen + "'");
    }
    return make<Trace>([&](dnls_trace** p) { return dnls_trace_create(dt, re.data(), im.data(), n, p); });
}

void require_half(const Setup& s, const std::string& cmd) {
    if (!s.half) throw ConfigError("equation.domain", cmd + " requires equation.domain: half");
}

void require_full(const Setup& s, const std::string& cmd) {
    if (s.half) throw ConfigError("equation.domain", cmd + " requires equation.domain: full");
}

std::size_t positive_count(const Config& cfg, const std::string& section, const std::string& key, long fallback) {
    long v = cfg.integer(section, key, fallback);
    if (v < 1) throw ConfigError(section + "." + key, section + "." + key + " must be at least 1");
    return static_cast<std::size_t>(v);
}

double positive(const Config& cfg, const std::string& section, const std::string& key, double fallback) {
    double v = cfg.number(section, key, fallback);
    if (!(v > 0.0)) throw ConfigError(section + "." + key, section + "." + key + " must be positive");
    return v;
}

// ---------------------------------------------------------------- subcommands

void cmd_simulate(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    FieldH g = initial_data(cfg, s);
    double alpha = cfg.number("equation", "alpha", s.half ? 0.0 : -1.0);
    History hist;
    if (s.half) {
        Trace h = boundary_data(cfg, s, g.get());
        double tol = positive(cfg, "run", "tol", 1e-9);
        Halfline sol = make<Halfline>(
            [&](dnls_halfline** p) { return dnls_solve_halfline(g.get(), h.get(), alpha, s.T, tol, p); });
        hist = make<History>([&](dnls_history** p) { return dnls_halfline_history(sol.get(), 0, p); });
    } else {
        hist = make<History>([&](dnls_history** p) { return dnls_solve_fullline(g.get(), alpha, s.T, p); });
    }
    const std::size_t stride = positive_count(cfg, "output", "frame_stride", 1);
    const std::size_t frames = dnls_history_frames(hist.get());
    Rows sol_rows, norm_rows;
    std::vector<double> re(s.x.size()), im(s.x.size());
    for (std::size_t i = 0; i < frames; ++i) {
        FieldH f = make<FieldH>([&](dnls_field** p) { return dnls_history_frame(hist.get(), i, p); });
        const std::string t = format_number(dnls_history_time(hist.get(), i));
        norm_rows.push_back({t, format_number(dnls_field_mass(f.get())), format_number(dnls_field_sobolev_norm(f.get(), 1.0))});
        if (i % stride != 0 && i + 1 != frames) continue;
        call(dnls_field_values(f.get(), re.data(), im.data(), re.size()));
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            if (s.half && s.x[j] < 0.0) continue;
            sol_rows.push_back({t, format_number(s.x[j]), format_number(re[j]), format_number(im[j])});
        }
    }
    out.write_table("solution", {"t", "x", "re_u", "im_u"}, sol_rows);
    out.write_table("norms", {"t", "mass", "h1_norm"}, norm_rows);
    if (cfg.has("check", "pde_residual")) {
        double r = 0.0;
        call(dnls_pde_residual(hist.get(), alpha, &r));
        out.add_check("pde_residual", r, cfg.number("check", "pde_residual"));
    }
}

void cmd_smoothing_scan(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    FieldH g = initial_data(cfg, s);
    double sv = cfg.has("run", "s") ? cfg.number("run", "s") : cfg.number("data", "s");
    History hist, lin;
    if (s.half) {
        Trace h = boundary_data(cfg, s, g.get());
        double tol = positive(cfg, "run", "tol", 1e-10);
        std::size_t max_iter = positive_count(cfg, "run", "max_iter", 40);
        dnls_table* tp = nullptr;
        dnls_history* hp = nullptr;
        int converged = 0;
        call(dnls_picard_trace(g.get(), h.get(), s.T, tol, max_iter, 1.0, &tp, &converged, &hp));
        Table picard(tp);
        hist.reset(hp);
        if (!converged) throw ApiError(DNLS_NO_CONTRACTION, "picard iteration did not reach run.tol");
        lin = make<History>([&](dnls_history** p) { return dnls_solve_linear(g.get(), h.get(), s.T, p); });
    } else {
        double alpha = cfg.number("equation", "alpha", -1.0);
        hist = make<History>([&](dnls_history** p) { return dnls_solve_fullline(g.get(), alpha, s.T, p); });
        lin = make<History>([&](dnls_history** p) { return dnls_solve_linear(g.get(), nullptr, s.T, p); });
    }
    dnls_smoothing_summary sum{};
    Table fit = make<Table>([&](dnls_table** p) { return dnls_smoothing_fit(hist.get(), lin.get(), sv, p, &sum); });
    Rows rows;
    for (std::size_t r = 0; r < dnls_table_rows(fit.get()); ++r)
        rows.push_back({format_number(dnls_table_value(fit.get(), r, 0)), format_number(dnls_table_value(fit.get(), r, 1)),
                        format_number(dnls_table_value(fit.get(), r, 2)), format_number(sum.slope_linear),
                        format_number(sum.slope_residual), format_number(sum.a_measured),
                        format_number(sum.a_predicted)});
    out.write_table("smoothing",
                    {"j", "E_linear", "E_residual", "slope_linear", "slope_residual", "a_measured", "a_predicted"},
                    rows);
    maybe_check(cfg, out, "a_min", sum.a_measured, false);
}

void cmd_conservation_check(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    FieldH g = initial_data(cfg, s);
    if (!s.half) {
        double alpha = cfg.number("equation", "alpha", -1.0);
        if (alpha != -1.0) throw ConfigError("equation.alpha", "conservation-check on the line runs alpha = -1");
        History hist = make<History>([&](dnls_history** p) { return dnls_solve_fullline(g.get(), alpha, s.T, p); });
        Table t = make<Table>([&](dnls_table** p) { return dnls_conservation_series(hist.get(), p); });
        out.write_table("conservation", table_header(t.get()), table_rows(t.get()));
        maybe_check(cfg, out, "mass_drift", column_max_abs(t.get(), 4));
        maybe_check(cfg, out, "energy_drift", column_max_abs(t.get(), 5));
        return;
    }
    double alpha = cfg.number("equation", "alpha", -0.5);
    if (alpha != -0.5) throw ConfigError("equation.alpha", "half-line identities hold for alpha = -0.5");
    Trace h = boundary_data(cfg, s, g.get());
    double tol = positive(cfg, "run", "tol", 1e-9);
    Halfline sol = make<Halfline>(
        [&](dnls_halfline** p) { return dnls_solve_halfline(g.get(), h.get(), alpha, s.T, tol, p); });
    History q = make<History>([&](dnls_history** p) { return dnls_halfline_history(sol.get(), 0, p); });
    Table t = make<Table>([&](dnls_table** p) { return dnls_halfline_identities(q.get(), h.get(), p); });
    out.write_table("identities", table_header(t.get()), table_rows(t.get()));
    maybe_check(cfg, out, "mass_identity", column_max_abs(t.get(), 1));
    maybe_check(cfg, out, "energy_identity", column_max_abs(t.get(), 2));
    maybe_check(cfg, out, "It_identity", column_max_abs(t.get(), 4));
    double drop = 0.0;
    for (std::size_t r = 1; r < dnls_table_rows(t.get()); ++r)
        drop = std::max(drop, dnls_table_value(t.get(), r - 1, 3) - dnls_table_value(t.get(), r, 3));
    out.add_check("I_t_monotone", drop, 0.0);
}

void cmd_gauge_check(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg, false);
    require_full(s, "gauge-check");
    std::size_t samples = positive_count(cfg, "run", "samples", 100);
    double alpha = cfg.number("run", "alpha", 1.0), beta = cfg.number("run", "beta", -0.5);
    Rows rows;
    double modulus = 0.0, compose = 0.0, inverse = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        FieldH f = initial_data(cfg, s, nullptr, i);
        dnls_gauge_report r{};
        call(dnls_gauge_check(f.get(), alpha, beta, &r));
        double scale = r.max_abs > 0.0 ? r.max_abs : 1.0;
        modulus = std::max(modulus, r.modulus_error);
        compose = std::max(compose, r.compose_error / scale);
        inverse = std::max(inverse, r.inverse_error / scale);
        rows.push_back({format_number(static_cast<double>(i)), format_number(r.modulus_error),
                        format_number(r.compose_error), format_number(r.inverse_error), format_number(r.max_abs)});
    }
    out.write_table("gauge", {"sample", "modulus_error", "compose_error", "inverse_error", "max_abs"}, rows);
    maybe_check(cfg, out, "modulus", modulus);
    maybe_check(cfg, out, "compose_rel", compose);
    maybe_check(cfg, out, "inverse_rel", inverse);
}

void cmd_kato_check(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg, false);
    require_full(s, "kato-check");
    FieldH g = initial_data(cfg, s);
    std::vector<double> svals = cfg.has("run", "s") ? cfg.numbers("run", "s") : std::vector<double>{0.5, 1.0};
    double trace_dt = positive(cfg, "run", "trace_dt", 2e-3);
    Rows rows;
    double worst = 0.0;
    for (double sv : svals) {
        double r = 0.0;
        call(dnls_kato_check(g.get(), sv, trace_dt, &r));
        worst = std::max(worst, r);
        rows.push_back({format_number(sv), format_number(r)});
    }
    out.write_table("kato", {"s", "ratio"}, rows);
    maybe_check(cfg, out, "ratio_max", worst);
}

void cmd_picard_trace(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    require_half(s, "picard-trace");
    FieldH g = initial_data(cfg, s);
    Trace h = boundary_data(cfg, s, g.get());
    double tol = positive(cfg, "run", "tol", 1e-8);
    std::size_t max_iter = positive_count(cfg, "run", "max_iter", 30);
    double sv = cfg.number("run", "s", 1.0);
    dnls_table* tp = nullptr;
    int converged = 0;
    call(dnls_picard_trace(g.get(), h.get(), s.T, tol, max_iter, sv, &tp, &converged, nullptr));
    Table t(tp);
    out.write_table("picard", {"iter", "distance", "contraction_factor"}, table_rows(t.get()));
    const std::size_t n = dnls_table_rows(t.get());
    maybe_check(cfg, out, "contraction_max", column_max_abs(t.get(), 2, 1));
    if (n > 0) maybe_check(cfg, out, "fixed_point", dnls_table_value(t.get(), n - 1, 1));
    if (!converged) throw ApiError(DNLS_NO_CONTRACTION, "picard iteration did not reach run.tol");
}

void cmd_normalform_check(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    require_full(s, "normalform-check");
    double threshold = positive(cfg, "run", "threshold", 1.0);
    const double dt = dnls_grid_dt(s.grid.get());
    Rows rows;
    std::vector<double> res;
    for (int level = 0; level < (cfg.flag("run", "refine", true) ? 2 : 1); ++level) {
        double d = dt / std::pow(2.0, level);
        Grid gr = make<Grid>([&](dnls_grid** p) {
            return dnls_grid_create(cfg.number("grid", "L"), s.x.size(), d, p);
        });
        FieldH g = initial_data(cfg, s, gr.get());
        std::vector<double> re(s.x.size()), im(s.x.size());
        call(dnls_field_values(g.get(), re.data(), im.data(), re.size()));
        FieldH gd = make<FieldH>([&](dnls_field** p) {
            return dnls_field_create(gr.get(), re.data(), im.data(), re.size(), 0, p);
        });
        History hist = make<History>([&](dnls_history** p) { return dnls_solve_fullline(gd.get(), -1.0, s.T, p); });
        double r = 0.0;
        call(dnls_normal_form_residual(hist.get(), threshold, &r));
        res.push_back(r);
        rows.push_back({format_number(d), format_number(r)});
    }
    out.write_table("normalform", {"dt", "residual"}, rows);
    maybe_check(cfg, out, "residual", res[0]);
    if (res.size() == 2) {
        double ratio = res[1] > 0.0 ? res[0] / res[1] : 0.0;
        maybe_check(cfg, out, "rate_min", ratio, false);
        maybe_check(cfg, out, "rate_max", ratio);
    }
    std::size_t quads = positive_count(cfg, "run", "quadruples", 100000);
    double fact = 0.0;
    call(dnls_resonance_factorization(s.grid.get(), quads, static_cast<std::uint64_t>(cfg.integer("run", "seed", 7)), &fact));
    maybe_check(cfg, out, "factorization", fact);
    double b = 0.0;
    call(dnls_single_mode_b(s.grid.get(), cfg.integer("run", "mode", 7), &b));
    maybe_check(cfg, out, "single_mode_b", b);
}

void cmd_estimate_ratio(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg, false);
    require_full(s, "estimate-ratio");
    if (generator_of(cfg) != "probe")
        throw ConfigError("data.generator", "estimate-ratio requires data.generator: probe");
    std::uint64_t seed = cfg.seed("data", "seed");
    std::vector<std::string> ids = cfg.texts("run", "estimates");
    auto points = cfg.tuples("run", "points");
    std::size_t samples = positive_count(cfg, "run", "samples", 8);
    double T_w = positive(cfg, "run", "T_w", 0.25);
    for (const auto& p : points)
        if (p.size() != 3) throw ConfigError("run.points", "run.points entries must be [s, a, b]");
    for (const auto& id : ids)
        for (const auto& p : points) {
            int st = dnls_estimate_window(id.c_str(), p[0], p[1], p[2]);
            if (st == DNLS_INVALID_PARAMETER) throw ConfigError("run.estimates", dnls_last_error());
            call(st);
        }
    Rows rows;
    double worst = 0.0;
    for (const auto& id : ids)
        for (const auto& p : points) {
            double mx = 0.0;
            Table t = make<Table>([&](dnls_table** tp) {
                return dnls_ratio_probe(id.c_str(), samples, p[0], p[1], p[2], s.grid.get(), T_w, seed, tp, &mx);
            });
            worst = std::max(worst, mx);
            for (std::size_t r = 0; r < dnls_table_rows(t.get()); ++r) {
                std::vector<std::string> row{id, format_number(p[0]), format_number(p[1]), format_number(p[2])};
                for (std::size_t c = 0; c < 4; ++c) row.push_back(format_number(dnls_table_value(t.get(), r, c)));
                rows.push_back(std::move(row));
            }
        }
    out.write_table("ratios", {"estimate_id", "s", "a", "b", "sample", "lhs", "rhs", "ratio"}, rows);
    maybe_check(cfg, out, "ratio_max", worst);
}

void cmd_gamma_fixed_point(const Config& cfg, RunOutput& out) {
    Setup s = make_setup(cfg);
    require_half(s, "gamma-fixed-point");
    FieldH g = initial_data(cfg, s);
    Trace h = boundary_data(cfg, s, g.get());
    double alpha = cfg.number("equation", "alpha", 0.0);
    double tol = positive(cfg, "run", "tol", 1e-7);
    Halfline sol = make<Halfline>(
        [&](dnls_halfline** p) { return dnls_solve_halfline(g.get(), h.get(), alpha, s.T, tol, p); });
    Table t = make<Table>([&](dnls_table** p) { return dnls_halfline_gamma_table(sol.get(), p); });
    out.write_table("gamma", table_header(t.get()), table_rows(t.get()));
    const std::size_t n = dnls_table_rows(t.get());
    maybe_check(cfg, out, "gamma_change", dnls_table_value(t.get(), n - 1, 1));
    maybe_check(cfg, out, "anchor", column_max_abs(t.get(), 2));
    if (cfg.has("check", "rate_residual")) {
        double r = 0.0;
        call(dnls_halfline_rate_residual(sol.get(), &r));
        out.add_check("rate_residual", r, cfg.number("check", "rate_residual"));
    }
    if (cfg.has("check", "pde_residual")) {
        History q = make<History>([&](dnls_history** p) { return dnls_halfline_history(sol.get(), 0, p); });
        double r = 0.0;
        call(dnls_pde_residual(q.get(), alpha, &r));
        out.add_check("pde_residual", r, cfg.number("check", "pde_residual"));
    }
}

using Command = void (*)(const Config&, RunOutput&);

const std::vector<std::pair<std::string, Command>>& registry() {
    static const std::vector<std::pair<std::string, Command>> r = {
        {"simulate", cmd_simulate},
        {"smoothing-scan", cmd_smoothing_scan},
        {"conservation-check", cmd_conservation_check},
        {"gauge-check", cmd_gauge_check},
        {"kato-check", cmd_kato_check},
        {"picard-trace", cmd_picard_trace},
        {"normalform-check", cmd_normalform_check},
        {"estimate-ratio", cmd_estimate_ratio},
        {"gamma-fixed-point", cmd_gamma_fixed_point},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, cmd] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

void run_subcommand(const std::string& name, const Config& cfg, RunOutput& out) {
    for (const auto& [n, cmd] : registry())
        if (n == name) return cmd(cfg, out);
    throw ConfigError("subcommand", "unknown subcommand '" + name + "'");
}

int exit_code_for(int status) {
    switch (status) {
        case DNLS_OK: return exit_ok;
        case DNLS_INVALID_PARAMETER:
        case DNLS_GRID_MISMATCH:
        case DNLS_COMPATIBILITY_VIOLATION:
        case DNLS_WINDOW_VIOLATION:
        case DNLS_INVALID_CONFIG: return exit_invalid_config;
        default: return exit_numerical;
    }
}

}  // namespace dnls_cli
