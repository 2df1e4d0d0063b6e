#include "dnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dnls/gauge.hpp"
#include "dnls/halfline_linear.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr double kBlowup = 1e6;
const Complex I(0.0, 1.0);

std::size_t slot(long k, std::size_t n) {
    return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<long>(n) + k);
}

ComplexVec raw_coefficients(const ComplexVec& u) {
    ComplexVec d(u.size());
    dft_forward(u, d);
    const double inv = 1.0 / static_cast<double>(u.size());
    for (auto& v : d) v *= inv;
    return d;
}

ComplexVec raw_to_values(const ComplexVec& d) {
    ComplexVec u(d.size());
    dft_backward(d, u);
    return u;
}

void check_blowup(const ComplexVec& u, double t) {
    for (const auto& v : u) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > kBlowup)
            throw Error(ErrorCode::blowup_detected, "blowup detected at t = " + std::to_string(t));
    }
}

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2
std::pair<Complex, Complex> phi12(Complex z) {
    if (std::abs(z) < 0.1) {
        Complex p1{}, p2{}, zk(1.0, 0.0);
        double f1 = 1.0, f2 = 2.0;  // (k+1)!, (k+2)!
        for (int k = 0; k < 12; ++k) {
            p1 += zk / f1;
            p2 += zk / f2;
            zk *= z;
            f1 *= k + 2;
            f2 *= k + 3;
        }
        return {p1, p2};
    }
    Complex e = std::exp(z);
    return {(e - 1.0) / z, (e - 1.0 - z) / (z * z)};
}

ComplexVec polynomial(const ComplexVec& u, const ComplexVec& ux, Complex c1, Complex c2, double c3) {
    ComplexVec out(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        double m = std::norm(u[j]);
        out[j] = c1 * u[j] * u[j] * std::conj(ux[j]) + c2 * m * ux[j] + c3 * m * m * u[j];
    }
    return out;
}

Field first_derivative_for_residual(const Field& u) {
    if (u.side == Side::full_line) return spectral_derivative(u);
    const std::size_t n = u.size();
    const double inv = 1.0 / u.grid.dx();
    Field out(u.grid, u.side);
    for (std::size_t j = 4; j + 4 < n; ++j)
        out[j] = inv * (-1.0 / 280.0 * (u[j + 4] - u[j - 4]) + 4.0 / 105.0 * (u[j + 3] - u[j - 3]) -
                        0.2 * (u[j + 2] - u[j - 2]) + 0.8 * (u[j + 1] - u[j - 1]));
    return out;
}

GridSpec history_grid(const GridSpec& space, double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "evolution: T and dt must be positive");
    double steps = T / dt;
    auto n = static_cast<std::size_t>(std::llround(steps));
    if (n == 0 || std::abs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps))
        throw Error(ErrorCode::invalid_parameter, "evolution: T / dt must be a positive integer");
    return make_grid(space.half_length(), space.size(), dt, n);
}

double sup_distance(const SolutionHistory& a, const SolutionHistory& b, double s) {
    double worst = 0.0;
    Field d(a.grid);
    for (std::size_t i = 0; i < a.n_frames(); ++i) {
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = a.frames[i][j] - b.frames[i][j];
        worst = std::max(worst, sobolev_norm(d, s));
    }
    return worst;
}

// Gamma for fixed (g, h) on a fixed grid: the linear part is computed once.
class GammaMap {
  public:
    GammaMap(const GridSpec& grid, const Field& g, const TimeTrace& h, double T, Warnings* warnings)
        : grid_(grid), g_(g), T_(T), warnings_(warnings) {
        if (!(T > 0.0) || T >= 1.0) throw Error(ErrorCode::invalid_parameter, "duhamel map: T must lie in (0, 1)");
        if (!g.grid.same_space(grid)) throw Error(ErrorCode::grid_mismatch, "duhamel map: data grid differs");
        check_compatibility(g, h);
        const std::size_t steps = grid.n_steps();
        const double dt = grid.dt();
        Field ge = extend(g);
        TimeTrace p = corrector_p(ge, dt, steps + 1);
        hp_.resize(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) hp_[i] = h.at(static_cast<double>(i) * dt) - p.values[i];
        free_.resize(steps + 1);
        ComplexVec d = raw_coefficients(ge.values), dt_(d.size());
        for (std::size_t i = 0; i <= steps; ++i) {
            double t = static_cast<double>(i) * dt;
            for (std::size_t m = 0; m < d.size(); ++m) {
                double xi = grid.xi(m);
                dt_[m] = d[m] * std::polar(1.0, -xi * xi * t);
            }
            free_[i] = raw_to_values(dt_);
        }
        w_prev_.resize(d.size());
        w_curr_.resize(d.size());
        decay_.resize(d.size());
        for (std::size_t m = 0; m < d.size(); ++m) {
            double xi = grid.xi(m);
            Complex z(0.0, -xi * xi * dt);
            auto [p1, p2] = phi12(z);
            decay_[m] = std::exp(z);
            w_prev_[m] = dt * (p1 - p2);
            w_curr_[m] = dt * p2;
        }
    }

    SolutionHistory linear() const {
        return assemble(std::vector<ComplexVec>(grid_.n_steps() + 1, ComplexVec(grid_.size())), hp_);
    }

    SolutionHistory apply(const SolutionHistory& u) const {
        if (!(u.grid == grid_)) throw Error(ErrorCode::grid_mismatch, "duhamel map: candidate grid differs");
        const std::size_t steps = grid_.n_steps();
        const std::size_t n = grid_.size();
        const double dt = grid_.dt();
        const EquationForm eq{-1.0};
        std::vector<ComplexVec> duh(steps + 1, ComplexVec(n));
        ComplexVec D(n), F_prev(n), F_curr(n);
        auto forcing = [&](std::size_t i, ComplexVec& out) {
            double cut = cutoff_eta(static_cast<double>(i) * dt / T_);
            out = dealiased_nonlinearity(raw_coefficients(u.frames[i].values), grid_, eq);
            for (auto& v : out) v *= I * cut;
        };
        forcing(0, F_prev);
        ComplexVec q(steps + 1);
        for (std::size_t i = 1; i <= steps; ++i) {
            forcing(i, F_curr);
            for (std::size_t m = 0; m < n; ++m)
                D[m] = decay_[m] * D[m] + w_prev_[m] * F_prev[m] + w_curr_[m] * F_curr[m];
            duh[i] = raw_to_values(D);
            check_blowup(duh[i], static_cast<double>(i) * dt);
            q[i] = duh[i][grid_.origin()];
            std::swap(F_prev, F_curr);
        }
        ComplexVec b(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) b[i] = hp_[i] - q[i];
        return assemble(duh, b);
    }

  private:
    SolutionHistory assemble(const std::vector<ComplexVec>& duh, const ComplexVec& b) const {
        const std::size_t steps = grid_.n_steps();
        const double dt = grid_.dt();
        auto boundary = boundary_solution(grid_, boundary_forcing(TimeTrace(0.0, dt, b), steps), warnings_);
        SolutionHistory hist;
        hist.grid = grid_;
        hist.extension_id = std::string(extension_id());
        hist.frames.reserve(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) {
            double eta = cutoff_eta(static_cast<double>(i) * dt);
            Field f(grid_, Side::half_line);
            for (std::size_t j = 0; j < f.size(); ++j) f[j] = eta * (free_[i][j] + duh[i][j] + boundary[i][j]);
            hist.frames.push_back(std::move(f));
        }
        for (std::size_t j = grid_.origin(); j < grid_.size(); ++j) hist.frames[0][j] = g_[j];
        return hist;
    }

    GridSpec grid_;
    Field g_;
    double T_;
    Warnings* warnings_;
    ComplexVec hp_;
    std::vector<ComplexVec> free_;
    ComplexVec decay_, w_prev_, w_curr_;
};

}  // namespace

ComplexVec nonlinearity(const ComplexVec& u, const ComplexVec& ux, const EquationForm& eq) {
    return polynomial(u, ux, eq.c1(), eq.c2(), eq.c3());
}

ComplexVec dealiased_nonlinearity(const ComplexVec& raw, const GridSpec& grid, const EquationForm& eq) {
    return dealiased_polynomial(raw, grid, eq.c1(), eq.c2(), eq.c3());
}

ComplexVec dealiased_polynomial(const ComplexVec& raw, const GridSpec& grid, Complex c1, Complex c2, double c3) {
    const std::size_t n = grid.size();
    const std::size_t M = 2 * n;
    const long K = grid.dealias_cutoff();
    ComplexVec pu(M), pux(M);
    for (long k = -K; k <= K; ++k) {
        Complex c = raw[slot(k, n)];
        pu[slot(k, M)] = c;
        pux[slot(k, M)] = I * (static_cast<double>(k) * grid.dxi()) * c;
    }
    ComplexVec u(M), ux(M);
    dft_backward(pu, u);
    dft_backward(pux, ux);
    ComplexVec nl = polynomial(u, ux, c1, c2, c3);
    ComplexVec nh(M);
    dft_forward(nl, nh);
    ComplexVec out(n);
    const double inv = 1.0 / static_cast<double>(M);
    for (long k = -K; k <= K; ++k) out[slot(k, n)] = nh[slot(k, M)] * inv;
    return out;
}

Field step_fullline(const Field& u, double dt, const EquationForm& eq) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "step: dt must be positive");
    if (!u.all_finite()) throw Error(ErrorCode::blowup_detected, "step: non-finite input");
    const GridSpec& grid = u.grid;
    const std::size_t n = grid.size();
    ComplexVec d = raw_coefficients(u.values);
    ComplexVec eh(n), ef(n);
    for (std::size_t m = 0; m < n; ++m) {
        double xi = grid.xi(m);
        eh[m] = std::polar(1.0, -xi * xi * dt / 2);
        ef[m] = eh[m] * eh[m];
    }
    auto rhs = [&](const ComplexVec& c) {
        ComplexVec r = dealiased_nonlinearity(c, grid, eq);
        for (auto& v : r) v *= I;
        return r;
    };
    ComplexVec tmp(n);
    ComplexVec k1 = rhs(d);
    for (std::size_t m = 0; m < n; ++m) tmp[m] = eh[m] * (d[m] + 0.5 * dt * k1[m]);
    ComplexVec k2 = rhs(tmp);
    for (std::size_t m = 0; m < n; ++m) tmp[m] = eh[m] * d[m] + 0.5 * dt * k2[m];
    ComplexVec k3 = rhs(tmp);
    for (std::size_t m = 0; m < n; ++m) tmp[m] = ef[m] * d[m] + dt * eh[m] * k3[m];
    ComplexVec k4 = rhs(tmp);
    for (std::size_t m = 0; m < n; ++m)
        d[m] = ef[m] * d[m] + dt / 6.0 * (ef[m] * k1[m] + 2.0 * eh[m] * (k2[m] + k3[m]) + k4[m]);
    Field out(grid, raw_to_values(d), u.side);
    check_blowup(out.values, dt);
    return out;
}

SolutionHistory solve_fullline(const Field& g, double T, double dt, const EquationForm& eq) {
    SolutionHistory hist;
    hist.grid = history_grid(g.grid, T, dt);
    hist.frames.reserve(hist.grid.n_steps() + 1);
    Field first(hist.grid, g.values, g.side);
    hist.frames.push_back(first);
    for (std::size_t i = 1; i <= hist.grid.n_steps(); ++i) {
        try {
            hist.frames.push_back(step_fullline(hist.frames.back(), dt, eq));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::blowup_detected) throw;
            throw Error(ErrorCode::blowup_detected,
                        "blowup detected at t = " + std::to_string(static_cast<double>(i) * dt));
        }
    }
    return hist;
}

SolutionHistory duhamel_map(const SolutionHistory& u_cand, const Field& g, const TimeTrace& h, double T,
                            Warnings* warnings) {
    GammaMap gamma(u_cand.grid, g, h, T, warnings);
    return gamma.apply(u_cand);
}

HalflineSolution solve_halfline_gauged(const Field& g, const TimeTrace& h, double T, double tol,
                                       std::size_t max_iter, double s, Warnings* warnings) {
    if (!(tol > 0.0) || max_iter == 0)
        throw Error(ErrorCode::invalid_parameter, "picard: tol and max_iter must be positive");
    GridSpec grid = history_grid(g.grid, T, g.grid.dt());
    Field data(grid, g.values, Side::half_line);
    GammaMap gamma(grid, data, h, T, warnings);
    HalflineSolution out;
    out.trace.T_used = T;
    SolutionHistory u = gamma.linear();
    std::size_t above_one = 0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        SolutionHistory next;
        try {
            next = gamma.apply(u);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::blowup_detected) throw;
            throw Error(ErrorCode::no_contraction, std::string("picard: iterates diverged (") + e.what() + ")");
        }
        double dist = sup_distance(next, u, s);
        auto& dists = out.trace.iterate_distances;
        if (!dists.empty()) {
            double factor = dists.back() > 0.0 ? dist / dists.back() : 0.0;
            out.trace.contraction_factors.push_back(factor);
            above_one = factor > 1.0 ? above_one + 1 : 0;
        }
        dists.push_back(dist);
        u = std::move(next);
        if (dist <= tol) {
            out.trace.converged = true;
            break;
        }
        if (above_one >= 3)
            throw Error(ErrorCode::no_contraction, "picard: contraction factor above 1 for three iterates");
    }
    out.history = std::move(u);
    return out;
}

double residual_pde(const SolutionHistory& hist, const EquationForm& eq) {
    if (hist.n_frames() < 3) throw Error(ErrorCode::invalid_parameter, "residual: need at least 3 frames");
    const GridSpec& grid = hist.grid;
    const double dt = grid.dt();
    const double L = grid.half_length();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < hist.n_frames(); ++i) {
        const Field& u = hist.frames[i];
        Field uxx = residual_second_derivative(u);
        Field ux = first_derivative_for_residual(u);
        ComplexVec nl = nonlinearity(u.values, ux.values, eq);
        ComplexVec r(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j)
            r[j] = I * (hist.frames[i + 1][j] - hist.frames[i - 1][j]) / (2.0 * dt) + uxx[j] + nl[j];
        worst = std::max(worst, windowed_l2(grid, r, 1.0, L - 5.0));
    }
    return worst;
}

DnlsSolution solve_halfline_dnls(const Field& G, const TimeTrace& H, double alpha, double T, double tol,
                                 double inner_tol, std::size_t max_inner, Warnings* warnings) {
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_parameter, "gamma iteration: tol must be positive");
    const double to_u = -1.0 - alpha;
    Field g = apply_gauge_halfline(G, to_u, warnings);
    const double anchor = halfline_mass(g);
    GridSpec grid = history_grid(G.grid, T, G.grid.dt());
    const std::size_t steps = grid.n_steps();
    const double dt = grid.dt();
    ComplexVec gamma(steps + 1, Complex(anchor, 0.0));
    ComplexVec Hs(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) Hs[i] = H.at(static_cast<double>(i) * dt);

    DnlsSolution out;
    constexpr std::size_t kMaxOuter = 50;
    for (std::size_t outer = 0; outer < kMaxOuter; ++outer) {
        ComplexVec hv(steps + 1);
        for (std::size_t i = 0; i <= steps; ++i) hv[i] = std::polar(1.0, (1.0 + alpha) * gamma[i].real()) * Hs[i];
        TimeTrace h(0.0, dt, std::move(hv));
        HalflineSolution inner = solve_halfline_gauged(g, h, T, inner_tol, max_inner, 1.0, warnings);
        ComplexVec next(steps + 1);
        double dist = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            next[i] = halfline_mass(inner.history.frames[i]);
            dist = std::max(dist, std::abs(next[i] - gamma[i]));
        }
        out.anchor_errors.push_back(std::abs(next[0].real() - anchor));
        next[0] = anchor;
        out.outer_distances.push_back(dist);
        out.last_inner = inner.trace;
        gamma = std::move(next);
        out.u = std::move(inner.history);
        if (dist <= tol) {
            out.gamma = TimeTrace(0.0, dt, gamma, TraceRole::gamma_phase);
            out.q.grid = out.u.grid;
            out.q.extension_id = out.u.extension_id;
            out.q.frames.reserve(steps + 1);
            for (const auto& f : out.u.frames) out.q.frames.push_back(apply_gauge_halfline(f, -to_u));
            for (std::size_t j = grid.origin(); j < grid.size(); ++j) out.q.frames[0][j] = G[j];
            return out;
        }
    }
    throw Error(ErrorCode::outer_no_contraction, "gamma iteration: no convergence after 50 outer iterates");
}

std::vector<double> gamma_rate(const SolutionHistory& hist, const TimeTrace& h) {
    const std::size_t o = hist.grid.origin();
    const double dx = hist.grid.dx();
    std::vector<double> r(hist.n_frames());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const Field& u = hist.frames[i];
        Complex ux = (-25.0 * u[o] + 48.0 * u[o + 1] - 36.0 * u[o + 2] + 16.0 * u[o + 3] - 3.0 * u[o + 4]) /
                     (12.0 * dx);
        Complex hv = h.at(hist.time(i));
        double m = std::norm(hv);
        r[i] = 2.0 * std::imag(std::conj(hv) * ux) + 0.5 * m * m;
    }
    return r;
}

double gamma_rate_identity_check(const SolutionHistory& hist, const TimeTrace& h) {
    if (hist.n_frames() < 3) throw Error(ErrorCode::invalid_parameter, "gamma rate: need at least 3 frames");
    std::vector<double> mass(hist.n_frames());
    for (std::size_t i = 0; i < mass.size(); ++i) mass[i] = halfline_mass(hist.frames[i]);
    auto rate = gamma_rate(hist, h);
    const double dt = hist.grid.dt();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < mass.size(); ++i)
        worst = std::max(worst, std::abs((mass[i + 1] - mass[i - 1]) / (2.0 * dt) - rate[i]));
    return worst;
}

}  // namespace dnls
