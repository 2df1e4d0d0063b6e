#include "dnls/halfline_linear.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <tuple>

#include "dnls/spectral.hpp"

namespace dnls {

namespace {

using std::numbers::pi;
using CMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;

constexpr double kGaussNodes[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                   -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                   0.7966664774136267,  0.9602898564975363};
constexpr double kGaussWeights[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                     0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

constexpr std::size_t kBlock = 256;

void add_panel(BetaQuadrature& q, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < 8; ++i) {
        q.beta.push_back(mid + half * kGaussNodes[i]);
        q.weight.push_back(half * kGaussWeights[i]);
    }
}

// last time at which |h| exceeds 1e-6 of its peak
double effective_extent(const TimeTrace& h) {
    double peak = h.max_abs();
    if (peak == 0.0) return 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (std::abs(h.values[i]) > 1e-6 * peak) last = i;
    return h.time(last);
}

Field single_time(const TimeTrace& h, const GridSpec& grid, double t, bool w1, Warnings* warnings) {
    if (h.t0 != 0.0) throw Error(ErrorCode::invalid_parameter, "boundary operator: trace must start at t = 0");
    BoundaryPropagator prop(grid, {t}, h.dt, std::max(effective_extent(h), h.dt));
    auto frames = prop.apply(h, w1, !w1, warnings);
    return Field(grid, std::move(frames[0]));
}

}  // namespace

Field free_propagate(const Field& g, double t) {
    ComplexVec c = coefficients(g);
    for (std::size_t m = 0; m < c.size(); ++m) {
        double xi = g.grid.xi(m);
        c[m] *= std::polar(1.0, -xi * xi * t);
    }
    return field_from_coefficients(g.grid, c, g.side);
}

BetaQuadrature make_beta_quadrature(double beta_max, double x_extent, double t_extent,
                                    std::size_t min_nodes) {
    if (!(beta_max > 0.0)) throw Error(ErrorCode::invalid_parameter, "beta quadrature: beta_max must be positive");
    BetaQuadrature q;
    q.beta_max = beta_max;
    const double panels_min = std::ceil(static_cast<double>(std::max<std::size_t>(min_nodes, 8)) / 8.0);
    const double cap = beta_max / panels_min;
    auto width_at = [&](double b) {
        double rate = x_extent + 2.0 * b * t_extent;
        return rate > 0.0 ? std::min(cap, pi / rate) : cap;
    };
    // graded panels at beta = 0
    double w0 = width_at(0.0);
    double b = 0.0;
    for (double frac : {0.125, 0.125, 0.25, 0.5}) {
        double e = std::min(beta_max, b + frac * w0);
        add_panel(q, b, e);
        b = e;
    }
    while (b < beta_max) {
        double w = width_at(b);
        if (b + 2.0 * w >= beta_max) {
            // split the remainder into four panels at the truncation end
            double rest = beta_max - b;
            for (int i = 0; i < 4; ++i) add_panel(q, b + rest * i / 4.0, b + rest * (i + 1) / 4.0);
            b = beta_max;
            break;
        }
        add_panel(q, b, b + w);
        b += w;
    }
    return q;
}

BoundaryPropagator::BoundaryPropagator(const GridSpec& grid, std::vector<double> times,
                                       double trace_dt, double trace_extent)
    : grid_(grid), times_(std::move(times)), trace_dt_(trace_dt), trace_extent_(trace_extent) {
    if (!(trace_dt > 0.0)) throw Error(ErrorCode::invalid_parameter, "boundary propagator: trace_dt must be positive");
    double t_span = trace_extent;
    for (double t : times_) t_span = std::max(t_span, std::abs(t));
    const double nyquist = pi / grid.dx();
    quad_ = make_beta_quadrature(std::min(std::sqrt(pi / trace_dt), nyquist), grid.half_length(), t_span);
}

std::vector<ComplexVec> BoundaryPropagator::apply(const TimeTrace& b, bool use_w1, bool use_w2,
                                                  Warnings* warnings) const {
    const std::size_t n = grid_.size();
    const std::size_t nt = times_.size();
    const std::size_t J = quad_.beta.size();
    std::vector<ComplexVec> frames(nt, ComplexVec(n));
    if (b.max_abs() == 0.0 || (!use_w1 && !use_w2)) return frames;
    if (b.t0 != 0.0) throw Error(ErrorCode::invalid_parameter, "boundary operator: trace must start at t = 0");

    ComplexVec c1(J), c2(J);
    double peak = 0.0, last = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        const double be = quad_.beta[j];
        const double tau = be * be;
        Complex hm = use_w1 ? filon_fourier(b.values, 0.0, b.dt, -tau) : Complex{};
        Complex hp = use_w2 ? filon_fourier(b.values, 0.0, b.dt, tau) : Complex{};
        c1[j] = quad_.weight[j] * be * hm / pi;
        c2[j] = quad_.weight[j] * be * hp / pi;
        double mag = be * std::max(std::abs(hm), std::abs(hp));
        peak = std::max(peak, mag);
        if (j + 1 == J) last = mag;
    }
    if (warnings && peak > 0.0 && last > 1e-8 * peak)
        warnings->add("boundary operator: integrand at beta_max exceeds 1e-8 of its peak (bandwidth)");

    CMat out = CMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nt));
    RMat out2r = RMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nt));
    RMat out2i = RMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(nt));
    const double dx = grid_.dx();
    const double x0 = grid_.x(0);

    for (std::size_t j0 = 0; j0 < J; j0 += kBlock) {
        const std::size_t jb = std::min(kBlock, J - j0);
        const auto ejb = static_cast<Eigen::Index>(jb);
        if (use_w1) {
            CMat ex(static_cast<Eigen::Index>(n), ejb);
            CMat y(ejb, static_cast<Eigen::Index>(nt));
            for (std::size_t k = 0; k < jb; ++k) {
                const double be = quad_.beta[j0 + k];
                const Complex step = std::polar(1.0, be * dx);
                Complex z;
                for (std::size_t m = 0; m < n; ++m) {
                    if (m % 64 == 0) z = std::polar(1.0, be * grid_.x(m));
                    ex(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = z;
                    z *= step;
                }
                for (std::size_t i = 0; i < nt; ++i)
                    y(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
                        c1[j0 + k] * std::polar(1.0, -be * be * times_[i]);
            }
            out.noalias() += ex * y;
        }
        if (use_w2) {
            RMat e2 = RMat::Zero(static_cast<Eigen::Index>(n), ejb);
            RMat yr(ejb, static_cast<Eigen::Index>(nt)), yi(ejb, static_cast<Eigen::Index>(nt));
            for (std::size_t k = 0; k < jb; ++k) {
                const double be = quad_.beta[j0 + k];
                for (std::size_t m = 0; m < n; ++m) {
                    const double x = x0 + static_cast<double>(m) * dx;
                    const double bx = be * x;
                    if (bx <= -2.0 || bx > 39.0) continue;  // rho = 0, or below 1e-17
                    e2(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) = std::exp(-bx) * cutoff_rho(bx);
                }
                for (std::size_t i = 0; i < nt; ++i) {
                    Complex v = c2[j0 + k] * std::polar(1.0, be * be * times_[i]);
                    yr(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = v.real();
                    yi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = v.imag();
                }
            }
            out2r.noalias() += e2 * yr;
            out2i.noalias() += e2 * yi;
        }
    }
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t m = 0; m < n; ++m) {
            const auto em = static_cast<Eigen::Index>(m), ei = static_cast<Eigen::Index>(i);
            frames[i][m] = out(em, ei) + Complex(out2r(em, ei), out2i(em, ei));
        }
    return frames;
}

Field boundary_w1(const TimeTrace& h, const GridSpec& grid, double t, Warnings* warnings) {
    return single_time(h, grid, t, true, warnings);
}

Field boundary_w2(const TimeTrace& h, const GridSpec& grid, double t, Warnings* warnings) {
    return single_time(h, grid, t, false, warnings);
}

TimeTrace corrector_p(const Field& g_e, double dt, std::size_t n_samples) {
    ComplexVec c = coefficients(g_e);
    ComplexVec p(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        double t = static_cast<double>(i) * dt;
        double eta = cutoff_eta(t);
        if (eta == 0.0) continue;
        if (i == 0) {
            p[0] = g_e[g_e.grid.origin()];
            continue;
        }
        Complex acc{};
        for (std::size_t m = 0; m < c.size(); ++m) {
            double xi = g_e.grid.xi(m);
            acc += c[m] * std::polar(1.0, -xi * xi * t);
        }
        p[i] = eta * acc;
    }
    return TimeTrace(0.0, dt, std::move(p), TraceRole::trace_D0);
}

TimeTrace boundary_trace(const SolutionHistory& hist, TraceRole role) {
    ComplexVec v(hist.n_frames());
    const std::size_t o = hist.grid.origin();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = hist.frames[i][o];
    return TimeTrace(0.0, hist.grid.dt(), std::move(v), role);
}

TimeTrace boundary_forcing(const TimeTrace& b, std::size_t n_steps) {
    if (b.size() < n_steps + 1)
        throw Error(ErrorCode::invalid_parameter, "boundary forcing: trace shorter than the horizon");
    const std::size_t m = n_steps / 3;
    ComplexVec v(n_steps + 1 + m);
    for (std::size_t i = 0; i <= n_steps; ++i) v[i] = b.values[i];
    for (std::size_t i = 1; i <= m; ++i) {
        Complex ext = 6.0 * b.values[n_steps - i] - 8.0 * b.values[n_steps - 2 * i] +
                      3.0 * b.values[n_steps - 3 * i];
        v[n_steps + i] = (1.0 - smooth_step(static_cast<double>(i) / static_cast<double>(m))) * ext;
    }
    return TimeTrace(0.0, b.dt, std::move(v), TraceRole::duhamel_trace);
}

std::vector<ComplexVec> boundary_solution(const GridSpec& grid, const TimeTrace& b, Warnings* warnings) {
    using Key = std::tuple<double, std::size_t, double, std::size_t, double, std::size_t>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const BoundaryPropagator>> cache;
    Key key{grid.half_length(), grid.size(), grid.dt(), grid.n_steps(), b.dt, b.size()};
    std::shared_ptr<const BoundaryPropagator> prop;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::vector<double> times(grid.n_steps() + 1);
            for (std::size_t i = 0; i < times.size(); ++i) times[i] = static_cast<double>(i) * grid.dt();
            if (cache.size() > 16) cache.clear();
            it = cache.emplace(key, std::make_shared<const BoundaryPropagator>(grid, times, b.dt, b.t_end())).first;
        }
        prop = it->second;
    }
    return prop->apply(b, true, true, warnings);
}

void check_compatibility(const Field& g, const TimeTrace& h) {
    Complex g0 = g[g.grid.origin()];
    Complex h0 = h.values.empty() ? Complex{} : h.values[0];
    if (std::abs(g0 - h0) > 1e-6 * (1.0 + g.max_abs()))
        throw Error(ErrorCode::compatibility_violation, "compatibility: |g(0) - h(0)| exceeds 1e-6 (1 + max|g|)");
}

SolutionHistory linear_ibvp_solve(const Field& g, const TimeTrace& h, Warnings* warnings) {
    const GridSpec& grid = g.grid;
    check_compatibility(g, h);
    const std::size_t steps = grid.n_steps();
    const double dt = grid.dt();
    Field ge = extend(g);
    TimeTrace p = corrector_p(ge, dt, steps + 1);
    ComplexVec b(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) b[i] = h.at(static_cast<double>(i) * dt) - p.values[i];
    auto boundary = boundary_solution(grid, boundary_forcing(TimeTrace(0.0, dt, b), steps), warnings);

    SolutionHistory hist;
    hist.grid = grid;
    hist.extension_id = std::string(extension_id());
    hist.frames.reserve(steps + 1);
    ComplexVec c = coefficients(ge);
    ComplexVec ct(c.size());
    for (std::size_t i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) * dt;
        for (std::size_t m = 0; m < c.size(); ++m) {
            double xi = grid.xi(m);
            ct[m] = c[m] * std::polar(1.0, -xi * xi * t);
        }
        Field f = field_from_coefficients(grid, ct, Side::half_line);
        for (std::size_t j = 0; j < f.size(); ++j) f[j] += boundary[i][j];
        hist.frames.push_back(std::move(f));
    }
    for (std::size_t j = grid.origin(); j < grid.size(); ++j) hist.frames[0][j] = g[j];
    return hist;
}

double windowed_l2(const GridSpec& grid, const ComplexVec& v, double a, double b) {
    double acc = 0.0;
    bool first = true;
    std::size_t last = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        double x = grid.x(j);
        if (x < a || x > b) continue;
        double w = first ? 0.5 : 1.0;
        first = false;
        acc += w * std::norm(v[j]);
        last = j;
    }
    if (!first) acc -= 0.5 * std::norm(v[last]);
    return std::sqrt(acc * grid.dx());
}

Field residual_second_derivative(const Field& u) {
    if (u.side == Side::full_line) return spectral_second_derivative(u);
    const std::size_t n = u.size();
    const double inv = 1.0 / (u.grid.dx() * u.grid.dx());
    Field out(u.grid, u.side);
    for (std::size_t j = 4; j + 4 < n; ++j)
        out[j] = inv * (-1.0 / 560.0 * (u[j - 4] + u[j + 4]) + 8.0 / 315.0 * (u[j - 3] + u[j + 3]) -
                        0.2 * (u[j - 2] + u[j + 2]) + 1.6 * (u[j - 1] + u[j + 1]) - 205.0 / 72.0 * u[j]);
    return out;
}

double pde_residual_linear(const SolutionHistory& hist) {
    if (hist.n_frames() < 3) throw Error(ErrorCode::invalid_parameter, "pde residual: need at least 3 frames");
    const GridSpec& grid = hist.grid;
    const double dt = grid.dt();
    const double L = grid.half_length();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < hist.n_frames(); ++i) {
        Field uxx = residual_second_derivative(hist.frames[i]);
        ComplexVec r(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j)
            r[j] = Complex(0.0, 1.0) * (hist.frames[i + 1][j] - hist.frames[i - 1][j]) / (2.0 * dt) + uxx[j];
        worst = std::max(worst, windowed_l2(grid, r, 1.0, L - 5.0));
    }
    return worst;
}

double trace_error_l2(const SolutionHistory& hist, const TimeTrace& h) {
    const std::size_t o = hist.grid.origin();
    std::vector<double> d(hist.n_frames());
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = std::norm(hist.frames[i][o] - h.at(hist.time(i)));
    return std::sqrt(std::max(0.0, simpson(d, hist.grid.dt())));
}

double kato_trace_check(const Field& g, double s, double dt) {
    if (s < 0.0) throw Error(ErrorCode::invalid_parameter, "kato check: s must be nonnegative");
    double gn = sobolev_norm(g, s);
    if (gn == 0.0) return 0.0;
    const GridSpec& grid = g.grid;
    const std::size_t n = grid.size();
    const auto M = static_cast<std::size_t>(std::llround(4.0 / dt));
    constexpr std::size_t kPositions = 32;
    std::vector<std::size_t> idx(kPositions);
    for (std::size_t k = 0; k < kPositions; ++k) idx[k] = grid.origin() - n / 4 + k * (n / 2) / kPositions;
    std::vector<ComplexVec> traces(kPositions, ComplexVec(M));
    ComplexVec c = coefficients(g), ct(n);
    for (std::size_t i = 0; i < M; ++i) {
        double t = -2.0 + static_cast<double>(i) * dt;
        double eta = cutoff_eta(t);
        if (eta == 0.0) continue;
        for (std::size_t m = 0; m < n; ++m) {
            double xi = grid.xi(m);
            ct[m] = c[m] * std::polar(1.0, -xi * xi * t);
        }
        Field u = field_from_coefficients(grid, ct);
        for (std::size_t k = 0; k < kPositions; ++k) traces[k][i] = eta * u[idx[k]];
    }
    double worst = 0.0;
    for (const auto& tr : traces) worst = std::max(worst, sobolev_norm_time(tr, dt, (2.0 * s + 1.0) / 4.0));
    return worst / gn;
}

}  // namespace dnls
