#include "dnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "dnls/evolution.hpp"
#include "dnls/gauge.hpp"
#include "dnls/normal_form.hpp"
#include "dnls/parallel.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEnergyFloor = 1e-13;
constexpr std::size_t kFitLevels = 5;
constexpr std::size_t kMinLevels = 4;

std::size_t slot(long k, std::size_t n) {
    return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<long>(n) + k);
}

long signed_index(std::size_t m, std::size_t n) {
    return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

double bracket(double x) { return std::sqrt(1.0 + x * x); }

double normal_deviate(std::mt19937_64& rng) {
    double u1 = 1.0 - unit_uniform(rng());
    double u2 = unit_uniform(rng());
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t index) {
    return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1)));
}

// Integrals over the field's domain: periodic trapezoid on the full line,
// Simpson over x >= 0 on the half-line.
double integrate(const Field& like, const std::vector<double>& dens) {
    if (like.side == Side::full_line) {
        double acc = 0.0;
        for (double v : dens) acc += v;
        return acc * like.grid.dx();
    }
    const std::size_t o = like.grid.origin();
    return simpson(std::span<const double>(dens.data() + o, dens.size() - o), like.grid.dx());
}

Field derivative_of(const Field& u) {
    return u.side == Side::full_line ? spectral_derivative(u) : halfline_derivative(u);
}

Complex boundary_derivative(const Field& u) {
    const std::size_t o = u.grid.origin();
    return (-25.0 * u[o] + 48.0 * u[o + 1] - 36.0 * u[o + 2] + 16.0 * u[o + 3] - 3.0 * u[o + 4]) /
           (12.0 * u.grid.dx());
}

Field as_halfline(const Field& f) {
    Field out = f;
    out.side = Side::half_line;
    return out;
}

// \int u conj(u_x) over the domain.
Complex momentum_density_integral(const Field& u) {
    Field ux = derivative_of(u);
    std::vector<double> re(u.size()), im(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        Complex v = u[j] * std::conj(ux[j]);
        re[j] = v.real();
        im[j] = v.imag();
    }
    return {integrate(u, re), integrate(u, im)};
}

std::vector<double> cumulative(const std::vector<double>& f, double dt) {
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) out[i] = out[i - 1] + 0.5 * dt * (f[i] + f[i - 1]);
    return out;
}

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

Field reflect(const Field& f, bool odd) {
    const std::size_t n = f.size();
    const std::size_t o = f.grid.origin();
    Field out(f.grid);
    for (std::size_t j = o; j < n; ++j) out[j] = f[j];
    for (std::size_t m = 1; m < o && o + m < n; ++m) out[o - m] = odd ? -f[o + m] : f[o + m];
    if (odd) out[o] = 0.0;
    return out;
}

std::vector<double> dyadic_energies(const Field& f, int levels) {
    const GridSpec& g = f.grid;
    const double scale = 2.0 * g.half_length();
    ComplexVec c = coefficients(f);
    std::vector<double> E(static_cast<std::size_t>(levels), 0.0);
    for (std::size_t m = 0; m < c.size(); ++m) {
        double xi = std::abs(g.xi(m));
        if (xi < 1.0) continue;
        int j = static_cast<int>(std::floor(std::log2(xi)));
        if (j < levels) E[static_cast<std::size_t>(j)] += scale * scale * std::norm(c[m]) * g.dxi();
    }
    return E;
}

// slope, intercept of the least-squares line through (x, y)
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

SolutionHistory map_frames(const SolutionHistory& hist, const std::function<Field(const Field&)>& op) {
    SolutionHistory out;
    out.grid = hist.grid;
    out.extension_id = hist.extension_id;
    out.frames.reserve(hist.n_frames());
    for (const auto& f : hist.frames) out.frames.push_back(op(f));
    return out;
}

// Modulated free waves on |xi| <= 2 over frames 0..nw, ||u(0)||_{H^s} = 1.
SolutionHistory probe_field(const GridSpec& grid, std::size_t nw, double s, std::uint64_t seed, std::size_t index) {
    auto rng = sample_rng(seed, index);
    const std::size_t n = grid.size();
    const long band = static_cast<long>(std::floor(2.0 / grid.dxi()));
    std::vector<Complex> amp;
    std::vector<double> omega, phase;
    for (long k = -band; k <= band; ++k) {
        double xi = grid.dxi() * static_cast<double>(k);
        double re = normal_deviate(rng), im = normal_deviate(rng);
        amp.emplace_back(Complex(re, im) * std::pow(bracket(xi), -s - 0.5));
        omega.push_back(20.0 * unit_uniform(rng()));
        phase.push_back(kTwoPi * unit_uniform(rng()));
    }
    SolutionHistory hist;
    hist.grid = make_grid(grid.half_length(), n, grid.dt(), nw);
    ComplexVec c(n);
    for (std::size_t i = 0; i <= nw; ++i) {
        double t = static_cast<double>(i) * grid.dt();
        for (long k = -band; k <= band; ++k) {
            std::size_t idx = static_cast<std::size_t>(k + band);
            double xi = grid.dxi() * static_cast<double>(k);
            c[slot(k, n)] = amp[idx] * (1.0 + 0.5 * std::cos(omega[idx] * t + phase[idx])) * std::polar(1.0, -xi * xi * t);
        }
        hist.frames.push_back(field_from_coefficients(hist.grid, c));
    }
    double norm = sobolev_norm(hist.frames[0], s);
    for (auto& f : hist.frames)
        for (auto& v : f.values) v /= norm;
    return hist;
}

}  // namespace

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Field threshold_data(const GridSpec& grid, double s, double amplitude, std::uint64_t seed, double center, double width,
                     Side side) {
    if (!(width > 0.0) || !(amplitude >= 0.0))
        throw Error(ErrorCode::invalid_parameter, "threshold_data: width must be positive, amplitude nonnegative");
    const double lo = center - 0.5 * width - 1.0, hi = center + 0.5 * width + 1.0;
    const double L = grid.half_length();
    if (lo <= -L || hi >= L || (side == Side::half_line && lo <= 0.0))
        throw Error(ErrorCode::invalid_parameter, "threshold_data: window leaves the domain");
    const std::size_t n = grid.size();
    const long K = grid.dealias_cutoff();
    std::mt19937_64 rng(seed);
    ComplexVec c(n);
    for (long k = -K; k <= K; ++k) {
        double xi = grid.dxi() * static_cast<double>(k);
        c[slot(k, n)] = std::pow(bracket(xi), -s - 0.5) / (2.0 * L) * std::polar(1.0, kTwoPi * unit_uniform(rng()));
    }
    Field f = field_from_coefficients(grid, c);
    for (std::size_t j = 0; j < n; ++j) {
        double x = grid.x(j);
        f[j] *= smooth_step(x - lo) * smooth_step(hi - x);
    }
    if (side == Side::full_line) {
        ComplexVec d = coefficients(f);
        for (std::size_t m = 0; m < n; ++m)
            if (std::abs(signed_index(m, n)) > K) d[m] = 0.0;
        f = field_from_coefficients(grid, d);
    } else {
        f.side = Side::half_line;
        for (std::size_t j = 0; j < grid.origin(); ++j) f[j] = 0.0;
    }
    double peak = 0.0;
    for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (auto& v : f.values) v *= amplitude / peak;
    return f;
}

Field random_field(const GridSpec& grid, double xi_band, double h1_norm, std::uint64_t seed) {
    const std::size_t n = grid.size();
    const long band = std::min(static_cast<long>(std::floor(xi_band / grid.dxi())), grid.dealias_cutoff());
    std::mt19937_64 rng(seed);
    ComplexVec c(n);
    for (long k = -band; k <= band; ++k) {
        double xi = grid.dxi() * static_cast<double>(k);
        double re = normal_deviate(rng), im = normal_deviate(rng);
        c[slot(k, n)] = Complex(re, im) / bracket(xi);
    }
    Field f = field_from_coefficients(grid, c);
    double norm = sobolev_norm(f, 1.0);
    if (norm > 0.0)
        for (auto& v : f.values) v *= h1_norm / norm;
    return f;
}

// ------------------------------------------------ smoothing

double smoothing_prediction(double s, Side domain) {
    if (domain == Side::full_line) return std::min(0.5, 2.0 * s - 1.0);
    return std::min({2.5 - s, 0.25, 2.0 * s - 1.0});
}

SmoothingFit smoothing_fit(const SolutionHistory& hist, const SolutionHistory& linear, double s) {
    if (hist.n_frames() != linear.n_frames() || hist.n_frames() == 0 || !hist.grid.same_space(linear.grid))
        throw Error(ErrorCode::grid_mismatch, "smoothing_fit: histories differ in shape");
    const std::size_t mid = (hist.n_frames() - 1) / 2;
    const Field& u = hist.frames[mid];
    const Field& lin = linear.frames[mid];
    const Side domain = hist.frames[0].side;
    Field r(u.grid);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = u[j] - lin[j];
    Field rl = lin;
    if (domain == Side::half_line) {
        r = reflect(r, true);
        rl = reflect(lin, false);
    }
    const GridSpec& g = u.grid;
    const double xi_cut = static_cast<double>(g.dealias_cutoff()) * g.dxi();
    int levels = 0;
    while (std::ldexp(1.0, levels + 1) <= xi_cut) ++levels;
    auto El = dyadic_energies(rl, levels);
    auto Er = dyadic_energies(r, levels);

    SmoothingFit fit;
    fit.s = s;
    fit.a_predicted = smoothing_prediction(s, domain);
    std::vector<int> usable;
    for (int j = 1; j < levels; ++j)
        if (El[static_cast<std::size_t>(j)] > kEnergyFloor && Er[static_cast<std::size_t>(j)] > kEnergyFloor)
            usable.push_back(j);
    if (usable.size() > kFitLevels) usable.erase(usable.begin(), usable.end() - kFitLevels);
    fit.dyadic_levels = usable.size();
    if (usable.size() < kMinLevels)
        throw Error(ErrorCode::insufficient_range, "smoothing_fit: fewer than 4 dyadic levels above 1e-13");
    std::vector<double> x, yl, yr;
    for (int j : usable) {
        fit.levels.push_back(j);
        fit.E_linear.push_back(El[static_cast<std::size_t>(j)]);
        fit.E_residual.push_back(Er[static_cast<std::size_t>(j)]);
        x.push_back(j);
        yl.push_back(std::log2(El[static_cast<std::size_t>(j)]));
        yr.push_back(std::log2(Er[static_cast<std::size_t>(j)]));
    }
    auto [sl, il] = fit_line(x, yl);
    auto [sr, ir] = fit_line(x, yr);
    fit.slope_linear = sl;
    fit.slope_residual = sr;
    fit.a_measured = 0.5 * (sl - sr);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = yr[i] - (sr * x[i] + ir);
        acc += e * e;
    }
    fit.residual_of_fit = std::sqrt(acc / static_cast<double>(x.size()));
    return fit;
}

// ------------------------------------------------ energies

double mass_of(const Field& u) {
    std::vector<double> d(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) d[j] = std::norm(u[j]);
    return integrate(u, d);
}

double gradient_mass_of(const Field& u) {
    Field ux = derivative_of(u);
    std::vector<double> d(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) d[j] = std::norm(ux[j]);
    return integrate(u, d);
}

double energy_functional(const Field& u, EnergyVariant variant) {
    Field ux = derivative_of(u);
    const double c_mom = variant == EnergyVariant::E_half ? 0.5 : 1.5;
    const double c_six = variant == EnergyVariant::E_half ? 0.0 : 0.5;
    std::vector<double> d(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        double m = std::norm(u[j]);
        d[j] = std::norm(ux[j]) + c_mom * std::imag(u[j] * std::conj(ux[j])) * m + c_six * m * m * m;
    }
    return integrate(u, d);
}

HalflineIdentities halfline_identities(const SolutionHistory& hist, const TimeTrace& h) {
    const std::size_t nf = hist.n_frames();
    if (nf < 3) throw Error(ErrorCode::invalid_parameter, "halfline identities: need at least 3 frames");
    const double dt = hist.grid.dt();
    ComplexVec hv(nf), hp(nf), ux0(nf);
    std::vector<double> mass(nf), energy(nf);
    std::vector<Complex> mom(nf);
    for (std::size_t i = 0; i < nf; ++i) hv[i] = h.at(hist.time(i));
    hp[0] = (-3.0 * hv[0] + 4.0 * hv[1] - hv[2]) / (2.0 * dt);
    hp[nf - 1] = (3.0 * hv[nf - 1] - 4.0 * hv[nf - 2] + hv[nf - 3]) / (2.0 * dt);
    for (std::size_t i = 1; i + 1 < nf; ++i) hp[i] = (hv[i + 1] - hv[i - 1]) / (2.0 * dt);
    parallel_for(0, nf, [&](std::size_t i) {
        Field u = as_halfline(hist.frames[i]);
        ux0[i] = boundary_derivative(u);
        mass[i] = mass_of(u);
        energy[i] = energy_functional(u, EnergyVariant::E_half);
        mom[i] = momentum_density_integral(u);
    });
    std::vector<double> f_m(nf), f_q(nf), f_e(nf), f_h(nf), f_i(nf), f_b(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        double hm = std::norm(hv[i]);
        f_m[i] = std::imag(ux0[i] * std::conj(hv[i]));
        f_q[i] = hm * hm;
        f_e[i] = std::real(ux0[i] * std::conj(hp[i]));
        f_h[i] = std::imag(std::conj(hv[i]) * hp[i]) * hm;
        f_i[i] = std::norm(ux0[i]);
        // Re(i h conj(h')) = -Im(h conj(h'))
        f_b[i] = -std::imag(hv[i] * std::conj(hp[i]));
    }
    auto Cm = cumulative(f_m, dt), Cq = cumulative(f_q, dt), Ce = cumulative(f_e, dt);
    auto Ch = cumulative(f_h, dt), Ci = cumulative(f_i, dt), Cb = cumulative(f_b, dt);
    HalflineIdentities out;
    for (std::size_t i = 0; i < nf; ++i) {
        out.t.push_back(hist.time(i));
        out.mass_residual.push_back(mass[i] - mass[0] - 2.0 * Cm[i] + 0.5 * Cq[i]);
        out.energy_residual.push_back(energy[i] - energy[0] + 2.0 * Ce[i] - 0.5 * Ch[i]);
        out.I_t.push_back(Ci[i]);
        double rhs = -std::imag(mom[i]) + std::imag(mom[0]) + Cb[i];
        out.It_residual.push_back(Ci[i] - rhs);
    }
    return out;
}

double mass_identity_residual(const SolutionHistory& hist, const TimeTrace& h) {
    return sup_abs(halfline_identities(hist, h).mass_residual);
}

double energy_identity_residual(const SolutionHistory& hist, const TimeTrace& h) {
    return sup_abs(halfline_identities(hist, h).energy_residual);
}

BoundaryIt boundary_It(const SolutionHistory& hist, const TimeTrace& h) {
    auto ids = halfline_identities(hist, h);
    return {ids.I_t, sup_abs(ids.It_residual)};
}

ConservationSeries conservation_series(const SolutionHistory& hist) {
    const std::size_t nf = hist.n_frames();
    ConservationSeries out;
    out.t.resize(nf);
    out.mass.resize(nf);
    out.E_half.resize(nf);
    out.E_dnls.resize(nf);
    parallel_for(0, nf, [&](std::size_t i) {
        const Field& u = hist.frames[i];
        out.t[i] = hist.time(i);
        out.mass[i] = mass_of(u);
        out.E_half[i] = energy_functional(apply_gauge(u, 0.5), EnergyVariant::E_half);
        out.E_dnls[i] = energy_functional(apply_gauge(u, 1.0), EnergyVariant::E_dnls);
    });
    for (std::size_t i = 0; i < nf; ++i) {
        double m0 = out.mass[0], e0 = out.E_dnls[0];
        out.mass_drift_rel.push_back(m0 != 0.0 ? std::abs(out.mass[i] - m0) / std::abs(m0) : 0.0);
        out.energy_drift_rel.push_back(e0 != 0.0 ? std::abs(out.E_dnls[i] - e0) / std::abs(e0) : 0.0);
    }
    return out;
}

double halfline_h1_norm(const Field& f) {
    Field u = as_halfline(f);
    return std::sqrt(mass_of(u) + gradient_mass_of(u));
}

GlobalBoundRun global_bound_run(const Field& G, const TimeTrace& H, double alpha, double T_total, double T_local,
                                double tol, Warnings* warnings) {
    const double dt = G.grid.dt();
    const auto chunks = static_cast<std::size_t>(std::llround(T_total / T_local));
    const auto per = static_cast<std::size_t>(std::llround(T_local / dt));
    if (chunks == 0 || per == 0 || std::abs(static_cast<double>(chunks) * T_local - T_total) > 1e-9 * T_total)
        throw Error(ErrorCode::invalid_parameter, "global run: T_total must be a multiple of T_local");
    GlobalBoundRun out;
    Field data = as_halfline(G);
    out.initial = halfline_h1_norm(data);
    out.t.push_back(0.0);
    out.h1.push_back(out.initial);
    const std::size_t o = G.grid.origin();
    const double sponge = G.grid.half_length() / 8.0;
    const double edge = G.grid.half_length() - sponge - 1.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        const double t0 = static_cast<double>(c) * T_local;
        ComplexVec hv(per + 1);
        for (std::size_t i = 0; i <= per; ++i) hv[i] = H.at(t0 + static_cast<double>(i) * dt);
        data[o] = hv[0];
        TimeTrace hc(0.0, dt, std::move(hv));
        DnlsSolution sol = solve_halfline_dnls(data, hc, alpha, T_local, tol, 1e-10, 30, warnings);
        for (std::size_t i = 1; i < sol.q.n_frames(); ++i) {
            out.t.push_back(t0 + static_cast<double>(i) * dt);
            out.h1.push_back(halfline_h1_norm(sol.q.frames[i]));
        }
        data = as_halfline(sol.q.frames.back());
        for (std::size_t j = 0; j < o; ++j) data[j] = 0.0;
        for (std::size_t j = o; j < data.size(); ++j) data[j] *= 1.0 - smooth_step((G.grid.x(j) - edge) / sponge);
    }
    for (double v : out.h1) out.max_ratio = std::max(out.max_ratio, out.initial > 0.0 ? v / out.initial : 0.0);
    return out;
}

double gn_coercivity_probe(const std::vector<Field>& samples) {
    if (samples.empty()) throw Error(ErrorCode::invalid_parameter, "gn probe: empty sample set");
    double C = 0.0;
    for (const auto& u : samples) {
        double gx = gradient_mass_of(u), m = mass_of(u);
        if (!(gx > 0.0) || !(m > 0.0)) throw Error(ErrorCode::invalid_parameter, "gn probe: zero sample");
        double cand = (gx - energy_functional(u, EnergyVariant::E_half)) / (gx * m);
        C = std::max(C, cand);
    }
    return C;
}

// ------------------------------------------------ X^{s,b}

double xsb_norm(const SolutionHistory& hist, double s, double b, double T_w) {
    const GridSpec& grid = hist.grid;
    const double dt = grid.dt();
    if (!(T_w > 0.0)) throw Error(ErrorCode::invalid_parameter, "xsb_norm: window must be positive");
    const auto nw = static_cast<std::size_t>(std::llround(2.0 * T_w / dt));
    if (nw == 0 || hist.n_frames() < nw + 1)
        throw Error(ErrorCode::invalid_parameter, "xsb_norm: history must cover [0, 2 T_w]");
    const std::size_t n = grid.size();
    const std::size_t M = 4 * nw;
    std::vector<ComplexVec> c(nw + 1);
    for (std::size_t i = 0; i <= nw; ++i) c[i] = coefficients(hist.frames[i]);
    std::vector<double> eta(nw + 1);
    for (std::size_t i = 0; i <= nw; ++i) eta[i] = cutoff_eta(static_cast<double>(i) * dt / T_w);
    const double band = std::numbers::pi / dt;
    std::vector<double> per_mode(n, 0.0);
    parallel_for(0, n, [&](std::size_t m) {
        const double xi = grid.xi(m);
        ComplexVec a(M), A(M);
        for (std::size_t i = 0; i <= nw; ++i) a[i] = eta[i] * c[i][m];
        for (std::size_t i = 1; i <= nw; ++i) {
            double t = -static_cast<double>(i) * dt;
            a[M - i] = eta[i] * c[0][m] * std::polar(1.0, -xi * xi * t);
        }
        dft_forward(a, A);
        double acc = 0.0;
        for (std::size_t k = 0; k < M; ++k) {
            double tau = kTwoPi * static_cast<double>(signed_index(k, M)) / (static_cast<double>(M) * dt);
            // alias representative of the modulation closest to the free curve
            double sigma = std::remainder(tau + xi * xi, 2.0 * band);
            acc += std::pow(bracket(sigma), 2.0 * b) * std::norm(A[k]);
        }
        per_mode[m] = std::pow(bracket(xi), 2.0 * s) * acc;
    });
    double total = 0.0;
    for (double v : per_mode) total += v;
    return std::sqrt(2.0 * grid.half_length() * dt / static_cast<double>(M) * total);
}

// ------------------------------------------------ ratio probes

const char* estimate_name(EstimateId id) {
    switch (id) {
        case EstimateId::smooth: return "smooth";
        case EstimateId::smooth3: return "smooth3";
        case EstimateId::smooth5: return "smooth5";
        case EstimateId::b38: return "b38";
    }
    return "unknown";
}

EstimateId estimate_from_name(const std::string& name) {
    for (auto id : {EstimateId::smooth, EstimateId::smooth3, EstimateId::smooth5, EstimateId::b38})
        if (name == estimate_name(id)) return id;
    throw Error(ErrorCode::invalid_parameter, "unknown estimate id '" + name + "'");
}

void check_estimate_window(EstimateId id, double s, double a, double b) {
    auto fail = [&](const char* why) {
        throw Error(ErrorCode::window_violation, std::string(estimate_name(id)) + ": " + why);
    };
    const bool b_ok = b >= 0.4 && b < 0.5;
    switch (id) {
        case EstimateId::smooth:
            if (!(s > 0.0)) fail("requires s > 0");
            if (!(a >= 0.0 && a < std::min(4.0 * s, 0.5))) fail("requires 0 <= a < min(4s, 1/2)");
            if (!b_ok) fail("requires 0.4 <= b < 1/2");
            break;
        case EstimateId::smooth3:
            if (!(s > 0.5)) fail("requires s > 1/2");
            if (!(a >= 0.0 && a < std::min(2.0 * s - 1.0, 0.25))) fail("requires 0 <= a < min(2s - 1, 1/4)");
            if (!b_ok) fail("requires 0.4 <= b < 1/2");
            break;
        case EstimateId::smooth5:
            if (!(s > 0.5)) fail("requires s > 1/2");
            if (!(a >= 0.0 && a < std::min(2.0 * s - 1.0, 0.5))) fail("requires 0 <= a < min(2s - 1, 1/2)");
            break;
        case EstimateId::b38:
            if (!(s > 0.5)) fail("requires s > 1/2");
            if (!b_ok) fail("requires 0.4 <= b < 1/2");
            break;
    }
}

RatioProbe multilinear_ratio_probe(EstimateId id, std::size_t samples, double s, double a, double b,
                                   const GridSpec& grid, double T_w, std::uint64_t seed) {
    check_estimate_window(id, s, a, b);
    if (samples == 0) throw Error(ErrorCode::invalid_parameter, "ratio probe: need at least one sample");
    const auto nw = static_cast<std::size_t>(std::llround(2.0 * T_w / grid.dt()));
    if (nw == 0) throw Error(ErrorCode::invalid_parameter, "ratio probe: window shorter than dt");
    RatioProbe out{id, s, a, b, {}, 0.0};
    for (std::size_t i = 0; i < samples; ++i) {
        SolutionHistory u = probe_field(grid, nw, s, seed, i);
        RatioSample r;
        switch (id) {
            case EstimateId::smooth: {
                auto F = map_frames(u, [](const Field& f) {
                    Field o(f.grid);
                    for (std::size_t j = 0; j < f.size(); ++j) {
                        double m = std::norm(f[j]);
                        o[j] = m * m * f[j];
                    }
                    return o;
                });
                r.lhs = xsb_norm(F, s + a, -b, T_w);
                r.rhs = std::pow(xsb_norm(u, s, b, T_w), 5.0);
                break;
            }
            case EstimateId::smooth3: {
                auto F = map_frames(u, [](const Field& f) {
                    Field fx = spectral_derivative(f);
                    Field o(f.grid);
                    for (std::size_t j = 0; j < f.size(); ++j) o[j] = f[j] * f[j] * std::conj(fx[j]);
                    return o;
                });
                r.lhs = xsb_norm(F, s + a, -b, T_w);
                r.rhs = std::pow(xsb_norm(u, s, b, T_w), 3.0);
                break;
            }
            case EstimateId::smooth5: {
                r.lhs = sobolev_norm(compute_B(u.frames[0]), s + a);
                r.rhs = std::pow(sobolev_norm(u.frames[0], s), 3.0);
                break;
            }
            case EstimateId::b38: {
                auto W = map_frames(u, [](const Field& f) { return compute_w(f); });
                r.lhs = xsb_norm(W, s, -0.375, T_w);
                double X = xsb_norm(u, s, 1.0 - b, T_w);
                r.rhs = X * X * X + X * X * X * X * X;
                break;
            }
        }
        r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
        if (r.rhs > 0.0) out.max_ratio = std::max(out.max_ratio, r.ratio);
        out.samples.push_back(r);
    }
    return out;
}

// ------------------------------------------------ reports

const CheckResult& DiagnosticsReport::add(std::string name, double value, double threshold, bool upper) {
    bool ok = upper ? value <= threshold : value >= threshold;
    checks.push_back({std::move(name), value, threshold, upper, ok && std::isfinite(value)});
    return checks.back();
}

bool DiagnosticsReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

}  // namespace dnls
