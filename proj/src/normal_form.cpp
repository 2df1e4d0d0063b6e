#include "dnls/normal_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dnls/evolution.hpp"
#include "dnls/parallel.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr double kBandTol = 1e-12;

std::size_t slot(long k, std::size_t n) {
    return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(static_cast<long>(n) + k);
}

double parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

// Coefficients on [-K, K].
struct Band {
    long K = 0;
    ComplexVec v;
    Complex at(long k) const { return (k < -K || k > K) ? Complex{} : v[static_cast<std::size_t>(k + K)]; }
};

long detect_band(const ComplexVec& c) {
    const std::size_t n = c.size();
    double peak = 0.0;
    for (const auto& v : c) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0;
    long K = 0;
    for (std::size_t m = 0; m < n; ++m) {
        long k = m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
        if (std::abs(c[m]) > kBandTol * peak) K = std::max(K, std::abs(k));
    }
    return K;
}

Band make_band(const ComplexVec& c, long K) {
    const std::size_t n = c.size();
    K = std::min(K, static_cast<long>(n / 2) - 1);
    Band b;
    b.K = K;
    b.v.resize(static_cast<std::size_t>(2 * K + 1));
    for (long k = -K; k <= K; ++k) b.v[static_cast<std::size_t>(k + K)] = c[slot(k, n)];
    return b;
}

Band band_of(const Field& f) {
    ComplexVec c = coefficients(f);
    return make_band(c, detect_band(c));
}

Complex pairwise_sum(const Complex* v, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return v[0];
    std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

long region_width(const GridSpec& grid, double threshold) {
    if (!(threshold > 0.0)) throw Error(ErrorCode::invalid_parameter, "normal form: threshold must be positive");
    return static_cast<long>(std::ceil(threshold / grid.dxi() - 1e-12));
}

void check_output_band(const GridSpec& grid, long total) {
    if (total > static_cast<long>(grid.size() / 2) - 1)
        throw Error(ErrorCode::bandlimit_violation, "normal form: summed input bands exceed the lattice");
}

enum class Region { nonresonant, resonant };

// out_k = scale * sum xi2 a(k1) conj(b(k2)) c(k3) [/ r], k2 = k1 + k3 - k, |k| <= kmax.
ComplexVec trilinear(const GridSpec& grid, const Band& a, const Band& b, const Band& c, Region region, bool divide,
                     double scale, long m0, long kmax, NormalFormStats* stats) {
    const std::size_t n = grid.size();
    const double dxi = grid.dxi();
    ComplexVec out(n);
    const std::size_t count = static_cast<std::size_t>(2 * kmax + 1);
    std::vector<double> min_r(count, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> terms(count, 0);
    parallel_for(0, count, [&](std::size_t idx) {
        const long k = static_cast<long>(idx) - kmax;
        ComplexVec rows;
        rows.reserve(static_cast<std::size_t>(2 * a.K + 1));
        double local_min = std::numeric_limits<double>::infinity();
        std::size_t local_terms = 0;
        for (long k1 = -a.K; k1 <= a.K; ++k1) {
            const long d1 = k - k1;
            const bool near1 = std::abs(d1) < m0;
            if (region == Region::nonresonant && near1) continue;
            const Complex a1 = a.at(k1);
            const long lo = std::max(-c.K, k - k1 - b.K);
            const long hi = std::min(c.K, k - k1 + b.K);
            Complex row{};
            auto add = [&](long k3) {
                const long k2 = k1 + k3 - k;
                Complex t = (dxi * static_cast<double>(k2)) * a1 * std::conj(b.at(k2)) * c.at(k3);
                if (divide) {
                    double r = 2.0 * dxi * dxi * static_cast<double>(d1 * (k - k3));
                    local_min = std::min(local_min, std::abs(r));
                    t /= r;
                }
                ++local_terms;
                row += t;
            };
            if (region == Region::nonresonant) {
                for (long k3 = lo; k3 <= std::min(hi, k - m0); ++k3) add(k3);
                for (long k3 = std::max(lo, k + m0); k3 <= hi; ++k3) add(k3);
            } else if (near1) {
                for (long k3 = lo; k3 <= hi; ++k3) add(k3);
            } else {
                for (long k3 = std::max(lo, k - m0 + 1); k3 <= std::min(hi, k + m0 - 1); ++k3) add(k3);
            }
            rows.push_back(row);
        }
        out[slot(k, n)] = scale * pairwise_sum(rows.data(), rows.size());
        min_r[idx] = local_min;
        terms[idx] = local_terms;
    });
    if (stats) {
        stats->min_abs_denominator = *std::min_element(min_r.begin(), min_r.end());
        stats->terms = 0;
        for (auto t : terms) stats->terms += t;
    }
    return out;
}

ComplexVec to_raw(const ComplexVec& c) {
    const std::size_t n = c.size();
    ComplexVec d(n);
    for (std::size_t m = 0; m < n; ++m) {
        long k = m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
        d[m] = parity(k) * c[m];
    }
    return d;
}

// parity map is an involution
ComplexVec from_raw(const ComplexVec& d) { return to_raw(d); }

ComplexVec truncate(const ComplexVec& c, long K) {
    const std::size_t n = c.size();
    ComplexVec out(n);
    for (long k = -K; k <= K; ++k) out[slot(k, n)] = c[slot(k, n)];
    return out;
}

double l2_from_coefficients(const GridSpec& grid, const ComplexVec& c) {
    double acc = 0.0;
    for (const auto& v : c) acc += std::norm(v);
    return std::sqrt(2.0 * grid.half_length() * acc);
}

}  // namespace

double resonance_factor(double xi0, double xi1, double xi3) { return 2.0 * (xi0 - xi1) * (xi0 - xi3); }

FrequencyQuadruple make_quadruple(const GridSpec& grid, long k0, long k1, long k3) {
    FrequencyQuadruple q{k0, k1, k1 + k3 - k0, k3, 0.0};
    double x0 = grid.dxi() * static_cast<double>(q.k0), x1 = grid.dxi() * static_cast<double>(q.k1);
    double x2 = grid.dxi() * static_cast<double>(q.k2), x3 = grid.dxi() * static_cast<double>(q.k3);
    q.r = x0 * x0 - x1 * x1 + x2 * x2 - x3 * x3;
    return q;
}

double resonance_factorization_check(const GridSpec& grid, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const long half = static_cast<long>(grid.size() / 2);
    std::uniform_int_distribution<long> pick(-half, half - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        FrequencyQuadruple q = make_quadruple(grid, pick(rng), pick(rng), pick(rng));
        double f = resonance_factor(grid.dxi() * static_cast<double>(q.k0), grid.dxi() * static_cast<double>(q.k1),
                                    grid.dxi() * static_cast<double>(q.k3));
        worst = std::max(worst, std::abs(f - q.r) / (1.0 + std::abs(q.r)));
    }
    return worst;
}

Field compute_B(const Field& u, double threshold, NormalFormStats* stats) {
    Band b = band_of(u);
    check_output_band(u.grid, 3 * b.K);
    auto c = trilinear(u.grid, b, b, b, Region::nonresonant, true, 1.0, region_width(u.grid, threshold), 3 * b.K,
                       stats);
    return field_from_coefficients(u.grid, c);
}

Field compute_R(const Field& u, double threshold) {
    Band b = band_of(u);
    check_output_band(u.grid, 3 * b.K);
    auto c = trilinear(u.grid, b, b, b, Region::resonant, false, 1.0, region_width(u.grid, threshold), 3 * b.K,
                       nullptr);
    return field_from_coefficients(u.grid, c);
}

Field compute_S(const Field& u, double threshold) {
    Band b = band_of(u);
    check_output_band(u.grid, 3 * b.K);
    auto c = trilinear(u.grid, b, b, b, Region::nonresonant, false, 1.0, region_width(u.grid, threshold), 3 * b.K,
                       nullptr);
    return field_from_coefficients(u.grid, c);
}

Field compute_T(const Field& u) {
    ComplexVec c = coefficients(u);
    long K = detect_band(c);
    check_output_band(u.grid, 3 * K);
    Field v = field_from_coefficients(u.grid, truncate(c, K));
    Field ux = spectral_derivative(v);
    Field out(u.grid);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = Complex(0.0, 1.0) * v[j] * v[j] * std::conj(ux[j]);
    return out;
}

Field compute_w(const Field& u) {
    ComplexVec raw = to_raw(coefficients(u));
    ComplexVec f = from_raw(dealiased_nonlinearity(raw, u.grid, EquationForm{-1.0}));
    for (auto& v : f) v = -v;
    return field_from_coefficients(u.grid, f, u.side);
}

Field compute_NR1(const Field& u, const Field& w, double threshold) {
    if (!u.grid.same_space(w.grid)) throw Error(ErrorCode::grid_mismatch, "NR1: grids differ");
    Band bu = band_of(u), bw = band_of(w);
    check_output_band(u.grid, 2 * bu.K + bw.K);
    auto c = trilinear(u.grid, bu, bu, bw, Region::nonresonant, true, 2.0, region_width(u.grid, threshold),
                       2 * bu.K + bw.K, nullptr);
    return field_from_coefficients(u.grid, c);
}

Field compute_NR2(const Field& u, const Field& w, double threshold) {
    if (!u.grid.same_space(w.grid)) throw Error(ErrorCode::grid_mismatch, "NR2: grids differ");
    Band bu = band_of(u), bw = band_of(w);
    check_output_band(u.grid, 2 * bu.K + bw.K);
    auto c = trilinear(u.grid, bu, bw, bu, Region::nonresonant, true, -1.0, region_width(u.grid, threshold),
                       2 * bu.K + bw.K, nullptr);
    return field_from_coefficients(u.grid, c);
}

double normal_form_residual(const SolutionHistory& hist, double threshold) {
    if (hist.n_frames() < 3) throw Error(ErrorCode::invalid_parameter, "normal form residual: need at least 3 frames");
    const GridSpec& grid = hist.grid;
    const std::size_t n = grid.size();
    const long K = grid.dealias_cutoff();
    const long m0 = region_width(grid, threshold);
    const double dt = grid.dt();
    const std::size_t frames = hist.n_frames();

    std::vector<ComplexVec> coef(frames), V(frames);
    std::vector<Band> bands(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        coef[i] = truncate(coefficients(hist.frames[i]), K);
        bands[i] = make_band(coef[i], K);
    }
    auto phase = [&](std::size_t i, long k) {
        double xi = grid.dxi() * static_cast<double>(k);
        return std::polar(1.0, hist.time(i) * xi * xi);
    };
    for (std::size_t i = 0; i < frames; ++i) {
        ComplexVec B = trilinear(grid, bands[i], bands[i], bands[i], Region::nonresonant, true, 1.0, m0, K, nullptr);
        V[i].assign(n, Complex{});
        for (long k = -K; k <= K; ++k) V[i][slot(k, n)] = phase(i, k) * (coef[i][slot(k, n)] - B[slot(k, n)]);
    }
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < frames; ++i) {
        const Band& bu = bands[i];
        ComplexVec raw = to_raw(coef[i]);
        ComplexVec w = from_raw(dealiased_nonlinearity(raw, grid, EquationForm{-1.0}));
        for (auto& v : w) v = -v;
        ComplexVec quint = from_raw(dealiased_polynomial(raw, grid, Complex{}, Complex{}, 0.5));
        Band bw = make_band(w, K);
        ComplexVec R = trilinear(grid, bu, bu, bu, Region::resonant, false, 1.0, m0, K, nullptr);
        ComplexVec N1 = trilinear(grid, bu, bu, bw, Region::nonresonant, true, 2.0, m0, K, nullptr);
        ComplexVec N2 = trilinear(grid, bu, bw, bu, Region::nonresonant, true, -1.0, m0, K, nullptr);
        ComplexVec d(n);
        for (long k = -K; k <= K; ++k) {
            std::size_t m = slot(k, n);
            Complex lhs = Complex(0.0, 1.0) * (V[i + 1][m] - V[i - 1][m]) / (2.0 * dt);
            Complex rhs = -phase(i, k) * (R[m] + quint[m] + N1[m] + N2[m]);
            d[m] = lhs - rhs;
        }
        worst = std::max(worst, l2_from_coefficients(grid, d));
    }
    return worst;
}

}  // namespace dnls
