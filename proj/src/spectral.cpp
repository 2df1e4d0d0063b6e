#include "dnls/spectral.hpp"

#include <fftw3.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

namespace dnls {

namespace {

using std::numbers::pi;

std::mutex g_plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto* a = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    auto* b = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), a, b, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    fftw_free(a);
    fftw_free(b);
    cache.emplace(key, p);
    return p;
}

void run_dft(std::span<const Complex> in, std::span<Complex> out, int sign) {
    if (in.size() != out.size())
        throw Error(ErrorCode::invalid_parameter, "dft: size mismatch");
    if (in.empty()) return;
    fftw_plan p = plan_for(in.size(), sign);
    if (in.data() == out.data()) {
        ComplexVec tmp(in.begin(), in.end());
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
        return;
    }
    // out-of-place c2c with PRESERVE_INPUT leaves the input untouched
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

double parity_sign(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double bracket(double xi) { return std::sqrt(1.0 + xi * xi); }

// Moments M_p(theta) = \int_{-1}^{1} y^p e^{-i theta y} dy, p = 0, 1, 2.
struct Moments {
    Complex m0, m1, m2;
};

Moments filon_moments(double th) {
    Moments m;
    if (std::abs(th) < 1.0) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        double th2 = th * th;
        double pow_even = 1.0;  // theta^{2n}
        double fact_even = 1.0;  // (2n)!
        for (int n = 0; n < 14; ++n) {
            double sgn = (n % 2 == 0) ? 1.0 : -1.0;
            double fact_odd = fact_even * (2 * n + 1);  // (2n+1)!
            s0 += sgn * pow_even * 2.0 / (fact_even * (2 * n + 1));
            s2 += sgn * pow_even * 2.0 / (fact_even * (2 * n + 3));
            s1 += sgn * pow_even * th * 2.0 / (fact_odd * (2 * n + 3));
            pow_even *= th2;
            fact_even = fact_odd * (2 * n + 2);
        }
        m.m0 = s0;
        m.m1 = Complex(0.0, -s1);
        m.m2 = s2;
        return m;
    }
    double s = std::sin(th), c = std::cos(th);
    m.m0 = 2.0 * s / th;
    m.m1 = Complex(0.0, -2.0 * (s - th * c) / (th * th));
    m.m2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (th * th * th);
    return m;
}

template <class T>
T simpson_impl(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    if (n < 2) return T{};
    const std::size_t intervals = n - 1;
    if (intervals == 1) return 0.5 * h * (f[0] + f[1]);
    std::size_t simpson_end = intervals;  // number of intervals covered by Simpson
    T tail{};
    if (intervals % 2 == 1) {
        simpson_end = intervals - 3;
        std::size_t a = simpson_end;
        tail = 3.0 * h / 8.0 * (f[a] + 3.0 * f[a + 1] + 3.0 * f[a + 2] + f[a + 3]);
    }
    T acc{};
    if (simpson_end > 0) {
        acc = f[0] + f[simpson_end];
        for (std::size_t j = 1; j < simpson_end; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * f[j];
        acc *= h / 3.0;
    }
    return acc + tail;
}

}  // namespace

void dft_forward(std::span<const Complex> in, std::span<Complex> out) { run_dft(in, out, FFTW_FORWARD); }
void dft_backward(std::span<const Complex> in, std::span<Complex> out) { run_dft(in, out, FFTW_BACKWARD); }

ComplexVec coefficients(const Field& f) {
    const std::size_t n = f.size();
    ComplexVec c(n);
    dft_forward(f.values, c);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) c[m] *= inv * parity_sign(f.grid.wavenumber(m));
    return c;
}

Field field_from_coefficients(const GridSpec& grid, const ComplexVec& c, Side side) {
    if (c.size() != grid.size()) throw Error(ErrorCode::grid_mismatch, "coefficient count differs from grid");
    ComplexVec tmp(c.size());
    for (std::size_t m = 0; m < c.size(); ++m) tmp[m] = c[m] * parity_sign(grid.wavenumber(m));
    Field f(grid, side);
    dft_backward(tmp, f.values);
    return f;
}

Spectrum forward_transform(const Field& f) {
    Spectrum s{f.grid, coefficients(f)};
    const double scale = 2.0 * f.grid.half_length();
    for (auto& v : s.values) v *= scale;
    return s;
}

Field inverse_transform(const Spectrum& s, Side side) {
    ComplexVec c = s.values;
    const double scale = 1.0 / (2.0 * s.grid.half_length());
    for (auto& v : c) v *= scale;
    return field_from_coefficients(s.grid, c, side);
}

double sobolev_norm_coefficients(const GridSpec& grid, const ComplexVec& c, double s) {
    double acc = 0.0;
    for (std::size_t m = 0; m < c.size(); ++m)
        acc += std::pow(bracket(grid.xi(m)), 2.0 * s) * std::norm(c[m]);
    return std::sqrt(2.0 * grid.half_length() * acc);
}

double sobolev_norm(const Field& f, double s) {
    return sobolev_norm_coefficients(f.grid, coefficients(f), s);
}

double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc * f.grid.dx());
}

Field spectral_derivative(const Field& f) {
    ComplexVec c = coefficients(f);
    for (std::size_t m = 0; m < c.size(); ++m) {
        // the Nyquist slot has no consistent odd derivative
        if (f.grid.wavenumber(m) == -static_cast<long>(c.size() / 2)) c[m] = 0.0;
        else c[m] *= Complex(0.0, f.grid.xi(m));
    }
    return field_from_coefficients(f.grid, c, f.side);
}

Field spectral_second_derivative(const Field& f) {
    ComplexVec c = coefficients(f);
    for (std::size_t m = 0; m < c.size(); ++m) c[m] *= -f.grid.xi(m) * f.grid.xi(m);
    return field_from_coefficients(f.grid, c, f.side);
}

double sobolev_norm_time(std::span<const Complex> values, double dt, double s) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    ComplexVec out(n);
    dft_forward(values, out);
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        long k = m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
        double tau = 2.0 * pi * static_cast<double>(k) / (static_cast<double>(n) * dt);
        acc += std::pow(bracket(tau), 2.0 * s) * std::norm(out[m]);
    }
    return std::sqrt(acc * dt / static_cast<double>(n));
}

std::vector<std::vector<double>> fd_weights(const std::vector<double>& z, int m) {
    const int n = static_cast<int>(z.size());
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
    double c1 = 1.0, c4 = z[0];
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, m);
        double c2 = 1.0, c5 = c4;
        c4 = z[i];
        for (int j = 0; j < i; ++j) {
            double c3 = z[i] - z[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace {

constexpr int kOddOrder = 3;
constexpr std::size_t kStencil = 20;
constexpr int kFitDegree = 9;
constexpr double kNearWindow = 1.5;

// Derivatives 0..m at x = 0 of the least-squares polynomial of degree
// kFitDegree through samples at x_i = i dx, i < kStencil.
std::vector<std::vector<double>> fit_weights(double dx, int m) {
    const double span = dx * static_cast<double>(kStencil - 1);
    Eigen::MatrixXd V(kStencil, kFitDegree + 1);
    for (std::size_t i = 0; i < kStencil; ++i) {
        double u = static_cast<double>(i) / static_cast<double>(kStencil - 1);
        double p = 1.0;
        for (int d = 0; d <= kFitDegree; ++d) {
            V(static_cast<Eigen::Index>(i), d) = p;
            p *= u;
        }
    }
    Eigen::MatrixXd P = V.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(kStencil, kStencil));
    std::vector<std::vector<double>> w(m + 1, std::vector<double>(kStencil));
    double fact = 1.0;
    for (int k = 0; k <= m; ++k) {
        if (k > 0) fact *= k;
        double scale = fact / std::pow(span, k);
        for (std::size_t i = 0; i < kStencil; ++i) w[k][i] = scale * P(k, static_cast<Eigen::Index>(i));
    }
    return w;
}

}  // namespace

Field halfline_derivative(const Field& f) {
    const std::size_t n = f.size();
    const std::size_t o = f.grid.origin();
    constexpr std::size_t kPts = 9;
    if (n - o < kPts) throw Error(ErrorCode::invalid_parameter, "halfline_derivative: too few x >= 0 points");
    const double inv = 1.0 / f.grid.dx();
    Field out(f.grid, f.side);
    static const auto table = [] {
        std::vector<std::vector<double>> t(kPts);
        std::vector<double> z(kPts);
        for (std::size_t p = 0; p < kPts; ++p) {
            for (std::size_t i = 0; i < kPts; ++i) z[i] = static_cast<double>(i) - static_cast<double>(p);
            t[p] = fd_weights(z, 1)[1];
        }
        return t;
    }();
    for (std::size_t j = o; j < n; ++j) {
        std::size_t first = j < o + kPts / 2 ? o : std::min(j - kPts / 2, n - kPts);
        const auto& w = table[j - first];
        Complex acc{};
        for (std::size_t i = 0; i < kPts; ++i) acc += w[i] * f[first + i];
        out[j] = inv * acc;
    }
    return out;
}

std::string_view extension_id() { return "even-reflect-odd-lsq9-taylor3-quartic-window"; }

Field extend(const Field& g, double /*target_smoothness*/) {
    const GridSpec& grid = g.grid;
    const std::size_t n = grid.size();
    const std::size_t o = grid.origin();
    const double dx = grid.dx();
    Field out(grid, Side::full_line);
    for (std::size_t j = o; j < n; ++j) out[j] = g[j];
    // g_e(-y) = w_wide(y) g(y) - 2 exp(-(y/1.5)^4) sum_{k odd <= 3} g^(k)(0) y^k / k!
    static thread_local std::vector<std::vector<double>> w;
    static thread_local double w_dx = 0.0;
    if (w_dx != dx) {
        w = fit_weights(dx, kOddOrder);
        w_dx = dx;
    }
    Complex odd[kOddOrder + 1] = {};
    for (int k = 1; k <= kOddOrder; k += 2)
        for (std::size_t i = 0; i < kStencil && o + i < n; ++i) odd[k] += w[k][i] * g[o + i];
    const double L = grid.half_length();
    for (std::size_t j = 0; j < o; ++j) {
        const std::size_t m = o - j;
        const double y = static_cast<double>(m) * dx;
        double wide = cutoff_eta(y, L / 4.0);
        if (wide == 0.0) continue;
        Complex v = m < n - o ? wide * g[o + m] : Complex{};
        double r = y / kNearWindow;
        double near = std::exp(-r * r * r * r);
        if (near > 1e-300) {
            Complex poly{};
            double yk = y, fact = 1.0;
            for (int k = 1; k <= kOddOrder; k += 2) {
                poly += odd[k] * (yk / fact);
                yk *= y * y;
                fact *= (k + 1) * (k + 2);
            }
            v -= 2.0 * near * poly;
        }
        out[j] = v;
    }
    return out;
}

Field restrict_halfline(const Field& f) {
    Field out = f;
    out.side = Side::half_line;
    for (std::size_t j = 0; j < f.grid.origin(); ++j) out[j] = 0.0;
    return out;
}

double halfline_sobolev_norm(const Field& g, double s) { return sobolev_norm(extend(g), s); }

double halfline_mass(const Field& f) {
    const std::size_t o = f.grid.origin();
    std::vector<double> dens(f.size() - o);
    for (std::size_t j = o; j < f.size(); ++j) dens[j - o] = std::norm(f[j]);
    return simpson(std::span<const double>(dens), f.grid.dx());
}

double smooth_step(double r) {
    if (r <= 0.0) return 0.0;
    if (r >= 1.0) return 1.0;
    double a = std::exp(-1.0 / r);
    double b = std::exp(-1.0 / (1.0 - r));
    return a / (a + b);
}

double cutoff_eta(double t, double T_support) {
    if (!(T_support > 0.0)) throw Error(ErrorCode::invalid_parameter, "cutoff_eta: support must be positive");
    double a = std::abs(t);
    if (a <= T_support) return 1.0;
    if (a >= 2.0 * T_support) return 0.0;
    return 1.0 - smooth_step((a - T_support) / T_support);
}

double cutoff_rho(double x) {
    if (x >= 0.0) return 1.0;
    if (x <= -2.0) return 0.0;
    return smooth_step((x + 2.0) / 2.0);
}

double simpson(std::span<const double> f, double h) { return simpson_impl<double>(f, h); }
Complex simpson(std::span<const Complex> f, double h) { return simpson_impl<Complex>(f, h); }

std::vector<double> reverse_cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n, 0.0);
    if (n < 2) return out;
    auto interval = [&](std::size_t j) -> double {
        if (n < 4) return 0.5 * h * (f[j] + f[j + 1]);
        if (j == 0) return h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        if (j == n - 2)
            return h / 24.0 * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
        return h / 24.0 * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]);
    };
    for (std::size_t j = n - 1; j-- > 0;) out[j] = out[j + 1] + interval(j);
    return out;
}

ComplexVec cumulative_trapezoid(std::span<const Complex> f, double h) {
    ComplexVec out(f.size());
    for (std::size_t j = 1; j < f.size(); ++j) out[j] = out[j - 1] + 0.5 * h * (f[j - 1] + f[j]);
    return out;
}

Complex filon_fourier(std::span<const Complex> f, double t0, double dt, double xi) {
    const std::size_t n = f.size();
    if (n < 2) return {};
    const std::size_t intervals = n - 1;
    const std::size_t paired = intervals - (intervals % 2);
    Complex acc{};
    if (paired > 0) {
        const Moments m = filon_moments(xi * dt);
        // phase advances by exp(-i xi 2dt) per panel
        const Complex step = std::polar(1.0, -2.0 * xi * dt);
        Complex phase = std::polar(1.0, -xi * (t0 + dt));
        for (std::size_t p = 0; p < paired; p += 2) {
            if (p % 64 == 0) phase = std::polar(1.0, -xi * (t0 + static_cast<double>(p + 1) * dt));
            const Complex f0 = f[p], f1 = f[p + 1], f2 = f[p + 2];
            Complex panel = f1 * m.m0 + 0.5 * (f2 - f0) * m.m1 + 0.5 * (f2 - 2.0 * f1 + f0) * m.m2;
            acc += phase * panel;
            phase *= step;
        }
        acc *= dt;
    }
    if (intervals % 2 == 1) {
        const Moments m = filon_moments(0.5 * xi * dt);
        const Complex f0 = f[n - 2], f1 = f[n - 1];
        double tc = t0 + (static_cast<double>(n) - 1.5) * dt;
        acc += 0.5 * dt * std::polar(1.0, -xi * tc) * (0.5 * (f0 + f1) * m.m0 + 0.5 * (f1 - f0) * m.m1);
    }
    return acc;
}

Complex halfline_time_fourier(const TimeTrace& h, double xi, Warnings* warnings) {
    if (h.t0 != 0.0) throw Error(ErrorCode::invalid_parameter, "halfline_time_fourier: trace must start at t = 0");
    if (warnings && !h.values.empty()) {
        double peak = h.max_abs();
        if (peak > 0.0 && std::abs(h.values.back()) > 1e-8 * peak)
            warnings->add("halfline_time_fourier: trace not decayed at t_end (truncation suspect)");
    }
    return filon_fourier(h.values, h.t0, h.dt, xi);
}

}  // namespace dnls
