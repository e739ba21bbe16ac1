#include "pcs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pcs {

double bump_eval(double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return std::exp(1.0 / (x * x - 1.0));
}

SmoothWeight::SmoothWeight(std::vector<double> offsets) : offsets_(std::move(offsets)) {
    lo_ = -HUGE_VAL;
    hi_ = HUGE_VAL;
    for (double o : offsets_) {
        lo_ = std::max(lo_, -1.0 - o);
        hi_ = std::min(hi_, 1.0 - o);
    }
}

SmoothWeight SmoothWeight::shifted_product(double off) const {
    std::vector<double> offs = offsets_;
    for (double o : offsets_) offs.push_back(o + off);
    return SmoothWeight(std::move(offs));
}

double SmoothWeight::operator()(double x) const {
    double v = 1.0;
    for (double o : offsets_) {
        v *= bump_eval(x + o);
        if (v == 0.0) return 0.0;
    }
    return v;
}

namespace {

// 15-point Gauss-Legendre rule on [-1,1].
constexpr int kGL = 15;
constexpr double kGLx[kGL] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272, -0.7244177313601700,
    -0.5709721726085388, -0.3941513470775634, -0.2011940939974345, 0.0,
    0.2011940939974345,  0.3941513470775634,  0.5709721726085388,  0.7244177313601700,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double kGLw[kGL] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719, 0.1395706779261543,
    0.1662692058169939, 0.1861610000155622, 0.1984314853271116, 0.2025782419255613,
    0.1984314853271116, 0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

std::complex<double> panel(const SmoothWeight& w, double y, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    std::complex<double> s = 0.0;
    for (int i = 0; i < kGL; ++i) {
        double x = c + h * kGLx[i];
        double f = w(x);
        if (f != 0.0) {
            double arg = -2.0 * std::numbers::pi * x * y;
            s += kGLw[i] * f * std::complex<double>{std::cos(arg), std::sin(arg)};
        }
    }
    return h * s;
}

void integrate(const SmoothWeight& w, double y, double a, double b,
               std::complex<double> whole, double tol, int depth, std::complex<double>& acc,
               double& err) {
    double m = 0.5 * (a + b);
    std::complex<double> left = panel(w, y, a, m);
    std::complex<double> right = panel(w, y, m, b);
    double delta = std::abs(left + right - whole);
    // 1e-15 floor: requests below double noise are treated as met
    if (delta <= tol || delta <= 1e-15 || depth >= 40) {
        if (depth >= 40 && delta > std::max(tol, 1e-12))
            throw ToleranceNotMet("fourier_transform: refinement limit reached");
        acc += left + right;
        err += delta;
        return;
    }
    integrate(w, y, a, m, left, 0.5 * tol, depth + 1, acc, err);
    integrate(w, y, m, b, right, 0.5 * tol, depth + 1, acc, err);
}

}  // namespace

FourierEval fourier_transform(const SmoothWeight& w, double y, double tol) {
    if (tol <= 0.0) throw DomainError("fourier_transform: tol must be positive");
    if (w.empty_support()) return {{0.0, 0.0}, 0.0};
    double a = w.support_lo(), b = w.support_hi();
    // Split into panels no wider than one oscillation period up front.
    double period = std::abs(y) > 1.0 ? 1.0 / std::abs(y) : (b - a);
    int npan = std::max(1, (int)std::ceil((b - a) / period));
    std::complex<double> acc = 0.0;
    double err = 0.0;
    for (int i = 0; i < npan; ++i) {
        double pa = a + (b - a) * i / npan;
        double pb = a + (b - a) * (i + 1) / npan;
        integrate(w, y, pa, pb, panel(w, y, pa, pb), tol / npan, 0, acc, err);
    }
    return {acc, err};
}

double decay_constant(const SmoothWeight& w, unsigned power) {
    double c = 0.0;
    const int pts = 160;
    // Cap the grid where |what| falls below double noise: for high powers a
    // shorter grid keeps quadrature noise from inflating the constant.
    const double ymax = power <= 5 ? 300.0 : 60.0;
    const double ymax_log10 = std::log10(ymax);
    for (int i = 0; i <= pts; ++i) {
        double y = std::pow(10.0, ymax_log10 * i / pts);
        double a = std::abs(fourier_transform(w, y, 1e-13).value);
        c = std::max(c, a * std::pow(1.0 + y, (double)power));
    }
    // Cover y in [0,1) by the trivial bound |what| <= what(0) = mass.
    double mass = std::abs(fourier_transform(w, 0.0, 1e-13).value);
    c = std::max(c, mass * std::pow(2.0, (double)power));
    return c;
}

u64 tail_cutoff(double decay_c, double scale, double tol, unsigned power) {
    if (scale <= 0.0 || tol <= 0.0 || power < 2) throw DomainError("tail_cutoff: bad arguments");
    // sum_{|t|>T} C/(1+|t|s)^power <= C/((power-1) s (1+Ts)^{power-1}), doubled
    // for the two tails.
    double target = std::pow(2.0 * decay_c / ((power - 1) * scale * tol), 1.0 / (power - 1));
    double T = (target - 1.0) / scale + 1.0;
    if (T < 1.0) T = 1.0;
    if (T > 5e7) throw ToleranceNotMet("tail_cutoff: truncation point too large");
    return (u64)std::ceil(T);
}

}  // namespace pcs
