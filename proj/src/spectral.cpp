#include "ddl/spectral.hpp"

#include "ddl/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddl {

namespace {
constexpr double pi = std::numbers::pi;
}

Vec periodic_points(int n, double lo, double period) {
    Vec x(n);
    for (int k = 0; k < n; ++k) x[k] = lo + period * k / n;
    return x;
}

Matrix fourier_diff_matrix(int n, int order, double period) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("fourier_diff_matrix: n must be even and >= 4");
    const double h = 2.0 * pi / n;
    const double s = 2.0 * pi / period;
    Matrix D(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int d = i - j;
            const double sign = (std::abs(d) % 2 == 0) ? 1.0 : -1.0;
            if (order == 1) {
                D(i, j) = d == 0 ? 0.0 : 0.5 * sign / std::tan(0.5 * d * h) * s;
            } else if (order == 2) {
                if (d == 0) {
                    D(i, j) = (-pi * pi / (3.0 * h * h) - 1.0 / 6.0) * s * s;
                } else {
                    const double sn = std::sin(0.5 * d * h);
                    D(i, j) = -0.5 * sign / (sn * sn) * s * s;
                }
            } else {
                throw std::invalid_argument("fourier_diff_matrix: order must be 1 or 2");
            }
        }
    return D;
}

Vec cheb_points(int n, double lo, double hi) {
    if (n < 2) throw std::invalid_argument("cheb_points: n must be >= 2");
    Vec x(n);
    const int N = n - 1;
    for (int j = 0; j < n; ++j) {
        // sin form keeps the nodes exactly symmetric
        const double t = std::sin(pi * (2.0 * j - N) / (2.0 * N));
        x[j] = lo + 0.5 * (t + 1.0) * (hi - lo);
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

Matrix cheb_diff_matrix(int n, int order, double lo, double hi) {
    if (n < 3) throw std::invalid_argument("cheb_diff_matrix: n must be >= 3");
    if (order != 1 && order != 2) throw std::invalid_argument("cheb_diff_matrix: order must be 1 or 2");
    const Vec x = cheb_points(n, -1.0, 1.0);
    Matrix D(n, n);
    auto c = [&](int j) { return ((j == 0 || j == n - 1) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0); };
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            D(i, j) = c(i) / c(j) / (x[i] - x[j]);
            row += D(i, j);
        }
        D(i, i) = -row;
    }
    const double s = 2.0 / (hi - lo);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) D(i, j) *= s;
    return order == 1 ? D : matmul(D, D);
}

Vec clenshaw_curtis_weights(int n, double lo, double hi) {
    const int N = n - 1;
    Vec w(n, 0.0);
    Vec v(std::max(0, N - 1), 1.0);
    auto theta = [&](int j) { return pi * j / N; };
    if (N % 2 == 0) {
        w[0] = w[N] = 1.0 / (N * N - 1.0);
        for (int k = 1; k < N / 2; ++k)
            for (int j = 1; j < N; ++j) v[j - 1] -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
        for (int j = 1; j < N; ++j) v[j - 1] -= std::cos(N * theta(j)) / (N * N - 1.0);
    } else {
        w[0] = w[N] = 1.0 / (N * double(N));
        for (int k = 1; k <= (N - 1) / 2; ++k)
            for (int j = 1; j < N; ++j) v[j - 1] -= 2.0 * std::cos(2.0 * k * theta(j)) / (4.0 * k * k - 1.0);
    }
    for (int j = 1; j < N; ++j) w[j] = 2.0 * v[j - 1] / N;
    for (double& x : w) x *= 0.5 * (hi - lo);
    return w;
}

Vec Grid2D::dp(const Matrix& D, const Vec& f) const {
    Vec out(size(), 0.0);
    for (int i = 0; i < n_periodic; ++i)
        for (int l = 0; l < n_periodic; ++l) {
            const double d = D(i, l);
            if (d == 0.0) continue;
            const double* src = f.data() + l * n_cheb;
            double* dst = out.data() + i * n_cheb;
            for (int j = 0; j < n_cheb; ++j) dst[j] += d * src[j];
        }
    return out;
}

Vec Grid2D::dc(const Matrix& D, const Vec& f) const {
    Vec out(size(), 0.0);
    for (int i = 0; i < n_periodic; ++i) {
        const double* src = f.data() + i * n_cheb;
        double* dst = out.data() + i * n_cheb;
        for (int j = 0; j < n_cheb; ++j) {
            double s = 0.0;
            for (int l = 0; l < n_cheb; ++l) s += D(j, l) * src[l];
            dst[j] = s;
        }
    }
    return out;
}

Grid2D make_grid(int n_periodic, int n_cheb, std::pair<double, double> periodic_interval,
                 std::pair<double, double> cheb_interval) {
    if (n_periodic < 4 || n_periodic % 2 != 0)
        throw std::invalid_argument("grid: periodic count must be even and >= 4");
    if (n_cheb < 3) throw std::invalid_argument("grid: Chebyshev count must be >= 3");
    Grid2D g;
    g.n_periodic = n_periodic;
    g.n_cheb = n_cheb;
    g.periodic_interval = periodic_interval;
    g.cheb_interval = cheb_interval;
    const double P = periodic_interval.second - periodic_interval.first;
    g.xp = periodic_points(n_periodic, periodic_interval.first, P);
    g.xc = cheb_points(n_cheb, cheb_interval.first, cheb_interval.second);
    g.Dp1 = fourier_diff_matrix(n_periodic, 1, P);
    g.Dp2 = fourier_diff_matrix(n_periodic, 2, P);
    g.Dc1 = cheb_diff_matrix(n_cheb, 1, cheb_interval.first, cheb_interval.second);
    g.Dc2 = cheb_diff_matrix(n_cheb, 2, cheb_interval.first, cheb_interval.second);
    return g;
}

QuadWeights quad_weights(const Grid2D& grid) {
    QuadWeights w;
    w.periodic.assign(grid.n_periodic, grid.period() / grid.n_periodic);
    w.cheb = clenshaw_curtis_weights(grid.n_cheb, grid.cheb_interval.first, grid.cheb_interval.second);
    return w;
}

TrigInterp::TrigInterp(const Vec& values, double lo, double period)
    : n_(static_cast<int>(values.size())), lo_(lo), period_(period) {
    if (n_ < 1) throw std::invalid_argument("TrigInterp: no samples");
    const int kmax = n_ / 2;
    a_.assign(kmax + 1, 0.0);
    b_.assign(kmax + 1, 0.0);
    double s0 = 0.0;
    for (double v : values) s0 += v;
    a0_ = s0 / n_;
    for (int k = 1; k <= kmax; ++k) {
        double sa = 0.0, sb = 0.0;
        for (int j = 0; j < n_; ++j) {
            const double t = 2.0 * pi * (static_cast<long>(k) * j % n_) / n_;
            sa += values[j] * std::cos(t);
            sb += values[j] * std::sin(t);
        }
        const bool nyquist = (n_ % 2 == 0 && k == kmax);
        a_[k] = (nyquist ? 1.0 : 2.0) * sa / n_;
        b_[k] = nyquist ? 0.0 : 2.0 * sb / n_;
    }
}

double TrigInterp::operator()(double x) const {
    const double t = 2.0 * pi * (x - lo_) / period_;
    const cplx e(std::cos(t), std::sin(t));
    cplx z = 1.0;
    double s = a0_;
    for (size_t k = 1; k < a_.size(); ++k) {
        z *= e;
        s += a_[k] * z.real() + b_[k] * z.imag();
    }
    return s;
}

double TrigInterp::derivative(double x) const {
    const double t = 2.0 * pi * (x - lo_) / period_;
    const cplx e(std::cos(t), std::sin(t));
    cplx z = 1.0;
    double s = 0.0;
    for (size_t k = 1; k < a_.size(); ++k) {
        z *= e;
        s += k * (-a_[k] * z.imag() + b_[k] * z.real());
    }
    return s * 2.0 * pi / period_;
}

double TrigInterp::integral(double x) const {
    const double t = 2.0 * pi * (x - lo_) / period_;
    const cplx e(std::cos(t), std::sin(t));
    cplx z = 1.0;
    double s = a0_ * (x - lo_);
    for (size_t k = 1; k < a_.size(); ++k) {
        z *= e;
        const double f = period_ / (2.0 * pi * k);
        s += f * (a_[k] * z.imag() + b_[k] * (1.0 - z.real()));
    }
    return s;
}

Vec resample_periodic(const Vec& values, double lo, double period, const Vec& targets) {
    const TrigInterp f(values, lo, period);
    Vec out(targets.size());
    for (size_t i = 0; i < targets.size(); ++i) out[i] = f(targets[i]);
    return out;
}

ChebInterp::ChebInterp(Vec values, double lo, double hi)
    : nodes_(cheb_points(static_cast<int>(values.size()), lo, hi)), values_(std::move(values)), lo_(lo), hi_(hi) {
    const int n = static_cast<int>(values_.size());
    weights_.assign(n, 1.0);
    for (int j = 0; j < n; ++j) {
        if (j % 2) weights_[j] = -1.0;
        if (j == 0 || j == n - 1) weights_[j] *= 0.5;
    }
}

double ChebInterp::operator()(double x) const {
    const double tol = 1e-12 * (hi_ - lo_);
    if (x < lo_ - tol || x > hi_ + tol) throw std::domain_error("barycentric_eval: point outside interval");
    double num = 0.0, den = 0.0;
    for (size_t j = 0; j < nodes_.size(); ++j) {
        const double d = x - nodes_[j];
        if (d == 0.0) return values_[j];
        const double w = weights_[j] / d;
        num += w * values_[j];
        den += w;
    }
    return num / den;
}

double barycentric_eval(const Vec& values, double lo, double hi, double x) {
    return ChebInterp(values, lo, hi)(x);
}

}  // namespace ddl
