#pragma once

#include "ddl/dense.hpp"

#include <utility>

namespace ddl {

// Equispaced nodes lo + period*k/n, k = 0..n-1.
Vec periodic_points(int n, double lo, double period);
Matrix fourier_diff_matrix(int n, int order, double period);

// Chebyshev extreme points in ascending order on [lo, hi].
Vec cheb_points(int n, double lo, double hi);
Matrix cheb_diff_matrix(int n, int order, double lo, double hi);
Vec clenshaw_curtis_weights(int n, double lo, double hi);

// Tensor grid: periodic index i, Chebyshev index j, flattened k = i*n_cheb + j
// so that k = 0 is the bottom-left corner.
struct Grid2D {
    int n_periodic = 0;
    int n_cheb = 0;
    std::pair<double, double> periodic_interval;
    std::pair<double, double> cheb_interval;
    Vec xp, xc;
    Matrix Dp1, Dp2, Dc1, Dc2;

    int size() const { return n_periodic * n_cheb; }
    int index(int i, int j) const { return i * n_cheb + j; }
    double period() const { return periodic_interval.second - periodic_interval.first; }

    Vec dp(const Matrix& D, const Vec& f) const;
    Vec dc(const Matrix& D, const Vec& f) const;
};

Grid2D make_grid(int n_periodic, int n_cheb, std::pair<double, double> periodic_interval,
                 std::pair<double, double> cheb_interval);

struct QuadWeights {
    Vec periodic, cheb;
};
QuadWeights quad_weights(const Grid2D& grid);

// Trigonometric interpolant of samples on periodic_points(n, lo, period).
// For even n the Nyquist mode carries a cosine only.
class TrigInterp {
public:
    TrigInterp() = default;
    TrigInterp(const Vec& values, double lo, double period);

    double operator()(double x) const;
    double derivative(double x) const;
    // Integral of the interpolant from lo to x.
    double integral(double x) const;
    double mean() const { return a0_; }
    double lo() const { return lo_; }
    double period() const { return period_; }
    int size() const { return n_; }

private:
    int n_ = 0;
    double lo_ = 0.0, period_ = 1.0, a0_ = 0.0;
    Vec a_, b_;  // cos / sin coefficients for k = 1..n/2
};

Vec resample_periodic(const Vec& values, double lo, double period, const Vec& targets);

// Barycentric Lagrange interpolation on cheb_points(n, lo, hi).
class ChebInterp {
public:
    ChebInterp() = default;
    ChebInterp(Vec values, double lo, double hi);
    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    Vec nodes_, values_, weights_;
    double lo_ = -1.0, hi_ = 1.0;
};

double barycentric_eval(const Vec& values, double lo, double hi, double x);

}  // namespace ddl
