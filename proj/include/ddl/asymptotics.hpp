#pragma once

#include <functional>
#include <vector>

namespace ddl {

struct AsymptoticInputs {
    double h_min = 0.0;
    double a = 0.0;      // curvature scale of the smooth profile
    double beta = 0.0;   // wedge half-angle
    double L = 0.0;
    double Phi = 1.0;
    double nu = 0.1;
    double C = 0.0;      // wedge constant
};

// j(nu_hat, Phi) for a unit-thickness layer
using FluxFunction = std::function<double(double nu_hat, double Phi)>;

// Memoised 1D flux. Below `floor` the flux is extended with a power law
// through the values at floor and 1.25*floor.
class J1DTable {
public:
    explicit J1DTable(double floor = 0.02) : floor_(floor) {}
    double operator()(double nu_hat, double Phi) const;
    double floor() const { return floor_; }
    size_t cached() const;

private:
    double solved(double nu_hat, double Phi) const;
    double floor_;
};

// Shared table used when no flux function is supplied.
const J1DTable& default_j1d();

double q_smooth_closed(const AsymptoticInputs& in);
// (1/L) sqrt(2a/h_min) int j(nu/(h_min(1+X^2))) dX/(1+X^2), X = tan(theta),
// 64-point Gauss-Legendre in theta.
double q_smooth_integral(const AsymptoticInputs& in, const FluxFunction& j = {});
double q_wedge(const AsymptoticInputs& in);
double wedge_slope(double beta, double L, double Phi);

struct CFit {
    double C = 0.0;
    double spread = 0.0;   // max - min of the per-sample constants
    bool warn = false;     // spread above 0.05
};
// samples are (h_min, Q) pairs
CFit fit_C(const std::vector<std::pair<double, double>>& samples, double beta, double L, double Phi);

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};
LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ddl
