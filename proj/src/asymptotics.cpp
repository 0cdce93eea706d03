#include "ddl/asymptotics.hpp"

#include "ddl/pnp_core.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ddl {

namespace {

std::mutex cache_mutex;
std::map<std::pair<long long, double>, double> cache;

}  // namespace

double J1DTable::solved(double nu_hat, double Phi) const {
    const std::pair<long long, double> key{std::llround(nu_hat * 1e12), Phi};
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    // boundary layers of width ~nu_hat need more points when thin
    const int n = nu_hat < 0.05 ? 128 : 64;
    const double j = solve_1d(nu_hat, Phi, n).j;
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, j);
    return j;
}

size_t J1DTable::cached() const {
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.size();
}

double J1DTable::operator()(double nu_hat, double Phi) const {
    if (!(nu_hat > 0.0)) throw std::domain_error("j1d: nu_hat must be positive");
    if (nu_hat >= floor_) return solved(nu_hat, Phi);
    const double j0 = solved(floor_, Phi), j1 = solved(1.25 * floor_, Phi);
    const double p = std::log(j1 / j0) / std::log(1.25);
    return j0 * std::pow(nu_hat / floor_, p);
}

const J1DTable& default_j1d() {
    static const J1DTable t;
    return t;
}

double q_smooth_closed(const AsymptoticInputs& in) {
    return std::numbers::pi * in.Phi / in.L * std::sqrt(2.0 * in.a / in.h_min);
}

double q_smooth_integral(const AsymptoticInputs& in, const FluxFunction& j) {
    if (!(in.h_min > 0.0 && in.a > 0.0 && in.L > 0.0 && in.Phi > 0.0 && in.nu > 0.0))
        throw std::domain_error("q_smooth_integral: inputs must be positive");
    const FluxFunction flux = j ? j : FluxFunction([](double nh, double Phi) { return default_j1d()(nh, Phi); });
    // dX/(1+X^2) = dtheta; the integrand is even in theta
    auto f = [&](double theta) {
        const double c = std::cos(theta);
        return flux(in.nu * c * c / in.h_min, in.Phi);
    };
    const double I = 2.0 * boost::math::quadrature::gauss<double, 64>::integrate(f, 0.0, 0.5 * std::numbers::pi);
    return std::sqrt(2.0 * in.a / in.h_min) * I / in.L;
}

double wedge_slope(double beta, double L, double Phi) { return 2.0 * Phi / (beta * L); }

double q_wedge(const AsymptoticInputs& in) {
    return wedge_slope(in.beta, in.L, in.Phi) * std::log(in.L / in.h_min) + in.C;
}

CFit fit_C(const std::vector<std::pair<double, double>>& samples, double beta, double L, double Phi) {
    if (samples.size() < 2) throw std::invalid_argument("fit_C: need at least two samples");
    const double s = wedge_slope(beta, L, Phi);
    CFit f;
    double lo = INFINITY, hi = -INFINITY;
    for (auto [h, Q] : samples) {
        const double c = Q - s * std::log(L / h);
        f.C += c;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    f.C /= samples.size();
    f.spread = hi - lo;
    f.warn = f.spread > 0.05;
    return f;
}

LinearFit linear_regression(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("linear_regression: need matching samples");
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

}  // namespace ddl
