#include "ddl/geometry.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ddl {

namespace {

constexpr double pi = std::numbers::pi;

template <class F>
double bracket_root(F f, double lo, double hi, const char* what) {
    const double flo = f(lo), fhi = f(hi);
    if (flo * fhi > 0.0) throw std::runtime_error(std::string(what) + ": root not bracketed");
    boost::uintmax_t iters = 200;
    auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::max(std::abs(a), std::abs(b)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

WedgeMapParams make_wedge_map(double L, double epsilon, double eta_star) {
    if (!(L > 0.0)) throw std::domain_error("wedge map: L must be positive");
    WedgeMapParams p;
    p.L = L;
    p.epsilon = epsilon;
    p.eta_star = eta_star;
    p.m = EllipticModulus::from_sech(epsilon);
    p.K = complete_elliptic_K(p.m);
    p.Kp = complete_elliptic_K(p.m.complement());
    p.kprime = std::tanh(0.5 * epsilon);
    p.eta_max = 0.5 * L * p.Kp / p.K;
    if (!(eta_star > 0.0 && eta_star < p.eta_max))
        throw std::domain_error("wedge map: eta* must lie in (0, eta_max) for a univalent map");
    p.beta = 2.0 * eta_star * std::log(8.0 / epsilon) / L;
    p.h_min = epsilon * L * std::sin(p.beta) / (2.0 * pi);
    p.b = 1.0 / (2.0 * std::sin(p.beta));
    p.y_max = compute_y_max(p);
    return p;
}

WedgeMapParams params_from_physical(double h_min, double beta, double L) {
    if (!(h_min > 0.0)) throw std::domain_error("params_from_physical: h_min must be positive");
    if (!(beta > 0.0 && beta < 0.5 * pi)) throw std::domain_error("params_from_physical: beta outside (0, pi/2)");
    const double eps = 2.0 * pi * h_min / (L * std::sin(beta));
    const double eta = beta * L / (2.0 * std::log(8.0 / eps));
    WedgeMapParams p = make_wedge_map(L, eps, eta);
    p.h_min = h_min;
    p.beta = beta;
    p.b = 1.0 / (2.0 * std::sin(beta));
    return p;
}

namespace {

void check_rectangle(cplx zeta, const WedgeMapParams& p) {
    const double tol = 1e-12 * p.L;
    if (std::abs(zeta.real()) > 0.5 * p.L + tol || std::abs(zeta.imag()) > p.eta_star + tol)
        throw std::domain_error("forward_map: point outside the map rectangle");
}

}  // namespace

cplx forward_map(cplx zeta, const WedgeMapParams& p) {
    check_rectangle(zeta, p);
    const JacobiComplex j = jacobi_sn_cn_dn(2.0 * p.K * zeta / p.L, p.m);
    cplx w = p.kprime * j.sn / j.dn;
    if (zeta.imag() == 0.0) {
        w = std::clamp(w.real(), -1.0, 1.0);
    } else {
        // Along the side edges w is real with |w| > 1; keep it on the side of
        // the cut that matches the half of the rectangle.
        const double im = std::abs(w.imag());
        w = cplx(w.real(), zeta.imag() > 0.0 ? im : -im);
    }
    return p.L / pi * complex_arcsin(w);
}

cplx map_derivative(cplx zeta, const WedgeMapParams& p) {
    check_rectangle(zeta, p);
    const JacobiComplex j = jacobi_sn_cn_dn(2.0 * p.K * zeta / p.L, p.m);
    return 2.0 * p.K * p.kprime / pi / j.dn;
}

double map_metric(cplx zeta, const WedgeMapParams& p) { return std::norm(map_derivative(zeta, p)); }

double top_height(double xi, const WedgeMapParams& p) {
    return forward_map(cplx(xi, p.eta_star), p).imag();
}

double min_thickness(const WedgeMapParams& p) { return top_height(0.0, p); }

double compute_y_max(const WedgeMapParams& p) {
    constexpr int n = 256;
    const double h = 0.5 * p.L / n;
    int best = 0;
    double ybest = -1e300;
    for (int k = 0; k <= n; ++k) {
        const double y = top_height(k * h, p);
        if (y > ybest) ybest = y, best = k;
    }
    const double lo = std::max(0.0, (best - 1) * h), hi = std::min(0.5 * p.L, (best + 1) * h);
    auto r = boost::math::tools::brent_find_minima([&](double x) { return -top_height(x, p); }, lo, hi, 50);
    return std::max(ybest, -r.second);
}

double domain_area(const WedgeMapParams& p) {
    // Integral of y dx along the top line, written as Im f * Re f' d(xi); the
    // integrand is periodic so the trapezoid rule converges geometrically.
    auto trap = [&](int n) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx z(-0.5 * p.L + p.L * k / n, p.eta_star);
            s += forward_map(z, p).imag() * map_derivative(z, p).real();
        }
        return s * p.L / n;
    };
    int n = 256;
    double prev = trap(n);
    for (; n < (1 << 17); n *= 2) {
        const double next = trap(2 * n);
        if (std::abs(next - prev) <= 1e-14 * std::abs(next)) return next;
        prev = next;
    }
    return prev;
}

WedgeMapParams normalize_area(const WedgeMapParams& p) {
    auto excess = [&](double eta) { return domain_area(make_wedge_map(p.L, p.epsilon, eta)) - p.L; };
    const double lo = 1e-3 * p.eta_max, hi = (1.0 - 1e-6) * p.eta_max;
    if (excess(lo) * excess(hi) > 0.0)
        throw std::runtime_error("normalize_area: no eta* below eta_max gives mean thickness 1");
    const double eta = bracket_root(excess, lo, hi, "normalize_area");
    WedgeMapParams q = make_wedge_map(p.L, p.epsilon, eta);
    return q;
}

double unit_mean_length(double h_min, double beta, double L_lo, double L_hi) {
    auto excess = [&](double L) {
        const WedgeMapParams p = params_from_physical(h_min, beta, L);
        return domain_area(p) / L - 1.0;
    };
    return bracket_root(excess, L_lo, L_hi, "unit_mean_length");
}

cplx inner_map(cplx zeta_t, double beta) { return std::sinh(beta * zeta_t) / std::sin(beta); }

// ---------------------------------------------------------------------------

double SmoothProfile::F(double psi) const {
    const double P = QL();
    double p = std::fmod(psi + psi_e, P);
    if (p < 0.0) p += P;
    p = std::abs(p - psi_e);
    if (p <= psi_j) {
        const double c = std::cos(delta * p / Phi);
        return h_min / (c * c);
    }
    const double s = p - psi_j;
    double v = 0.0;
    for (int k = 5; k >= 0; --k) v = v * s + wing[k];
    return v;
}

SmoothProfile make_smooth_profile(double h_min, double a, double Phi, double psi_e, double H,
                                  double junction_height) {
    if (!(h_min > 0.0 && a > 0.0 && Phi > 0.0)) throw std::domain_error("smooth profile: h_min, a, Phi must be positive");
    if (!(junction_height > h_min)) throw std::domain_error("smooth profile: junction height must exceed h_min");
    SmoothProfile s;
    s.h_min = h_min;
    s.a = a;
    s.Phi = Phi;
    s.delta = std::sqrt(h_min / (2.0 * a));
    s.junction_height = junction_height;
    const double theta = std::acos(std::sqrt(h_min / junction_height));
    s.psi_j = theta * Phi / s.delta;
    s.psi_e = psi_e;
    s.H = H;
    if (!(psi_e > s.psi_j)) throw std::domain_error("smooth profile: period too short for the sec^2 core");

    const double t = std::tan(theta), sec2 = 1.0 + t * t, r = s.delta / Phi;
    const double f0 = h_min * sec2;
    const double f1 = 2.0 * h_min * sec2 * t * r;
    const double f2 = 2.0 * h_min * r * r * sec2 * (1.0 + 3.0 * t * t);
    // Quintic Hermite: value, slope, curvature at both ends.
    const double w = psi_e - s.psi_j;
    const double r0 = H - (f0 + f1 * w + 0.5 * f2 * w * w);
    const double r1 = -(f1 + f2 * w);
    const double r2 = -f2;
    const double w2 = w * w, w3 = w2 * w;
    const double c3 = (10.0 * r0 - 4.0 * r1 * w + 0.5 * r2 * w2) / w3;
    const double c4 = (-15.0 * r0 + 7.0 * r1 * w - r2 * w2) / (w3 * w);
    const double c5 = (6.0 * r0 - 3.0 * r1 * w + 0.5 * r2 * w2) / (w3 * w2);
    s.wing = {f0, f1, 0.5 * f2, c3, c4, c5};
    return s;
}

ProfileMeasure measure_profile(const SmoothProfile& prof, const FluxLaw& flux) {
    using GL = boost::math::quadrature::gauss<double, 64>;
    auto j = [&](double h) { return flux ? flux(h) : prof.Phi; };
    auto dx = [&](double psi) { const double F = prof.F(psi); return F / j(F); };
    auto da = [&](double psi) { const double F = prof.F(psi); return F * F / j(F); };
    const double Lh = GL::integrate(dx, 0.0, prof.psi_j) + GL::integrate(dx, prof.psi_j, prof.psi_e);
    const double Ah = GL::integrate(da, 0.0, prof.psi_j) + GL::integrate(da, prof.psi_j, prof.psi_e);
    return {2.0 * Lh, Ah / Lh};
}

SmoothProfile build_smooth_profile(double h_min, double a, double L, double Phi, const FluxLaw& flux,
                                   double junction_height) {
    const double q0 = pi * Phi / L * std::sqrt(2.0 * a / h_min);
    double x[2] = {0.5 * q0 * L, 1.2};
    auto eval = [&](const double* z, double* r) {
        const SmoothProfile s = make_smooth_profile(h_min, a, Phi, z[0], z[1], junction_height);
        const ProfileMeasure m = measure_profile(s, flux);
        r[0] = m.L / L - 1.0;
        r[1] = m.mean - 1.0;
    };
    double r[2];
    for (int it = 0; it < 50; ++it) {
        eval(x, r);
        if (std::abs(r[0]) < 1e-12 && std::abs(r[1]) < 1e-12) break;
        double J[2][2];
        for (int c = 0; c < 2; ++c) {
            double z[2] = {x[0], x[1]}, rp[2];
            const double h = 1e-6 * std::max(1.0, std::abs(x[c]));
            z[c] += h;
            eval(z, rp);
            J[0][c] = (rp[0] - r[0]) / h;
            J[1][c] = (rp[1] - r[1]) / h;
        }
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0) break;
        double d0 = -(J[1][1] * r[0] - J[0][1] * r[1]) / det;
        double d1 = -(-J[1][0] * r[0] + J[0][0] * r[1]) / det;
        // keep the wing above the junction height and the period beyond the core
        const double psi_j = std::acos(std::sqrt(h_min / junction_height)) * Phi / std::sqrt(h_min / (2.0 * a));
        double g = 1.0;
        while (g > 1e-3 && (x[0] + g * d0 <= psi_j * 1.01 || x[1] + g * d1 <= junction_height)) g *= 0.5;
        x[0] += g * d0;
        x[1] += g * d1;
    }
    eval(x, r);
    if (!(std::abs(r[0]) < 1e-10 && std::abs(r[1]) < 1e-10))
        throw std::domain_error("build_smooth_profile: h_min and a are incompatible with mean thickness 1 at this L");
    SmoothProfile s = make_smooth_profile(h_min, a, Phi, x[0], x[1], junction_height);
    s.L = L;
    for (int k = 0; k <= 400; ++k)
        if (!(s.F(s.psi_e * k / 400.0) > 0.0))
            throw std::domain_error("build_smooth_profile: wing polynomial is not positive");
    return s;
}

}  // namespace ddl
