#include "ddl/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddl {

EllipticModulus EllipticModulus::from_m(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw std::domain_error("elliptic parameter outside [0,1)");
    return {m, 1.0 - m};
}

EllipticModulus EllipticModulus::from_sech(double e) {
    if (!(e > 0.0)) throw std::domain_error("map parameter must be positive");
    const double t = std::tanh(0.5 * e);
    const double s = 1.0 / std::cosh(0.5 * e);
    return {s * s, t * t};
}

double complete_elliptic_K(const EllipticModulus& k) {
    // m may round to 1; only the complement has to be nonzero
    if (!(k.m >= 0.0 && k.m <= 1.0 && k.mc > 0.0))
        throw std::domain_error("complete_elliptic_K: parameter outside [0,1)");
    double a = 1.0, b = std::sqrt(k.mc);
    for (int it = 0; it < 64 && std::abs(a - b) > 1e-16 * a; ++it) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return std::numbers::pi / (a + b);
}

// Descending Landen (Bulirsch). Works from the complementary parameter so
// that m close to 1 keeps full relative accuracy.
JacobiReal jacobi_sn_cn_dn(double u, const EllipticModulus& k) {
    if (k.m == 0.0) return {std::sin(u), std::cos(u), 1.0};
    constexpr int kMaxLevels = 24;
    double am[kMaxLevels], bm[kMaxLevels];
    double a = 1.0, emc = k.mc, c = 1.0;
    int top = 0;
    for (; top < kMaxLevels; ++top) {
        am[top] = a;
        emc = std::sqrt(emc);
        bm[top] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= 1e-15 * a) break;
        emc *= a;
        a = c;
    }
    if (top == kMaxLevels) --top;
    u *= c;
    double sn = std::sin(u), cn = std::cos(u), dn = 1.0;
    if (sn != 0.0) {
        double t = cn / sn;
        c *= t;
        for (int l = top; l >= 0; --l) {
            const double b = am[l];
            t *= c;
            c *= dn;
            dn = (bm[l] + t) / (b + t);
            t = c / b;
        }
        t = 1.0 / std::sqrt(c * c + 1.0);
        sn = sn >= 0.0 ? t : -t;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

// Addition formulas with the imaginary part evaluated at the complementary
// parameter (Jacobi imaginary transformation).
JacobiComplex jacobi_sn_cn_dn(cplx u, const EllipticModulus& k) {
    const JacobiReal r = jacobi_sn_cn_dn(u.real(), k);
    const JacobiReal i = jacobi_sn_cn_dn(u.imag(), k.complement());
    const double den = i.cn * i.cn + k.m * r.sn * r.sn * i.sn * i.sn;
    if (!(std::abs(den) > 1e-300)) throw std::domain_error("jacobi_sn_cn_dn: pole");
    const cplx sn(r.sn * i.dn, r.cn * r.dn * i.sn * i.cn);
    const cplx cn(r.cn * i.cn, -r.sn * r.dn * i.sn * i.dn);
    const cplx dn(r.dn * i.cn * i.dn, -k.m * r.sn * r.cn * i.sn);
    return {sn / den, cn / den, dn / den};
}

cplx complex_arcsin(cplx w) { return std::asin(w); }

}  // namespace ddl
