#pragma once

#include <complex>

namespace ddl {

using cplx = std::complex<double>;

// Elliptic parameter with its complement kept separately: near m = 1 the
// complement cannot be recovered from m without cancellation.
struct EllipticModulus {
    double m = 0.0;
    double mc = 1.0;

    static EllipticModulus from_m(double m);
    // m = sech^2(e/2), mc = tanh^2(e/2)
    static EllipticModulus from_sech(double e);
    EllipticModulus complement() const { return {mc, m}; }
};

double complete_elliptic_K(const EllipticModulus& k);

struct JacobiReal {
    double sn, cn, dn;
};

struct JacobiComplex {
    cplx sn, cn, dn;
};

JacobiReal jacobi_sn_cn_dn(double u, const EllipticModulus& k);
JacobiComplex jacobi_sn_cn_dn(cplx u, const EllipticModulus& k);

// Principal branch, cuts on (-inf,-1] and [1,inf).
cplx complex_arcsin(cplx w);

}  // namespace ddl
