#include "ddl/hodograph.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ddl;
using std::numbers::pi;

namespace {

struct Validation {
    ConformalSolution conf;
    HodographInputs in;
    HodographSolution hod;
};

const Validation& validation() {
    static const Validation v = [] {
        Validation r;
        SolverParams sp;
        sp.nu = 0.2;
        sp.newton.tol = 1e-10;
        r.conf = solve_conformal(normalize_area(make_wedge_map(28.2, 0.57, 0.84)), sp, 48, 31);
        r.in = extract_hodograph_inputs(r.conf);
        const HodographInputs& in = r.in;
        r.hod = solve_hodograph(make_hodograph_problem(in.QL, [&in](double p) { return in(p); }, 0.2, 1.0, 45, 32), sp);
        return r;
    }();
    return v;
}

HodographProblem flat(double nu, int n_v, int n_psi, double L = 2 * pi) {
    const double j = solve_1d(nu, 1.0, 96).j;
    return make_hodograph_problem(j * L, [](double) { return 1.0; }, nu, 1.0, n_v, n_psi);
}

}  // namespace

TEST_CASE("flat layer: 1D solution in hodograph variables") {
    SolverParams sp;
    sp.nu = 0.2;
    sp.newton.tol = 1e-12;
    double prev = INFINITY;
    for (int n_v : {25, 33, 41}) {
        const HodographProblem p = flat(0.2, n_v, 8);
        const HodographState s = initial_guess_hodograph(p);
        const Grid2D& g = p.grid;
        for (int i = 0; i < g.n_periodic; ++i) {
            CHECK(s.y[g.index(i, 0)] == 1.0);
            CHECK(s.y[g.index(i, n_v - 1)] == 0.0);
        }
        const HodographSolution sol = solve_hodograph(p, sp);
        CHECK(sol.history.iterations() <= 4);
        const LengthDiagnostic d = length_diagnostic(sol.state, sol.problem);
        CHECK(d.spread < 1e-4);
        CHECK(d.spread < prev);   // truncation error only
        prev = d.spread;
        CHECK(d.mean == doctest::Approx(2 * pi).epsilon(1e-5));
        const Vec x = recover_x(sol.state, sol.problem);
        for (int j = 0; j < g.n_cheb; ++j) {
            CHECK(x[g.index(0, j)] == 0.0);
            // linear in psi on every v line
            for (int i = 1; i < g.n_periodic; ++i)
                CHECK(x[g.index(i, j)] == doctest::Approx((g.xp[i] - g.xp[0]) * d.L[j] / p.QL).epsilon(1e-12));
        }
    }
}

TEST_CASE("hodograph residual: boundary rows and manufactured fields") {
    const HodographProblem p = make_hodograph_problem(6.0, [](double s) { return 1 + 0.2 * std::cos(2 * pi * s / 6); },
                                                      0.3, 1.0, 24, 24);
    const Grid2D& g = p.grid;
    const int N = g.size();
    HodographState s{Vec(N), Vec(N)};
    Vec e1(N), e2(N);
    const double k = 2 * pi / 6, nu2 = 0.09;
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            const int q = g.index(i, j);
            const double ps = g.xp[i], v = g.xc[j];
            const double n = 1 + 0.3 * v * (1 - v) * (1 + 0.5 * std::sin(k * ps));
            const double nv = 0.3 * (1 - 2 * v) * (1 + 0.5 * std::sin(k * ps)), nvv = -0.6 * (1 + 0.5 * std::sin(k * ps));
            const double npp = -0.3 * v * (1 - v) * 0.5 * k * k * std::sin(k * ps);
            const double np = 0.3 * v * (1 - v) * 0.5 * k * std::cos(k * ps);
            const double F = p.F(ps), Fp = -0.2 * k * std::sin(k * ps), Fpp = -0.2 * k * k * std::cos(k * ps);
            const double y = F * (1 - v), yv = -F, yp = Fp * (1 - v), ypp = Fpp * (1 - v);
            s.n[q] = n;
            s.y[q] = y;
            e1[q] = nvv + nv - 2 * nv * nv / n + n * n * npp - (std::pow(n, 4) * yp * yp + n * n * yv * yv) / nu2;
            // d/dv (yv/n) + d/dpsi (n yp)
            e2[q] = -yv * nv / (n * n) + (np * yp + n * ypp);
        }
    const Vec r = residual_hodograph(s, p);
    double err = 0;
    for (int i = 0; i < 24; ++i)
        for (int j = 1; j < 23; ++j) {
            const int q = g.index(i, j);
            err = std::max({err, std::abs(r[q] - e1[q]), std::abs(r[N + q] - e2[q])});
        }
    CHECK(err < 1e-9);
    for (int i = 0; i < 24; ++i) {
        CHECK(r[g.index(i, 0)] == 0.0);
        CHECK(r[N + g.index(i, 0)] == 0.0);
        CHECK(r[g.index(i, 23)] == 0.0);
        CHECK(r[N + g.index(i, 23)] == 0.0);
    }
}

TEST_CASE("hodograph Jacobian against finite differences") {
    const HodographProblem p = make_hodograph_problem(
        12.0, [](double s) { return 1 + 0.5 * std::cos(2 * pi * s / 12); }, 0.2, 1.0, 9, 8);
    const HodographState base = initial_guess_hodograph(p);
    std::mt19937 rng(33);
    std::uniform_real_distribution<double> U(-1, 1);
    for (int t = 0; t < 10; ++t) {
        HodographState s = base;
        for (size_t k = 0; k < s.n.size(); ++k) {
            s.n[k] *= 1 + 0.3 * U(rng);
            s.y[k] += 0.05 * U(rng);
        }
        const Vec u = s.pack();
        Matrix J;
        jacobian_hodograph(s, p, J);
        Vec d(u.size());
        for (auto& x : d) x = U(rng);
        const double e = 1e-6;
        Vec up = u, um = u;
        for (size_t k = 0; k < u.size(); ++k) up[k] += e * d[k], um[k] -= e * d[k];
        const Vec rp = residual_hodograph(HodographState::unpack(up), p),
                  rm = residual_hodograph(HodographState::unpack(um), p), Jd = matvec(J, d);
        double err = 0, scale = 0;
        for (size_t k = 0; k < u.size(); ++k) {
            err = std::max(err, std::abs((rp[k] - rm[k]) / (2 * e) - Jd[k]));
            scale = std::max(scale, std::abs(Jd[k]));
        }
        CHECK(err / scale < 1e-6);
    }
    // at n = 1 the y-block of the second equation is the Laplacian
    HodographState one = base;
    std::fill(one.n.begin(), one.n.end(), 1.0);
    Matrix J;
    jacobian_hodograph(one, p, J);
    const Grid2D& g = p.grid;
    const int N = g.size();
    const Matrix Dv2 = matmul(g.Dc1, g.Dc1), Dp2 = matmul(g.Dp1, g.Dp1);
    const int i = 3, j = 4, k = g.index(i, j);
    for (int l = 0; l < g.n_cheb; ++l) CHECK(J(N + k, N + g.index(i, l)) == doctest::Approx(Dv2(j, l) + (l == j ? Dp2(i, i) : 0)).epsilon(1e-12));
    for (int l = 0; l < g.n_periodic; ++l)
        if (l != i) CHECK(J(N + k, N + g.index(l, j)) == doctest::Approx(Dp2(i, l)).epsilon(1e-12));
    const int b = g.index(2, g.n_cheb - 1);
    for (int c = 0; c < 2 * N; ++c) CHECK(J(N + b, c) == (c == N + b ? 1.0 : 0.0));
}

TEST_CASE("validation domain through the hodograph route") {
    const Validation& v = validation();
    const double Qc = [&] {
        const Grid2D& g = v.conf.problem.grid;
        const Vec j = flux_eta(v.conf.state, g);
        double q = 0;
        for (int i = 0; i < g.n_periodic; ++i) q += j[g.index(i, 0)] / g.n_periodic;
        return q;
    }();
    const double Qh = hodograph_Q(v.hod);
    CHECK(std::abs(Qh - Qc) < 1e-4);
    CHECK(std::abs(Qh - 0.63607) < 1e-4);
    const LengthDiagnostic d = length_diagnostic(v.hod.state, v.hod.problem);
    CHECK(d.spread < 1e-4);
    CHECK(d.mean == doctest::Approx(28.2).epsilon(1e-5));

    // surface bookkeeping: F at the period edge is the top height at xi = -L/2
    CHECK(v.in.F[0] == doctest::Approx(top_height(-0.5 * v.conf.map.L, v.conf.map)).epsilon(1e-12));
    CHECK(v.in.QL == doctest::Approx(Qc * v.conf.map.L).epsilon(1e-12));

    // recovered top boundary lies on the conformal top surface
    const Vec x = recover_x(v.hod.state, v.hod.problem);
    const Grid2D& g = v.hod.problem.grid;
    double worst = 0;
    for (int i = 0; i < g.n_periodic; ++i) {
        const double xp = x[g.index(i, 0)] - 0.5 * d.mean;
        // top surface point at the same x: solve Re f(xi + i eta*) = xp
        const WedgeMapParams& m = v.conf.map;
        double lo = -0.5 * m.L, hi = 0.5 * m.L;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (forward_map(cplx(mid, m.eta_star), m).real() < xp ? lo : hi) = mid;
        }
        worst = std::max(worst, std::abs(forward_map(cplx(lo, m.eta_star), m).imag() - v.hod.state.y[g.index(i, 0)]));
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("length spread shrinks with psi resolution") {
    const Validation& v = validation();
    const HodographInputs& in = v.in;
    SolverParams sp;
    sp.nu = 0.2;
    const HodographSolution coarse =
        solve_hodograph(make_hodograph_problem(in.QL, [&in](double p) { return in(p); }, 0.2, 1.0, 45, 8), sp);
    CHECK(length_diagnostic(coarse.state, coarse.problem).spread >
          length_diagnostic(v.hod.state, v.hod.problem).spread);
}

TEST_CASE("hodograph input validation") {
    CHECK_THROWS_AS(make_hodograph_problem(-1, [](double) { return 1.0; }, 0.2, 1, 9, 8), std::domain_error);
    CHECK_THROWS_AS(make_hodograph_problem(1, [](double) { return -1.0; }, 0.2, 1, 9, 8), std::domain_error);
}
