#include "ddl/pnp_core.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ddl;
using std::numbers::pi;

namespace {

// max |(r(u+e d) - r(u-e d))/2e - J d| / max |J d| over random directions
template <class R, class Jf>
double fd_jacobian_error(const Vec& u, R residual, Jf jacobian, std::mt19937& rng) {
    Matrix J;
    jacobian(u, J);
    std::uniform_real_distribution<double> U(-1, 1);
    Vec d(u.size());
    for (auto& x : d) x = U(rng);
    const double e = 1e-6;
    Vec up = u, um = u;
    for (size_t k = 0; k < u.size(); ++k) up[k] += e * d[k], um[k] -= e * d[k];
    const Vec rp = residual(up), rm = residual(um), Jd = matvec(J, d);
    double err = 0, scale = 0;
    for (size_t k = 0; k < u.size(); ++k) {
        err = std::max(err, std::abs((rp[k] - rm[k]) / (2 * e) - Jd[k]));
        scale = std::max(scale, std::abs(Jd[k]));
    }
    return err / scale;
}

}  // namespace

TEST_CASE("1D solver limits and self-convergence") {
    CHECK(solve_1d(1e3, 1.0).j == doctest::Approx(1.0).epsilon(0.01));
    const double a = solve_1d(0.2, 1e-3).j, b = solve_1d(0.2, 2e-3).j;
    CHECK(std::abs(a) < 1e-2);
    CHECK(b / a == doctest::Approx(2.0).epsilon(1e-2));   // linear response
    CHECK(std::abs(solve_1d(0.2, 1.0, 32).j - solve_1d(0.2, 1.0, 64).j) < 1e-8);
    const OneDSolution s = solve_1d(0.05, 1.0, 96);
    CHECK(s.phi.front() == doctest::Approx(1.0));
    CHECK(std::abs(s.phi.back()) < 1e-12);
    CHECK(s.n.front() == doctest::Approx(1.0));
    // flux is constant across the layer
    const Matrix D = cheb_diff_matrix(96, 1, 0, 1);
    const Vec p1 = matvec(D, s.phi), n1 = matvec(D, s.n);
    for (int k = 0; k < 96; ++k) CHECK(-(s.n[k] * p1[k] + n1[k]) == doctest::Approx(s.j).epsilon(1e-7));
}

TEST_CASE("conformal residual: flat layer, boundary rows, manufactured solution") {
    const double nu = 0.2;
    const ConformalProblem prob = make_flat_problem(2 * pi, 1.0, 1.0, nu, 1.0, 8, 40);
    const FieldState g = initial_guess_2d(prob);
    CHECK(norm_inf(residual_conformal(g, prob)) < 1e-8);

    // Dirichlet data with garbage inside
    FieldState s = g;
    std::mt19937 rng(1);
    for (int i = 0; i < prob.grid.n_periodic; ++i)
        for (int j = 1; j < prob.grid.n_cheb - 1; ++j) {
            s.phi[prob.grid.index(i, j)] += std::uniform_real_distribution<double>(-1, 1)(rng);
            s.n[prob.grid.index(i, j)] += 0.5;
        }
    const Vec r = residual_conformal(s, prob);
    const int N = prob.grid.size();
    for (int i = 0; i < prob.grid.n_periodic; ++i)
        for (int j : {0, prob.grid.n_cheb - 1}) {
            CHECK(r[prob.grid.index(i, j)] == 0.0);
            CHECK(r[N + prob.grid.index(i, j)] == 0.0);
        }

    // manufactured fields on a non-uniform metric
    ConformalProblem m = make_flat_problem(3.0, 1.0, 1.0, 0.3, 1.0, 24, 24);
    const double k = 2 * pi / 3.0;
    FieldState f{Vec(m.grid.size()), Vec(m.grid.size())};
    Vec expect_p(m.grid.size()), expect_n(m.grid.size());
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j < 24; ++j) {
            const int q = m.grid.index(i, j);
            const double x = m.grid.xp[i], y = m.grid.xc[j];
            const double G = 1.5 + 0.5 * std::cos(k * x) * y;
            m.G[q] = G;
            const double P = std::cos(k * x) * std::exp(y), Px = -k * std::sin(k * x) * std::exp(y), Py = P;
            const double Lp = -k * k * P + P;
            const double n = 2 + std::sin(k * x) * y * y, nx = k * std::cos(k * x) * y * y,
                         ny = 2 * std::sin(k * x) * y;
            const double Ln = -k * k * std::sin(k * x) * y * y + 2 * std::sin(k * x);
            f.phi[q] = P;
            f.n[q] = n;
            expect_p[q] = 0.09 * Lp + G * n;
            expect_n[q] = Ln + nx * Px + ny * Py - G * n * n / 0.09;
        }
    const Vec rm = residual_conformal(f, m);
    const int M = m.grid.size();
    double err = 0;
    for (int i = 0; i < 24; ++i)
        for (int j = 1; j < 23; ++j) {
            const int q = m.grid.index(i, j);
            err = std::max({err, std::abs(rm[q] - expect_p[q]), std::abs(rm[M + q] - expect_n[q])});
        }
    CHECK(err < 1e-9);
}

TEST_CASE("conformal Jacobian against finite differences") {
    const WedgeMapParams map = normalize_area(make_wedge_map(28.2, 0.57, 0.84));
    const ConformalProblem prob = make_conformal_problem(map, 0.2, 1.0, 8, 11);
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> U(-1, 1);
    const FieldState base = initial_guess_2d(prob);
    for (int t = 0; t < 10; ++t) {
        FieldState s = base;
        for (size_t k = 0; k < s.phi.size(); ++k) {
            s.phi[k] += 0.2 * U(rng);
            s.n[k] *= 1 + 0.3 * U(rng);
        }
        const double e = fd_jacobian_error(
            s.pack(), [&](const Vec& u) { return residual_conformal(FieldState::unpack(u), prob); },
            [&](const Vec& u, Matrix& J) { jacobian_conformal(FieldState::unpack(u), prob, J); }, rng);
        CHECK(e < 1e-6);
    }
    Matrix J;
    jacobian_conformal(base, prob, J);
    const int N = prob.grid.size(), b = prob.grid.index(3, 0);
    for (int c = 0; c < 2 * N; ++c) {
        CHECK(J(b, c) == (c == b ? 1.0 : 0.0));
        CHECK(J(N + b, c) == (c == N + b ? 1.0 : 0.0));
    }
    // at n = 0 the transport block loses its reaction diagonal
    FieldState z = base;
    std::fill(z.n.begin(), z.n.end(), 0.0);
    Matrix Jz;
    jacobian_conformal(z, prob, Jz);
    const int k = prob.grid.index(2, 5);
    const Vec pe = prob.grid.dc(prob.grid.Dc2, z.phi);
    double lap = prob.grid.Dp2(2, 2) + prob.grid.Dc2(5, 5);
    const Vec px = prob.grid.dp(prob.grid.Dp1, z.phi), py = prob.grid.dc(prob.grid.Dc1, z.phi);
    lap += px[k] * prob.grid.Dp1(2, 2) + py[k] * prob.grid.Dc1(5, 5);
    CHECK(Jz(N + k, N + k) == doctest::Approx(lap).epsilon(1e-13));
    (void)pe;
}

TEST_CASE("flat 2D solve reproduces the 1D solution on every slice") {
    const double nu = 0.15;
    const ConformalProblem prob = make_flat_problem(4.0, 1.0, 1.0, nu, 1.0, 8, 33);
    NewtonHistory h;
    NewtonOptions opt;
    opt.tol = 1e-12;
    const FieldState s = solve_pnp(prob, opt, h);
    CHECK(h.converged);
    CHECK(h.iterations() <= 3);
    const OneDSolution o = solve_1d(nu, 1.0, 33, opt);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 33; ++j) {
            CHECK(std::abs(s.phi[prob.grid.index(i, j)] - o.phi[j]) < 1e-8);
            CHECK(std::abs(s.n[prob.grid.index(i, j)] - o.n[j]) < 1e-8);
        }
    // starting at the solution: one full step with a tiny update
    NewtonHistory h2;
    solve_pnp(prob, {}, h2, &s);
    CHECK(h2.iterations() == 1);
    CHECK(h2.records[0].gamma == 1.0);
    CHECK(h2.records[0].update_norm < 1e-5);
}

TEST_CASE("validation domain: Q, flux conservation, Newton behaviour") {
    const WedgeMapParams map = normalize_area(make_wedge_map(28.2, 0.57, 0.84));
    SolverParams sp;
    sp.nu = 0.2;
    sp.newton.tol = 1e-10;
    const ConformalSolution s = solve_conformal(map, sp, 12, 31);
    CHECK(s.history.converged);
    const Grid2D& g = s.problem.grid;
    const Vec j = flux_eta(s.state, g);
    double qb = 0, qt = 0;
    for (int i = 0; i < 12; ++i) qb += j[g.index(i, 0)] / 12, qt += j[g.index(i, 30)] / 12;
    CHECK(std::abs(qb - 0.63607) < 5e-5);
    CHECK(std::abs(qb - qt) / qb < 1e-6);
    for (double n : s.state.n) CHECK(n > 0);
    const auto& r = s.history.records;
    REQUIRE(r.size() >= 3);
    CHECK(r[r.size() - 1].update_norm < r[r.size() - 2].update_norm);
    CHECK(r[r.size() - 2].update_norm < r[r.size() - 3].update_norm);
    for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(s.state.n[g.index(i, 0)] - 1.0) < 1e-12);
        CHECK(std::abs(s.state.n[g.index(i, 30)] - 1.0) < 1e-12);
    }
}

TEST_CASE("damped Newton reports failure") {
    NewtonSystem sys;
    sys.residual = [](const Vec& u) { return Vec{u[0] * u[0] + 1.0}; };   // no real root
    sys.jacobian = [](const Vec& u, Matrix& J) {
        J.resize(1, 1);
        J(0, 0) = 2 * u[0];
    };
    NewtonOptions opt;
    opt.max_iter = 8;
    NewtonHistory h;
    CHECK_THROWS_AS(damped_newton({0.7}, sys, opt, h), NonConvergence);

    NewtonSystem neg = sys;
    neg.residual = [](const Vec& u) { return Vec{u[0] + 2.0}; };
    neg.jacobian = [](const Vec&, Matrix& J) {
        J.resize(1, 1);
        J(0, 0) = 1.0;
    };
    neg.admissible = [](const Vec& u) { return u[0] > 0; };
    // every damped trial lands at u <= 0 only for huge steps; from 1e-4 all are inadmissible
    CHECK_THROWS_AS(damped_newton({1e-6}, neg, opt, h), NegativeDensity);
}

TEST_CASE("continuation walks nu down geometrically") {
    ContinuationOptions c;
    c.enabled = true;
    c.ratio = 0.5;
    std::vector<double> seen;
    auto step = [&](double nu, const Vec* g, NewtonHistory&) {
        seen.push_back(nu);
        return Vec{g ? (*g)[0] + 1 : 0.0};
    };
    const ContinuationResult r = continuation_solve(0.1, c, step);
    CHECK(r.path.front() == doctest::Approx(0.4));
    CHECK(r.path.back() == 0.1);
    CHECK(r.state[0] == doctest::Approx(double(r.path.size() - 1)));
}
