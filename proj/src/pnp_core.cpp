#include "ddl/pnp_core.hpp"

#include <cmath>
#include <stdexcept>

namespace ddl {

Vec FieldState::pack() const {
    Vec u(phi);
    u.insert(u.end(), n.begin(), n.end());
    return u;
}

FieldState FieldState::unpack(const Vec& u) {
    const size_t N = u.size() / 2;
    return {Vec(u.begin(), u.begin() + N), Vec(u.begin() + N, u.end())};
}

ConformalProblem make_conformal_problem(const WedgeMapParams& map, double nu, double Phi, int n_xi, int n_eta) {
    ConformalProblem p;
    p.grid = make_grid(n_xi, n_eta, {-0.5 * map.L, 0.5 * map.L}, {0.0, map.eta_star});
    p.nu = nu;
    p.Phi = Phi;
    p.G.resize(p.grid.size());
    for (int i = 0; i < n_xi; ++i)
        for (int j = 0; j < n_eta; ++j)
            p.G[p.grid.index(i, j)] = map_metric(cplx(p.grid.xp[i], p.grid.xc[j]), map);
    return p;
}

ConformalProblem make_flat_problem(double period, double height, double G, double nu, double Phi, int n_xi,
                                   int n_eta) {
    ConformalProblem p;
    p.grid = make_grid(n_xi, n_eta, {-0.5 * period, 0.5 * period}, {0.0, height});
    p.G.assign(p.grid.size(), G);
    p.nu = nu;
    p.Phi = Phi;
    return p;
}

namespace {

void check_dims(const FieldState& s, const ConformalProblem& prob) {
    const size_t N = prob.grid.size();
    if (s.phi.size() != N || s.n.size() != N || prob.G.size() != N)
        throw std::invalid_argument("conformal system: dimension mismatch");
}

}  // namespace

Vec residual_conformal(const FieldState& s, const ConformalProblem& prob) {
    check_dims(s, prob);
    const Grid2D& g = prob.grid;
    const int N = g.size();
    const double nu2 = prob.nu * prob.nu;
    const Vec px = g.dp(g.Dp1, s.phi), pe = g.dc(g.Dc1, s.phi);
    const Vec pxx = g.dp(g.Dp2, s.phi), pee = g.dc(g.Dc2, s.phi);
    const Vec nx = g.dp(g.Dp1, s.n), ne = g.dc(g.Dc1, s.n);
    const Vec nxx = g.dp(g.Dp2, s.n), nee = g.dc(g.Dc2, s.n);
    Vec r(2 * N);
    for (int k = 0; k < N; ++k) {
        const double n = s.n[k], G = prob.G[k];
        r[k] = nu2 * (pxx[k] + pee[k]) + G * n;
        r[N + k] = nxx[k] + nee[k] + nx[k] * px[k] + ne[k] * pe[k] - G * n * n / nu2;
    }
    for (int i = 0; i < g.n_periodic; ++i) {
        const int b = g.index(i, 0), t = g.index(i, g.n_cheb - 1);
        r[b] = s.phi[b] - prob.Phi;
        r[t] = s.phi[t];
        r[N + b] = s.n[b] - 1.0;
        r[N + t] = s.n[t] - 1.0;
    }
    return r;
}

void jacobian_conformal(const FieldState& s, const ConformalProblem& prob, Matrix& J) {
    check_dims(s, prob);
    const Grid2D& g = prob.grid;
    const int N = g.size(), np = g.n_periodic, nc = g.n_cheb;
    if (J.rows() != 2 * N || J.cols() != 2 * N) J.resize(2 * N, 2 * N);
    else J.fill(0.0);
    const double nu2 = prob.nu * prob.nu;
    const Vec px = g.dp(g.Dp1, s.phi), pe = g.dc(g.Dc1, s.phi);
    const Vec nx = g.dp(g.Dp1, s.n), ne = g.dc(g.Dc1, s.n);

    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nc; ++j) {
            const int k = g.index(i, j);
            if (j == 0 || j == nc - 1) {
                J(k, k) = 1.0;
                J(N + k, N + k) = 1.0;
                continue;
            }
            for (int l = 0; l < np; ++l) {
                const int c = g.index(l, j);
                J(k, c) += nu2 * g.Dp2(i, l);
                J(N + k, c) += nx[k] * g.Dp1(i, l);
                J(N + k, N + c) += g.Dp2(i, l) + px[k] * g.Dp1(i, l);
            }
            for (int l = 0; l < nc; ++l) {
                const int c = g.index(i, l);
                J(k, c) += nu2 * g.Dc2(j, l);
                J(N + k, c) += ne[k] * g.Dc1(j, l);
                J(N + k, N + c) += g.Dc2(j, l) + pe[k] * g.Dc1(j, l);
            }
            J(k, N + k) += prob.G[k];
            J(N + k, N + k) -= 2.0 * s.n[k] * prob.G[k] / nu2;
        }
}

// ---------------------------------------------------------------------------

namespace {

OneDSolution solve_1d_from(double nu_hat, double Phi, int n_points, const NewtonOptions& opt, const Vec* guess) {
    const Vec y = cheb_points(n_points, 0.0, 1.0);
    const Matrix D1 = cheb_diff_matrix(n_points, 1, 0.0, 1.0);
    const Matrix D2 = cheb_diff_matrix(n_points, 2, 0.0, 1.0);
    const int N = n_points;
    const double nu2 = nu_hat * nu_hat;

    NewtonSystem sys;
    sys.residual = [&](const Vec& u) {
        const Vec p(u.begin(), u.begin() + N), n(u.begin() + N, u.end());
        const Vec p1 = matvec(D1, p), p2 = matvec(D2, p), n1 = matvec(D1, n), n2 = matvec(D2, n);
        Vec r(2 * N);
        for (int k = 0; k < N; ++k) {
            r[k] = nu2 * p2[k] + n[k];
            r[N + k] = n2[k] + n1[k] * p1[k] - n[k] * n[k] / nu2;
        }
        r[0] = p[0] - Phi;
        r[N - 1] = p[N - 1];
        r[N] = n[0] - 1.0;
        r[2 * N - 1] = n[N - 1] - 1.0;
        return r;
    };
    sys.jacobian = [&](const Vec& u, Matrix& J) {
        const Vec p(u.begin(), u.begin() + N), n(u.begin() + N, u.end());
        const Vec p1 = matvec(D1, p), n1 = matvec(D1, n);
        for (int k = 1; k < N - 1; ++k) {
            for (int l = 0; l < N; ++l) {
                J(k, l) = nu2 * D2(k, l);
                J(N + k, l) = n1[k] * D1(k, l);
                J(N + k, N + l) = D2(k, l) + p1[k] * D1(k, l);
            }
            J(k, N + k) += 1.0;
            J(N + k, N + k) -= 2.0 * n[k] / nu2;
        }
        J(0, 0) = J(N - 1, N - 1) = J(N, N) = J(2 * N - 1, 2 * N - 1) = 1.0;
    };
    sys.admissible = [&](const Vec& u) {
        for (int k = N; k < 2 * N; ++k)
            if (!(u[k] > 0.0)) return false;
        return true;
    };

    Vec u(2 * N);
    if (guess) {
        u = *guess;
    } else {
        for (int k = 0; k < N; ++k) {
            u[k] = Phi * (1.0 - y[k]);
            u[N + k] = 1.0;
        }
    }
    NewtonHistory hist;
    u = damped_newton(std::move(u), sys, opt, hist);

    OneDSolution out;
    out.y = y;
    out.phi.assign(u.begin(), u.begin() + N);
    out.n.assign(u.begin() + N, u.end());
    const Vec p1 = matvec(D1, out.phi), n1 = matvec(D1, out.n);
    const Vec w = clenshaw_curtis_weights(N, 0.0, 1.0);
    for (int k = 0; k < N; ++k) out.j += -w[k] * (out.n[k] * p1[k] + n1[k]);
    return out;
}

}  // namespace

OneDSolution solve_1d(double nu_hat, double Phi, int n_points, const NewtonOptions& opt) {
    if (!(nu_hat > 0.0) || !(Phi > 0.0)) throw std::domain_error("solve_1d: nu_hat and Phi must be positive");
    try {
        return solve_1d_from(nu_hat, Phi, n_points, opt, nullptr);
    } catch (const NonConvergence&) {
        if (nu_hat >= 1.0) throw;
    }
    // Small nu_hat: walk down from the resistor-like regime.
    ContinuationOptions c;
    c.enabled = true;
    c.nu_start = 1.0;
    c.ratio = 0.7;
    auto step = [&](double nh, const Vec* guess, NewtonHistory& h) {
        OneDSolution s = solve_1d_from(nh, Phi, n_points, opt, guess);
        h = {};
        Vec u(s.phi);
        u.insert(u.end(), s.n.begin(), s.n.end());
        return u;
    };
    const ContinuationResult r = continuation_solve(nu_hat, c, step);
    return solve_1d_from(nu_hat, Phi, n_points, opt, &r.state);
}

FieldState initial_guess_2d(const ConformalProblem& prob) {
    const Grid2D& g = prob.grid;
    const double height = g.cheb_interval.second - g.cheb_interval.first;
    const OneDSolution s = solve_1d(prob.nu / height, prob.Phi, 64);
    const ChebInterp fp(s.phi, 0.0, 1.0), fn(s.n, 0.0, 1.0);
    FieldState st{Vec(g.size()), Vec(g.size())};
    for (int j = 0; j < g.n_cheb; ++j) {
        const double t = (g.xc[j] - g.cheb_interval.first) / height;
        double p = fp(t), n = fn(t);
        if (j == 0) p = prob.Phi, n = 1.0;
        if (j == g.n_cheb - 1) p = 0.0, n = 1.0;
        for (int i = 0; i < g.n_periodic; ++i) {
            st.phi[g.index(i, j)] = p;
            st.n[g.index(i, j)] = n;
        }
    }
    return st;
}

FieldState solve_pnp(const ConformalProblem& prob, const NewtonOptions& opt, NewtonHistory& hist,
                     const FieldState* guess) {
    const int N = prob.grid.size();
    NewtonSystem sys;
    sys.residual = [&](const Vec& u) { return residual_conformal(FieldState::unpack(u), prob); };
    sys.jacobian = [&](const Vec& u, Matrix& J) { jacobian_conformal(FieldState::unpack(u), prob, J); };
    sys.admissible = [&](const Vec& u) {
        for (int k = N; k < 2 * N; ++k)
            if (!(u[k] > 0.0)) return false;
        return true;
    };
    const FieldState start = guess ? *guess : initial_guess_2d(prob);
    return FieldState::unpack(damped_newton(start.pack(), sys, opt, hist));
}

ConformalSolution solve_conformal(const WedgeMapParams& map, const SolverParams& sp, int n_xi, int n_eta,
                                  const FieldState* guess) {
    ConformalSolution sol;
    sol.map = map;
    sol.problem = make_conformal_problem(map, sp.nu, sp.Phi, n_xi, n_eta);
    auto step = [&](double nu, const Vec* g, NewtonHistory& h) {
        ConformalProblem p = sol.problem;
        p.nu = nu;
        FieldState gs;
        const FieldState* gp = guess;
        if (g) {
            gs = FieldState::unpack(*g);
            gp = &gs;
        }
        return solve_pnp(p, sp.newton, h, gp).pack();
    };
    ContinuationOptions c = sp.continuation;
    if (guess) c.enabled = false;
    ContinuationResult r = continuation_solve(sp.nu, c, step);
    sol.state = FieldState::unpack(r.state);
    sol.history = std::move(r.history);
    sol.continuation_path = std::move(r.path);
    return sol;
}

Vec flux_eta(const FieldState& s, const Grid2D& g) {
    const Vec pe = g.dc(g.Dc1, s.phi), ne = g.dc(g.Dc1, s.n);
    Vec j(g.size());
    for (int k = 0; k < g.size(); ++k) j[k] = -(s.n[k] * pe[k] + ne[k]);
    return j;
}

Vec flux_xi(const FieldState& s, const Grid2D& g) {
    const Vec px = g.dp(g.Dp1, s.phi), nx = g.dp(g.Dp1, s.n);
    Vec j(g.size());
    for (int k = 0; k < g.size(); ++k) j[k] = -(s.n[k] * px[k] + nx[k]);
    return j;
}

}  // namespace ddl
