#include "ddl/hodograph.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <stdexcept>

namespace ddl {

HodographProblem make_hodograph_problem(double QL, std::function<double(double)> F, double nu, double Phi,
                                        int n_v, int n_psi) {
    if (!(QL > 0.0)) throw std::domain_error("hodograph: QL must be positive");
    HodographProblem p;
    p.Phi = Phi;
    p.QL = QL;
    p.nu = nu;
    p.F = std::move(F);
    p.grid = make_grid(n_psi, n_v, {-0.5 * QL, 0.5 * QL}, {0.0, Phi});
    p.F_nodes.resize(n_psi);
    for (int i = 0; i < n_psi; ++i) {
        p.F_nodes[i] = p.F(p.grid.xp[i]);
        if (!(p.F_nodes[i] > 0.0)) throw std::domain_error("hodograph: F must be positive");
    }
    return p;
}

Vec HodographState::pack() const {
    Vec u(n);
    u.insert(u.end(), y.begin(), y.end());
    return u;
}

HodographState HodographState::unpack(const Vec& u) {
    const size_t N = u.size() / 2;
    return {Vec(u.begin(), u.begin() + N), Vec(u.begin() + N, u.end())};
}

namespace {

void check_dims(const HodographState& s, const HodographProblem& prob) {
    const size_t N = prob.grid.size();
    if (s.n.size() != N || s.y.size() != N) throw std::invalid_argument("hodograph system: dimension mismatch");
    for (double n : s.n)
        if (!(n > 0.0)) throw std::domain_error("hodograph system: non-positive density");
}

}  // namespace

Vec residual_hodograph(const HodographState& s, const HodographProblem& prob) {
    check_dims(s, prob);
    const Grid2D& g = prob.grid;   // dp: psi, dc: v
    const int N = g.size();
    const double nu2 = prob.nu * prob.nu;
    const Vec nv = g.dc(g.Dc1, s.n), nvv = g.dc(g.Dc2, s.n), npp = g.dp(g.Dp2, s.n);
    const Vec yv = g.dc(g.Dc1, s.y), yp = g.dp(g.Dp1, s.y);
    Vec a(N), b(N);
    for (int k = 0; k < N; ++k) {
        a[k] = yv[k] / s.n[k];
        b[k] = s.n[k] * yp[k];
    }
    const Vec av = g.dc(g.Dc1, a), bp = g.dp(g.Dp1, b);
    Vec r(2 * N);
    for (int k = 0; k < N; ++k) {
        const double n = s.n[k];
        r[k] = nvv[k] + nv[k] - 2.0 * nv[k] * nv[k] / n + n * n * npp[k]
               - n * n * n / nu2 * (n * yp[k] * yp[k] + yv[k] * yv[k] / n);
        r[N + k] = av[k] + bp[k];
    }
    for (int i = 0; i < g.n_periodic; ++i) {
        const int t = g.index(i, 0), b0 = g.index(i, g.n_cheb - 1);
        r[t] = s.n[t] - 1.0;
        r[b0] = s.n[b0] - 1.0;
        r[N + t] = s.y[t] - prob.F_nodes[i];
        r[N + b0] = s.y[b0];
    }
    return r;
}

void jacobian_hodograph(const HodographState& s, const HodographProblem& prob, Matrix& J) {
    check_dims(s, prob);
    const Grid2D& g = prob.grid;
    const int N = g.size(), np = g.n_periodic, nc = g.n_cheb;
    if (J.rows() != 2 * N || J.cols() != 2 * N) J.resize(2 * N, 2 * N);
    else J.fill(0.0);
    const double nu2 = prob.nu * prob.nu;
    const Vec nv = g.dc(g.Dc1, s.n), npp = g.dp(g.Dp2, s.n);
    const Vec yv = g.dc(g.Dc1, s.y), yp = g.dp(g.Dp1, s.y);
    const Matrix& Dv1 = g.Dc1;
    const Matrix& Dv2 = g.Dc2;
    const Matrix& Dp1 = g.Dp1;
    const Matrix& Dp2 = g.Dp2;

    // D diag(w) D along each line, from the divergence form of r2
    Matrix vv(nc, nc), pp(np, np);
    for (int i = 0; i < np; ++i)
        for (int j = 0; j < nc; ++j) {
            const int k = g.index(i, j);
            if (j == 0 || j == nc - 1) {
                J(k, k) = 1.0;
                J(N + k, N + k) = 1.0;
            }
        }

    for (int i = 0; i < np; ++i) {
        // v-direction couplings on the psi line i
        for (int j = 1; j < nc - 1; ++j)
            for (int l = 0; l < nc; ++l) {
                double s2 = 0.0;
                for (int m = 0; m < nc; ++m) s2 += Dv1(j, m) / s.n[g.index(i, m)] * Dv1(m, l);
                vv(j, l) = s2;
            }
        for (int j = 1; j < nc - 1; ++j) {
            const int k = g.index(i, j);
            const double n = s.n[k];
            for (int l = 0; l < nc; ++l) {
                const int c = g.index(i, l);
                J(k, c) += Dv2(j, l) + Dv1(j, l) - 4.0 * nv[k] / n * Dv1(j, l);
                J(k, N + c) += -2.0 * n * n * yv[k] / nu2 * Dv1(j, l);
                const double nl = s.n[c];
                J(N + k, c) += Dv1(j, l) * (-yv[c] / (nl * nl));
                J(N + k, N + c) += vv(j, l);
            }
        }
    }
    for (int j = 1; j < nc - 1; ++j) {
        // psi-direction couplings on the v line j
        for (int i = 0; i < np; ++i)
            for (int l = 0; l < np; ++l) {
                double s2 = 0.0;
                for (int m = 0; m < np; ++m) s2 += Dp1(i, m) * s.n[g.index(m, j)] * Dp1(m, l);
                pp(i, l) = s2;
            }
        for (int i = 0; i < np; ++i) {
            const int k = g.index(i, j);
            const double n = s.n[k];
            for (int l = 0; l < np; ++l) {
                const int c = g.index(l, j);
                J(k, c) += n * n * Dp2(i, l);
                J(k, N + c) += -2.0 * n * n * n * n * yp[k] / nu2 * Dp1(i, l);
                J(N + k, c) += Dp1(i, l) * yp[c];
                J(N + k, N + c) += pp(i, l);
            }
            J(k, k) += 2.0 * nv[k] * nv[k] / (n * n) + 2.0 * n * npp[k]
                       - 4.0 * n * n * n * yp[k] * yp[k] / nu2 - 2.0 * n * yv[k] * yv[k] / nu2;
        }
    }
}

HodographState initial_guess_hodograph(const HodographProblem& prob) {
    const Grid2D& g = prob.grid;
    HodographState s{Vec(g.size()), Vec(g.size())};
    constexpr int n1d = 96;
    for (int i = 0; i < g.n_periodic; ++i) {
        const double h = prob.F_nodes[i];
        const OneDSolution o = solve_1d(prob.nu / h, prob.Phi, n1d);
        Vec v(n1d);
        for (int k = 0; k < n1d; ++k) v[k] = o.phi[k] + std::log(o.n[k]);
        const ChebInterp vY(v, 0.0, 1.0), nY(o.n, 0.0, 1.0);
        for (int j = 0; j < g.n_cheb; ++j) {
            const int k = g.index(i, j);
            if (j == 0) {
                s.y[k] = h;
                s.n[k] = 1.0;
                continue;
            }
            if (j == g.n_cheb - 1) {
                s.y[k] = 0.0;
                s.n[k] = 1.0;
                continue;
            }
            // v decreases monotonically from Phi at Y = 0 to 0 at Y = 1
            const double target = g.xc[j];
            auto f = [&](double Y) { return vY(Y) - target; };
            boost::uintmax_t it = 100;
            auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, f(0.0), f(1.0),
                                                       boost::math::tools::eps_tolerance<double>(50), it);
            const double Y = 0.5 * (r.first + r.second);
            // y is measured up from the bottom electrode where v = Phi
            s.y[k] = h * Y;
            s.n[k] = nY(Y);
        }
    }
    return s;
}

HodographSolution solve_hodograph(const HodographProblem& prob, const SolverParams& sp,
                                  const HodographState* guess) {
    HodographSolution sol;
    sol.problem = prob;
    sol.problem.nu = sp.nu;
    const int N = prob.grid.size();
    auto step = [&](double nu, const Vec* g, NewtonHistory& h) {
        HodographProblem p = sol.problem;
        p.nu = nu;
        NewtonSystem sys;
        sys.residual = [&](const Vec& u) { return residual_hodograph(HodographState::unpack(u), p); };
        sys.jacobian = [&](const Vec& u, Matrix& J) { jacobian_hodograph(HodographState::unpack(u), p, J); };
        sys.admissible = [&](const Vec& u) {
            for (int k = 0; k < N; ++k)
                if (!(u[k] > 0.0)) return false;
            return true;
        };
        Vec start;
        if (g) start = *g;
        else if (guess) start = guess->pack();
        else start = initial_guess_hodograph(p).pack();
        return damped_newton(std::move(start), sys, sp.newton, h);
    };
    ContinuationOptions c = sp.continuation;
    if (guess) c.enabled = false;
    ContinuationResult r = continuation_solve(sp.nu, c, step);
    sol.state = HodographState::unpack(r.state);
    sol.history = std::move(r.history);
    sol.continuation_path = std::move(r.path);
    return sol;
}

namespace {

// y_v / n on every node, arranged per v line.
Vec slope_ratio(const HodographState& s, const Grid2D& g) {
    const Vec yv = g.dc(g.Dc1, s.y);
    Vec q(g.size());
    for (int k = 0; k < g.size(); ++k) q[k] = yv[k] / s.n[k];
    return q;
}

}  // namespace

Vec recover_x(const HodographState& s, const HodographProblem& prob) {
    const Grid2D& g = prob.grid;
    const Vec q = slope_ratio(s, g);
    Vec x(g.size());
    for (int j = 0; j < g.n_cheb; ++j) {
        Vec line(g.n_periodic);
        for (int i = 0; i < g.n_periodic; ++i) line[i] = q[g.index(i, j)];
        const TrigInterp t(line, g.periodic_interval.first, g.period());
        for (int i = 0; i < g.n_periodic; ++i) x[g.index(i, j)] = -t.integral(g.xp[i]);
    }
    return x;
}

LengthDiagnostic length_diagnostic(const HodographState& s, const HodographProblem& prob) {
    const Grid2D& g = prob.grid;
    const Vec q = slope_ratio(s, g);
    LengthDiagnostic d;
    d.L.assign(g.n_cheb, 0.0);
    const double w = g.period() / g.n_periodic;
    for (int j = 0; j < g.n_cheb; ++j)
        for (int i = 0; i < g.n_periodic; ++i) d.L[j] -= q[g.index(i, j)] * w;
    for (double L : d.L) d.mean += L;
    d.mean /= g.n_cheb;
    for (double L : d.L) d.spread = std::max(d.spread, std::abs(L - d.mean) / d.mean);
    return d;
}

double hodograph_Q(const HodographSolution& sol) {
    return sol.problem.QL / length_diagnostic(sol.state, sol.problem).mean;
}

HodographInputs extract_hodograph_inputs(const ConformalSolution& sol, int n_samples) {
    const Grid2D& g = sol.problem.grid;
    const Vec j = flux_eta(sol.state, g);
    Vec jb(g.n_periodic), jt(g.n_periodic);
    for (int i = 0; i < g.n_periodic; ++i) {
        jb[i] = j[g.index(i, 0)];
        jt[i] = j[g.index(i, g.n_cheb - 1)];
        if (!(jt[i] > 0.0)) throw std::runtime_error("extract_hodograph_inputs: flux reversal on the top boundary");
    }
    const double L = sol.map.L;
    HodographInputs in;
    double Q = 0.0;
    for (double v : jb) Q += v;
    in.Q = Q / g.n_periodic;
    in.QL = in.Q * L;
    const TrigInterp top(jt, -0.5 * L, L);
    const double total = top.integral(0.5 * L);
    in.psi = periodic_points(n_samples, -0.5 * in.QL, in.QL);
    in.F.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double target = (in.psi[k] + 0.5 * in.QL) / in.QL * total;
        double xi = -0.5 * L;
        if (k > 0) {
            auto f = [&](double x) { return top.integral(x) - target; };
            boost::uintmax_t it = 200;
            auto r = boost::math::tools::toms748_solve(f, -0.5 * L, 0.5 * L, f(-0.5 * L), f(0.5 * L),
                                                       boost::math::tools::eps_tolerance<double>(52), it);
            xi = 0.5 * (r.first + r.second);
        }
        in.F[k] = top_height(xi, sol.map);
    }
    in.interp = TrigInterp(in.F, -0.5 * in.QL, in.QL);
    return in;
}

}  // namespace ddl
