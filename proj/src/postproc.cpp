#include "ddl/postproc.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace ddl {

namespace {

using boost::math::tools::eps_tolerance;
using boost::math::tools::toms748_solve;

template <class F>
double root(F f, double lo, double hi) {
    const double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    boost::uintmax_t it = 200;
    auto r = toms748_solve(f, lo, hi, flo, fhi, eps_tolerance<double>(52), it);
    return 0.5 * (r.first + r.second);
}

Vec row(const Vec& field, const Grid2D& g, int j) {
    Vec r(g.n_periodic);
    for (int i = 0; i < g.n_periodic; ++i) r[i] = field[g.index(i, j)];
    return r;
}

TrigInterp bottom_flux(const ConformalSolution& sol) {
    const Grid2D& g = sol.problem.grid;
    return TrigInterp(row(flux_eta(sol.state, g), g, 0), g.periodic_interval.first, g.period());
}

// Wraps xi into [-L/2, L/2) and returns the number of periods removed.
double wrap(double xi, double L, long& shift) {
    shift = static_cast<long>(std::floor((xi + 0.5 * L) / L));
    return xi - shift * L;
}

cplx to_physical(double xi, double eta, const WedgeMapParams& m) {
    long p = 0;
    const double w = wrap(xi, m.L, p);
    return forward_map(cplx(w, std::clamp(eta, 0.0, m.eta_star)), m) + static_cast<double>(p) * m.L;
}

// Per-row trigonometric interpolants of the flux components, evaluated
// barycentrically across rows.
class FluxField {
public:
    explicit FluxField(const ConformalSolution& sol) : g_(sol.problem.grid) {
        const Vec jx = flux_xi(sol.state, g_), je = flux_eta(sol.state, g_);
        for (int j = 0; j < g_.n_cheb; ++j) {
            jx_.emplace_back(row(jx, g_, j), g_.periodic_interval.first, g_.period());
            je_.emplace_back(row(je, g_, j), g_.periodic_interval.first, g_.period());
        }
        cx_.resize(g_.n_cheb);
        ce_.resize(g_.n_cheb);
    }

    void operator()(double xi, double eta, double& vx, double& ve) const {
        for (int j = 0; j < g_.n_cheb; ++j) {
            cx_[j] = jx_[j](xi);
            ce_[j] = je_[j](xi);
        }
        const double lo = g_.cheb_interval.first, hi = g_.cheb_interval.second;
        const double e = std::clamp(eta, lo, hi);
        vx = barycentric_eval(cx_, lo, hi, e);
        ve = barycentric_eval(ce_, lo, hi, e);
    }

private:
    const Grid2D& g_;
    std::vector<TrigInterp> jx_, je_;
    mutable Vec cx_, ce_;
};

}  // namespace

double average_current_density(const ConformalSolution& sol) {
    const Grid2D& g = sol.problem.grid;
    const Vec b = row(flux_eta(sol.state, g), g, 0);
    double s = 0.0;
    for (double v : b) s += v;
    return s / g.n_periodic;
}

double average_current_density_top(const ConformalSolution& sol) {
    const Grid2D& g = sol.problem.grid;
    const Vec t = row(flux_eta(sol.state, g), g, g.n_cheb - 1);
    double s = 0.0;
    for (double v : t) s += v;
    return s / g.n_periodic;
}

double average_current_density(const HodographSolution& sol) { return hodograph_Q(sol); }

double effective_resistance(double Q, double Phi) {
    if (Q == 0.0) throw std::domain_error("effective_resistance: zero current");
    return Phi / Q;
}

double block_reference(double nu, double Phi) {
    const OneDSolution s = solve_1d(nu, Phi, 96);
    return effective_resistance(s.j, Phi);
}

double bottom_fraction(const ConformalSolution& sol, double xi) {
    const TrigInterp jb = bottom_flux(sol);
    return jb.integral(xi) / jb.integral(jb.lo() + jb.period());
}

double cumulative_current_at(const ConformalSolution& sol, double x) {
    const WedgeMapParams& m = sol.map;
    const double half = 0.5 * m.L;
    if (x < 0.0 || x > half * (1.0 + 1e-12)) throw std::domain_error("cumulative_current_at: x outside [0, L/2]");
    const TrigInterp jb = bottom_flux(sol);
    const double QL = jb.integral(half);
    const double xi = root([&](double s) { return forward_map(cplx(s, 0.0), m).real() - x; }, 0.0, half);
    return 2.0 * (jb.integral(xi) - jb.integral(0.0)) / QL;
}

CumulativeCurrent cumulative_current(const ConformalSolution& sol, int n_samples) {
    const WedgeMapParams& m = sol.map;
    const double half = 0.5 * m.L;
    const TrigInterp jb = bottom_flux(sol);
    const double QL = jb.integral(half);
    const double i0 = jb.integral(0.0);
    CumulativeCurrent c;
    c.x.resize(n_samples);
    c.C.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double x = half * k / (n_samples - 1);
        const double xi = (k == 0) ? 0.0
                        : (k == n_samples - 1)
                            ? half
                            : root([&](double s) { return forward_map(cplx(s, 0.0), m).real() - x; }, 0.0, half);
        c.x[k] = x;
        c.C[k] = 2.0 * (jb.integral(xi) - i0) / QL;
    }
    c.raw_end = c.C.back();
    c.C.front() = 0.0;
    c.C.back() = 1.0;
    return c;
}

namespace {

// x(psi) along the bottom electrode, centred so that psi = 0 sits at x = 0.
struct BottomMap {
    TrigInterp q;
    double Lb = 0.0, QL = 0.0;

    explicit BottomMap(const HodographSolution& sol) {
        const Grid2D& g = sol.problem.grid;
        const Vec yv = g.dc(g.Dc1, sol.state.y);
        Vec line(g.n_periodic);
        const int j = g.n_cheb - 1;
        for (int i = 0; i < g.n_periodic; ++i) {
            const int k = g.index(i, j);
            line[i] = -yv[k] / sol.state.n[k];
        }
        q = TrigInterp(line, g.periodic_interval.first, g.period());
        QL = sol.problem.QL;
        Lb = q.integral(q.lo() + q.period());
    }
    double x(double psi) const { return q.integral(psi) - 0.5 * Lb; }
};

}  // namespace

double cumulative_current_at(const HodographSolution& sol, double x) {
    const BottomMap b(sol);
    if (x < 0.0 || x > 0.5 * b.Lb * (1.0 + 1e-12)) throw std::domain_error("cumulative_current_at: x outside [0, L/2]");
    const double psi = root([&](double p) { return b.x(p) - x; }, 0.0, 0.5 * b.QL);
    return 2.0 * psi / b.QL;
}

CumulativeCurrent cumulative_current(const HodographSolution& sol, int n_samples) {
    const BottomMap b(sol);
    CumulativeCurrent c;
    c.x.resize(n_samples);
    c.C.resize(n_samples);
    const double half = 0.5 * b.Lb;
    for (int k = 0; k < n_samples; ++k) {
        const double x = half * k / (n_samples - 1);
        c.x[k] = x;
        c.C[k] = (k == 0) ? 0.0 : 2.0 * root([&](double p) { return b.x(p) - x; }, 0.0, 0.5 * b.QL) / b.QL;
    }
    c.raw_end = 2.0 * b.x(0.5 * b.QL) / b.Lb;
    c.C.back() = 1.0;
    return c;
}

std::vector<Trajectory> trace_trajectories(const ConformalSolution& sol, const TraceOptions& opt) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;
    const WedgeMapParams& m = sol.map;
    const FluxField field(sol);
    const TrigInterp jb = bottom_flux(sol);
    const double total = jb.integral(jb.lo() + jb.period());
    const double eta_top = sol.problem.grid.cheb_interval.second;

    auto rhs = [&](const State& s, State& ds, double) { field(s[0], s[1], ds[0], ds[1]); };

    std::vector<Trajectory> out;
    out.reserve(opt.seeds);
    for (int k = 1; k <= opt.seeds; ++k) {
        Trajectory tr;
        tr.fraction = static_cast<double>(k) / (opt.seeds + 1);
        const double xi0 =
            root([&](double s) { return jb.integral(s) / total - tr.fraction; }, jb.lo(), jb.lo() + jb.period());
        auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
        State s{xi0, 0.0};
        stepper.initialize(s, 0.0, 1e-3);
        auto push = [&](const State& p) {
            tr.xi.push_back(p[0]);
            tr.eta.push_back(p[1]);
            const cplx z = to_physical(p[0], p[1], m);
            tr.x.push_back(z.real());
            tr.y.push_back(z.imag());
        };
        push(s);
        bool done = false;
        for (int step = 0; step < opt.max_steps && !done; ++step) {
            std::pair<double, double> span;
            try {
                span = stepper.do_step(rhs);
            } catch (const std::exception& e) {
                throw StepFailure(std::string("trace_trajectories: ") + e.what());
            }
            State cur = stepper.current_state();
            if (cur[1] >= eta_top) {
                double lo = span.first, hi = span.second;
                State mid;
                while (hi - lo > opt.event_tol * std::max(1.0, std::abs(hi))) {
                    const double t = 0.5 * (lo + hi);
                    stepper.calc_state(t, mid);
                    (mid[1] < eta_top ? lo : hi) = t;
                }
                stepper.calc_state(hi, cur);
                cur[1] = eta_top;
                done = true;
            }
            push(cur);
        }
        if (!done) throw StepFailure("trace_trajectories: top boundary not reached within the step budget");
        out.push_back(std::move(tr));
    }
    return out;
}

Polyline hodograph_streamline(const HodographSolution& sol, double psi, int n_points) {
    const HodographProblem& p = sol.problem;
    const Grid2D& g = p.grid;
    const Vec x = recover_x(sol.state, p);
    const double L = length_diagnostic(sol.state, p).mean;
    Vec xs(g.n_cheb), ys(g.n_cheb);
    const Vec yv = g.dc(g.Dc1, sol.state.y);
    for (int j = 0; j < g.n_cheb; ++j) {
        Vec q(g.n_periodic);
        for (int i = 0; i < g.n_periodic; ++i) {
            const int k = g.index(i, j);
            q[i] = -yv[k] / sol.state.n[k];
        }
        xs[j] = TrigInterp(q, g.periodic_interval.first, g.period()).integral(psi) - 0.5 * L;
        ys[j] = TrigInterp(row(sol.state.y, g, j), g.periodic_interval.first, g.period())(psi);
    }
    Polyline out;
    out.x.resize(n_points);
    out.y.resize(n_points);
    for (int k = 0; k < n_points; ++k) {
        const double v = p.Phi * k / (n_points - 1);
        out.x[k] = barycentric_eval(xs, 0.0, p.Phi, v);
        out.y[k] = barycentric_eval(ys, 0.0, p.Phi, v);
    }
    return out;
}

double trajectory_overlay_distance(const std::vector<Trajectory>& traj, const HodographSolution& hod) {
    const double QL = hod.problem.QL;
    double worst = 0.0;
    for (const Trajectory& t : traj) {
        const Polyline c = hodograph_streamline(hod, -0.5 * QL + t.fraction * QL, 400);
        for (size_t a = 0; a < t.x.size(); ++a) {
            double best = std::numeric_limits<double>::infinity();
            for (size_t s = 0; s + 1 < c.x.size(); ++s) {
                const double ex = c.x[s + 1] - c.x[s], ey = c.y[s + 1] - c.y[s];
                const double l2 = ex * ex + ey * ey;
                double u = l2 > 0 ? ((t.x[a] - c.x[s]) * ex + (t.y[a] - c.y[s]) * ey) / l2 : 0.0;
                u = std::clamp(u, 0.0, 1.0);
                best = std::min(best, std::hypot(t.x[a] - c.x[s] - u * ex, t.y[a] - c.y[s] - u * ey));
            }
            worst = std::max(worst, best);
        }
    }
    return worst;
}

FieldDump field_dump(const ConformalSolution& sol) {
    const Grid2D& g = sol.problem.grid;
    FieldDump d;
    d.phi = sol.state.phi;
    d.n = sol.state.n;
    d.x.resize(g.size());
    d.y.resize(g.size());
    for (int i = 0; i < g.n_periodic; ++i)
        for (int j = 0; j < g.n_cheb; ++j) {
            const cplx z = forward_map(cplx(g.xp[i], g.xc[j]), sol.map);
            d.x[g.index(i, j)] = z.real();
            d.y[g.index(i, j)] = z.imag();
        }
    return d;
}

FieldDump field_dump(const HodographSolution& sol) {
    const Grid2D& g = sol.problem.grid;
    const double L = length_diagnostic(sol.state, sol.problem).mean;
    FieldDump d;
    d.x = recover_x(sol.state, sol.problem);
    for (double& x : d.x) x -= 0.5 * L;
    d.y = sol.state.y;
    d.n = sol.state.n;
    d.phi.resize(g.size());
    for (int i = 0; i < g.n_periodic; ++i)
        for (int j = 0; j < g.n_cheb; ++j) {
            const int k = g.index(i, j);
            d.phi[k] = g.xc[j] - std::log(sol.state.n[k]);
        }
    return d;
}

SolutionBundle make_bundle(ConformalSolution sol, bool with_trajectories, const TraceOptions& opt) {
    SolutionBundle b;
    b.formulation = "conformal";
    b.Phi = sol.problem.Phi;
    b.nu = sol.problem.nu;
    b.L = sol.map.L;
    b.Q = average_current_density(sol);
    b.Q_top = average_current_density_top(sol);
    b.R = effective_resistance(b.Q, b.Phi);
    b.R_block = block_reference(b.nu, b.Phi);
    b.C = cumulative_current(sol);
    if (with_trajectories) b.trajectories = trace_trajectories(sol, opt);
    b.history = sol.history;
    b.conformal = std::move(sol);
    return b;
}

SolutionBundle make_bundle(HodographSolution sol) {
    SolutionBundle b;
    b.formulation = "hodograph";
    b.Phi = sol.problem.Phi;
    b.nu = sol.problem.nu;
    const LengthDiagnostic d = length_diagnostic(sol.state, sol.problem);
    b.L = d.mean;
    b.length_spread = d.spread;
    b.Q = sol.problem.QL / d.mean;
    b.Q_top = b.Q;
    b.R = effective_resistance(b.Q, b.Phi);
    b.R_block = block_reference(b.nu, b.Phi);
    b.C = cumulative_current(sol);
    b.history = sol.history;
    b.hodograph = std::move(sol);
    return b;
}

}  // namespace ddl
