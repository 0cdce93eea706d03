#include "ddl/newton.hpp"

namespace ddl {

Vec damped_newton(Vec u, const NewtonSystem& sys, const NewtonOptions& opt, NewtonHistory& hist) {
    hist = {};
    const int n = static_cast<int>(u.size());
    Matrix J(n, n);
    Vec r = sys.residual(u);
    auto ok = [&](const Vec& v) { return !sys.admissible || sys.admissible(v); };

    for (int it = 0; it < opt.max_iter; ++it) {
        const double r0 = norm2(r);
        J.fill(0.0);
        sys.jacobian(u, J);
        Vec du = LU(std::move(J)).solve(r);
        J.resize(n, n);
        for (double& x : du) x = -x;
        const double unorm = norm_inf(du);

        Vec trial(n), rt;
        double gamma = opt.damping.gamma0;
        bool accepted = false, any_admissible = false;
        for (; gamma >= opt.damping.gamma_min; gamma *= opt.damping.shrink) {
            for (int i = 0; i < n; ++i) trial[i] = u[i] + gamma * du[i];
            if (!ok(trial)) continue;
            any_admissible = true;
            rt = sys.residual(trial);
            if (unorm < opt.tol || norm2(rt) < r0) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No decrease: take the smallest admissible step and carry on.
            if (!any_admissible)
                throw NegativeDensity("damped_newton: every damped step leaves the admissible set", hist, u);
            gamma = opt.damping.gamma_min;
            for (int i = 0; i < n; ++i) trial[i] = u[i] + gamma * du[i];
            if (!ok(trial))
                throw NegativeDensity("damped_newton: minimum step leaves the admissible set", hist, u);
            rt = sys.residual(trial);
        }
        hist.records.push_back({unorm, gamma, r0});
        u.swap(trial);
        r.swap(rt);
        if (unorm < opt.tol) {
            hist.converged = true;
            hist.final_residual_inf = norm_inf(r);
            return u;
        }
    }
    hist.final_residual_inf = norm_inf(r);
    throw NonConvergence("damped_newton: iteration limit reached", hist, u);
}

}  // namespace ddl

#include <cmath>

namespace ddl {

ContinuationResult continuation_solve(double nu, const ContinuationOptions& opt, const ContinuationStep& solve_at) {
    ContinuationResult res;
    if (!opt.enabled) {
        res.state = solve_at(nu, nullptr, res.history);
        res.path.push_back(nu);
        res.total_iterations = res.history.iterations();
        return res;
    }
    double cur = opt.nu_start > 0.0 ? opt.nu_start : 4.0 * nu;
    if (cur < nu) cur = nu;
    res.state = solve_at(cur, nullptr, res.history);
    res.path.push_back(cur);
    res.total_iterations += res.history.iterations();
    double log_step = std::log(opt.ratio);
    while (cur > nu) {
        int tries = 0;
        for (;;) {
            const double next = std::max(nu, cur * std::exp(log_step));
            try {
                NewtonHistory h;
                Vec s = solve_at(next, &res.state, h);
                res.total_iterations += h.iterations();
                res.state = std::move(s);
                res.history = std::move(h);
                res.path.push_back(next);
                cur = next;
                break;
            } catch (const NonConvergence& e) {
                res.total_iterations += e.history.iterations();
                if (++tries > opt.max_retries) throw;
                log_step *= 0.5;
            }
        }
    }
    return res;
}

}  // namespace ddl
