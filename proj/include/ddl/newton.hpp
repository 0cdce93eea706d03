#pragma once

#include "ddl/dense.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddl {

struct DampingParams {
    double gamma0 = 1.0;
    double shrink = 0.5;
    double gamma_min = 1.0 / 1024.0;
};

struct NewtonOptions {
    double tol = 1e-5;   // sup-norm of the Newton update
    int max_iter = 60;
    DampingParams damping;
};

struct NewtonRecord {
    double update_norm = 0.0;
    double gamma = 0.0;
    double residual_norm = 0.0;  // 2-norm before the step
};

struct NewtonHistory {
    std::vector<NewtonRecord> records;
    double final_residual_inf = 0.0;
    bool converged = false;
    int iterations() const { return static_cast<int>(records.size()); }
};

struct NewtonSystem {
    std::function<Vec(const Vec&)> residual;
    std::function<void(const Vec&, Matrix&)> jacobian;
    // Rejects trial states (e.g. non-positive density); empty means always ok.
    std::function<bool(const Vec&)> admissible;
};

struct NonConvergence : std::runtime_error {
    NonConvergence(const std::string& what, NewtonHistory h, Vec last)
        : std::runtime_error(what), history(std::move(h)), last_iterate(std::move(last)) {}
    NewtonHistory history;
    Vec last_iterate;
};

struct NegativeDensity : NonConvergence {
    using NonConvergence::NonConvergence;
};

// u <- u + gamma*du with du = -J^{-1} F(u); gamma backtracks from gamma0 until
// the residual 2-norm decreases. Stops once |du|_inf < tol.
Vec damped_newton(Vec u, const NewtonSystem& sys, const NewtonOptions& opt, NewtonHistory& hist);

}  // namespace ddl

namespace ddl {

// Parameter continuation on nu: solve at nu_start, then step down by `ratio`
// reusing each converged state; a failed step is retried with half the
// logarithmic step.
struct ContinuationOptions {
    bool enabled = false;
    double nu_start = 0.0;   // 0 picks 4*nu
    double ratio = 0.8;
    int max_retries = 6;
};

// solve_at(nu, guess-or-null, history) -> converged state (throws on failure)
using ContinuationStep = std::function<Vec(double, const Vec*, NewtonHistory&)>;

struct ContinuationResult {
    Vec state;
    NewtonHistory history;     // of the final solve
    std::vector<double> path;  // nu values solved, in order
    int total_iterations = 0;
};

ContinuationResult continuation_solve(double nu, const ContinuationOptions& opt, const ContinuationStep& solve_at);

}  // namespace ddl
