#pragma once

#include "ddl/pnp_core.hpp"

#include <functional>

namespace ddl {

// Semi-inverse problem on v in [0, Phi] (Chebyshev) by psi in
// [-QL/2, QL/2) (periodic). v = 0 is the top surface y = F(psi), v = Phi the
// bottom electrode y = 0.
struct HodographProblem {
    double Phi = 1.0;
    double QL = 0.0;
    double nu = 0.2;
    std::function<double(double)> F;
    Grid2D grid;   // periodic = psi, Chebyshev = v
    Vec F_nodes;   // F at the psi nodes
};

HodographProblem make_hodograph_problem(double QL, std::function<double(double)> F, double nu, double Phi,
                                        int n_v, int n_psi);

struct HodographState {
    Vec n, y;
    Vec pack() const;
    static HodographState unpack(const Vec& u);
};

Vec residual_hodograph(const HodographState& s, const HodographProblem& prob);
void jacobian_hodograph(const HodographState& s, const HodographProblem& prob, Matrix& J);

// Column-by-column 1D solutions at the local thickness F(psi), re-expressed
// as functions of v.
HodographState initial_guess_hodograph(const HodographProblem& prob);

struct HodographSolution {
    HodographProblem problem;
    HodographState state;
    NewtonHistory history;
    std::vector<double> continuation_path;
};

HodographSolution solve_hodograph(const HodographProblem& prob, const SolverParams& sp,
                                  const HodographState* guess = nullptr);

// x(v, psi) = -int_{-QL/2}^{psi} y_v / n dpsi'
Vec recover_x(const HodographState& s, const HodographProblem& prob);

struct LengthDiagnostic {
    Vec L;   // one value per v node
    double mean = 0.0;
    double spread = 0.0;   // max |L - mean| / mean
};
LengthDiagnostic length_diagnostic(const HodographState& s, const HodographProblem& prob);

double hodograph_Q(const HodographSolution& sol);

struct HodographInputs {
    double QL = 0.0;
    double Q = 0.0;
    Vec psi, F;   // samples on periodic_points(n, -QL/2, QL)
    TrigInterp interp;
    double operator()(double psi_v) const { return interp(psi_v); }
};

// Streamfunction along the top boundary of a conformal solve paired with the
// boundary height, resampled at equal psi increments.
HodographInputs extract_hodograph_inputs(const ConformalSolution& sol, int n_samples = 128);

}  // namespace ddl
