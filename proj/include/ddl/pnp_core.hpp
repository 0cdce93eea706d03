#pragma once

#include "ddl/dense.hpp"
#include "ddl/geometry.hpp"
#include "ddl/newton.hpp"
#include "ddl/spectral.hpp"

namespace ddl {

struct SolverParams {
    double nu = 0.2;
    double Phi = 1.0;
    NewtonOptions newton;
    ContinuationOptions continuation;
};

// (phi, n) on a Grid2D, flattened k = i*n_cheb + j.
struct FieldState {
    Vec phi, n;

    Vec pack() const;
    static FieldState unpack(const Vec& u);
};

// Conformally mapped problem: periodic xi, Chebyshev eta on [0, eta*],
// metric G = |f'|^2 sampled on the grid.
struct ConformalProblem {
    Grid2D grid;
    Vec G;
    double nu = 0.2;
    double Phi = 1.0;
};

ConformalProblem make_conformal_problem(const WedgeMapParams& map, double nu, double Phi, int n_xi, int n_eta);
// Uniform metric on a rectangle of height `height`; a flat layer when G = 1.
ConformalProblem make_flat_problem(double period, double height, double G, double nu, double Phi, int n_xi,
                                   int n_eta);

Vec residual_conformal(const FieldState& s, const ConformalProblem& prob);
void jacobian_conformal(const FieldState& s, const ConformalProblem& prob, Matrix& J);

struct OneDSolution {
    Vec y, phi, n;
    double j = 0.0;
};

// Layer of unit thickness on [0,1]: phi(0)=Phi, phi(1)=0, n=1 at both ends.
OneDSolution solve_1d(double nu_hat, double Phi, int n_points = 64, const NewtonOptions& opt = {});

FieldState initial_guess_2d(const ConformalProblem& prob);

struct ConformalSolution {
    WedgeMapParams map;
    ConformalProblem problem;
    FieldState state;
    NewtonHistory history;
    std::vector<double> continuation_path;
};

FieldState solve_pnp(const ConformalProblem& prob, const NewtonOptions& opt, NewtonHistory& hist,
                     const FieldState* guess = nullptr);

ConformalSolution solve_conformal(const WedgeMapParams& map, const SolverParams& sp, int n_xi, int n_eta,
                                  const FieldState* guess = nullptr);

// j^eta = -(n phi_eta + n_eta) at every node.
Vec flux_eta(const FieldState& s, const Grid2D& grid);
Vec flux_xi(const FieldState& s, const Grid2D& grid);

}  // namespace ddl
