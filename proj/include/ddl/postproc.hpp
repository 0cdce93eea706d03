#pragma once

#include "ddl/hodograph.hpp"
#include "ddl/pnp_core.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddl {

// Q from the bottom-boundary flux (periodic trapezoid in xi).
double average_current_density(const ConformalSolution& sol);
double average_current_density_top(const ConformalSolution& sol);
// QL / mean L(v)
double average_current_density(const HodographSolution& sol);

// Phi / Q; throws std::domain_error for Q == 0.
double effective_resistance(double Q, double Phi);

// Constant-thickness layer with unit thickness: Phi / j1D(nu).
double block_reference(double nu, double Phi);

struct CumulativeCurrent {
    Vec x, C;                 // samples on [0, L/2]
    double raw_end = 0.0;     // C(L/2) before pinning
};

// Bottom-boundary cumulative current C(x) = (2/QL) int_0^x j dx'.
CumulativeCurrent cumulative_current(const ConformalSolution& sol, int n_samples = 201);
double cumulative_current_at(const ConformalSolution& sol, double x);
CumulativeCurrent cumulative_current(const HodographSolution& sol, int n_samples = 201);
double cumulative_current_at(const HodographSolution& sol, double x);

struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Trajectory {
    double fraction = 0.0;   // share of the total current to the left of the seed
    Vec xi, eta;             // computational coordinates
    Vec x, y;                // physical coordinates
};

struct TraceOptions {
    int seeds = 20;
    double rtol = 1e-8;
    double atol = 1e-10;
    double event_tol = 1e-10;
    int max_steps = 20000;
};

// Flux lines from seeds at cumulative fractions k/(seeds+1) of the bottom
// current, followed to the top boundary.
std::vector<Trajectory> trace_trajectories(const ConformalSolution& sol, const TraceOptions& opt = {});

// Cumulative bottom-current fraction at xi, measured from xi = -L/2.
double bottom_fraction(const ConformalSolution& sol, double xi);

// Physical curve psi = const of a hodograph solution, n_points values of v.
struct Polyline {
    Vec x, y;
};
Polyline hodograph_streamline(const HodographSolution& sol, double psi, int n_points = 200);

// sup over trajectory points of the distance to the matching psi = const curve
double trajectory_overlay_distance(const std::vector<Trajectory>& traj, const HodographSolution& hod);

// Physical (x, y, phi, n) at every grid node.
struct FieldDump {
    Vec x, y, phi, n;
};
FieldDump field_dump(const ConformalSolution& sol);
FieldDump field_dump(const HodographSolution& sol);

struct SolutionBundle {
    std::string formulation;   // "conformal" or "hodograph"
    std::optional<ConformalSolution> conformal;
    std::optional<HodographSolution> hodograph;
    double Q = 0.0, Q_top = 0.0, R = 0.0, R_block = 0.0;
    double L = 0.0, nu = 0.0, Phi = 0.0;
    double length_spread = 0.0;   // hodograph only
    CumulativeCurrent C;
    std::vector<Trajectory> trajectories;
    NewtonHistory history;
};

SolutionBundle make_bundle(ConformalSolution sol, bool with_trajectories = true, const TraceOptions& opt = {});
SolutionBundle make_bundle(HodographSolution sol);

}  // namespace ddl
