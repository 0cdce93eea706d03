#pragma once

#include "ddl/asymptotics.hpp"
#include "ddl/config.hpp"
#include "ddl/postproc.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace ddl {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

WedgeMapParams wedge_from_config(const DomainConfig& d);
SolverParams solver_params(const PhysicsConfig& phys, const SolverConfig& s);

ConformalSolution run_conformal(const DomainConfig& d, const PhysicsConfig& phys, const SolverConfig& s, int n_xi,
                                int n_eta);

// Quasi-1D calibrated smooth profile with target period L.
SmoothProfile smooth_profile_for(double h_min, double a, double L, const PhysicsConfig& phys,
                                 double junction_height = 0.5);

// Surface F(psi) and QL for any hodograph-capable domain.
struct HodographSurface {
    double QL = 0.0;
    std::function<double(double)> F;
};
HodographSurface hodograph_surface(const DomainConfig& d, const PhysicsConfig& phys, const SolverConfig& s);

HodographSolution run_hodograph(const HodographSurface& surf, const PhysicsConfig& phys, const SolverConfig& s,
                                int n_v, int n_psi);

struct ConvergeRow {
    int N = 0;
    double Q = 0.0;
    double dQ = 0.0;   // |Q(N+4) - Q(N)|, NaN when N+4 was not run
    int iterations = 0;
};
// dQ from consecutive entries whose N differ by 4
void fill_deltas(std::vector<ConvergeRow>& rows);

std::vector<ConvergeRow> converge_conformal(const WedgeMapParams& map, const SolverParams& sp, const std::string& vary,
                                            const std::vector<int>& values, int fixed);
std::vector<ConvergeRow> converge_hodograph(const HodographSurface& surf, const SolverParams& sp,
                                            const std::string& vary, const std::vector<int>& values, int fixed);

struct SweepRow {
    double h_min = 0.0;
    double Q = 0.0;
    double Q_asymptotic = 0.0;
    double L = 0.0;
    int iterations = 0;
};
struct SweepResult {
    std::string family;
    std::vector<SweepRow> rows;
    LinearFit fit;   // wedge: Q against log(L/h_min)
    CFit C;          // wedge
    double slope_theory = 0.0;
};
SweepResult wedge_sweep(const SweepConfig& sw, const PhysicsConfig& phys, const SolverConfig& s, int n_xi, int n_eta,
                        int workers);
SweepResult smooth_sweep(const SweepConfig& sw, const PhysicsConfig& phys, const SolverConfig& s, int n_v, int n_psi,
                         int workers);

// DDL_WORKERS, defaulting to the hardware thread count.
int worker_count();
// Runs f(0..n-1) over `workers` threads; results keep index order.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

// 17 significant digits, header row, LF endings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Executes cfg and writes artifacts under out; returns the summary.
nlohmann::json run(const RunConfig& cfg, const std::filesystem::path& out);

// Full driver with exit codes: 0 ok, 1 config, 2 non-convergence, 3 I/O.
int run_cli(Mode mode, const std::filesystem::path& config, const std::filesystem::path& out,
            const std::string& seed_grid);

}  // namespace ddl
