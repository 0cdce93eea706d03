#pragma once

#include "ddl/newton.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddl {

enum class Mode { solve_conformal, solve_hodograph, converge, asymptotic_sweep, validate };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainConfig {
    // wedge-map | wedge-physical | smooth-profile | explicit-F | from-conformal
    std::string type;
    // wedge-map
    double L = 0.0, epsilon = 0.0, eta_star = 0.0;
    bool normalize_area = false;
    // wedge-physical (L, or unit_mean to solve for it) and smooth-profile
    double h_min = 0.0, beta = 0.0;
    bool unit_mean = false;
    double a = 0.0, junction_height = 0.5;
    // explicit-F: samples on equispaced psi over [-QL/2, QL/2)
    double QL = 0.0;
    std::vector<double> F;
    // from-conformal
    std::shared_ptr<DomainConfig> source;
    int source_n_xi = 48, source_n_eta = 31, n_samples = 128;
};

struct PhysicsConfig {
    double nu = 0.0, Phi = 0.0;
};

struct GridConfig {
    int n_xi = 0, n_eta = 0, n_v = 0, n_psi = 0;
};

struct SolverConfig {
    NewtonOptions newton;
    ContinuationOptions continuation;
};

struct OutputConfig {
    bool fields = true, cumulative = true, trajectories = true;
    int seeds = 20;
    int cumulative_samples = 201;
};

struct ConvergeConfig {
    std::string formulation;   // conformal | hodograph
    std::string vary;          // n_xi | n_eta | n_v | n_psi
    std::vector<int> values;
};

struct SweepConfig {
    std::string family;        // wedge | smooth
    std::vector<double> h_min;
    double beta = 0.0, L = 0.0, a = 0.0;
};

struct RunConfig {
    Mode mode = Mode::solve_conformal;
    std::optional<DomainConfig> domain;
    PhysicsConfig physics;
    GridConfig grid;
    SolverConfig solver;
    OutputConfig output;
    std::optional<ConvergeConfig> converge;
    std::optional<SweepConfig> sweep;
};

// Strict: unknown keys and missing required keys raise ConfigError listing
// every offending key.
RunConfig parse_config(const nlohmann::json& j, Mode mode);
RunConfig load_config(const std::filesystem::path& path, Mode mode);

// "PxC": periodic by Chebyshev counts for the mode's formulation.
void apply_seed_grid(RunConfig& cfg, const std::string& text);

}  // namespace ddl
