#include "ddl/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

namespace ddl {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();

double unit_mean_L(double h_min, double beta) {
    auto excess = [&](double L) {
        const WedgeMapParams p = params_from_physical(h_min, beta, L);
        return domain_area(p) / L - 1.0;
    };
    double prev_L = 0.0, prev = 0.0;
    bool have = false;
    for (double L = 0.5; L <= 200.0; L *= 1.25) {
        double e;
        try {
            e = excess(L);
        } catch (const std::exception&) {
            have = false;
            continue;
        }
        if (have && prev * e <= 0.0) return unit_mean_length(h_min, beta, prev_L, L);
        prev_L = L;
        prev = e;
        have = true;
    }
    throw ConfigError("domain: no period L gives mean thickness 1 for this h_min and beta");
}

}  // namespace

WedgeMapParams wedge_from_config(const DomainConfig& d) {
    try {
        if (d.type == "wedge-map") {
            WedgeMapParams m = make_wedge_map(d.L, d.epsilon, d.eta_star);
            return d.normalize_area ? normalize_area(m) : m;
        }
        if (d.type == "wedge-physical")
            return params_from_physical(d.h_min, d.beta, d.unit_mean ? unit_mean_L(d.h_min, d.beta) : d.L);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    }
    throw ConfigError("domain: type '" + d.type + "' is not a conformal-map domain");
}

SolverParams solver_params(const PhysicsConfig& phys, const SolverConfig& s) {
    SolverParams sp;
    sp.nu = phys.nu;
    sp.Phi = phys.Phi;
    sp.newton = s.newton;
    sp.continuation = s.continuation;
    return sp;
}

ConformalSolution run_conformal(const DomainConfig& d, const PhysicsConfig& phys, const SolverConfig& s, int n_xi,
                                int n_eta) {
    return solve_conformal(wedge_from_config(d), solver_params(phys, s), n_xi, n_eta);
}

SmoothProfile smooth_profile_for(double h_min, double a, double L, const PhysicsConfig& phys,
                                 double junction_height) {
    const double nu = phys.nu, Phi = phys.Phi;
    const FluxLaw law = [nu, Phi](double F) { return default_j1d()(nu / F, Phi); };
    return build_smooth_profile(h_min, a, L, Phi, law, junction_height);
}

HodographSurface hodograph_surface(const DomainConfig& d, const PhysicsConfig& phys, const SolverConfig& s) {
    HodographSurface h;
    if (d.type == "smooth-profile") {
        SmoothProfile p;
        try {
            p = smooth_profile_for(d.h_min, d.a, d.L, phys, d.junction_height);
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("domain: ") + e.what());
        }
        h.QL = p.QL();
        h.F = [p](double psi) { return p.F(psi); };
    } else if (d.type == "explicit-F") {
        h.QL = d.QL;
        const TrigInterp t(d.F, -0.5 * d.QL, d.QL);
        h.F = [t](double psi) { return t(psi); };
    } else if (d.type == "from-conformal") {
        if (!d.source) throw ConfigError("domain.source: missing");
        const ConformalSolution c = run_conformal(*d.source, phys, s, d.source_n_xi, d.source_n_eta);
        const HodographInputs in = extract_hodograph_inputs(c, d.n_samples);
        h.QL = in.QL;
        h.F = [t = in.interp](double psi) { return t(psi); };
    } else {
        throw ConfigError("domain: type '" + d.type + "' cannot drive a hodograph solve");
    }
    return h;
}

HodographSolution run_hodograph(const HodographSurface& surf, const PhysicsConfig& phys, const SolverConfig& s,
                                int n_v, int n_psi) {
    const SolverParams sp = solver_params(phys, s);
    return solve_hodograph(make_hodograph_problem(surf.QL, surf.F, sp.nu, sp.Phi, n_v, n_psi), sp);
}

void fill_deltas(std::vector<ConvergeRow>& rows) {
    for (auto& r : rows) {
        r.dQ = nan_v;
        for (const auto& s : rows)
            if (s.N == r.N + 4) r.dQ = std::abs(s.Q - r.Q);
    }
}

std::vector<ConvergeRow> converge_conformal(const WedgeMapParams& map, const SolverParams& sp, const std::string& vary,
                                            const std::vector<int>& values, int fixed) {
    std::vector<ConvergeRow> rows;
    for (int N : values) {
        const bool xi = vary == "n_xi";
        const ConformalSolution s = solve_conformal(map, sp, xi ? N : fixed, xi ? fixed : N);
        rows.push_back({N, average_current_density(s), nan_v, s.history.iterations()});
    }
    fill_deltas(rows);
    return rows;
}

std::vector<ConvergeRow> converge_hodograph(const HodographSurface& surf, const SolverParams& sp,
                                            const std::string& vary, const std::vector<int>& values, int fixed) {
    std::vector<ConvergeRow> rows;
    for (int N : values) {
        const bool v = vary == "n_v";
        const HodographSolution s =
            solve_hodograph(make_hodograph_problem(surf.QL, surf.F, sp.nu, sp.Phi, v ? N : fixed, v ? fixed : N), sp);
        rows.push_back({N, hodograph_Q(s), nan_v, s.history.iterations()});
    }
    fill_deltas(rows);
    return rows;
}

int worker_count() {
    if (const char* e = std::getenv("DDL_WORKERS")) {
        const int w = std::atoi(e);
        if (w > 0) return w;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, int workers, const std::function<void(int)>& f) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!first) first = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

SweepResult wedge_sweep(const SweepConfig& sw, const PhysicsConfig& phys, const SolverConfig& s, int n_xi, int n_eta,
                        int workers) {
    SweepResult r;
    r.family = "wedge";
    r.rows.resize(sw.h_min.size());
    const SolverParams sp = solver_params(phys, s);
    parallel_for(static_cast<int>(sw.h_min.size()), workers, [&](int k) {
        const WedgeMapParams map = params_from_physical(sw.h_min[k], sw.beta, sw.L);
        const ConformalSolution c = solve_conformal(map, sp, n_xi, n_eta);
        r.rows[k] = {sw.h_min[k], average_current_density(c), 0.0, sw.L, c.history.iterations()};
    });
    std::vector<double> x, y;
    std::vector<std::pair<double, double>> samples;
    for (const auto& row : r.rows) {
        x.push_back(std::log(sw.L / row.h_min));
        y.push_back(row.Q);
        samples.emplace_back(row.h_min, row.Q);
    }
    r.fit = linear_regression(x, y);
    r.C = fit_C(samples, sw.beta, sw.L, phys.Phi);
    r.slope_theory = wedge_slope(sw.beta, sw.L, phys.Phi);
    for (auto& row : r.rows) {
        AsymptoticInputs in;
        in.h_min = row.h_min;
        in.beta = sw.beta;
        in.L = sw.L;
        in.Phi = phys.Phi;
        in.nu = phys.nu;
        in.C = r.C.C;
        row.Q_asymptotic = q_wedge(in);
    }
    return r;
}

SweepResult smooth_sweep(const SweepConfig& sw, const PhysicsConfig& phys, const SolverConfig& s, int n_v, int n_psi,
                         int workers) {
    SweepResult r;
    r.family = "smooth";
    r.rows.resize(sw.h_min.size());
    // fill the shared 1D flux table before fanning out
    for (double h : sw.h_min) smooth_profile_for(h, sw.a, sw.L, phys);
    parallel_for(static_cast<int>(sw.h_min.size()), workers, [&](int k) {
        const SmoothProfile p = smooth_profile_for(sw.h_min[k], sw.a, sw.L, phys);
        const HodographSurface surf{p.QL(), [p](double psi) { return p.F(psi); }};
        const HodographSolution h = run_hodograph(surf, phys, s, n_v, n_psi);
        const double L = length_diagnostic(h.state, h.problem).mean;
        AsymptoticInputs in;
        in.h_min = sw.h_min[k];
        in.a = sw.a;
        in.L = L;
        in.Phi = phys.Phi;
        in.nu = phys.nu;
        r.rows[k] = {sw.h_min[k], hodograph_Q(h), q_smooth_closed(in), L, h.history.iterations()};
    });
    return r;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    char buf[40];
    for (const auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", r[i]);
            out << (i ? "," : "") << buf;
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

namespace {

// nlohmann prints doubles round-trip exactly already; NaN becomes null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json history_json(const NewtonHistory& h) {
    return {{"iterations", h.iterations()}, {"residual", h.final_residual_inf}, {"converged", h.converged}};
}

void write_history(const fs::path& path, const NewtonHistory& h) {
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < h.iterations(); ++k) {
        const auto& r = h.records[k];
        rows.push_back({double(k + 1), r.update_norm, r.gamma, r.residual_norm});
    }
    write_csv(path, {"iteration [1]", "update_sup_norm [1]", "gamma [1]", "residual_2norm [1]"}, rows);
}

void write_cumulative(const fs::path& path, const CumulativeCurrent& c) {
    std::vector<std::vector<double>> rows;
    for (size_t k = 0; k < c.x.size(); ++k) rows.push_back({c.x[k], c.C[k]});
    write_csv(path, {"x [H]", "C [1]"}, rows);
}

void write_converge(const fs::path& path, const std::string& var, const std::vector<ConvergeRow>& rows) {
    std::vector<std::vector<double>> out;
    for (const auto& r : rows) out.push_back({double(r.N), r.Q, r.dQ, double(r.iterations)});
    write_csv(path, {var + " [1]", "Q [1]", "dQ [1]", "newton_iterations [1]"}, out);
}

json converge_json(const std::vector<ConvergeRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) a.push_back({{"N", r.N}, {"Q", r.Q}, {"dQ", num(r.dQ)}, {"iterations", r.iterations}});
    return a;
}

json base_summary(const RunConfig& cfg) {
    return {{"mode", mode_name(cfg.mode)}, {"nu", cfg.physics.nu}, {"Phi", cfg.physics.Phi}};
}

json run_solve_conformal(const RunConfig& cfg, const fs::path& out) {
    const ConformalSolution sol = run_conformal(*cfg.domain, cfg.physics, cfg.solver, cfg.grid.n_xi, cfg.grid.n_eta);
    TraceOptions topt;
    topt.seeds = cfg.output.seeds;
    SolutionBundle b = make_bundle(sol, cfg.output.trajectories, topt);
    const ConformalSolution& s = *b.conformal;
    if (cfg.output.fields) {
        const FieldDump d = field_dump(s);
        const Grid2D& g = s.problem.grid;
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < g.n_periodic; ++i)
            for (int j = 0; j < g.n_cheb; ++j) {
                const int k = g.index(i, j);
                rows.push_back({g.xp[i], g.xc[j], d.x[k], d.y[k], d.phi[k], d.n[k]});
            }
        write_csv(out / "fields.csv", {"xi [H]", "eta [H]", "x [H]", "y [H]", "phi [kT/q]", "n [n1]"}, rows);
    }
    if (cfg.output.cumulative) {
        b.C = cumulative_current(s, cfg.output.cumulative_samples);
        write_cumulative(out / "cumulative_current.csv", b.C);
    }
    if (cfg.output.trajectories) {
        std::vector<std::vector<double>> rows;
        for (size_t t = 0; t < b.trajectories.size(); ++t)
            for (size_t k = 0; k < b.trajectories[t].x.size(); ++k)
                rows.push_back({double(t), b.trajectories[t].fraction, b.trajectories[t].x[k], b.trajectories[t].y[k]});
        write_csv(out / "trajectories.csv", {"trajectory [1]", "current_fraction [1]", "x [H]", "y [H]"}, rows);
    }
    write_history(out / "newton_history.csv", b.history);
    json j = base_summary(cfg);
    j.update({{"formulation", "conformal"},
              {"Q", b.Q},
              {"Q_top", b.Q_top},
              {"R", b.R},
              {"R_block", b.R_block},
              {"resistance_ratio", b.R_block / b.R},
              {"L", b.L},
              {"grid", {{"n_xi", cfg.grid.n_xi}, {"n_eta", cfg.grid.n_eta}}},
              {"map", {{"epsilon", s.map.epsilon}, {"eta_star", s.map.eta_star}, {"h_min", min_thickness(s.map)}}},
              {"C_at_0.25", s.map.L >= 0.5 ? num(cumulative_current_at(s, 0.25)) : json(nullptr)},
              {"C_raw_end", b.C.raw_end},
              {"continuation_path", s.continuation_path}});
    j.update(history_json(b.history));
    return j;
}

json run_solve_hodograph(const RunConfig& cfg, const fs::path& out) {
    const HodographSurface surf = hodograph_surface(*cfg.domain, cfg.physics, cfg.solver);
    SolutionBundle b = make_bundle(run_hodograph(surf, cfg.physics, cfg.solver, cfg.grid.n_v, cfg.grid.n_psi));
    const HodographSolution& s = *b.hodograph;
    const Grid2D& g = s.problem.grid;
    if (cfg.output.fields) {
        const FieldDump d = field_dump(s);
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < g.n_periodic; ++i)
            for (int j = 0; j < g.n_cheb; ++j) {
                const int k = g.index(i, j);
                rows.push_back({g.xp[i], g.xc[j], d.x[k], d.y[k], d.phi[k], d.n[k]});
            }
        write_csv(out / "fields.csv", {"psi [1]", "v [kT/q]", "x [H]", "y [H]", "phi [kT/q]", "n [n1]"}, rows);
        const LengthDiagnostic ld = length_diagnostic(s.state, s.problem);
        std::vector<std::vector<double>> lr;
        for (int j = 0; j < g.n_cheb; ++j) lr.push_back({g.xc[j], ld.L[j]});
        write_csv(out / "length.csv", {"v [kT/q]", "L [H]"}, lr);
    }
    if (cfg.output.cumulative) {
        b.C = cumulative_current(s, cfg.output.cumulative_samples);
        write_cumulative(out / "cumulative_current.csv", b.C);
    }
    if (cfg.output.trajectories) {
        std::vector<std::vector<double>> rows;
        for (int t = 1; t <= cfg.output.seeds; ++t) {
            const double f = double(t) / (cfg.output.seeds + 1);
            const Polyline p = hodograph_streamline(s, -0.5 * s.problem.QL + f * s.problem.QL);
            for (size_t k = 0; k < p.x.size(); ++k) rows.push_back({double(t - 1), f, p.x[k], p.y[k]});
        }
        write_csv(out / "trajectories.csv", {"trajectory [1]", "current_fraction [1]", "x [H]", "y [H]"}, rows);
    }
    write_history(out / "newton_history.csv", b.history);
    json j = base_summary(cfg);
    j.update({{"formulation", "hodograph"},
              {"Q", b.Q},
              {"R", b.R},
              {"R_block", b.R_block},
              {"resistance_ratio", b.R_block / b.R},
              {"L", b.L},
              {"QL", s.problem.QL},
              {"length_spread", b.length_spread},
              {"grid", {{"n_v", cfg.grid.n_v}, {"n_psi", cfg.grid.n_psi}}},
              {"continuation_path", s.continuation_path}});
    j.update(history_json(b.history));
    return j;
}

json run_converge(const RunConfig& cfg, const fs::path& out) {
    const ConvergeConfig& c = *cfg.converge;
    const SolverParams sp = solver_params(cfg.physics, cfg.solver);
    std::vector<ConvergeRow> rows;
    int fixed;
    json grid;
    if (c.formulation == "conformal") {
        fixed = c.vary == "n_xi" ? cfg.grid.n_eta : cfg.grid.n_xi;
        rows = converge_conformal(wedge_from_config(*cfg.domain), sp, c.vary, c.values, fixed);
        grid = {{c.vary == "n_xi" ? "n_eta" : "n_xi", fixed}};
    } else {
        fixed = c.vary == "n_v" ? cfg.grid.n_psi : cfg.grid.n_v;
        rows = converge_hodograph(hodograph_surface(*cfg.domain, cfg.physics, cfg.solver), sp, c.vary, c.values,
                                  fixed);
        grid = {{c.vary == "n_v" ? "n_psi" : "n_v", fixed}};
    }
    write_converge(out / "convergence.csv", c.vary, rows);
    json j = base_summary(cfg);
    j.update({{"formulation", c.formulation},
              {"vary", c.vary},
              {"grid", grid},
              {"Q", rows.back().Q},
              {"R", effective_resistance(rows.back().Q, cfg.physics.Phi)},
              {"table", converge_json(rows)}});
    return j;
}

json run_sweep(const RunConfig& cfg, const fs::path& out) {
    const SweepConfig& sw = *cfg.sweep;
    const int workers = worker_count();
    json j = base_summary(cfg);
    std::vector<std::vector<double>> rows;
    if (sw.family == "wedge") {
        const SweepResult r = wedge_sweep(sw, cfg.physics, cfg.solver, cfg.grid.n_xi, cfg.grid.n_eta, workers);
        for (const auto& row : r.rows)
            rows.push_back({row.h_min, std::log(sw.L / row.h_min), row.Q, row.Q_asymptotic, double(row.iterations)});
        write_csv(out / "sweep.csv",
                  {"h_min [H]", "log_L_over_h_min [1]", "Q_numeric [1]", "Q_asymptotic [1]", "newton_iterations [1]"},
                  rows);
        j.update({{"family", "wedge"},
                  {"L", sw.L},
                  {"beta", sw.beta},
                  {"grid", {{"n_xi", cfg.grid.n_xi}, {"n_eta", cfg.grid.n_eta}}},
                  {"slope", r.fit.slope},
                  {"slope_theory", r.slope_theory},
                  {"intercept", r.fit.intercept},
                  {"r2", r.fit.r2},
                  {"C", r.C.C},
                  {"C_spread", r.C.spread},
                  {"C_warning", r.C.warn}});
    } else {
        const SweepResult r = smooth_sweep(sw, cfg.physics, cfg.solver, cfg.grid.n_v, cfg.grid.n_psi, workers);
        json errs = json::array();
        for (const auto& row : r.rows) {
            const double e = std::abs(row.Q - row.Q_asymptotic) / row.Q;
            rows.push_back({row.h_min, row.h_min / sw.a, row.L, row.Q, row.Q_asymptotic, e, double(row.iterations)});
            errs.push_back(e);
        }
        write_csv(out / "sweep.csv",
                  {"h_min [H]", "h_min_over_a [1]", "L [H]", "Q_numeric [1]", "Q_asymptotic [1]", "rel_error [1]",
                   "newton_iterations [1]"},
                  rows);
        j.update({{"family", "smooth"},
                  {"a", sw.a},
                  {"L_target", sw.L},
                  {"grid", {{"n_v", cfg.grid.n_v}, {"n_psi", cfg.grid.n_psi}}},
                  {"relative_errors", errs}});
    }
    j["workers"] = workers;
    return j;
}

json run_validate(const RunConfig& cfg, const fs::path& out) {
    const WedgeMapParams map = wedge_from_config(*cfg.domain);
    const SolverParams sp = solver_params(cfg.physics, cfg.solver);
    const auto a = converge_conformal(map, sp, "n_xi", {4, 8, 12}, 31);
    const auto b = converge_conformal(map, sp, "n_eta", {7, 11, 15, 19, 23, 27, 31}, 12);
    const ConformalSolution src = solve_conformal(map, sp, 48, 31);
    const HodographInputs in = extract_hodograph_inputs(src);
    const HodographSurface surf{in.QL, [t = in.interp](double psi) { return t(psi); }};
    const auto c = converge_hodograph(surf, sp, "n_v", {17, 21, 25, 29, 33, 37, 41, 45}, 32);
    const auto d = converge_hodograph(surf, sp, "n_psi", {4, 8, 12, 16, 20, 24, 28, 32}, 45);
    write_converge(out / "table_a.csv", "n_xi", a);
    write_converge(out / "table_b.csv", "n_eta", b);
    write_converge(out / "table_c.csv", "n_v", c);
    write_converge(out / "table_d.csv", "n_psi", d);
    const double Qc = b.back().Q, Qh = c.back().Q;
    json j = base_summary(cfg);
    j.update({{"Q", Qc},
              {"Q_conformal", Qc},
              {"Q_hodograph", Qh},
              {"Q_difference", std::abs(Qc - Qh)},
              {"R", effective_resistance(Qc, cfg.physics.Phi)},
              {"R_block", block_reference(cfg.physics.nu, cfg.physics.Phi)},
              {"L", map.L},
              {"eta_star", map.eta_star},
              {"grid", {{"conformal", {12, 31}}, {"hodograph", {45, 32}}, {"hodograph_source", {48, 31}}}},
              {"table_a", converge_json(a)},
              {"table_b", converge_json(b)},
              {"table_c", converge_json(c)},
              {"table_d", converge_json(d)}});
    return j;
}

}  // namespace

json run(const RunConfig& cfg, const fs::path& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
    const auto t0 = std::chrono::steady_clock::now();
    json j;
    switch (cfg.mode) {
    case Mode::solve_conformal: j = run_solve_conformal(cfg, out); break;
    case Mode::solve_hodograph: j = run_solve_hodograph(cfg, out); break;
    case Mode::converge: j = run_converge(cfg, out); break;
    case Mode::asymptotic_sweep: j = run_sweep(cfg, out); break;
    case Mode::validate: j = run_validate(cfg, out); break;
    }
    j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_json(out / "summary.json", j);
    return j;
}

namespace {

void report_error(const fs::path& out, int code, const std::string& kind, const std::string& msg) {
    std::fprintf(stderr, "error (%s): %s\n", kind.c_str(), msg.c_str());
    try {
        std::error_code ec;
        fs::create_directories(out, ec);
        write_json(out / "error.json", {{"error", kind}, {"message", msg}, {"exit_code", code}});
    } catch (const std::exception&) {
        // the output directory itself is unusable; stderr already has it
    }
}

}  // namespace

int run_cli(Mode mode, const fs::path& config, const fs::path& out, const std::string& seed_grid) {
    try {
        RunConfig cfg = load_config(config, mode);
        if (!seed_grid.empty()) apply_seed_grid(cfg, seed_grid);
        const json j = run(cfg, out);
        std::printf("%s\n", j.dump(2).c_str());
        return 0;
    } catch (const ConfigError& e) {
        report_error(out, 1, "config", e.what());
        return 1;
    } catch (const IoError& e) {
        report_error(out, 3, "io", e.what());
        return 3;
    } catch (const fs::filesystem_error& e) {
        report_error(out, 3, "io", e.what());
        return 3;
    } catch (const NonConvergence& e) {
        report_error(out, 2, "non-convergence", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error(out, 2, "solver", e.what());
        return 2;
    }
}

}  // namespace ddl
