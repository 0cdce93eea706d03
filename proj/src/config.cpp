#include "ddl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ddl {

using nlohmann::json;

const char* mode_name(Mode m) {
    switch (m) {
    case Mode::solve_conformal: return "solve-conformal";
    case Mode::solve_hodograph: return "solve-hodograph";
    case Mode::converge: return "converge";
    case Mode::asymptotic_sweep: return "asymptotic-sweep";
    case Mode::validate: return "validate";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::solve_conformal, Mode::solve_hodograph, Mode::converge, Mode::asymptotic_sweep,
                   Mode::validate})
        if (s == mode_name(m)) return m;
    throw ConfigError("unknown mode '" + s + "'");
}

namespace {

// Collects every schema problem before reporting.
struct Errors {
    std::vector<std::string> missing, other;

    void raise_if_any() const {
        if (missing.empty() && other.empty()) return;
        std::ostringstream os;
        os << "config schema error";
        if (!missing.empty()) {
            os << "; missing keys:";
            for (auto& k : missing) os << ' ' << k;
        }
        for (auto& o : other) os << "; " << o;
        throw ConfigError(os.str());
    }
};

class Section {
public:
    Section(const json& j, std::string path, Errors& err) : j_(j), path_(std::move(path)), err_(err) {
        if (!j_.is_object()) {
            err_.other.push_back(where() + "must be an object");
            ok_ = false;
        }
    }

    bool has(const std::string& key) const { return ok_ && j_.contains(key); }

    template <class T>
    T req(const std::string& key) {
        used_.insert(key);
        if (!has(key)) {
            err_.missing.push_back(full(key));
            return T{};
        }
        return get<T>(key);
    }

    template <class T>
    T opt(const std::string& key, T fallback) {
        used_.insert(key);
        return has(key) ? get<T>(key) : fallback;
    }

    Section sub(const std::string& key, bool required) {
        used_.insert(key);
        if (!has(key)) {
            if (required) err_.missing.push_back(full(key));
            return Section(empty_, full(key), err_, false);
        }
        return Section(j_.at(key), full(key), err_);
    }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return has(key) ? j_.at(key) : empty_;
    }

    void reject(const std::string& key, const std::string& why) {
        used_.insert(key);
        if (has(key)) err_.other.push_back(full(key) + ": " + why);
    }

    void positive(const std::string& key, double v) {
        if (has(key) && !(v > 0.0)) err_.other.push_back(full(key) + ": must be positive");
    }

    // Flags keys that were never consumed.
    void finish() {
        if (!ok_) return;
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!used_.count(it.key())) err_.other.push_back(full(it.key()) + ": unknown key");
    }

    bool present() const { return ok_; }

private:
    Section(const json& j, std::string path, Errors& err, bool ok) : j_(j), path_(std::move(path)), err_(err), ok_(ok) {}

    std::string where() const { return path_.empty() ? "config " : path_ + " "; }
    std::string full(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    template <class T>
    T get(const std::string& key) {
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            err_.other.push_back(full(key) + ": wrong type");
            return T{};
        }
    }

    static inline const json empty_ = json::object();
    const json& j_;
    std::string path_;
    Errors& err_;
    bool ok_ = true;
    std::set<std::string> used_;
};

const std::set<std::string> conformal_domains{"wedge-map", "wedge-physical"};
const std::set<std::string> hodograph_domains{"smooth-profile", "explicit-F", "from-conformal"};

DomainConfig parse_domain(Section s, const std::set<std::string>& allowed, Errors& err) {
    DomainConfig d;
    d.type = s.req<std::string>("type");
    if (!s.present()) return d;
    if (!d.type.empty() && !allowed.count(d.type)) {
        std::string list;
        for (auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        err.other.push_back("domain.type: '" + d.type + "' not allowed here (expected one of " + list + ")");
        return d;
    }
    if (d.type == "wedge-map") {
        d.L = s.req<double>("L");
        d.epsilon = s.req<double>("epsilon");
        d.eta_star = s.req<double>("eta_star");
        d.normalize_area = s.opt<bool>("normalize_area", false);
        s.positive("L", d.L);
        s.positive("epsilon", d.epsilon);
        s.positive("eta_star", d.eta_star);
    } else if (d.type == "wedge-physical") {
        d.h_min = s.req<double>("h_min");
        d.beta = s.req<double>("beta");
        d.unit_mean = s.opt<bool>("unit_mean", false);
        if (d.unit_mean) s.reject("L", "not allowed together with unit_mean");
        else d.L = s.req<double>("L");
        s.positive("h_min", d.h_min);
        s.positive("beta", d.beta);
        s.positive("L", d.L);
    } else if (d.type == "smooth-profile") {
        d.h_min = s.req<double>("h_min");
        d.a = s.req<double>("a");
        d.L = s.req<double>("L");
        d.junction_height = s.opt<double>("junction_height", 0.5);
        s.positive("h_min", d.h_min);
        s.positive("a", d.a);
        s.positive("L", d.L);
        s.positive("junction_height", d.junction_height);
    } else if (d.type == "explicit-F") {
        d.QL = s.req<double>("QL");
        d.F = s.req<std::vector<double>>("F");
        s.positive("QL", d.QL);
        if (s.has("F") && d.F.size() < 4) err.other.push_back("domain.F: need at least 4 samples");
        for (double f : d.F)
            if (!(f > 0.0)) {
                err.other.push_back("domain.F: samples must be positive");
                break;
            }
    } else if (d.type == "from-conformal") {
        Section src = s.sub("source", true);
        if (src.present() && s.has("source"))
            d.source = std::make_shared<DomainConfig>(parse_domain(src, conformal_domains, err));
        const auto g = s.opt<std::vector<int>>("source_grid", {48, 31});
        if (g.size() != 2 || g[0] < 4 || g[1] < 5) err.other.push_back("domain.source_grid: expected [n_xi, n_eta]");
        else d.source_n_xi = g[0], d.source_n_eta = g[1];
        d.n_samples = s.opt<int>("n_samples", 128);
        if (d.n_samples < 8) err.other.push_back("domain.n_samples: must be at least 8");
    }
    s.finish();
    return d;
}

void need_counts(Section& g, GridConfig& grid, bool conformal, bool hodograph, Errors& err) {
    auto count = [&](const char* key, int& v, bool required) {
        if (required) v = g.req<int>(key);
        else g.reject(key, "not used by this run");
        if (required && g.has(key) && v < 4) err.other.push_back(std::string("grid.") + key + ": must be at least 4");
    };
    count("n_xi", grid.n_xi, conformal);
    count("n_eta", grid.n_eta, conformal);
    count("n_psi", grid.n_psi, hodograph);
    count("n_v", grid.n_v, hodograph);
}

}  // namespace

RunConfig parse_config(const json& j, Mode mode) {
    Errors err;
    RunConfig cfg;
    cfg.mode = mode;
    Section root(j, "", err);
    if (root.has("mode")) {
        const std::string m = root.req<std::string>("mode");
        if (m != mode_name(mode)) err.other.push_back("mode: config says '" + m + "' but ran " + mode_name(mode));
    } else {
        root.opt<std::string>("mode", "");
    }

    Section phys = root.sub("physics", true);
    cfg.physics.nu = phys.req<double>("nu");
    cfg.physics.Phi = phys.req<double>("Phi");
    phys.positive("nu", cfg.physics.nu);
    phys.positive("Phi", cfg.physics.Phi);
    phys.finish();

    Section sol = root.sub("solver", false);
    cfg.solver.newton.tol = sol.opt<double>("tol", cfg.solver.newton.tol);
    cfg.solver.newton.max_iter = sol.opt<int>("max_iter", cfg.solver.newton.max_iter);
    cfg.solver.newton.damping.gamma_min = sol.opt<double>("gamma_min", cfg.solver.newton.damping.gamma_min);
    sol.positive("tol", cfg.solver.newton.tol);
    sol.positive("gamma_min", cfg.solver.newton.damping.gamma_min);
    {
        Section c = sol.sub("continuation", false);
        ContinuationOptions& co = cfg.solver.continuation;
        co.enabled = c.opt<bool>("enabled", co.enabled);
        co.nu_start = c.opt<double>("nu_start", co.nu_start);
        co.ratio = c.opt<double>("ratio", co.ratio);
        co.max_retries = c.opt<int>("max_retries", co.max_retries);
        if (!(co.ratio > 0.0 && co.ratio < 1.0)) err.other.push_back("solver.continuation.ratio: must be in (0, 1)");
        c.finish();
    }
    sol.finish();

    Section out = root.sub("output", false);
    cfg.output.fields = out.opt<bool>("fields", true);
    cfg.output.cumulative = out.opt<bool>("cumulative", true);
    cfg.output.trajectories = out.opt<bool>("trajectories", true);
    cfg.output.seeds = out.opt<int>("seeds", 20);
    cfg.output.cumulative_samples = out.opt<int>("cumulative_samples", 201);
    if (cfg.output.seeds < 1) err.other.push_back("output.seeds: must be at least 1");
    if (cfg.output.cumulative_samples < 2) err.other.push_back("output.cumulative_samples: must be at least 2");
    out.finish();

    bool conformal = false, hodograph = false;
    switch (mode) {
    case Mode::solve_conformal:
        cfg.domain = parse_domain(root.sub("domain", true), conformal_domains, err);
        conformal = true;
        break;
    case Mode::solve_hodograph:
        cfg.domain = parse_domain(root.sub("domain", true), hodograph_domains, err);
        hodograph = true;
        break;
    case Mode::converge: {
        Section c = root.sub("converge", true);
        ConvergeConfig cc;
        cc.formulation = c.req<std::string>("formulation");
        cc.vary = c.req<std::string>("vary");
        cc.values = c.req<std::vector<int>>("values");
        c.finish();
        if (c.present() && root.has("converge")) {
            if (cc.formulation == "conformal") {
                conformal = true;
                if (cc.vary != "n_xi" && cc.vary != "n_eta") err.other.push_back("converge.vary: expected n_xi or n_eta");
            } else if (cc.formulation == "hodograph") {
                hodograph = true;
                if (cc.vary != "n_v" && cc.vary != "n_psi") err.other.push_back("converge.vary: expected n_v or n_psi");
            } else if (c.has("formulation")) {
                err.other.push_back("converge.formulation: expected conformal or hodograph");
            }
            if (cc.values.size() < 2) err.other.push_back("converge.values: need at least two grid sizes");
            for (int v : cc.values)
                if (v < 4) err.other.push_back("converge.values: sizes must be at least 4");
        }
        cfg.converge = cc;
        cfg.domain = parse_domain(root.sub("domain", true), hodograph ? hodograph_domains : conformal_domains, err);
        break;
    }
    case Mode::asymptotic_sweep: {
        Section s = root.sub("sweep", true);
        SweepConfig sc;
        sc.family = s.req<std::string>("family");
        sc.h_min = s.req<std::vector<double>>("h_min");
        sc.L = s.req<double>("L");
        s.positive("L", sc.L);
        if (sc.family == "wedge") {
            sc.beta = s.req<double>("beta");
            s.positive("beta", sc.beta);
            s.reject("a", "not used by the wedge family");
            conformal = true;
        } else if (sc.family == "smooth") {
            sc.a = s.req<double>("a");
            s.positive("a", sc.a);
            s.reject("beta", "not used by the smooth family");
            hodograph = true;
        } else if (s.has("family")) {
            err.other.push_back("sweep.family: expected wedge or smooth");
        }
        if (s.has("h_min") && sc.h_min.size() < 2) err.other.push_back("sweep.h_min: need at least two values");
        for (double h : sc.h_min)
            if (!(h > 0.0)) err.other.push_back("sweep.h_min: values must be positive");
        s.finish();
        cfg.sweep = sc;
        root.reject("domain", "not used by asymptotic-sweep (the family defines the domains)");
        break;
    }
    case Mode::validate:
        cfg.domain = parse_domain(root.sub("domain", true), {"wedge-map"}, err);
        root.reject("grid", "validate uses fixed grids");
        break;
    }
    if (mode != Mode::converge) root.reject("converge", std::string("not used by ") + mode_name(mode));
    if (mode != Mode::asymptotic_sweep) root.reject("sweep", std::string("not used by ") + mode_name(mode));

    if (mode != Mode::validate) {
        Section g = root.sub("grid", true);
        need_counts(g, cfg.grid, conformal, hodograph, err);
        if (mode == Mode::converge && cfg.converge) {
            // the varied count comes from converge.values
            const std::string& v = cfg.converge->vary;
            if (g.has(v)) err.other.push_back("grid." + v + ": set by converge.values");
            std::erase(err.missing, "grid." + v);
        }
        g.finish();
    }
    root.finish();
    err.raise_if_any();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Mode mode) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j, mode);
}

void apply_seed_grid(RunConfig& cfg, const std::string& text) {
    const auto x = text.find('x');
    int p = 0, c = 0;
    try {
        if (x == std::string::npos) throw std::invalid_argument(text);
        size_t used = 0;
        p = std::stoi(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument(text);
        c = std::stoi(text.substr(x + 1), &used);
        if (used != text.size() - x - 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError("--seed-grid: expected PxC, e.g. 12x31");
    }
    if (p < 4 || c < 4) throw ConfigError("--seed-grid: counts must be at least 4");
    bool hod = cfg.mode == Mode::solve_hodograph || (cfg.converge && cfg.converge->formulation == "hodograph") ||
               (cfg.sweep && cfg.sweep->family == "smooth");
    if (cfg.mode == Mode::validate) throw ConfigError("--seed-grid: validate uses fixed grids");
    if (hod) cfg.grid.n_psi = p, cfg.grid.n_v = c;
    else cfg.grid.n_xi = p, cfg.grid.n_eta = c;
}

}  // namespace ddl
