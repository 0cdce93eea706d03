#include "ddl/postproc.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ddl;
using std::numbers::pi;

namespace {

SolverParams params(double nu) {
    SolverParams sp;
    sp.nu = nu;
    sp.newton.tol = 1e-10;
    return sp;
}

// large epsilon: the map is the identity to high accuracy
const ConformalSolution& flat() {
    static const ConformalSolution s = solve_conformal(make_wedge_map(2 * pi, 40.0, 1.0), params(0.2), 16, 25);
    return s;
}

const ConformalSolution& validation() {
    static const ConformalSolution s =
        solve_conformal(normalize_area(make_wedge_map(28.2, 0.57, 0.84)), params(0.2), 48, 31);
    return s;
}

}  // namespace

TEST_CASE("resistance and block reference") {
    CHECK(effective_resistance(0.5, 1.0) == 2.0);
    CHECK(effective_resistance(1.7, 1.0) * 1.7 == doctest::Approx(1.0));
    CHECK_THROWS_AS(effective_resistance(0.0, 1.0), std::domain_error);
    CHECK(block_reference(0.2, 1.0) == doctest::Approx(1.0 / solve_1d(0.2, 1.0, 96).j).epsilon(1e-12));
    CHECK(block_reference(1e3, 1.0) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(block_reference(0.05, 1.0) > block_reference(0.2, 1.0));
}

TEST_CASE("flat layer: uniform current, straight trajectories") {
    const ConformalSolution& s = flat();
    const double Q = average_current_density(s);
    CHECK(Q == doctest::Approx(solve_1d(0.2, 1.0, 96).j).epsilon(1e-6));
    CHECK(average_current_density_top(s) == doctest::Approx(Q).epsilon(1e-6));
    const CumulativeCurrent C = cumulative_current(s, 21);
    const double L = s.map.L;
    for (size_t k = 0; k < C.x.size(); ++k) CHECK(std::abs(C.C[k] - 2 * C.x[k] / L) < 1e-6);
    CHECK(C.raw_end == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(cumulative_current_at(s, 0.6 * L), std::domain_error);

    TraceOptions opt;
    opt.seeds = 5;
    const auto tr = trace_trajectories(s, opt);
    REQUIRE(tr.size() == 5);
    for (size_t k = 0; k < tr.size(); ++k) {
        const Trajectory& t = tr[k];
        CHECK(t.fraction == doctest::Approx((k + 1) / 6.0));
        CHECK(t.eta.back() == doctest::Approx(s.map.eta_star).epsilon(1e-9));
        double drift = 0;
        for (double x : t.x) drift = std::max(drift, std::abs(x - t.x.front()));
        CHECK(drift < 1e-6);
    }
}

TEST_CASE("validation domain: C(x) and trajectories") {
    const ConformalSolution& s = validation();
    const CumulativeCurrent C = cumulative_current(s, 101);
    for (size_t k = 1; k < C.C.size(); ++k) CHECK(C.C[k] >= C.C[k - 1]);
    CHECK(C.C.front() == 0.0);
    CHECK(C.C.back() == doctest::Approx(1.0));
    CHECK(std::abs(C.raw_end - 1.0) < 1e-8);
    // the thin part carries more than its share of the current
    CHECK(cumulative_current_at(s, 0.25 * s.map.L) > 0.5);

    TraceOptions opt;
    opt.seeds = 9;
    const auto tr = trace_trajectories(s, opt);
    REQUIRE(tr.size() == 9);
    for (const Trajectory& t : tr) {
        CHECK(t.eta.front() == 0.0);
        CHECK(std::abs(t.eta.back() - s.map.eta_star) < 1e-9);
        CHECK(bottom_fraction(s, t.xi.front()) == doctest::Approx(t.fraction).epsilon(1e-8));
        for (double e : t.eta) CHECK(e >= -1e-12);
    }
    // symmetric seeds mirror each other
    CHECK(tr[0].x.back() == doctest::Approx(-tr[8].x.back()).epsilon(1e-6));
    CHECK(tr[4].x.front() == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("hodograph streamlines overlay conformal trajectories") {
    const ConformalSolution& s = validation();
    const HodographInputs in = extract_hodograph_inputs(s);
    const HodographSolution h = solve_hodograph(
        make_hodograph_problem(in.QL, [&in](double p) { return in(p); }, 0.2, 1.0, 45, 32), params(0.2));
    TraceOptions opt;
    opt.seeds = 7;
    CHECK(trajectory_overlay_distance(trace_trajectories(s, opt), h) < 1e-2);
    CHECK(average_current_density(h) == doctest::Approx(average_current_density(s)).epsilon(1e-4));

    const CumulativeCurrent ch = cumulative_current(h, 51), cc = cumulative_current(s, 51);
    for (size_t k = 0; k < 51; ++k) CHECK(std::abs(ch.C[k] - cc.C[k]) < 5e-3);

    const FieldDump f = field_dump(h);
    CHECK(f.x.size() == size_t(h.problem.grid.size()));
    for (double n : f.n) CHECK(n > 0);
}

TEST_CASE("field dump and bundle") {
    const ConformalSolution& s = flat();
    const FieldDump f = field_dump(s);
    const Grid2D& g = s.problem.grid;
    REQUIRE(f.phi.size() == size_t(g.size()));
    CHECK(f.phi[g.index(0, 0)] == doctest::Approx(1.0));
    CHECK(std::abs(f.phi[g.index(0, g.n_cheb - 1)]) < 1e-12);
    const SolutionBundle b = make_bundle(s, false);
    CHECK(b.formulation == "conformal");
    CHECK(b.R * b.Q == doctest::Approx(1.0));
    CHECK(b.trajectories.empty());
    CHECK(b.R_block == doctest::Approx(block_reference(0.2, 1.0)));
}
