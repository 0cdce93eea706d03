#include "ddl/asymptotics.hpp"
#include "ddl/pnp_core.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ddl;
using std::numbers::pi;

namespace {

AsymptoticInputs smooth(double h) {
    AsymptoticInputs in;
    in.h_min = h;
    in.a = 1.7;
    in.L = 31.4;
    in.Phi = 1.0;
    in.nu = 0.1;
    return in;
}

AsymptoticInputs wedge(double h) {
    AsymptoticInputs in;
    in.h_min = h;
    in.beta = pi / 4;
    in.L = 2 * pi;
    in.C = -0.87;
    return in;
}

}  // namespace

TEST_CASE("smooth closed form") {
    CHECK(q_smooth_closed(smooth(0.06)) == doctest::Approx(0.7530).epsilon(5e-4));
    CHECK(q_smooth_closed(smooth(0.24)) == doctest::Approx(0.5 * q_smooth_closed(smooth(0.06))));
}

TEST_CASE("smooth integral") {
    const AsymptoticInputs in = smooth(0.06);
    const double c = q_smooth_integral(in, [](double, double Phi) { return Phi; });
    CHECK(std::abs(c - q_smooth_closed(in)) < 1e-10);
    AsymptoticInputs big = in;
    big.nu = 100;
    CHECK(q_smooth_integral(big) == doctest::Approx(q_smooth_closed(big)).epsilon(0.01));
    // finite nu only lowers the flux
    CHECK(q_smooth_integral(in) < q_smooth_closed(in));
    CHECK_THROWS_AS(q_smooth_integral(smooth(-1)), std::domain_error);
}

TEST_CASE("wedge law") {
    CHECK(wedge_slope(pi / 4, 2 * pi, 1.0) == doctest::Approx(4 / (pi * pi)));
    CHECK(q_wedge(wedge(0.01)) == doctest::Approx(1.74).epsilon(0.005));
    CHECK(q_wedge(wedge(2 * pi)) == doctest::Approx(-0.87));
    CHECK(q_wedge(wedge(0.01)) > q_wedge(wedge(0.02)));
    AsymptoticInputs hi = wedge(0.01);
    hi.Phi = 2;
    CHECK(q_wedge(hi) > q_wedge(wedge(0.01)));
}

TEST_CASE("C fit and regression") {
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.01, 0.03, 0.1}) pts.push_back({h, q_wedge(wedge(h))});
    const CFit f = fit_C(pts, pi / 4, 2 * pi, 1.0);
    CHECK(std::abs(f.C + 0.87) < 1e-12);
    CHECK(f.spread < 1e-12);
    CHECK_FALSE(f.warn);
    pts[0].second += 0.1;
    CHECK(fit_C(pts, pi / 4, 2 * pi, 1.0).warn);
    CHECK_THROWS_AS(fit_C({{0.1, 1.0}}, pi / 4, 2 * pi, 1.0), std::invalid_argument);

    const LinearFit l = linear_regression({1, 2, 3, 4}, {3, 5, 7, 9});
    CHECK(l.slope == doctest::Approx(2.0));
    CHECK(l.intercept == doctest::Approx(1.0));
    CHECK(l.r2 == doctest::Approx(1.0));
}

TEST_CASE("memoised 1D flux") {
    const J1DTable t(0.02);
    const double a = t(0.3, 1.0);
    CHECK(a == doctest::Approx(solve_1d(0.3, 1.0, 64).j).epsilon(1e-9));
    const size_t n = t.cached();
    CHECK(t(0.3, 1.0) == a);
    CHECK(t.cached() == n);
    // tail is continuous at the floor and keeps decreasing
    CHECK(t(0.02 * (1 - 1e-9), 1.0) == doctest::Approx(t(0.02, 1.0)).epsilon(1e-6));
    CHECK(t(0.01, 1.0) < t(0.02, 1.0));
    CHECK(t(0.01, 1.0) > 0.0);
}
