#pragma once

#include "ddl/specfun.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace ddl {

struct WedgeMapParams {
    double L = 0.0;
    double epsilon = 0.0;
    double eta_star = 0.0;
    EllipticModulus m;
    double K = 0.0;        // K(m)
    double Kp = 0.0;       // K(1-m)
    double kprime = 0.0;   // tanh(epsilon/2)
    double eta_max = 0.0;
    double h_min = 0.0;    // asymptotic minimum thickness
    double beta = 0.0;
    double b = 0.0;
    double y_max = 0.0;
};

// Fills every derived field; beta and h_min follow from the small-epsilon
// relations. Throws if eta_star is outside (0, eta_max).
WedgeMapParams make_wedge_map(double L, double epsilon, double eta_star);
WedgeMapParams params_from_physical(double h_min, double beta, double L);

// zeta in [-L/2, L/2] x [-eta*, eta*]; the upper half maps to the layer.
cplx forward_map(cplx zeta, const WedgeMapParams& p);
cplx map_derivative(cplx zeta, const WedgeMapParams& p);
double map_metric(cplx zeta, const WedgeMapParams& p);

// Height of the top surface at xi, and its minimum (at xi = 0).
double top_height(double xi, const WedgeMapParams& p);
double min_thickness(const WedgeMapParams& p);
double compute_y_max(const WedgeMapParams& p);

// Area under the top surface over one period.
double domain_area(const WedgeMapParams& p);
// Re-solves eta* so the mean thickness is 1.
WedgeMapParams normalize_area(const WedgeMapParams& p);
// Period L for which params_from_physical(h_min, beta, L) has mean thickness 1.
double unit_mean_length(double h_min, double beta, double L_lo, double L_hi);

// sinh(beta*zeta)/sin(beta)
cplx inner_map(cplx zeta_t, double beta);

// Local current-density law x_psi = F / j(nu/F) used to place the profile.
using FluxLaw = std::function<double(double thickness)>;

// F(psi) = h_min sec^2(delta psi / Phi) near psi = 0, joined with a C2
// quintic wing that flattens to H at psi = +-QL/2.
struct SmoothProfile {
    double h_min = 0.0, a = 0.0, L = 0.0, Phi = 1.0;
    double delta = 0.0;
    double junction_height = 0.5;
    double psi_j = 0.0;   // end of the sec^2 core
    double psi_e = 0.0;   // half period in psi
    double H = 0.0;       // thickness at the period edge
    std::array<double, 6> wing{};

    double QL() const { return 2.0 * psi_e; }
    double F(double psi) const;
    // physical profile near the minimum in inner variables
    double h_inner(double X) const { return h_min * (1.0 + X * X); }
    double x_scale() const { return std::sqrt(2.0 * a * h_min); }
};

struct ProfileMeasure {
    double L = 0.0;
    double mean = 0.0;
};

SmoothProfile make_smooth_profile(double h_min, double a, double Phi, double psi_e, double H,
                                  double junction_height = 0.5);
ProfileMeasure measure_profile(const SmoothProfile& prof, const FluxLaw& flux);

// Chooses psi_e and H so that, under `flux`, the period is L and the mean
// thickness is 1. With an empty flux law the resistor limit j = Phi is used.
SmoothProfile build_smooth_profile(double h_min, double a, double L, double Phi,
                                   const FluxLaw& flux = {}, double junction_height = 0.5);

}  // namespace ddl
