#pragma once

#include <utility>
#include <vector>

#include "colloid/dynamics.hpp"
#include "colloid/potential.hpp"

namespace colloid {

struct RingSolution {
    int n_particles = 0;
    double a_tilde = 0.0;     // trigonometric repulsion sum
    double b_tilde = 0.0;     // trigonometric dipolar sum
    double radius = 0.0;      // r* = (a_tilde/b_tilde)^(1/(alpha-beta))
    double nn_distance = 0.0; // 2 r* sin(pi/N)
};

// The two lattice sums over j = 1..N-1 (compensated accumulation):
//   A~ = alpha A / 2^(alpha+1) * sum 1/sin(j pi/N)^alpha
//   B~ = beta / 2^(beta+1) * sum [(B - B0) cos^2(j pi/N) + B0] / sin(j pi/N)^beta
std::pair<double, double> ring_sums(int n, const LJParams& p);

// Radial derivative profile A~/r^(alpha+1) - B~/r^(beta+1); its unique zero
// is the critical radius.
double ring_radial_profile(int n, const LJParams& p, double r);

// Explicit critical radius; cross-checked internally against the bisection
// root of the radial profile to 1e-10 relative.
RingSolution ring_radius(int n, const LJParams& p);

// Independent route to the same radius: bracketed bisection on the profile.
double ring_radius_bisection(int n, const LJParams& p, double rel_tol = 1e-12);

// N particles on a circle of radius r in the z = 0 plane with tangential
// unit spins; zero velocities.
SystemState ring_state(int n, double r);

// Closed-form gradient coefficients at the ring: grad_x U = coeff * x_hat
// per particle, grad_m U = coeff * m_hat per particle.
double ring_position_gradient_coeff(int n, const LJParams& p, double r);
double ring_spin_gradient_coeff(int n, const LJParams& p, double r);

struct RingGradientReport {
    double radius = 0.0;
    double closed_coeff = 0.0;        // closed-form radial coefficient of grad_x U
    double closed_vs_generic = 0.0;   // max |engine radial - closed| / scale
    double radial_residual = 0.0;     // |closed_coeff| / scale (vanishes at r*)
    double tangential_residual = 0.0; // max non-radial force component / scale
    double spin_collinearity = 0.0;   // max off-axis part of grad_m U / spin scale
    double spin_coeff_vs_generic = 0.0;
};

// Compares the closed-form ring gradients with the generic pairwise force
// engine at radius r.
RingGradientReport ring_gradient_check(int n, const LJParams& p, double r);

struct RingAsymptoticsRow {
    int n_particles = 0;
    double radius = 0.0;
    double nn_distance = 0.0;
    double nn_error = 0.0; // |nn_distance - h_bar|
    double scaled_error = 0.0;
};

enum class RingRateRegime { quadratic, quadratic_log, subquadratic };

struct RingAsymptoticsReport {
    std::vector<RingAsymptoticsRow> rows;
    double slope = 0.0; // log-log fit of nn_error vs N, two smallest N excluded
    double h_bar = 0.0;
    RingRateRegime regime = RingRateRegime::quadratic;
};

// Convergence of the nearest-neighbor distance to h_bar across the sweep.
// scaled_error applies the regime weight: N^2 (beta > 3), N^2/log N
// (beta = 3), N^(beta-1) (beta < 3).
RingAsymptoticsReport ring_asymptotics(const LJParams& p, const std::vector<int>& ns);

} // namespace colloid
