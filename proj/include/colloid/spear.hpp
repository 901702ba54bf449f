#pragma once

#include <vector>

#include <Eigen/Core>

#include "colloid/potential.hpp"

namespace colloid {

// Uniform bounds on the chain Hessian over the box [h_check, h_hat]^(N-1):
// lambda_d is the diagonal floor, lambda_nd the off-diagonal decay amplitude
// (|H_uv| <= lambda_nd / |u-v|^beta), lambda_1 the diagonal-dominance gap.
// lambda_1 > 0 exactly when alpha exceeds the convexity threshold.
struct HessianBounds {
    double lambda_d = 0.0;
    double lambda_nd = 0.0;
    double lambda_1 = 0.0;
};

HessianBounds hessian_bounds(const LJParams& p);

// Chain functional over spacings h = (h_1, ..., h_{N-1}):
//   J(h) = sum over particle pairs of L(distance between them).
// All three evaluators run in O(N^2) via prefix sums of the spacings.
double spear_energy(const Eigen::VectorXd& spacings, const LJParams& p);
Eigen::VectorXd spear_gradient(const Eigen::VectorXd& spacings, const LJParams& p);
Eigen::MatrixXd spear_hessian(const Eigen::VectorXd& spacings, const LJParams& p);

struct SpearSolution {
    Eigen::VectorXd spacing;
    double energy = 0.0;
    double grad_norm = 0.0; // sup norm of the gradient at the solution
    int iterations = 0;
    HessianBounds certificate;
    bool certified = false;     // certificate.lambda_1 > 0
    bool box_respected = false; // every spacing in [h_check, h_hat]
    std::vector<double> energy_history;
};

// Projected damped Newton from the uniform initial guess h_bar, clamped to
// [h_check, h_hat], Armijo backtracking, steepest-descent fallback.
// Throws ConvergenceError (with the last iterate) if max_iter is exhausted.
SpearSolution solve_spear(int n_particles, const LJParams& p, double tol = 1e-10,
                          int max_iter = 200);

// Margin report against the refined spacing bounds h_bar < h_k <= h_tilde + C/N^beta.
struct RefinedBoundsReport {
    bool hypotheses_hold = false; // beta >= 3 and alpha > alpha_star(beta)
    double alpha_star_value = 0.0;
    double h_bar = 0.0;
    double h_tilde = 0.0;
    double min_spacing = 0.0;
    double max_spacing = 0.0;
    double lower_margin = 0.0; // min_spacing - h_bar
    double upper_margin = 0.0; // max_spacing - h_tilde
    double lower_scaled = 0.0; // lower_margin * N^(beta-1)
    double upper_scaled = 0.0; // max(upper_margin, 0) * N^beta
};

RefinedBoundsReport refined_bounds(const SpearSolution& sol, const LJParams& p);

struct AsymptoticRow {
    int n_particles = 0;
    double center_spacing = 0.0;   // h*_{floor(N/2)}
    double boundary_spacing = 0.0; // h*_1
    double center_error = 0.0;     // |center_spacing - h_bar|
    double boundary_error = 0.0;   // |boundary_spacing - h_tilde|
};

struct AsymptoticReport {
    std::vector<AsymptoticRow> rows;
    double center_slope = 0.0;   // log-log regression of center_error vs N
    double boundary_slope = 0.0; // log-log regression of boundary_error vs N
    double h_bar = 0.0;
    double h_tilde = 0.0;
};

// Solves the chain for each N in ns (strictly increasing) and fits the
// convergence rates of the center and boundary spacings.
AsymptoticReport asymptotic_report(const LJParams& p, const std::vector<int>& ns,
                                   double tol = 1e-10);

} // namespace colloid
