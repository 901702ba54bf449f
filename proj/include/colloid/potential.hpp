#pragma once

#include <stdexcept>

namespace colloid {

// Model constants for the pair interactions.  A/h^alpha is the soft-sphere
// repulsion, B/h^beta the attractive tail of the scalar potential
// L(h) = A h^-alpha - B h^-beta, and B0 the transverse dipolar amplitude
// used by the full 3-D energy.
struct LJParams {
    double A = 1.0;
    double B = 1.0;
    double B0 = 1.0;
    double alpha = 12.0;
    double beta = 3.0;

    LJParams() = default;
    LJParams(double A_, double B_, double B0_, double alpha_, double beta_)
        : A(A_), B(B_), B0(B0_), alpha(alpha_), beta(beta_) {
        validate();
    }

    // Throws std::invalid_argument naming the offending field.
    void validate() const;
};

// The characteristic lengths of L and of its lattice sums.  All of them are
// of the form (ratio)^(1/(alpha-beta)); see characteristic_distances().
struct DistanceSet {
    double h_check;  // zero of  beta*B*zeta(beta)/x^(beta+1) - alpha*A/x^(alpha+1)
    double h_bar;    // zero of the weighted series sum_l l*L'(l x)
    double h_hat;    // minimizer of L
    double h_tilde;  // zero of the series sum_l L'(l x)
    double h_dag;    // zero of L''
    double h_ddag;   // zero of L'''
    double h_sharp;  // maximizer bound of the series sum_l L'(l x)
    double h_flat;   // maximizer bound of the weighted series
};

// Scalar potential and derivatives.  h must be positive.
double lj_value(double h, const LJParams& p);
double lj_d1(double h, const LJParams& p);
double lj_d2(double h, const LJParams& p);
double lj_d3(double h, const LJParams& p);

// Lattice-summed derivative series, closed forms:
//   lj_sharp(x) = sum_{l>=1}   L'(l x) = beta*B*zeta(beta+1)*x^-(beta+1) - alpha*A*zeta(alpha+1)*x^-(alpha+1)
//   lj_flat(x)  = sum_{l>=1} l*L'(l x) = beta*B*zeta(beta)  *x^-(beta+1) - alpha*A*zeta(alpha)  *x^-(alpha+1)
double lj_sharp(double x, const LJParams& p);
double lj_flat(double x, const LJParams& p);

// Riemann zeta for s > 1, by direct summation plus a midpoint-corrected
// integral tail; absolute error below tol.
double zeta(double s, double tol = 1e-12);

// zeta(s) - 1 with full relative accuracy even when zeta(s) rounds to 1
// (s beyond ~53 in doubles).
double zeta_minus_one(double s, double tol = 1e-12);

DistanceSet characteristic_distances(const LJParams& p);

// log(h_bar/h_check), log(h_tilde/h_bar), log(h_hat/h_tilde).  Evaluated
// through zeta_minus_one and log1p, so each margin stays strictly positive
// even where the distances themselves round to equal doubles.
struct OrderingMargins {
    double check_to_bar;
    double bar_to_tilde;
    double tilde_to_hat;
};

OrderingMargins distance_ordering_margins(const LJParams& p);

// F_beta and G_beta, the functions whose largest zeros define the two
// thresholds.  Exposed so callers can check root residuals.
double alpha_dag_residual(double beta, double alpha);
double alpha_star_residual(double beta, double alpha);

// Convexity/uniqueness threshold: largest zero of F_beta.
double alpha_dag(double beta, double tol = 1e-8);

// Asymptotic-rate threshold: largest zero of G_beta.  Always >= alpha_dag.
double alpha_star(double beta, double tol = 1e-8);

} // namespace colloid
