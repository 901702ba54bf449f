#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

namespace colloid {

// Hypothesis class for the quantitative inverse-decay estimate: matrices
// with |M_ij| <= c/|i-j|^gamma off the diagonal and |M_ii| >= d.  delta,
// r_plus and kappa are the explicit constants of the estimate; all bound
// claims require r_plus < 1.
struct DecayMatrixSpec {
    double gamma = 2.0;
    double c = 0.0;
    double d = 1.0;
    double delta = 0.0;  // 2 (1 + 2^gamma) zeta(gamma)
    double r_plus = 0.0; // (c/d) (delta + sqrt(delta^2 + 8 zeta(2 gamma))) / 2
    double kappa = 0.0;  // 1 / (1 - r_plus); NaN when r_plus >= 1

    DecayMatrixSpec(double gamma, double c, double d);
};

struct HypothesisReport {
    bool diag_dominant = false; // strict row diagonal dominance
    bool offdiag_decay = false; // |M_ij| <= c/|i-j|^gamma
    bool diag_floor = false;    // |M_ii| >= d
    bool contraction = false;   // r_plus < 1
    Eigen::Index worst_dominant_row = -1;
    Eigen::Index worst_decay_i = -1, worst_decay_j = -1;
    Eigen::Index worst_floor_row = -1;

    bool all_pass() const { return diag_dominant && offdiag_decay && diag_floor && contraction; }
};

HypothesisReport verify_hypotheses(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec);
HypothesisReport verify_hypotheses(const Eigen::MatrixXd& m, const DecayMatrixSpec& spec);

// Certified bound on |(M^-1)_ij|:
//   i != j: kappa c / (d^2 |i-j|^gamma)
//   i == j: 1/d + zeta(2 gamma) kappa c^2 / d^3
// Requires r_plus < 1.
double decay_bound(const DecayMatrixSpec& spec, Eigen::Index i, Eigen::Index j);

struct InverseDecayReport {
    bool within_bound = false;
    double max_ratio = 0.0; // max over entries of |inv| / bound
    Eigen::Index worst_i = -1, worst_j = -1;
    bool counterexample = false; // bound violated or inversion failed
    std::string note;
};

// Dense-inversion oracle: inverts M by pivoted LU and checks every entry of
// the inverse against decay_bound.
InverseDecayReport check_inverse_decay(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec);
InverseDecayReport check_inverse_decay(const Eigen::MatrixXd& m, const DecayMatrixSpec& spec);

struct NeumannReport {
    bool within_bound = false;
    double max_offdiag_ratio = 0.0;
    double max_diag_ratio = 0.0;
    double first_power_diag = 0.0; // max |B_ii|, exactly 0 by construction
    int worst_power = 0;
};

// Forms B = I - D^-1 M and checks the per-power entry bounds
//   |(B^k)_ij| <= (c/d) r_plus^(k-1) / |i-j|^gamma   (i != j)
//   |(B^k)_ii| <= 2 zeta(2 gamma) (c/d)^2 r_plus^(k-2)   (k >= 2)
// for k = 1..k_max.
NeumannReport neumann_coefficients(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec, int k_max);

// Random matrix satisfying the hypotheses: diagonal >= d with random sign-free
// excess, off-diagonal uniformly random in [-c,c]/|i-j|^gamma.  Deterministic
// in the seed.
Eigen::MatrixXd random_decay_matrix(int n, const DecayMatrixSpec& spec, std::uint64_t seed);

} // namespace colloid
