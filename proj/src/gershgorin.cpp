#include "colloid/gershgorin.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/LU>

#include "colloid/potential.hpp"
#include "colloid/random.hpp"

namespace colloid {

DecayMatrixSpec::DecayMatrixSpec(double gamma_, double c_, double d_)
    : gamma(gamma_), c(c_), d(d_) {
    if (!(gamma > 1.0)) throw std::invalid_argument("DecayMatrixSpec: gamma must be > 1");
    if (!(c >= 0.0)) throw std::invalid_argument("DecayMatrixSpec: c must be >= 0");
    if (!(d > 0.0)) throw std::invalid_argument("DecayMatrixSpec: d must be > 0");
    delta = 2.0 * (1.0 + std::pow(2.0, gamma)) * zeta(gamma);
    r_plus = (c / d) * (delta + std::sqrt(delta * delta + 8.0 * zeta(2.0 * gamma))) / 2.0;
    kappa = r_plus < 1.0 ? 1.0 / (1.0 - r_plus) : std::numeric_limits<double>::quiet_NaN();
}

HypothesisReport verify_hypotheses(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec) {
    if (m.rows() != m.cols()) throw std::invalid_argument("verify_hypotheses: matrix must be square");
    const Eigen::Index n = m.rows();

    HypothesisReport rep;
    rep.diag_dominant = true;
    rep.offdiag_decay = true;
    rep.diag_floor = true;
    rep.contraction = spec.r_plus < 1.0;

    double worst_dom = 0.0, worst_decay = 0.0, worst_floor = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        double off = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double a = std::abs(m(i, j));
            off += a;
            const double excess = a - spec.c / std::pow(std::abs(double(i - j)), spec.gamma);
            if (excess > 0.0) {
                rep.offdiag_decay = false;
                if (excess > worst_decay) {
                    worst_decay = excess;
                    rep.worst_decay_i = i;
                    rep.worst_decay_j = j;
                }
            }
        }
        const double dia = std::abs(m(i, i));
        if (!(off < dia)) {
            rep.diag_dominant = false;
            if (off - dia > worst_dom) {
                worst_dom = off - dia;
                rep.worst_dominant_row = i;
            }
        }
        if (dia < spec.d) {
            rep.diag_floor = false;
            if (spec.d - dia > worst_floor) {
                worst_floor = spec.d - dia;
                rep.worst_floor_row = i;
            }
        }
    }
    return rep;
}

HypothesisReport verify_hypotheses(const Eigen::MatrixXd& m, const DecayMatrixSpec& spec) {
    return verify_hypotheses(Eigen::MatrixXcd(m.cast<std::complex<double>>()), spec);
}

double decay_bound(const DecayMatrixSpec& spec, Eigen::Index i, Eigen::Index j) {
    if (!(spec.r_plus < 1.0)) throw std::domain_error("decay_bound: requires r_plus < 1");
    if (i == j) {
        return 1.0 / spec.d + zeta(2.0 * spec.gamma) * spec.kappa * spec.c * spec.c / std::pow(spec.d, 3);
    }
    return spec.kappa * spec.c / (spec.d * spec.d * std::pow(std::abs(double(i - j)), spec.gamma));
}

InverseDecayReport check_inverse_decay(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec) {
    InverseDecayReport rep;
    if (!(spec.r_plus < 1.0)) {
        rep.counterexample = true;
        rep.note = "hypotheses not satisfied: r_plus >= 1";
        return rep;
    }
    const Eigen::Index n = m.rows();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const Eigen::MatrixXcd inv = lu.inverse();
    if (!inv.allFinite()) {
        rep.counterexample = true;
        rep.note = "inversion produced non-finite entries";
        return rep;
    }

    rep.within_bound = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = std::abs(inv(i, j));
            const double bound = decay_bound(spec, i, j);
            const double ratio = bound > 0.0 ? v / bound
                                             : (v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_i = i;
                rep.worst_j = j;
            }
            if (v > bound) rep.within_bound = false;
        }
    }
    if (!rep.within_bound) {
        rep.counterexample = true;
        rep.note = "inverse entry exceeds the certified bound";
    }
    return rep;
}

InverseDecayReport check_inverse_decay(const Eigen::MatrixXd& m, const DecayMatrixSpec& spec) {
    return check_inverse_decay(Eigen::MatrixXcd(m.cast<std::complex<double>>()), spec);
}

NeumannReport neumann_coefficients(const Eigen::MatrixXcd& m, const DecayMatrixSpec& spec, int k_max) {
    if (k_max < 1) throw std::invalid_argument("neumann_coefficients: k_max must be >= 1");
    const Eigen::Index n = m.rows();
    const double cd = spec.c / spec.d;
    const double z2g = zeta(2.0 * spec.gamma);

    Eigen::MatrixXcd b = -m;
    for (Eigen::Index i = 0; i < n; ++i) {
        b.row(i) /= m(i, i);
        b(i, i) = 0.0; // exact by construction
    }

    NeumannReport rep;
    rep.within_bound = true;
    Eigen::MatrixXcd power = b;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) power = (power * b).eval();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const double v = std::abs(power(i, j));
                if (i == j) {
                    if (k == 1) {
                        rep.first_power_diag = std::max(rep.first_power_diag, v);
                        continue;
                    }
                    const double bound = 2.0 * z2g * cd * cd * std::pow(spec.r_plus, k - 2);
                    const double ratio = bound > 0.0 ? v / bound : (v == 0.0 ? 0.0 : 2.0);
                    if (ratio > rep.max_diag_ratio) {
                        rep.max_diag_ratio = ratio;
                        rep.worst_power = k;
                    }
                    if (v > bound) rep.within_bound = false;
                } else {
                    const double bound =
                        cd * std::pow(spec.r_plus, k - 1) / std::pow(std::abs(double(i - j)), spec.gamma);
                    const double ratio = bound > 0.0 ? v / bound : (v == 0.0 ? 0.0 : 2.0);
                    if (ratio > rep.max_offdiag_ratio) {
                        rep.max_offdiag_ratio = ratio;
                        rep.worst_power = k;
                    }
                    if (v > bound) rep.within_bound = false;
                }
            }
        }
    }
    if (rep.first_power_diag != 0.0) rep.within_bound = false;
    return rep;
}

Eigen::MatrixXd random_decay_matrix(int n, const DecayMatrixSpec& spec, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_decay_matrix: n must be >= 1");
    Rng rng(seed);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            m(i, j) = rng.uniform(-1.0, 1.0) * spec.c / std::pow(std::abs(double(i - j)), spec.gamma);
        }
    }
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j != i) off += std::abs(m(i, j));
        }
        // keep strict dominance and the diagonal floor whatever c/d is
        m(i, i) = std::max(spec.d, 1.05 * off) * (1.0 + 0.5 * rng.uniform());
    }
    return m;
}

} // namespace colloid
