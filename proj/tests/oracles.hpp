#pragma once

// Test-side oracles. Each one recomputes a quantity straight from its
// defining formula (brute-force sums, finite differences, coordinate
// descent) so it stays independent of the library code paths it checks.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "colloid/potential.hpp"

namespace oracle {

// Bracket for zeta(s): direct sum of `terms` reciprocal powers plus the two
// integral tail bounds.
inline std::pair<double, double> zeta_bracket(double s, long terms = 1000000) {
    double sum = 0.0;
    for (long k = terms; k >= 1; --k) sum += std::pow(double(k), -s);
    const double lo = sum + std::pow(double(terms + 1), 1.0 - s) / (s - 1.0);
    const double hi = sum + std::pow(double(terms), 1.0 - s) / (s - 1.0);
    return {lo, hi};
}

// Position-space chain energy: sum over unordered pairs of L(|p_i - p_j|).
inline double position_energy(const std::vector<double>& pos, const colloid::LJParams& p) {
    double e = 0.0;
    for (size_t i = 0; i < pos.size(); ++i) {
        for (size_t j = i + 1; j < pos.size(); ++j) {
            e += colloid::lj_value(std::abs(pos[j] - pos[i]), p);
        }
    }
    return e;
}

template <class F>
double central_diff(F&& f, double x, double step) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
}

// Gradient component transcribed directly from the nested-sum definition:
// dJ/dh_k = sum_{i=1..k} sum_{j=k..N-1} L'(h_i + ... + h_j), 1-indexed.
inline double chain_gradient_component(const Eigen::VectorXd& h, int k, const colloid::LJParams& p) {
    const int m = static_cast<int>(h.size()); // N-1
    double g = 0.0;
    for (int i = 1; i <= k; ++i) {
        for (int j = k; j <= m; ++j) {
            double s = 0.0;
            for (int l = i; l <= j; ++l) s += h[l - 1];
            g += colloid::lj_d1(s, p);
        }
    }
    return g;
}

// Cyclic coordinate descent on the chain functional, each 1-D problem solved
// by bisection of the partial derivative inside [lo, hi].
inline Eigen::VectorXd coordinate_descent(Eigen::VectorXd h, const colloid::LJParams& p,
                                          double lo, double hi, int max_sweeps = 400,
                                          double move_tol = 1e-12) {
    const int m = static_cast<int>(h.size());
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (int k = 1; k <= m; ++k) {
            auto partial = [&](double t) {
                Eigen::VectorXd probe = h;
                probe[k - 1] = t;
                return chain_gradient_component(probe, k, p);
            };
            double a = lo, b = hi, next;
            if (partial(a) >= 0.0) next = a;
            else if (partial(b) <= 0.0) next = b;
            else {
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (a + b);
                    (partial(mid) > 0.0 ? b : a) = mid;
                }
                next = 0.5 * (a + b);
            }
            moved = std::max(moved, std::abs(next - h[k - 1]));
            h[k - 1] = next;
        }
        if (moved < move_tol) break;
    }
    return h;
}

// Brute-force shifted-inverse double sum over k in [1, n] \ {i, j}.
inline double shifted_sum(int n, int i, int j, double gamma) {
    double s = 0.0;
    for (int k = 1; k <= n; ++k) {
        if (k == i || k == j) continue;
        s += std::pow(std::abs(double(i - k)), -gamma) * std::pow(std::abs(double(k - j)), -gamma);
    }
    return s;
}

} // namespace oracle
