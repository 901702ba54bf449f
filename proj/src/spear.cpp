#include "colloid/spear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "colloid/errors.hpp"

namespace colloid {

namespace {

constexpr int kMaxParticles = 4096; // dense Newton; O(N^3) per step

void check_spacings(const Eigen::VectorXd& h) {
    if (h.size() < 1) throw std::invalid_argument("spear: need at least one spacing (N >= 2)");
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0)) throw std::domain_error("spear: spacings must be positive");
    }
}

Eigen::VectorXd positions_from_spacings(const Eigen::VectorXd& h) {
    Eigen::VectorXd pos(h.size() + 1);
    pos[0] = 0.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) pos[i + 1] = pos[i] + h[i];
    return pos;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

double spear_energy(const Eigen::VectorXd& h, const LJParams& p) {
    check_spacings(h);
    const Eigen::Index n = h.size() + 1;
    const Eigen::VectorXd pos = positions_from_spacings(h);
    double e = 0.0;
    for (Eigen::Index a = 0; a + 1 < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            e += lj_value(pos[b] - pos[a], p);
        }
    }
    return e;
}

Eigen::VectorXd spear_gradient(const Eigen::VectorXd& h, const LJParams& p) {
    check_spacings(h);
    const Eigen::Index n = h.size() + 1;
    const Eigen::VectorXd pos = positions_from_spacings(h);
    // The pair (a, b) enters dJ/dh_k for every a < k <= b; accumulate the
    // range updates in a difference array and prefix-sum once.
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n + 1);
    for (Eigen::Index a = 0; a + 1 < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double v = lj_d1(pos[b] - pos[a], p);
            acc[a + 1] += v;
            acc[b + 1] -= v;
        }
    }
    Eigen::VectorXd g(n - 1);
    double run = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) {
        run += acc[k];
        g[k - 1] = run;
    }
    return g;
}

Eigen::MatrixXd spear_hessian(const Eigen::VectorXd& h, const LJParams& p) {
    check_spacings(h);
    const Eigen::Index n = h.size() + 1;
    const Eigen::VectorXd pos = positions_from_spacings(h);
    // Pair (a, b) adds L'' to the whole square block [a, b-1]^2 of the
    // Hessian (0-based); write the four corners of each block into a 2-D
    // difference table, then integrate.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index a = 0; a + 1 < n; ++a) {
        for (Eigen::Index b = a + 1; b < n; ++b) {
            const double w = lj_d2(pos[b] - pos[a], p);
            d(a, a) += w;
            d(a, b) -= w;
            d(b, a) -= w;
            d(b, b) += w;
        }
    }
    for (Eigen::Index i = 1; i < n; ++i) d.row(i) += d.row(i - 1);
    for (Eigen::Index j = 1; j < n; ++j) d.col(j) += d.col(j - 1);
    // the two prefix passes round asymmetrically; restore exact symmetry
    Eigen::MatrixXd out = d.topLeftCorner(n - 1, n - 1);
    out = 0.5 * (out + out.transpose()).eval();
    return out;
}

HessianBounds hessian_bounds(const LJParams& p) {
    const DistanceSet ds = characteristic_distances(p);
    const double zb = zeta(p.beta), zb1 = zeta(p.beta + 1.0);
    const double hat_pow = std::pow(ds.h_hat, p.beta + 2.0);
    const double check_pow = std::pow(ds.h_check, p.beta + 2.0);
    HessianBounds b;
    b.lambda_d = p.beta * p.B * (p.alpha - p.beta) / hat_pow -
                 p.beta * (p.beta + 1.0) * p.B * (zb1 - 1.0) / check_pow;
    b.lambda_nd = (p.beta + 1.0) * p.B / check_pow;
    b.lambda_1 = p.beta * p.B * (p.alpha - p.beta) / hat_pow -
                 p.beta * (p.beta + 1.0) * p.B * (zb1 + zb - 2.0) / check_pow;
    return b;
}

SpearSolution solve_spear(int n_particles, const LJParams& p, double tol, int max_iter) {
    p.validate();
    if (n_particles < 2) throw std::invalid_argument("solve_spear: need N >= 2");
    if (n_particles > kMaxParticles) throw std::invalid_argument("solve_spear: N exceeds dense-solver cap 4096");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_spear: tol must be > 0");

    const DistanceSet ds = characteristic_distances(p);
    const Eigen::Index m = n_particles - 1;

    auto project = [&](Eigen::VectorXd v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::clamp(v[i], ds.h_check, ds.h_hat);
        return v;
    };

    SpearSolution sol;
    sol.certificate = hessian_bounds(p);
    sol.certified = sol.certificate.lambda_1 > 0.0;

    Eigen::VectorXd x = Eigen::VectorXd::Constant(m, ds.h_bar);
    Eigen::VectorXd g = spear_gradient(x, p);
    double energy = spear_energy(x, p);
    double res = g.lpNorm<Eigen::Infinity>();
    sol.energy_history.push_back(energy);

    int it = 0;
    for (; it < max_iter && res > tol; ++it) {
        Eigen::VectorXd dir;
        const Eigen::MatrixXd hess = spear_hessian(x, p);
        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() == Eigen::Success) dir = ldlt.solve(-g);
        if (dir.size() != m || !dir.allFinite() || g.dot(dir) >= 0.0) dir = -g;

        // Armijo backtracking on the projected step.  The epsilon pad keeps
        // the test meaningful once energy differences reach rounding level;
        // a step that shrinks the gradient sup-norm is also accepted.
        const double pad = 8.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(energy));
        double t = 1.0;
        bool accepted = false;
        Eigen::VectorXd cand;
        double cand_energy = 0.0, cand_res = 0.0;
        Eigen::VectorXd cand_grad;
        while (t >= 1e-16) {
            cand = project(x + t * dir);
            cand_energy = spear_energy(cand, p);
            cand_grad = spear_gradient(cand, p);
            cand_res = cand_grad.lpNorm<Eigen::Infinity>();
            const bool armijo = cand_energy <= energy + 1e-4 * g.dot(cand - x) + pad;
            if (armijo || cand_res < res) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            throw ConvergenceError("solve_spear: line search stalled", x, res);
        }
        x = cand;
        g = cand_grad;
        energy = cand_energy;
        res = cand_res;
        sol.energy_history.push_back(energy);
    }

    if (res > tol) {
        throw ConvergenceError("solve_spear: max_iter exhausted", x, res);
    }

    sol.spacing = x;
    sol.energy = energy;
    sol.grad_norm = res;
    sol.iterations = it;
    sol.box_respected = (x.minCoeff() >= ds.h_check - 1e-12) && (x.maxCoeff() <= ds.h_hat + 1e-12);
    return sol;
}

RefinedBoundsReport refined_bounds(const SpearSolution& sol, const LJParams& p) {
    p.validate();
    const DistanceSet ds = characteristic_distances(p);
    const int n = static_cast<int>(sol.spacing.size()) + 1;

    RefinedBoundsReport r;
    r.alpha_star_value = alpha_star(p.beta);
    r.hypotheses_hold = (p.beta >= 3.0) && (p.alpha > r.alpha_star_value);
    r.h_bar = ds.h_bar;
    r.h_tilde = ds.h_tilde;
    r.min_spacing = sol.spacing.minCoeff();
    r.max_spacing = sol.spacing.maxCoeff();
    r.lower_margin = r.min_spacing - ds.h_bar;
    r.upper_margin = r.max_spacing - ds.h_tilde;
    r.lower_scaled = r.lower_margin * std::pow(n, p.beta - 1.0);
    r.upper_scaled = std::max(r.upper_margin, 0.0) * std::pow(n, p.beta);
    return r;
}

AsymptoticReport asymptotic_report(const LJParams& p, const std::vector<int>& ns, double tol) {
    p.validate();
    if (ns.size() < 2) throw std::invalid_argument("asymptotic_report: need at least two N values");
    for (size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] <= ns[i - 1]) throw std::invalid_argument("asymptotic_report: Ns must be increasing");
    }
    const DistanceSet ds = characteristic_distances(p);

    AsymptoticReport rep;
    rep.h_bar = ds.h_bar;
    rep.h_tilde = ds.h_tilde;
    std::vector<double> xs, ce, be;
    for (int n : ns) {
        const SpearSolution sol = solve_spear(n, p, tol);
        AsymptoticRow row;
        row.n_particles = n;
        row.center_spacing = sol.spacing[n / 2 - 1]; // h*_{floor(N/2)}, 1-indexed
        row.boundary_spacing = sol.spacing[0];
        row.center_error = std::abs(row.center_spacing - ds.h_bar);
        row.boundary_error = std::abs(row.boundary_spacing - ds.h_tilde);
        rep.rows.push_back(row);
        xs.push_back(n);
        ce.push_back(row.center_error);
        be.push_back(row.boundary_error);
    }
    rep.center_slope = loglog_slope(xs, ce);
    rep.boundary_slope = loglog_slope(xs, be);
    return rep;
}

} // namespace colloid
