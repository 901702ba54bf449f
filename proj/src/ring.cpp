#include "colloid/ring.hpp"

#include <cmath>
#include <stdexcept>

#include "colloid/errors.hpp"

namespace colloid {

namespace {

struct KahanSum {
    double sum = 0.0, comp = 0.0;
    void add(double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// sin(j pi / n) through the folded index, so arguments stay in (0, pi/2]
// where sin is well conditioned.
double sin_fraction(int j, int n) {
    const int m = std::min(j, n - j);
    return std::sin(m * M_PI / n);
}

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

std::pair<double, double> ring_sums(int n, const LJParams& p) {
    p.validate();
    if (n < 2) throw std::domain_error("ring_sums: need N >= 2");
    KahanSum sa, sb;
    for (int j = 1; j < n; ++j) {
        const double s = sin_fraction(j, n);
        const double c = std::cos(std::min(j, n - j) * M_PI / n);
        sa.add(std::pow(s, -p.alpha));
        sb.add(((p.B - p.B0) * c * c + p.B0) * std::pow(s, -p.beta));
    }
    const double a_tilde = p.alpha * p.A / std::pow(2.0, p.alpha + 1.0) * sa.sum;
    const double b_tilde = p.beta / std::pow(2.0, p.beta + 1.0) * sb.sum;
    return {a_tilde, b_tilde};
}

double ring_radial_profile(int n, const LJParams& p, double r) {
    if (!(r > 0.0)) throw std::domain_error("ring_radial_profile: r must be > 0");
    const auto [a_tilde, b_tilde] = ring_sums(n, p);
    return a_tilde * std::pow(r, -(p.alpha + 1.0)) - b_tilde * std::pow(r, -(p.beta + 1.0));
}

double ring_radius_bisection(int n, const LJParams& p, double rel_tol) {
    const auto [a_tilde, b_tilde] = ring_sums(n, p);
    auto f = [&](double r) {
        return a_tilde * std::pow(r, -(p.alpha + 1.0)) - b_tilde * std::pow(r, -(p.beta + 1.0));
    };
    const double guess = std::pow(a_tilde / b_tilde, 1.0 / (p.alpha - p.beta));
    double lo = 0.5 * guess, hi = 2.0 * guess;
    // f > 0 left of the root, f < 0 right of it; widen if the guess is off
    while (f(lo) <= 0.0) lo *= 0.5;
    while (f(hi) >= 0.0) hi *= 2.0;
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

RingSolution ring_radius(int n, const LJParams& p) {
    const auto [a_tilde, b_tilde] = ring_sums(n, p);
    RingSolution sol;
    sol.n_particles = n;
    sol.a_tilde = a_tilde;
    sol.b_tilde = b_tilde;
    sol.radius = std::pow(a_tilde / b_tilde, 1.0 / (p.alpha - p.beta));
    sol.nn_distance = 2.0 * sol.radius * std::sin(M_PI / n);

    const double root = ring_radius_bisection(n, p);
    if (std::abs(root - sol.radius) > 1e-10 * sol.radius) {
        throw ConvergenceError("ring_radius: explicit radius and bisection root disagree");
    }
    return sol;
}

SystemState ring_state(int n, double r) {
    if (n < 2) throw std::domain_error("ring_state: need N >= 2");
    if (!(r > 0.0)) throw std::domain_error("ring_state: r must be > 0");
    SystemState s;
    s.particles.resize(n);
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * M_PI * k / n;
        s.particles[k].x = {r * std::cos(t), r * std::sin(t), 0.0};
        s.particles[k].m = {-std::sin(t), std::cos(t), 0.0};
    }
    return s;
}

double ring_position_gradient_coeff(int n, const LJParams& p, double r) {
    const auto [a_tilde, b_tilde] = ring_sums(n, p);
    return b_tilde * std::pow(r, -(p.beta + 1.0)) - a_tilde * std::pow(r, -(p.alpha + 1.0));
}

double ring_spin_gradient_coeff(int n, const LJParams& p, double r) {
    p.validate();
    if (n < 2) throw std::domain_error("ring_spin_gradient_coeff: need N >= 2");
    KahanSum s;
    for (int j = 1; j < n; ++j) {
        const double sj = sin_fraction(j, n);
        s.add((p.B - p.B0) * std::pow(sj, -(p.beta - 2.0)) - p.B * std::pow(sj, -p.beta));
    }
    return s.sum / (std::pow(2.0, p.beta) * std::pow(r, p.beta));
}

RingGradientReport ring_gradient_check(int n, const LJParams& p, double r) {
    if (n < 3) throw std::domain_error("ring_gradient_check: need N >= 3");
    const auto [a_tilde, b_tilde] = ring_sums(n, p);
    const double rep_term = a_tilde * std::pow(r, -(p.alpha + 1.0));
    const double att_term = b_tilde * std::pow(r, -(p.beta + 1.0));
    const double scale = rep_term + att_term;

    RingGradientReport rep;
    rep.radius = r;
    rep.closed_coeff = att_term - rep_term;
    rep.radial_residual = std::abs(rep.closed_coeff) / scale;

    PhysicalParams phys;
    phys.lj = p;
    const SystemState s = ring_state(n, r);
    const ForceField ff = forces_and_torques(s, phys);

    // spin scale: sum of absolute summands of the closed-form coefficient
    double spin_scale = 0.0;
    for (int j = 1; j < n; ++j) {
        const double sj = sin_fraction(j, n);
        spin_scale += std::abs(p.B - p.B0) * std::pow(sj, -(p.beta - 2.0)) + p.B * std::pow(sj, -p.beta);
    }
    spin_scale /= std::pow(2.0, p.beta) * std::pow(r, p.beta);
    const double spin_coeff = ring_spin_gradient_coeff(n, p, r);

    for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d xhat = s.particles[k].x.normalized();
        const Eigen::Vector3d grad_x = -ff.force[k]; // engine force = -grad
        const double radial = grad_x.dot(xhat);
        const Eigen::Vector3d tangential = grad_x - radial * xhat;

        rep.closed_vs_generic = std::max(rep.closed_vs_generic, std::abs(radial - rep.closed_coeff) / scale);
        rep.tangential_residual = std::max(rep.tangential_residual, tangential.norm() / scale);

        const Eigen::Vector3d& mhat = s.particles[k].m;
        const Eigen::Vector3d gm = ff.spin_gradient[k];
        const double along = gm.dot(mhat);
        rep.spin_collinearity = std::max(rep.spin_collinearity, (gm - along * mhat).norm() / spin_scale);
        rep.spin_coeff_vs_generic = std::max(rep.spin_coeff_vs_generic, std::abs(along - spin_coeff) / spin_scale);
    }
    return rep;
}

RingAsymptoticsReport ring_asymptotics(const LJParams& p, const std::vector<int>& ns) {
    p.validate();
    if (ns.size() < 4) throw std::invalid_argument("ring_asymptotics: need at least four N values");
    for (size_t i = 1; i < ns.size(); ++i) {
        if (ns[i] <= ns[i - 1]) throw std::invalid_argument("ring_asymptotics: Ns must be increasing");
    }
    if (ns.front() < 8) throw std::invalid_argument("ring_asymptotics: smallest N must be >= 8");

    const DistanceSet ds = characteristic_distances(p);
    RingAsymptoticsReport rep;
    rep.h_bar = ds.h_bar;
    rep.regime = p.beta > 3.0 ? RingRateRegime::quadratic
                              : (p.beta == 3.0 ? RingRateRegime::quadratic_log : RingRateRegime::subquadratic);

    std::vector<double> xs, es;
    for (int n : ns) {
        const RingSolution sol = ring_radius(n, p);
        RingAsymptoticsRow row;
        row.n_particles = n;
        row.radius = sol.radius;
        row.nn_distance = sol.nn_distance;
        row.nn_error = std::abs(sol.nn_distance - ds.h_bar);
        switch (rep.regime) {
            case RingRateRegime::quadratic: row.scaled_error = row.nn_error * n * double(n); break;
            case RingRateRegime::quadratic_log:
                row.scaled_error = row.nn_error * n * double(n) / std::log(double(n));
                break;
            case RingRateRegime::subquadratic:
                row.scaled_error = row.nn_error * std::pow(double(n), p.beta - 1.0);
                break;
        }
        rep.rows.push_back(row);
        xs.push_back(n);
        es.push_back(row.nn_error);
    }
    // drop the two smallest N, they are pre-asymptotic
    rep.slope = loglog_slope(std::vector<double>(xs.begin() + 2, xs.end()),
                             std::vector<double>(es.begin() + 2, es.end()));
    return rep;
}

} // namespace colloid
