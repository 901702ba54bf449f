#include "colloid/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "colloid/errors.hpp"

namespace colloid {

void LJParams::validate() const {
    if (!(A > 0.0)) throw std::invalid_argument("LJParams: A must be > 0");
    if (!(B > 0.0)) throw std::invalid_argument("LJParams: B must be > 0");
    if (!(B0 > 0.0)) throw std::invalid_argument("LJParams: B0 must be > 0");
    if (!(beta > 1.0)) throw std::invalid_argument("LJParams: beta must be > 1");
    if (!(alpha > beta)) throw std::invalid_argument("LJParams: alpha must be > beta");
}

namespace {

void require_positive(double h) {
    if (!(h > 0.0)) throw std::domain_error("lj: argument must be positive");
}

} // namespace

double lj_value(double h, const LJParams& p) {
    require_positive(h);
    return p.A * std::pow(h, -p.alpha) - p.B * std::pow(h, -p.beta);
}

double lj_d1(double h, const LJParams& p) {
    require_positive(h);
    return -p.alpha * p.A * std::pow(h, -(p.alpha + 1.0)) + p.beta * p.B * std::pow(h, -(p.beta + 1.0));
}

double lj_d2(double h, const LJParams& p) {
    require_positive(h);
    return p.alpha * (p.alpha + 1.0) * p.A * std::pow(h, -(p.alpha + 2.0)) -
           p.beta * (p.beta + 1.0) * p.B * std::pow(h, -(p.beta + 2.0));
}

double lj_d3(double h, const LJParams& p) {
    require_positive(h);
    return -p.alpha * (p.alpha + 1.0) * (p.alpha + 2.0) * p.A * std::pow(h, -(p.alpha + 3.0)) +
           p.beta * (p.beta + 1.0) * (p.beta + 2.0) * p.B * std::pow(h, -(p.beta + 3.0));
}

double lj_sharp(double x, const LJParams& p) {
    require_positive(x);
    return p.beta * p.B * zeta(p.beta + 1.0) * std::pow(x, -(p.beta + 1.0)) -
           p.alpha * p.A * zeta(p.alpha + 1.0) * std::pow(x, -(p.alpha + 1.0));
}

double lj_flat(double x, const LJParams& p) {
    require_positive(x);
    return p.beta * p.B * zeta(p.beta) * std::pow(x, -(p.beta + 1.0)) -
           p.alpha * p.A * zeta(p.alpha) * std::pow(x, -(p.alpha + 1.0));
}

namespace {

// Direct sum of k^-s for k in [k_from, K] plus the midpoint-corrected
// integral tail int_{K+1/2}^inf t^-s dt; the midpoint correction keeps the
// tail error below s (K+1/2)^-(s+1) / 24.
double zeta_tail_sum(double s, double tol, long k_from) {
    const double k_real = std::pow(s / (6.0 * tol), 1.0 / (s + 1.0));
    const long K = std::lround(std::clamp(k_real, 16.0, 2.0e7));

    double sum = 0.0, comp = 0.0;
    for (long k = K; k >= k_from; --k) { // ascending magnitude
        const double term = std::pow(static_cast<double>(k), -s);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double tail = std::pow(K + 0.5, 1.0 - s) / (s - 1.0);
    return (sum - comp) + tail;
}

} // namespace

double zeta(double s, double tol) {
    if (!(s > 1.0)) throw std::domain_error("zeta: s must be > 1");
    if (!(tol > 0.0)) throw std::domain_error("zeta: tol must be > 0");
    return zeta_tail_sum(s, tol, 1);
}

double zeta_minus_one(double s, double tol) {
    if (!(s > 1.0)) throw std::domain_error("zeta_minus_one: s must be > 1");
    if (!(tol > 0.0)) throw std::domain_error("zeta_minus_one: tol must be > 0");
    return zeta_tail_sum(s, tol, 2);
}

DistanceSet characteristic_distances(const LJParams& p) {
    p.validate();
    const double q = p.alpha * p.A / (p.beta * p.B);
    const double e = 1.0 / (p.alpha - p.beta);
    const double za = zeta(p.alpha), zb = zeta(p.beta);
    const double za1 = zeta(p.alpha + 1.0), zb1 = zeta(p.beta + 1.0);
    const double d1 = (p.alpha + 1.0) / (p.beta + 1.0);
    const double d2 = (p.alpha + 2.0) / (p.beta + 2.0);

    DistanceSet d;
    d.h_hat = std::pow(q, e);
    d.h_check = std::pow(q / zb, e);
    d.h_bar = std::pow(q * za / zb, e);
    d.h_tilde = std::pow(q * za1 / zb1, e);
    d.h_dag = std::pow(q * d1, e);
    d.h_ddag = std::pow(q * d1 * d2, e);
    d.h_sharp = std::pow(q * d1 * za1 / zb1, e);
    d.h_flat = std::pow(q * d1 * za / zb, e);
    return d;
}

OrderingMargins distance_ordering_margins(const LJParams& p) {
    p.validate();
    const double lza = std::log1p(zeta_minus_one(p.alpha));
    const double lzb = std::log1p(zeta_minus_one(p.beta));
    const double lza1 = std::log1p(zeta_minus_one(p.alpha + 1.0));
    const double lzb1 = std::log1p(zeta_minus_one(p.beta + 1.0));
    const double e = 1.0 / (p.alpha - p.beta);
    OrderingMargins m;
    m.check_to_bar = lza * e;
    m.bar_to_tilde = ((lza1 - lza) + (lzb - lzb1)) * e;
    m.tilde_to_hat = (lzb1 - lza1) * e;
    return m;
}

double alpha_dag_residual(double beta, double alpha) {
    const double zb = zeta(beta), zb1 = zeta(beta + 1.0);
    return alpha - beta -
           std::pow(zb, (beta + 2.0) / (alpha - beta)) * (beta + 1.0) * (zb1 + zb - 2.0);
}

double alpha_star_residual(double beta, double alpha) {
    const double zb = zeta(beta), zb1 = zeta(beta + 1.0);
    const double delta = 2.0 * (1.0 + std::pow(2.0, beta)) * zb;
    const double root = delta + std::sqrt(delta * delta + 8.0 * zeta(2.0 * beta));
    const double dc = beta * (alpha - beta) / ((beta + 1.0) * std::pow(zb, (beta + 2.0) / (alpha - beta))) -
                      beta * (zb1 - 1.0);
    return (2.0 / root) * dc - 1.0;
}

namespace {

// Largest zero of f on (beta, +inf).  Geometric expansion of the offset from
// beta keeps the last sign change found before the scan cap, then bisects.
template <class F>
double largest_zero(F&& f, double beta, double tol, const char* name) {
    const double cap = 1.0e6;
    double off = 10.0 * tol;
    double x_prev = beta + off;
    double f_prev = f(x_prev);
    double lo = std::numeric_limits<double>::quiet_NaN(), hi = lo;
    while (beta + off < cap) {
        off *= 1.5;
        const double x = std::min(beta + off, cap);
        const double fx = f(x);
        if ((f_prev <= 0.0 && fx > 0.0) || (f_prev >= 0.0 && fx < 0.0)) {
            lo = x_prev;
            hi = x;
        }
        x_prev = x;
        f_prev = fx;
    }
    if (std::isnan(lo)) {
        throw ConvergenceError(std::string(name) + ": no sign change up to scan cap 1e6");
    }
    double flo = f(lo);
    while (hi - lo > 0.5 * tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((flo <= 0.0 && fm <= 0.0) || (flo >= 0.0 && fm >= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double alpha_dag(double beta, double tol) {
    if (!(beta > 1.0)) throw std::domain_error("alpha_dag: beta must be > 1");
    if (!(tol > 0.0)) throw std::domain_error("alpha_dag: tol must be > 0");
    const double zb = zeta(beta), zb1 = zeta(beta + 1.0);
    const double tail = (beta + 1.0) * (zb1 + zb - 2.0);
    auto f = [&](double a) {
        return a - beta - std::pow(zb, (beta + 2.0) / (a - beta)) * tail;
    };
    return largest_zero(f, beta, tol, "alpha_dag");
}

double alpha_star(double beta, double tol) {
    if (!(beta > 1.0)) throw std::domain_error("alpha_star: beta must be > 1");
    if (!(tol > 0.0)) throw std::domain_error("alpha_star: tol must be > 0");
    const double zb = zeta(beta), zb1 = zeta(beta + 1.0);
    const double delta = 2.0 * (1.0 + std::pow(2.0, beta)) * zb;
    const double root = delta + std::sqrt(delta * delta + 8.0 * zeta(2.0 * beta));
    auto g = [&](double a) {
        const double dc = beta * (a - beta) / ((beta + 1.0) * std::pow(zb, (beta + 2.0) / (a - beta))) -
                          beta * (zb1 - 1.0);
        return (2.0 / root) * dc - 1.0;
    };
    return largest_zero(g, beta, tol, "alpha_star");
}

} // namespace colloid
