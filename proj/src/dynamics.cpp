#include "colloid/dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Geometry>

#include <Eigen/Eigenvalues>

#include "colloid/errors.hpp"
#include "colloid/random.hpp"

namespace colloid {

namespace {

double pair_distance_checked(const Eigen::Vector3d& r) {
    const double rn = r.norm();
    if (!(rn > 0.0)) throw std::domain_error("dynamics: coincident particle positions");
    return rn;
}

// (1 - exp(-zeta dt / inertia)) / zeta, continuous at zeta = 0.
double drag_factor(double zeta, double dt, double inertia) {
    if (zeta == 0.0) return dt / inertia;
    return -std::expm1(-zeta * dt / inertia) / zeta;
}

Eigen::Vector3d rodrigues(const Eigen::Vector3d& omega, double dt, const Eigen::Vector3d& m) {
    const double w = omega.norm();
    const double theta = w * dt;
    if (theta < 1e-300) return m;
    const Eigen::Vector3d axis = omega / w;
    const double c = std::cos(theta), s = std::sin(theta);
    return m * c + axis.cross(m) * s + axis * (axis.dot(m)) * (1.0 - c);
}

} // namespace

double total_energy(const SystemState& s, const LJParams& p) {
    const int n = s.size();
    double e = 0.0;
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < k; ++l) {
            const Eigen::Vector3d r = s.particles[k].x - s.particles[l].x;
            const double rn = pair_distance_checked(r);
            const Eigen::Vector3d& mk = s.particles[k].m;
            const Eigen::Vector3d& ml = s.particles[l].m;
            e += p.B0 * mk.dot(ml) * std::pow(rn, -p.beta) -
                 (p.B + p.B0) * mk.dot(r) * ml.dot(r) * std::pow(rn, -(p.beta + 2.0)) +
                 p.A * std::pow(rn, -p.alpha);
        }
    }
    return e;
}

double kinetic_energy(const SystemState& s, const PhysicalParams& p) {
    double e = 0.0;
    const double inertia = p.inertia();
    for (const Particle& q : s.particles) {
        e += 0.5 * p.mu * q.v.squaredNorm() + 0.5 * inertia * q.omega.squaredNorm();
    }
    return e;
}

double ForceField::sup_norm() const {
    double m = 0.0;
    for (const auto& f : force) m = std::max(m, f.lpNorm<Eigen::Infinity>());
    for (const auto& t : torque) m = std::max(m, t.lpNorm<Eigen::Infinity>());
    return m;
}

ForceField forces_and_torques(const SystemState& s, const PhysicalParams& p) {
    const int n = s.size();
    const LJParams& lj = p.lj;

    ForceField out;
    out.force.assign(n, Eigen::Vector3d::Zero());
    out.spin_gradient.assign(n, Eigen::Vector3d::Zero());
    out.torque.assign(n, Eigen::Vector3d::Zero());

    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < k; ++l) {
            const Eigen::Vector3d r = s.particles[k].x - s.particles[l].x;
            const double rn = pair_distance_checked(r);
            const Eigen::Vector3d& mk = s.particles[k].m;
            const Eigen::Vector3d& ml = s.particles[l].m;

            const double rb2 = std::pow(rn, -(lj.beta + 2.0)); // 1/rn^(beta+2)
            const double mkr = mk.dot(r), mlr = ml.dot(r);

            // grad_{x_k} of the pair energy
            Eigen::Vector3d g = -lj.beta * lj.B0 * mk.dot(ml) * rb2 * r;
            g -= (lj.B + lj.B0) * rb2 * (mlr * mk + mkr * ml);
            g += (lj.beta + 2.0) * (lj.B + lj.B0) * mkr * mlr * rb2 / (rn * rn) * r;
            g -= lj.alpha * lj.A * std::pow(rn, -(lj.alpha + 2.0)) * r;

            out.force[k] -= g;
            out.force[l] += g; // grad_{x_l} = -grad_{x_k}

            const double rb = rb2 * rn * rn; // 1/rn^beta
            out.spin_gradient[k] += lj.B0 * rb * ml - (lj.B + lj.B0) * mlr * rb2 * r;
            out.spin_gradient[l] += lj.B0 * rb * mk - (lj.B + lj.B0) * mkr * rb2 * r;
        }
    }
    for (int k = 0; k < n; ++k) {
        out.torque[k] = s.particles[k].m.cross(-out.spin_gradient[k]);
    }
    return out;
}

void step(SystemState& s, double dt, const PhysicalParams& p) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const ForceField ff = forces_and_torques(s, p);

    const double zt = p.zeta_tr(), zr = p.zeta_r(), inertia = p.inertia();
    const double ef_tr = std::exp(-zt * dt / p.mu);
    const double df_tr = drag_factor(zt, dt, p.mu);
    const double ef_r = std::exp(-zr * dt / inertia);
    const double df_r = drag_factor(zr, dt, inertia);

    const int n = s.size();
    for (int k = 0; k < n; ++k) {
        Particle& q = s.particles[k];
        q.v = q.v * ef_tr + ff.force[k] * df_tr;
        q.x += dt * q.v;
        q.omega = q.omega * ef_r + ff.torque[k] * df_r;
        q.m = rodrigues(q.omega, dt, q.m).normalized();
    }
    s.time += dt;

    const double dmin = min_pair_distance(s);
    if (dmin < 1e-3 * p.radius) {
        throw OverlapError("step: particle overlap", -1, -1, dmin);
    }
}

const char* to_string(StructureKind k) {
    switch (k) {
        case StructureKind::spear: return "spear";
        case StructureKind::ring: return "ring";
        default: return "other";
    }
}

StructureKind classify_structure(const SystemState& s) {
    const int n = s.size();
    if (n < 3) return StructureKind::other;

    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const Particle& q : s.particles) centroid += q.x;
    centroid /= n;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const Particle& q : s.particles) {
        const Eigen::Vector3d d = q.x - centroid;
        cov += d * d.transpose();
    }
    cov /= n;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    const Eigen::Vector3d ev = es.eigenvalues(); // ascending
    const double s1 = std::sqrt(std::max(ev[2], 0.0));
    const double s2 = std::sqrt(std::max(ev[1], 0.0));
    const double s3 = std::sqrt(std::max(ev[0], 0.0));
    if (s1 > 0.0 && s2 < 0.1 * s1 && s3 < 0.1 * s1) return StructureKind::spear;

    double mean_r = 0.0;
    for (const Particle& q : s.particles) mean_r += (q.x - centroid).norm();
    mean_r /= n;
    double var_r = 0.0;
    for (const Particle& q : s.particles) {
        const double d = (q.x - centroid).norm() - mean_r;
        var_r += d * d;
    }
    var_r /= n;
    if (mean_r > 0.0 && std::sqrt(var_r) < 0.05 * mean_r) return StructureKind::ring;
    return StructureKind::other;
}

TrajectorySummary run(const SystemState& initial, const PhysicalParams& p, const RunOptions& opt) {
    if (!(opt.dt > 0.0)) throw std::invalid_argument("run: dt must be > 0");
    if (opt.cadence < 1) throw std::invalid_argument("run: cadence must be >= 1");

    TrajectorySummary out;
    SystemState s = initial;

    auto observe = [&](const ForceField& ff) {
        ObserverSample sample;
        sample.time = s.time;
        sample.energy = total_energy(s, p.lj);
        sample.mechanical_energy = sample.energy + kinetic_energy(s, p);
        sample.grad_norm = ff.sup_norm();
        if (!std::isfinite(sample.energy) || !std::isfinite(sample.grad_norm)) {
            throw IntegratorError("run: non-finite energy or gradient", s.time, out.steps);
        }
        out.samples.push_back(sample);
        if (opt.keep_snapshots) out.snapshots.push_back(s);
        return sample.grad_norm;
    };

    double grad = observe(forces_and_torques(s, p));
    const long max_steps = static_cast<long>(std::ceil(opt.horizon / opt.dt));
    while (out.steps < max_steps && !(opt.grad_tol > 0.0 && grad < opt.grad_tol)) {
        step(s, opt.dt, p);
        ++out.steps;
        if (out.steps % opt.cadence == 0 || out.steps == max_steps) {
            grad = observe(forces_and_torques(s, p));
        }
    }
    if (out.steps % opt.cadence != 0 && out.steps != max_steps) {
        grad = observe(forces_and_torques(s, p));
    }

    out.final_state = s;
    out.final_grad_norm = grad;
    out.reached_tolerance = opt.grad_tol > 0.0 && grad < opt.grad_tol;
    out.verdict = classify_structure(s);
    return out;
}

SystemState spear_state(const Eigen::VectorXd& spacings) {
    SystemState s;
    s.particles.resize(spacings.size() + 1);
    double x = 0.0;
    for (Eigen::Index k = 0; k < spacings.size() + 1; ++k) {
        if (k > 0) {
            if (!(spacings[k - 1] > 0.0)) throw std::domain_error("spear_state: spacings must be positive");
            x += spacings[k - 1];
        }
        s.particles[k].x = {x, 0.0, 0.0};
        s.particles[k].m = Eigen::Vector3d::UnitX();
    }
    return s;
}

SystemState random_state(int n, double box_side, double min_separation, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_state: n must be >= 1");
    Rng rng(seed);
    SystemState s;
    s.particles.resize(n);
    const double half = 0.5 * box_side;
    for (int k = 0; k < n; ++k) {
        bool placed = false;
        for (int attempt = 0; attempt < 100000 && !placed; ++attempt) {
            const Eigen::Vector3d x{rng.uniform(-half, half), rng.uniform(-half, half),
                                    rng.uniform(-half, half)};
            placed = true;
            for (int j = 0; j < k; ++j) {
                if ((s.particles[j].x - x).norm() < min_separation) {
                    placed = false;
                    break;
                }
            }
            if (placed) s.particles[k].x = x;
        }
        if (!placed) throw std::invalid_argument("random_state: could not place particles at the requested separation");
        s.particles[k].m = rng.unit_vector();
    }
    return s;
}

double min_pair_distance(const SystemState& s) {
    const int n = s.size();
    double dmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < k; ++l) {
            dmin = std::min(dmin, (s.particles[k].x - s.particles[l].x).norm());
        }
    }
    return dmin;
}

} // namespace colloid
