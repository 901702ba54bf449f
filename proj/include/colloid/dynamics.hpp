#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "colloid/potential.hpp"

namespace colloid {

struct Particle {
    Eigen::Vector3d x = Eigen::Vector3d::Zero();     // center position
    Eigen::Vector3d m = Eigen::Vector3d::UnitX();    // unit super-spin
    Eigen::Vector3d v = Eigen::Vector3d::Zero();     // velocity
    Eigen::Vector3d omega = Eigen::Vector3d::Zero(); // angular velocity
};

struct SystemState {
    std::vector<Particle> particles;
    double time = 0.0;

    int size() const { return static_cast<int>(particles.size()); }
};

// Mass, geometry and fluid constants.  The drag coefficients and the moment
// of inertia are fixed functions of (mu, radius, nu).
struct PhysicalParams {
    LJParams lj;
    double mu = 1.0;     // particle mass
    double radius = 0.5; // particle radius R
    double nu = 1.0;     // fluid viscosity

    double zeta_tr() const { return 6.0 * M_PI * nu * radius; }          // translational drag
    double zeta_r() const { return 8.0 * M_PI * nu * radius * radius; }  // rotational drag
    double inertia() const { return 0.4 * mu * radius * radius; }        // 2 mu R^2 / 5
};

// Total pair energy: dipolar part + soft-sphere repulsion, each unordered
// pair counted once.  Throws std::domain_error on coincident positions.
double total_energy(const SystemState& s, const LJParams& p);

double kinetic_energy(const SystemState& s, const PhysicalParams& p);

struct ForceField {
    std::vector<Eigen::Vector3d> force;         // F_k = -grad_x U
    std::vector<Eigen::Vector3d> torque;        // T_k = m_k x (-grad_m U)
    std::vector<Eigen::Vector3d> spin_gradient; // grad_m U (unconstrained)

    // sup norm over all force and torque components
    double sup_norm() const;
};

ForceField forces_and_torques(const SystemState& s, const PhysicalParams& p);

// One integration step: linear drag integrated exactly (exponential factor),
// positions explicit, spins rotated rigidly with omega and renormalized.
// Throws OverlapError if any pair ends closer than 1e-3 * radius.
void step(SystemState& s, double dt, const PhysicalParams& p);

enum class StructureKind { spear, ring, other };
const char* to_string(StructureKind k);

// Geometric proxy for the emergent shape: near-1-D point clouds are spears,
// clouds with tight radial spread about the centroid are rings.
StructureKind classify_structure(const SystemState& s);

struct RunOptions {
    double horizon = 100.0;
    // Stability heuristic: keep dt <= 0.1 * min(mu/zeta_tr, I/zeta_r) so the
    // velocity and angular-velocity relaxation times stay resolved.
    double dt = 1e-3;
    int cadence = 100;       // observer sampling interval, in steps
    double grad_tol = 0.0;   // stop early once the gradient sup-norm drops below (0 = run to horizon)
    bool keep_snapshots = false;
};

struct ObserverSample {
    double time = 0.0;
    double energy = 0.0;            // potential energy U
    double mechanical_energy = 0.0; // U + kinetic
    double grad_norm = 0.0;
};

struct TrajectorySummary {
    std::vector<ObserverSample> samples;
    std::vector<SystemState> snapshots; // only when keep_snapshots
    SystemState final_state;
    double final_grad_norm = 0.0;
    long steps = 0;
    bool reached_tolerance = false;
    StructureKind verdict = StructureKind::other;
};

// Integrates to the horizon (or until grad_tol is met), sampling the
// observer every `cadence` steps.  Throws IntegratorError on non-finite
// state and propagates OverlapError.
TrajectorySummary run(const SystemState& initial, const PhysicalParams& p, const RunOptions& opt);

// Aligned chain built from neighbor spacings: positions on the x-axis,
// all spins along +x, zero velocities.
SystemState spear_state(const Eigen::VectorXd& spacings);

// n particles placed uniformly in a cube of the given side with a minimum
// pairwise separation, random unit spins, zero velocities.  Deterministic
// in the seed.
SystemState random_state(int n, double box_side, double min_separation, std::uint64_t seed);

double min_pair_distance(const SystemState& s);

} // namespace colloid
