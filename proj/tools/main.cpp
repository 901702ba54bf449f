// Command-line front end: thresholds, spear/ring solves, inverse-decay
// certification, and the dissipative particle dynamics, with CSV/JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "colloid/dynamics.hpp"
#include "colloid/errors.hpp"
#include "colloid/gershgorin.hpp"
#include "colloid/potential.hpp"
#include "colloid/random.hpp"
#include "colloid/ring.hpp"
#include "colloid/spear.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitIo = 3;

// 17 significant digits: lossless text round trip for doubles.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ModelOpts {
    double A = 1.0, B = 1.0, B0 = 1.0, alpha = 12.0, beta = 3.0;
    double tol = 1e-10;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string format = "csv";

    colloid::LJParams lj() const { return {A, B, B0, alpha, beta}; }
};

// Writes to the chosen sink; throws std::ios_base::failure on I/O trouble.
void emit(const std::string& out, const std::string& text) {
    if (out == "-" || out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::ios_base::failure("cannot open output file: " + out);
    f << text;
    if (!f) throw std::ios_base::failure("write failed: " + out);
}

void add_model_options(CLI::App& app, ModelOpts& m) {
    app.add_option("--A", m.A, "repulsion amplitude");
    app.add_option("--B", m.B, "attraction amplitude");
    app.add_option("--B0", m.B0, "transverse dipolar amplitude");
    app.add_option("--alpha", m.alpha, "repulsion exponent");
    app.add_option("--beta", m.beta, "attraction exponent");
    app.add_option("--tol", m.tol, "solver tolerance");
    app.add_option("--seed", m.seed, "RNG seed");
    app.add_option("--out", m.out, "output path ('-' for stdout)");
    app.add_option("--format", m.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

int cmd_thresholds(const ModelOpts& m) {
    const colloid::LJParams p = m.lj();
    const double dag = colloid::alpha_dag(m.beta);
    const double star = colloid::alpha_star(m.beta);
    const colloid::DistanceSet d = colloid::characteristic_distances(p);

    std::ostringstream os;
    os << "{\n";
    os << "  \"beta\": " << fmt(m.beta) << ",\n";
    os << "  \"alpha_dag\": " << fmt(dag) << ",\n";
    os << "  \"alpha_star\": " << fmt(star) << ",\n";
    os << "  \"distances\": {\n";
    os << "    \"h_check\": " << fmt(d.h_check) << ",\n";
    os << "    \"h_bar\": " << fmt(d.h_bar) << ",\n";
    os << "    \"h_tilde\": " << fmt(d.h_tilde) << ",\n";
    os << "    \"h_hat\": " << fmt(d.h_hat) << ",\n";
    os << "    \"h_dag\": " << fmt(d.h_dag) << ",\n";
    os << "    \"h_ddag\": " << fmt(d.h_ddag) << ",\n";
    os << "    \"h_sharp\": " << fmt(d.h_sharp) << ",\n";
    os << "    \"h_flat\": " << fmt(d.h_flat) << "\n";
    os << "  }\n";
    os << "}\n";
    emit(m.out, os.str());
    return kExitOk;
}

int cmd_spear(const ModelOpts& m, int n, int max_iter) {
    const colloid::LJParams p = m.lj();
    const colloid::DistanceSet d = colloid::characteristic_distances(p);
    const colloid::SpearSolution sol = colloid::solve_spear(n, p, m.tol, max_iter);
    const Eigen::VectorXd residual = colloid::spear_gradient(sol.spacing, p);

    std::ostringstream os;
    if (m.format == "csv") {
        os << "k,h_k,h_bar,h_check,h_hat,residual_k\n";
        for (Eigen::Index k = 0; k < sol.spacing.size(); ++k) {
            os << (k + 1) << ',' << fmt(sol.spacing[k]) << ',' << fmt(d.h_bar) << ','
               << fmt(d.h_check) << ',' << fmt(d.h_hat) << ',' << fmt(residual[k]) << '\n';
        }
    } else {
        os << "{\n  \"n_particles\": " << n << ",\n  \"energy\": " << fmt(sol.energy)
           << ",\n  \"grad_norm\": " << fmt(sol.grad_norm) << ",\n  \"iterations\": "
           << sol.iterations << ",\n  \"certified\": " << (sol.certified ? "true" : "false")
           << ",\n  \"rows\": [\n";
        for (Eigen::Index k = 0; k < sol.spacing.size(); ++k) {
            os << "    {\"k\": " << (k + 1) << ", \"h_k\": " << fmt(sol.spacing[k])
               << ", \"residual_k\": " << fmt(residual[k]) << "}"
               << (k + 1 < sol.spacing.size() ? "," : "") << '\n';
        }
        os << "  ]\n}\n";
    }
    emit(m.out, os.str());
    return kExitOk;
}

int cmd_ring(const ModelOpts& m, const std::vector<int>& ns) {
    const colloid::LJParams p = m.lj();
    const colloid::DistanceSet d = colloid::characteristic_distances(p);

    std::ostringstream os;
    if (m.format == "csv") os << "N,A_tilde,B_tilde,r_star,nn_distance,nn_error,h_bar\n";
    else os << "[\n";
    for (size_t i = 0; i < ns.size(); ++i) {
        const colloid::RingSolution sol = colloid::ring_radius(ns[i], p);
        const double err = std::abs(sol.nn_distance - d.h_bar);
        if (m.format == "csv") {
            os << sol.n_particles << ',' << fmt(sol.a_tilde) << ',' << fmt(sol.b_tilde) << ','
               << fmt(sol.radius) << ',' << fmt(sol.nn_distance) << ',' << fmt(err) << ','
               << fmt(d.h_bar) << '\n';
        } else {
            os << "  {\"N\": " << sol.n_particles << ", \"A_tilde\": " << fmt(sol.a_tilde)
               << ", \"B_tilde\": " << fmt(sol.b_tilde) << ", \"r_star\": " << fmt(sol.radius)
               << ", \"nn_distance\": " << fmt(sol.nn_distance) << ", \"nn_error\": " << fmt(err)
               << ", \"h_bar\": " << fmt(d.h_bar) << "}" << (i + 1 < ns.size() ? "," : "") << '\n';
        }
    }
    if (m.format != "csv") os << "]\n";
    emit(m.out, os.str());
    return kExitOk;
}

int cmd_gershgorin(const ModelOpts& m, int size, double gamma, double c, double d, int count,
                   int kmax) {
    const colloid::DecayMatrixSpec spec(gamma, c, d);

    bool all_hyp = true, all_inv = true, all_neumann = true;
    double max_ratio = 0.0;
    std::optional<std::string> counterexample;
    colloid::HypothesisReport hyp_last{};
    for (int i = 0; i < count; ++i) {
        const Eigen::MatrixXd mat = colloid::random_decay_matrix(size, spec, m.seed + i);
        hyp_last = colloid::verify_hypotheses(mat, spec);
        all_hyp = all_hyp && hyp_last.all_pass();
        const colloid::InverseDecayReport inv = colloid::check_inverse_decay(mat, spec);
        max_ratio = std::max(max_ratio, inv.max_ratio);
        all_inv = all_inv && inv.within_bound;
        if (inv.counterexample && !counterexample) {
            counterexample = inv.note + " (instance " + std::to_string(i) + ")";
        }
        const colloid::NeumannReport neu =
            colloid::neumann_coefficients(mat.cast<std::complex<double>>(), spec, kmax);
        all_neumann = all_neumann && neu.within_bound;
    }

    std::ostringstream os;
    os << "{\n";
    os << "  \"instances\": " << count << ",\n";
    os << "  \"hypotheses\": {\n";
    os << "    \"diag_dominant\": " << (hyp_last.diag_dominant ? "true" : "false") << ",\n";
    os << "    \"offdiag_decay\": " << (hyp_last.offdiag_decay ? "true" : "false") << ",\n";
    os << "    \"diag_floor\": " << (hyp_last.diag_floor ? "true" : "false") << ",\n";
    os << "    \"contraction\": " << (hyp_last.contraction ? "true" : "false") << ",\n";
    os << "    \"all_instances_pass\": " << (all_hyp ? "true" : "false") << "\n";
    os << "  },\n";
    os << "  \"delta\": " << fmt(spec.delta) << ",\n";
    os << "  \"r_plus\": " << fmt(spec.r_plus) << ",\n";
    os << "  \"kappa\": " << fmt(spec.kappa) << ",\n";
    os << "  \"max_ratio\": " << fmt(max_ratio) << ",\n";
    os << "  \"inverse_within_bound\": " << (all_inv ? "true" : "false") << ",\n";
    os << "  \"neumann_within_bound\": " << (all_neumann ? "true" : "false");
    if (counterexample) os << ",\n  \"counterexample\": \"" << *counterexample << "\"";
    os << "\n}\n";
    emit(m.out, os.str());
    return kExitOk;
}

struct DynOpts {
    std::string init = "random";
    int n = 12;
    double perturb = 0.0;
    double box = 5.0;
    double min_sep = 1.0;
    double mu = 1.0, radius = 0.5, nu = 0.3;
    double dt = 4e-3, horizon = 8000.0, grad_tol = 1e-4;
    int cadence = 250;
};

int cmd_dynamics(const ModelOpts& m, const DynOpts& o) {
    colloid::PhysicalParams phys;
    phys.lj = m.lj();
    phys.mu = o.mu;
    phys.radius = o.radius;
    phys.nu = o.nu;

    colloid::SystemState init;
    if (o.init == "spear") {
        const colloid::SpearSolution sol = colloid::solve_spear(o.n, phys.lj, m.tol);
        init = colloid::spear_state(sol.spacing);
    } else if (o.init == "ring") {
        const colloid::RingSolution sol = colloid::ring_radius(o.n, phys.lj);
        init = colloid::ring_state(o.n, sol.radius);
    } else {
        init = colloid::random_state(o.n, o.box, o.min_sep, m.seed);
    }
    if (o.perturb > 0.0) {
        colloid::Rng rng(m.seed + 0x9e3779b97f4a7c15ull);
        for (auto& q : init.particles) {
            for (int c = 0; c < 3; ++c) q.x[c] += o.perturb * rng.uniform(-1.0, 1.0);
        }
    }

    colloid::RunOptions ropt;
    ropt.dt = o.dt;
    ropt.horizon = o.horizon;
    ropt.cadence = o.cadence;
    ropt.grad_tol = o.grad_tol;
    ropt.keep_snapshots = (m.out != "-");
    const colloid::TrajectorySummary tr = colloid::run(init, phys, ropt);

    std::ostringstream js;
    js << "{\n";
    js << "  \"verdict\": \"" << colloid::to_string(tr.verdict) << "\",\n";
    js << "  \"steps\": " << tr.steps << ",\n";
    js << "  \"final_time\": " << fmt(tr.final_state.time) << ",\n";
    js << "  \"final_grad_norm\": " << fmt(tr.final_grad_norm) << ",\n";
    js << "  \"reached_tolerance\": " << (tr.reached_tolerance ? "true" : "false") << ",\n";
    js << "  \"time\": [";
    for (size_t i = 0; i < tr.samples.size(); ++i)
        js << (i ? "," : "") << fmt(tr.samples[i].time);
    js << "],\n  \"energy\": [";
    for (size_t i = 0; i < tr.samples.size(); ++i)
        js << (i ? "," : "") << fmt(tr.samples[i].energy);
    js << "],\n  \"mechanical_energy\": [";
    for (size_t i = 0; i < tr.samples.size(); ++i)
        js << (i ? "," : "") << fmt(tr.samples[i].mechanical_energy);
    js << "],\n  \"grad_norm\": [";
    for (size_t i = 0; i < tr.samples.size(); ++i)
        js << (i ? "," : "") << fmt(tr.samples[i].grad_norm);
    js << "]\n}\n";

    if (m.out == "-" || m.out.empty()) {
        std::cout << js.str();
        return kExitOk;
    }
    emit(m.out + ".json", js.str());

    std::ostringstream cs;
    cs << "t,k,x1,x2,x3,m1,m2,m3,v1,v2,v3,w1,w2,w3\n";
    for (const colloid::SystemState& snap : tr.snapshots) {
        for (int k = 0; k < snap.size(); ++k) {
            const colloid::Particle& q = snap.particles[k];
            cs << fmt(snap.time) << ',' << k;
            for (int c = 0; c < 3; ++c) cs << ',' << fmt(q.x[c]);
            for (int c = 0; c < 3; ++c) cs << ',' << fmt(q.m[c]);
            for (int c = 0; c < 3; ++c) cs << ',' << fmt(q.v[c]);
            for (int c = 0; c < 3; ++c) cs << ',' << fmt(q.omega[c]);
            cs << '\n';
        }
    }
    emit(m.out + ".csv", cs.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"magnetic nanoparticle colloid structures: spear and ring solvers, "
                 "inverse-decay certificates, dissipative dynamics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a key=value file (flags win)");

    ModelOpts m;
    add_model_options(app, m);

    CLI::App* thresholds = app.add_subcommand(
        "thresholds", "convexity and rate thresholds plus characteristic distances (JSON)");
    thresholds->fallthrough();

    int spear_n = 16, spear_max_iter = 200;
    CLI::App* spear = app.add_subcommand("spear", "solve the aligned chain and write the spacing table");
    spear->fallthrough();
    spear->add_option("--N", spear_n, "number of particles")->check(CLI::Range(2, 4096));
    spear->add_option("--max-iter", spear_max_iter, "iteration cap");

    std::vector<int> ring_ns;
    CLI::App* ring = app.add_subcommand("ring", "explicit ring radius table");
    ring->fallthrough();
    ring->add_option("--N", ring_ns, "ring sizes (repeatable)")->required()->check(CLI::Range(2, 1 << 20));

    int g_size = 100, g_count = 1, g_kmax = 4;
    double g_gamma = 4.0, g_c = 0.01, g_d = 1.0;
    CLI::App* gersh = app.add_subcommand("gershgorin", "randomized inverse-decay certification (JSON report)");
    gersh->fallthrough();
    gersh->add_option("--size", g_size, "matrix size")->check(CLI::Range(1, 1000));
    gersh->add_option("--gamma", g_gamma, "off-diagonal decay exponent");
    gersh->add_option("--c", g_c, "off-diagonal amplitude");
    gersh->add_option("--d", g_d, "diagonal floor");
    gersh->add_option("--count", g_count, "number of random instances");
    gersh->add_option("--kmax", g_kmax, "largest Neumann power to check");

    DynOpts dyn;
    CLI::App* dynamics = app.add_subcommand("dynamics", "integrate the dissipative particle dynamics");
    dynamics->fallthrough();
    dynamics->add_option("--init", dyn.init, "initial state: spear, ring or random")
        ->check(CLI::IsMember({"spear", "ring", "random"}));
    dynamics->add_option("--N", dyn.n, "number of particles")->check(CLI::Range(2, 4096));
    dynamics->add_option("--perturb", dyn.perturb, "uniform position perturbation amplitude");
    dynamics->add_option("--box", dyn.box, "side of the initial placement cube (random init)");
    dynamics->add_option("--min-sep", dyn.min_sep, "minimum initial pairwise separation");
    dynamics->add_option("--mu", dyn.mu, "particle mass");
    dynamics->add_option("--radius", dyn.radius, "particle radius");
    dynamics->add_option("--nu", dyn.nu, "fluid viscosity");
    dynamics->add_option("--dt", dyn.dt, "time step");
    dynamics->add_option("--horizon", dyn.horizon, "integration horizon");
    dynamics->add_option("--cadence", dyn.cadence, "observer interval in steps");
    dynamics->add_option("--grad-tol", dyn.grad_tol, "stop once the gradient sup-norm drops below");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        m.lj().validate(); // reject bad model constants before dispatch
        if (thresholds->parsed()) return cmd_thresholds(m);
        if (spear->parsed()) return cmd_spear(m, spear_n, spear_max_iter);
        if (ring->parsed()) return cmd_ring(m, ring_ns);
        if (gersh->parsed()) return cmd_gershgorin(m, g_size, g_gamma, g_c, g_d, g_count, g_kmax);
        if (dynamics->parsed()) return cmd_dynamics(m, dyn);
        std::cerr << "no subcommand\n";
        return kExitConfig;
    } catch (const colloid::ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitConvergence;
    } catch (const colloid::OverlapError& e) {
        std::cerr << "integration failure: " << e.what() << " (distance " << e.distance() << ")\n";
        return kExitConvergence;
    } catch (const colloid::IntegratorError& e) {
        std::cerr << "integration failure: " << e.what() << " at t=" << e.time() << "\n";
        return kExitConvergence;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
}
