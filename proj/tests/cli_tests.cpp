// Integration tests for the command-line tool: exit codes, file formats,
// round-tripping and byte-level determinism.  Invoked with the binary path
// as argv[1].

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "colloid/potential.hpp"
#include "colloid/ring.hpp"
#include "colloid/spear.hpp"

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                     \
    do {                                                                       \
        if (!(cond)) {                                                         \
            std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << "  " << msg << "\n"; \
            ++g_failures;                                                      \
        }                                                                      \
    } while (0)

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
    CmdResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(fields);
    }
    return rows;
}

double extract_json_number(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return std::nan("");
    const auto colon = text.find(':', pos);
    return std::strtod(text.c_str() + colon + 1, nullptr);
}

std::string extract_json_string(const std::string& text, const std::string& key) {
    const auto pos = text.find("\"" + key + "\"");
    if (pos == std::string::npos) return {};
    const auto open = text.find('"', text.find(':', pos));
    const auto close = text.find('"', open + 1);
    return text.substr(open + 1, close - open - 1);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-colloid-binary>\n";
        return 2;
    }
    const std::string exe = argv[1];
    const std::string tmp = "cli_test_tmp";
    if (std::system(("rm -rf " + tmp + " && mkdir -p " + tmp).c_str()) != 0) {
        std::cerr << "cannot prepare temp dir\n";
        return 2;
    }

    // thresholds emits the known values as JSON
    {
        const CmdResult r = run_cmd(exe + " thresholds --beta 3");
        REQUIRE(r.exit_code == 0, "thresholds exit code");
        REQUIRE(std::abs(extract_json_number(r.out, "alpha_dag") - 4.9) <= 0.1, "alpha_dag value");
        REQUIRE(std::abs(extract_json_number(r.out, "alpha_star") - 34.0) <= 1.0, "alpha_star value");
        REQUIRE(extract_json_number(r.out, "h_hat") > extract_json_number(r.out, "h_tilde"),
                "distance ordering in JSON");
    }

    // spear table: row count, box bounds, exact round trip of the solution
    {
        const std::string out = tmp + "/spear.csv";
        const CmdResult r =
            run_cmd(exe + " spear --N 16 --beta 3 --alpha 36 --out " + out);
        REQUIRE(r.exit_code == 0, "spear exit code");
        const auto rows = parse_csv(slurp(out));
        REQUIRE(rows.size() == 16, "header plus 15 spacing rows");
        REQUIRE(rows[0][0] == "k", "spear csv header");

        const colloid::LJParams p(1, 1, 1, 36, 3);
        const colloid::DistanceSet d = colloid::characteristic_distances(p);
        const colloid::SpearSolution sol = colloid::solve_spear(16, p, 1e-10);
        for (size_t i = 1; i < rows.size(); ++i) {
            const double hk = std::strtod(rows[i][1].c_str(), nullptr);
            REQUIRE(hk >= d.h_check && hk <= d.h_hat, "spacing inside the box");
            REQUIRE(hk == sol.spacing[i - 1], "17-digit round trip reproduces the solve exactly");
        }
    }

    // two particles: the single spacing is the scalar minimizer
    {
        const CmdResult r = run_cmd(exe + " spear --N 2 --beta 3 --alpha 12");
        REQUIRE(r.exit_code == 0, "spear N=2 exit code");
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 2, "one spacing row");
        const double h1 = std::strtod(rows[1][1].c_str(), nullptr);
        REQUIRE(std::abs(h1 - std::pow(4.0, 1.0 / 9.0)) < 1e-9, "h_1 equals h_hat");
    }

    // invalid model constants are a config error
    {
        REQUIRE(run_cmd(exe + " spear --alpha 2 --beta 3").exit_code == 1, "alpha <= beta rejected");
        REQUIRE(run_cmd(exe + " spear --N 1").exit_code == 1, "N < 2 rejected");
        REQUIRE(run_cmd(exe + " nonsense").exit_code == 1, "unknown subcommand rejected");
    }

    // convergence failure surfaces as exit 2
    {
        REQUIRE(run_cmd(exe + " spear --N 64 --beta 3 --alpha 36 --max-iter 1").exit_code == 2,
                "iteration cap exit code");
    }

    // unwritable output path is an I/O error
    {
        REQUIRE(run_cmd(exe + " thresholds --beta 3 --out /nonexistent/dir/x.json").exit_code == 3,
                "I/O failure exit code");
    }

    // ring table values
    {
        const CmdResult r = run_cmd(exe + " ring --N 4 --alpha 12 --beta 3");
        REQUIRE(r.exit_code == 0, "ring exit code");
        const auto rows = parse_csv(r.out);
        REQUIRE(rows.size() == 2, "one ring row");
        REQUIRE(std::abs(std::strtod(rows[1][3].c_str(), nullptr) - 0.8108) < 1e-3, "r_star value");
        const CmdResult sweep = run_cmd(exe + " ring --N 8 --N 16 --N 32");
        REQUIRE(parse_csv(sweep.out).size() == 4, "ring sweep rows");
    }

    // json output format carries the same numbers as csv
    {
        const CmdResult js = run_cmd(exe + " spear --N 4 --beta 3 --alpha 36 --format json");
        REQUIRE(js.exit_code == 0, "spear json exit code");
        REQUIRE(js.out.find("\"rows\"") != std::string::npos, "spear json has rows");
        const CmdResult cs = run_cmd(exe + " spear --N 4 --beta 3 --alpha 36");
        const auto rows = parse_csv(cs.out);
        const double h1_csv = std::strtod(rows[1][1].c_str(), nullptr);
        REQUIRE(extract_json_number(js.out, "h_k") == h1_csv, "json h_1 equals csv h_1");
        REQUIRE(extract_json_number(js.out, "grad_norm") < 1e-10, "converged grad in json");

        const CmdResult rj = run_cmd(exe + " ring --N 4 --alpha 12 --beta 3 --format json");
        REQUIRE(rj.exit_code == 0, "ring json exit code");
        const CmdResult rc = run_cmd(exe + " ring --N 4 --alpha 12 --beta 3");
        const double rstar_csv = std::strtod(parse_csv(rc.out)[1][3].c_str(), nullptr);
        REQUIRE(extract_json_number(rj.out, "r_star") == rstar_csv, "json r_star equals csv");
    }

    // gershgorin JSON report
    {
        const CmdResult r = run_cmd(exe + " gershgorin --size 50 --count 3 --seed 11");
        REQUIRE(r.exit_code == 0, "gershgorin exit code");
        REQUIRE(r.out.find("\"inverse_within_bound\": true") != std::string::npos,
                "inverse entries certified");
        REQUIRE(r.out.find("\"neumann_within_bound\": true") != std::string::npos,
                "power bounds certified");
        REQUIRE(std::abs(extract_json_number(r.out, "r_plus") - 0.3685) < 1e-3, "r_plus value");
    }

    // exact ring stays a ring with negligible drift over ten thousand steps
    {
        const std::string out = tmp + "/ringrun";
        const CmdResult r = run_cmd(exe + " dynamics --init ring --N 12 --perturb 0 --B 2" +
                                    " --dt 4e-3 --horizon 40 --cadence 10000 --grad-tol 0 --out " + out);
        REQUIRE(r.exit_code == 0, "dynamics exit code");
        const std::string js = slurp(out + ".json");
        REQUIRE(extract_json_string(js, "verdict") == "ring", "ring verdict");

        const auto rows = parse_csv(slurp(out + ".csv"));
        REQUIRE(rows.size() >= 25, "snapshot rows present");
        double drift = 0.0;
        for (int k = 0; k < 12; ++k) {
            const auto& first = rows[1 + k];
            const auto& last = rows[rows.size() - 12 + k];
            for (int c = 2; c < 5; ++c) {
                drift = std::max(drift, std::abs(std::strtod(first[c].c_str(), nullptr) -
                                                 std::strtod(last[c].c_str(), nullptr)));
            }
        }
        REQUIRE(drift < 1e-8, "ring drift below 1e-8");
    }

    // a slightly perturbed chain relaxes back to a spear
    {
        const CmdResult r = run_cmd(exe + " dynamics --init spear --N 8 --perturb 0.01 --B 2" +
                                    " --dt 4e-3 --horizon 100 --cadence 5000 --grad-tol 1e-6");
        REQUIRE(r.exit_code == 0, "perturbed spear exit code");
        REQUIRE(extract_json_string(r.out, "verdict") == "spear", "relaxes back to a spear");
    }

    // byte-identical reruns with the same seed and config
    {
        const std::string first = tmp + "/d1", second = tmp + "/d2";
        const std::string flags =
            " dynamics --init random --N 8 --box 4 --seed 7 --B 2 --dt 4e-3 --horizon 5 --cadence 100 --out ";
        REQUIRE(run_cmd(exe + flags + first).exit_code == 0, "first run");
        REQUIRE(run_cmd(exe + flags + second).exit_code == 0, "second run");
        REQUIRE(slurp(first + ".json") == slurp(second + ".json"), "summary bytes identical");
        REQUIRE(slurp(first + ".csv") == slurp(second + ".csv"), "snapshot bytes identical");
        REQUIRE(!slurp(first + ".csv").empty(), "snapshot file non-empty");
    }

    // config file supplies defaults, flags win
    {
        std::ofstream cfg(tmp + "/model.cfg");
        cfg << "alpha=36\nbeta=3\n";
        cfg.close();
        const CmdResult from_cfg =
            run_cmd(exe + " spear --N 8 --config " + tmp + "/model.cfg");
        const CmdResult from_flags = run_cmd(exe + " spear --N 8 --alpha 36 --beta 3");
        REQUIRE(from_cfg.exit_code == 0, "config file accepted");
        REQUIRE(from_cfg.out == from_flags.out, "config equals explicit flags");

        const CmdResult overridden =
            run_cmd(exe + " spear --N 8 --config " + tmp + "/model.cfg --alpha 12");
        const CmdResult direct = run_cmd(exe + " spear --N 8 --alpha 12 --beta 3");
        REQUIRE(overridden.out == direct.out, "flags override the config file");
    }

    (void)!std::system(("rm -rf " + tmp).c_str());
    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " failure(s)\n";
    return 1;
}
