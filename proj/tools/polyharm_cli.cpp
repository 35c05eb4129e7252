// Command-line interface for the verification toolkit.
//
// Exit codes: 0 all executed checks passed, 1 at least one check failed,
// 2 usage error, 3 internal error (engine inconsistency or quadrature
// budget exhaustion).
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/exact_constants.hpp"
#include "polyharm/golden.hpp"
#include "polyharm/ode.hpp"
#include "polyharm/radial_expr.hpp"
#include "polyharm/report.hpp"
#include "polyharm/suites.hpp"

using namespace polyharm;

namespace {

int write_output(const std::string& path, const std::string& bytes) {
    if (path.empty()) {
        std::cout << bytes;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return 3;
    }
    out << bytes;
    return 0;
}

int cmd_run(int N, const std::string& suite_name, double tol, double rmax, long precision,
            const std::string& constants, const std::string& out_path,
            const std::string& format, bool serial) {
    auto suite = verify::parse_suite(suite_name);
    if (!suite) {
        std::cerr << "error: unknown suite '" << suite_name << "'\n";
        return 2;
    }
    if (constants != "auto" && constants != "paper" && constants != "corrected") {
        std::cerr << "error: --constants must be auto, paper or corrected\n";
        return 2;
    }
    if (format != "json" && format != "csv" && format != "text") {
        std::cerr << "error: --format must be json, csv or text\n";
        return 2;
    }
    if (N > 6)
        std::cerr << "warning: N = " << N
                  << " exceeds the tested range (2..6); the integral suites may take long\n";

    verify::SuiteConfig cfg;
    cfg.N = N;
    cfg.tol = tol;
    cfg.rmax = rmax;
    cfg.precision = precision;
    cfg.constants_flag = constants;
    cfg.exec = serial ? riesz::Execution::Serial : riesz::Execution::OpenMP;

    verify::VerificationReport rep = verify::run_suite(*suite, cfg);
    std::string bytes = format == "json"  ? verify::emit_json(rep)
                        : format == "csv" ? verify::emit_csv(rep)
                                          : verify::emit_text(rep);
    int rc = write_output(out_path, bytes);
    if (rc != 0) return rc;
    return rep.all_passed() ? 0 : 1;
}

int cmd_constants(int N) {
    using exact::ChainMode;
    for (ChainMode mode : {ChainMode::PaperLiteral, ChainMode::Corrected}) {
        exact::ConstantChain ch = exact::constant_chain(N, mode);
        std::printf("%s chain (N = %d):\n", exact::chain_mode_name(mode), N);
        for (int k = 0; k < N; ++k)
            std::printf("  c_%d = %-28s = %s\n", k, ch.c[k].str().c_str(),
                        ch.c[k].decimal(30).c_str());
        std::printf("  flux through a sphere: %s\n",
                    exact::flux_check(N, mode).str().c_str());
    }
    return 0;
}

int cmd_ode(int N, const std::string& sign, const std::string& init_csv, double rmax,
            double tol, const std::string& out_path) {
    if (sign != "plus" && sign != "minus") {
        std::cerr << "error: --sign must be plus or minus\n";
        return 2;
    }
    ode::OdeSystem sys{N, sign == "plus" ? ode::EquationSign::PlusNegativePower
                                         : ode::EquationSign::MinusNegativePower};
    std::vector<double> init;
    if (init_csv.empty()) {
        for (const Real& v : radial::initial_data(N, 96)) init.push_back(v.to_double());
    } else {
        std::stringstream ss(init_csv);
        std::string cell;
        while (std::getline(ss, cell, ',')) init.push_back(std::stod(cell));
        if ((int)init.size() != 2 * N) {
            std::cerr << "error: --init needs exactly " << 2 * N << " comma-separated values\n";
            return 2;
        }
    }
    ode::Trajectory t = ode::integrate(sys, init, rmax, tol);
    ode::Fate fate = ode::classify_trajectory(t, std::min(10.0, rmax / 5));
    std::cerr << "fate: " << ode::fate_kind_name(fate.kind);
    if (fate.kind == ode::FateKind::LinearGrowth) std::cerr << " alpha=" << fate.value;
    if (fate.kind == ode::FateKind::HitsZero || fate.kind == ode::FateKind::SignEvent)
        std::cerr << " r*=" << fate.value;
    std::cerr << " (" << fate.detail << ")\n";
    return write_output(out_path, ode::trajectory_csv(t));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyharm: exact and numerical verification of the radial polyharmonic "
                 "classification identities"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run a verification suite and emit a report");
    int N = 2;
    std::string suite = "all", constants = "auto", out_path, format = "json";
    double tol = 1e-6, rmax = 200.0;
    long precision = 128;
    bool serial = false;
    run->add_option("--n", N, "order N of the equation (>= 2)")->check(CLI::Range(2, 64));
    run->add_option("--suite", suite,
                    "symbolic|constants|representation|decay|meanvalue|jensen|"
                    "odereproduction|nonexistencescan|all");
    run->add_option("--tol", tol, "check tolerance");
    run->add_option("--rmax", rmax, "truncation radius for the potentials");
    run->add_option("--precision", precision, "working mantissa bits (>= 53)");
    run->add_option("--constants", constants, "auto|paper|corrected");
    run->add_option("--out", out_path, "output path (default: stdout)");
    run->add_option("--format", format, "json|csv|text");
    run->add_flag("--serial", serial, "disable the OpenMP kernels");

    // constants
    auto* cons = app.add_subcommand("constants", "print both constant chains exactly");
    int cons_N = 2;
    cons->add_option("--n", cons_N, "order N (>= 2)")->check(CLI::Range(2, 64));

    // ode
    auto* ode_cmd = app.add_subcommand("ode", "integrate the radial system, export CSV");
    int ode_N = 2;
    std::string ode_sign = "plus", ode_init, ode_out;
    double ode_rmax = 50.0, ode_tol = 1e-10;
    ode_cmd->add_option("--n", ode_N, "order N (>= 2)")->check(CLI::Range(2, 64));
    ode_cmd->add_option("--sign", ode_sign, "plus|minus (source term orientation)");
    ode_cmd->add_option("--init", ode_init,
                        "comma-separated 2N initial values (default: the exact solution data)");
    ode_cmd->add_option("--rmax", ode_rmax, "integration endpoint");
    ode_cmd->add_option("--tol", ode_tol, "integrator tolerance");
    ode_cmd->add_option("--out", ode_out, "CSV path (default: stdout)");

    // table
    auto* table = app.add_subcommand("table", "regenerate the golden value table (JSON)");
    std::string table_out;
    table->add_option("--out", table_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(N, suite, tol, rmax, precision, constants, out_path, format, serial);
        if (cons->parsed()) return cmd_constants(cons_N);
        if (ode_cmd->parsed())
            return cmd_ode(ode_N, ode_sign, ode_init, ode_rmax, ode_tol, ode_out);
        if (table->parsed())
            return write_output(table_out, golden::to_json(golden::compute_golden_table()));
    } catch (const InternalConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const QuadratureFailure& e) {
        std::cerr << "quadrature failure: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
