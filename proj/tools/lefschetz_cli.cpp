// Command line interface for fibration invariants and quantum
// representation checks.  Every subcommand prints a human-readable
// report by default or a stable JSON document with --json; output is
// byte-identical for identical inputs and flags.
//
// Exit codes: 0 success, 2 malformed input, 3 size guard exceeded,
// 4 precision not certified, 5 mathematical invariant violated.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "lefschetz/io.hpp"
#include "lefschetz/version.hpp"

namespace {

using lefschetz::Int;
using lefschetz::ordered_json;

struct GlobalOptions {
    bool as_json = false;
    unsigned long long seed = 0;
};

void emit(const ordered_json& report_in, const GlobalOptions& opts) {
    ordered_json report = report_in;
    report["seed"] = opts.seed;
    report["version"] = lefschetz::kVersion;
    if (opts.as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << lefschetz::render_text(report);
}

Int resolve_level(const lefschetz::Fibration& f, Int flag_level, const char* command) {
    if (flag_level > 0) return flag_level;
    if (f.level) return *f.level;
    throw lefschetz::parse_error(std::string(command) +
                                 ": no level given (use --level or a 'level' key in the file)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lefschetz fibration invariants: monodromy, spin structures, Verlinde "
                 "bundles, theta series, and projective quantum representations"};
    app.set_version_flag("--version", lefschetz::kVersion);
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_flag("--json", opts.as_json, "emit the report as a JSON document");
    app.add_option("--seed", opts.seed, "seed echoed into the report (reports are deterministic)")
        ->capture_default_str();
    // Let --json/--seed appear after the subcommand name as well as before it.
    app.fallthrough();

    // verlinde ----------------------------------------------------------
    Int v_genus = 2, v_level = 2;
    CLI::App* verlinde = app.add_subcommand("verlinde", "Verlinde rank with certified rounding");
    verlinde->add_option("--genus", v_genus, "fiber genus (>= 0)")->required();
    verlinde->add_option("--level", v_level, "quantization level k (>= 1)")->required();

    // spin --------------------------------------------------------------
    std::string s_file;
    CLI::App* spin = app.add_subcommand(
        "spin", "invariant quadratic refinements and the mod-2 monodromy image");
    spin->add_option("--file", s_file, "fibration JSON file")->required();

    // reducibility ------------------------------------------------------
    std::string r_file;
    Int r_level = 0;
    double r_tolerance = lefschetz::kDefaultCommutantCutoff;
    std::size_t r_guard = lefschetz::kDefaultGuardDim;
    CLI::App* reducibility = app.add_subcommand(
        "reducibility", "commutant analysis of the projective monodromy representation");
    reducibility->add_option("--file", r_file, "fibration JSON file")->required();
    reducibility->add_option("--level", r_level, "quantization level (overrides the file)");
    reducibility->add_option("--tolerance", r_tolerance,
                             "relative singular value cutoff in (0, 1)")
        ->capture_default_str();
    reducibility->add_option("--guard-size", r_guard, "maximum fiber dimension k^g")
        ->capture_default_str();

    // bundle ------------------------------------------------------------
    std::string b_file;
    Int b_genus = 0, b_level = 0, b_lambda = 0;
    CLI::App* bundle =
        app.add_subcommand("bundle", "Verlinde bundle slope, splitting, and section counts");
    bundle->add_option("--file", b_file, "fibration JSON file (lambda from signature)");
    bundle->add_option("--genus", b_genus, "fiber genus (when no file is given)");
    bundle->add_option("--level", b_level, "quantization level");
    bundle->add_option("--lambda", b_lambda, "Hodge bundle degree");

    // theta-check -------------------------------------------------------
    Int t_genus = 1, t_level = 1, t_radius = 6;
    CLI::App* theta = app.add_subcommand(
        "theta-check", "theta series with certified truncation and block factorization");
    theta->add_option("--genus", t_genus, "number of variables")->capture_default_str();
    theta->add_option("--level", t_level, "level k of the characteristic")->capture_default_str();
    theta->add_option("--truncation", t_radius, "box radius R")->capture_default_str();

    // homplus -----------------------------------------------------------
    Int h_dim = 0, h_ops = 0;
    std::vector<Int> h_mults;
    CLI::App* homplus = app.add_subcommand(
        "homplus", "expected dimension of the invariant deformation space");
    homplus->add_option("--fiber-dim", h_dim, "fiber dimension n")->required();
    homplus->add_option("--mults", h_mults, "abelian multiplicities (comma separated)")
        ->required()
        ->delimiter(',');
    homplus->add_option("--ops", h_ops, "number of local operators r")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*verlinde) {
            emit(lefschetz::verlinde_report(v_genus, v_level), opts);
        } else if (*spin) {
            lefschetz::Fibration f = lefschetz::load_fibration_file(s_file);
            emit(lefschetz::spin_report(f), opts);
        } else if (*reducibility) {
            lefschetz::Fibration f = lefschetz::load_fibration_file(r_file);
            Int level = resolve_level(f, r_level, "reducibility");
            lefschetz::ReducibilityReport rep =
                lefschetz::analyze_reducibility(f, level, r_tolerance, r_guard);
            emit(lefschetz::reducibility_report_json(rep), opts);
        } else if (*bundle) {
            if (!b_file.empty()) {
                lefschetz::Fibration f = lefschetz::load_fibration_file(b_file);
                Int level = resolve_level(f, b_level, "bundle");
                Int lambda = b_lambda;
                std::optional<Int> sig, count;
                if (lambda == 0) {
                    if (!f.signature)
                        throw lefschetz::parse_error(
                            "bundle: the file has no 'signature'; give --lambda explicitly");
                    lambda = lefschetz::hodge_degree(*f.signature,
                                                     static_cast<Int>(f.cycles.size()));
                    sig = *f.signature;
                    count = static_cast<Int>(f.cycles.size());
                }
                emit(lefschetz::bundle_report(f.genus, level, lambda, sig, count), opts);
            } else {
                if (b_genus < 1 || b_level < 1 || b_lambda < 1)
                    throw lefschetz::parse_error(
                        "bundle: give --file, or all of --genus, --level, --lambda");
                emit(lefschetz::bundle_report(b_genus, b_level, b_lambda), opts);
            }
        } else if (*theta) {
            emit(lefschetz::theta_report(t_genus, t_level, t_radius), opts);
        } else if (*homplus) {
            emit(lefschetz::homplus_report(h_dim, h_mults, h_ops), opts);
        }
    } catch (const lefschetz::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
