// labelgeom command line: solve a PD file, run a census example, or check
// a solution certificate.
//
// exit codes: 0 ok, 1 input error, 2 no certified candidate (or a
// certificate outside tolerance), 3 census values not reproduced

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "labelgeom/census.hpp"
#include "labelgeom/error.hpp"
#include "labelgeom/report.hpp"

using namespace labelgeom;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw Error(ErrorCode::FileError, "cannot write " + out);
    f << text;
}

struct Flags {
    std::uint64_t seed = 1;
    int restarts = SolverOptions::default_restarts();
    double tol = 1e-9;
    bool all = false;
    bool vertices = false;
    std::string json_out;
};

void add_solve_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--seed", f.seed, "random seed for the restarts");
    cmd->add_option("--restarts", f.restarts, "number of solver starts (default LABELGEOM_RESTARTS or 48)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--tol", f.tol, "acceptance bound on the residual")->check(CLI::PositiveNumber);
    cmd->add_flag("--all-solutions", f.all, "print the labels of every solution");
    cmd->add_flag("--dump-vertices", f.vertices, "export developed polygon vertices");
    cmd->add_option("--json", f.json_out, "write the report here instead of stdout");
}

RunOptions run_options(const Flags& f, std::string source, std::string census) {
    RunOptions o;
    o.solver.seed = f.seed;
    o.solver.restarts = f.restarts;
    o.solver.tolerance = f.tol;
    o.all_solutions = f.all;
    o.dump_vertices = f.vertices;
    o.source = std::move(source);
    o.census = std::move(census);
    return o;
}

int finish(const RunReport& r, const Flags& f) {
    emit(dump_report(r.json), f.json_out);
    if (!r.certified) {
        std::cerr << "labelgeom: " << to_string(ErrorCode::NoCandidate) << ": no certified geometric solution\n";
        return 2;
    }
    if (!r.census_passed) {
        std::cerr << "labelgeom: stored census values not reproduced\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic structures of link complements from diagram labels"};
    app.require_subcommand(1);

    Flags solve_flags;
    std::string pd_path;
    auto* solve = app.add_subcommand("solve", "solve the label equations of a PD file");
    solve->add_option("pd", pd_path, "PD file")->required();
    add_solve_flags(solve, solve_flags);

    Flags census_flags;
    std::string census_name;
    bool list = false;
    auto* census = app.add_subcommand("census", "run a built-in example and compare with stored values");
    census->add_option("name", census_name, "fig8, borromean, turks_head, Ln:<n>, 9a37, 11a79, encircled:<variant>");
    census->add_flag("--list", list, "list the census names");
    add_solve_flags(census, census_flags);

    std::string verify_pd, verify_json;
    double verify_tol = 1e-8;
    auto* check = app.add_subcommand("verify", "check a solution certificate without solving");
    check->add_option("pd", verify_pd, "PD file")->required();
    check->add_option("solution", verify_json, "solution or report JSON")->required();
    check->add_option("--tol", verify_tol, "bound on residuals and relators")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            const auto d = parse_pd(slurp(pd_path));
            return finish(run_pipeline(d, run_options(solve_flags, pd_path, "")), solve_flags);
        }
        if (*census) {
            if (list) {
                for (const auto& n : census_names()) std::cout << n << "\n";
                return 0;
            }
            if (census_name.empty()) throw Error(ErrorCode::UnknownCensusName, "census needs a name or --list");
            const auto d = census_diagram(census_name);
            return finish(run_pipeline(d, run_options(census_flags, census_name, census_name)), census_flags);
        }
        const auto d = parse_pd(slurp(verify_pd));
        Json doc;
        try {
            doc = Json::parse(slurp(verify_json));
        } catch (const Json::parse_error& e) {
            throw Error(ErrorCode::SchemaError, e.what());
        }
        const auto r = verify_certificate(d, doc, verify_tol);
        std::cout << "residual " << r.max_residual << "\nrelator deviation " << r.max_relator_deviation << "\n";
        std::cout << (r.tags_checked ? "tags match\n" : "no tags to check\n");
        return 0;
    } catch (const Error& e) {
        std::cerr << "labelgeom: " << e.what() << "\n";
        return e.code() == ErrorCode::ToleranceExceeded || e.code() == ErrorCode::NoCandidate ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "labelgeom: " << e.what() << "\n";
        return 1;
    }
}
