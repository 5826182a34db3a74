#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "labelgeom/solver.hpp"

namespace labelgeom {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// One comparison against a stored census value.
struct CensusCheck {
    std::string what;
    double error = 0.0;
    double tolerance = 0.0;

    bool passed() const { return error <= tolerance; }
};

/// Stored expectations for a census name, evaluated on a solve.  Names
/// without stored values give an empty list.
std::vector<CensusCheck> census_checks(std::string_view name, const ResidualSystem& system,
                                       const std::vector<Solution>& solutions, const Solution& geometric);

struct RunOptions {
    SolverOptions solver;
    /// Labels of every solution, not only the selected one.  Scores and
    /// tags of all solutions are always reported.
    bool all_solutions = false;
    bool dump_vertices = false;
    std::string source;  ///< file or census name, echoed in the report
    /// Census name whose stored values are compared; empty for none.
    std::string census;
};

struct RunReport {
    Json json;
    /// A geometric candidate was selected and its representation satisfies
    /// every Wirtinger relation.
    bool certified = false;
    bool census_passed = true;
};

/// Solve, select, verify the holonomy and collect invariants.  Throws only
/// on input errors; a missing candidate leaves `geometric` null.
RunReport run_pipeline(const PlanarDiagram& diagram, const RunOptions& options);

/// Two-space indented, trailing newline.  Numbers were already rounded to
/// 15 significant digits when the report was built.
std::string dump_report(const Json& json);

struct CertificateReport {
    double max_residual = 0.0;
    double max_relator_deviation = 0.0;
    bool tags_checked = false;
};

/// Re-evaluates residuals, relators and tags of a solution document without
/// solving.  The document is either a report (its geometric solution is
/// read) or a bare solution with edge_labels and crossing_labels.  Throws
/// SchemaError and ToleranceExceeded.
CertificateReport verify_certificate(const PlanarDiagram& diagram, const Json& document, double tolerance = 1e-8);

}  // namespace labelgeom
