#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "labelgeom/equations.hpp"

namespace labelgeom {

enum class GuessMode { RegularHeuristic, RealHeuristic, Random };

struct SolverOptions {
    int restarts = default_restarts();
    std::uint64_t seed = 1;
    double tolerance = 1e-9;  ///< acceptance bound on the max residual
    int max_iterations = 200;
    double dedup_tolerance = 1e-6;
    int threads = 0;  ///< 0: hardware concurrency
    /// Keep points with a vanishing label on a region of three or more
    /// sides.  These lie on degenerate families and carry no shapes.
    bool keep_degenerate = false;

    /// LABELGEOM_RESTARTS from the environment, else 48.
    static int default_restarts();
};

struct LmResult {
    Vec x;
    double max_residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Damped Gauss-Newton on the complex least-squares problem.
LmResult levenberg_marquardt(const ResidualSystem& system, Vec x0, const SolverOptions& options = {});

/// 0/1 matrix sending one value per class to the unknowns.  Edges are
/// classed by the sizes of their two faces, crossings by the sizes of the
/// faces around them.
Mat class_basis(const ResidualSystem& system);

/// Solve on the span of the class basis from a random start, then polish on
/// the full space.  Reaches symmetric solutions (the real ones especially)
/// that generic starts almost never find.
LmResult symmetric_start(const ResidualSystem& system, const Mat& basis, bool real, std::mt19937_64& rng,
                         const SolverOptions& options = {});

Vec initial_guess(const ResidualSystem& system, GuessMode mode, std::mt19937_64& rng);

struct SolutionTags {
    bool nonzero_labels = false;    ///< side labels of regions with n >= 3 and crossing labels all above 1e-5
    bool nonneg_imaginary = false;  ///< black-side labels have Im >= -1e-9
    bool real = false;
    int conjugate_partner = -1;     ///< index in the solution list, -1 if none
    bool heuristic = false;         ///< chosen by select_geometric
};

struct Solution {
    Vec x;
    LabelAssignment labels;
    std::vector<std::vector<cplx>> shapes;  ///< per face, corner order; empty for bigons and degenerate points
    double max_residual = 0.0;
    double regularity_deviation = 0.0;  ///< sum of |zeta - regular|^2 over corners of n >= 3 regions
    SolutionTags tags;
};

/// Tags and score of a converged point (partner and heuristic left unset).
Solution describe(const ResidualSystem& system, const Vec& x);

/// Multi-start solve; deterministic for a given (system, seed, restarts).
/// Sorted by regularity deviation.  Throws NoConvergence if no start converges.
std::vector<Solution> solve_all(const ResidualSystem& system, const SolverOptions& options = {});

/// Heuristic choice of the geometric solution.  Throws NoCandidate.
Solution select_geometric(const ResidualSystem& system, const std::vector<Solution>& solutions);

}  // namespace labelgeom
