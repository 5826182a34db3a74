#include "labelgeom/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <thread>

#include "labelgeom/error.hpp"

namespace labelgeom {

namespace {

constexpr int kSymmetricAttempts = 24;
constexpr int kStallWindow = 25;
constexpr double kZeroLabel = 1e-5;

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool lex_less(const Vec& a, const Vec& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ar = std::round(a(i).real() * 1e8), br = std::round(b(i).real() * 1e8);
        if (ar != br) return ar < br;
        const double ai = std::round(a(i).imag() * 1e8), bi = std::round(b(i).imag() * 1e8);
        if (ai != bi) return ai < bi;
    }
    return false;
}

}  // namespace

int SolverOptions::default_restarts() {
    if (const char* env = std::getenv("LABELGEOM_RESTARTS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 48;
}

namespace {

// x = basis * y when a basis is given, else x = y
LmResult damped_gauss_newton(const ResidualSystem& system, Vec y, const Mat* basis, const SolverOptions& options) {
    auto lift = [&](const Vec& v) -> Vec { return basis ? Vec(*basis * v) : v; };
    LmResult out;
    Vec r = system.residual(lift(y));
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    double checkpoint = cost;
    for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations) {
        if (inf_norm(r) < 1e-11) break;
        // a start that has not gained ten percent in a while is stuck in a basin of a non-zero minimum
        if (out.iterations > 0 && out.iterations % kStallWindow == 0) {
            if (cost > 0.9 * checkpoint) break;
            checkpoint = cost;
        }
        const Mat j = basis ? Mat(system.jacobian(lift(y)) * *basis) : system.jacobian(y);
        const Mat jh = j.adjoint();
        const Mat normal = jh * j;
        const Vec g = -(jh * r);
        bool improved = false, slow = false;
        double step = 0.0;
        while (lambda < 1e16) {
            Mat a = normal;
            for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, i) += lambda * std::max(normal(i, i).real(), 1e-9);
            const Vec delta = a.ldlt().solve(g);
            const Vec trial = y + delta;
            const Vec rt = system.residual(lift(trial));
            const double ct = rt.squaredNorm();
            if (std::isfinite(ct) && ct < cost) {
                step = inf_norm(delta);
                // inside tolerance and no longer converging fast: an ill-conditioned
                // point, left to the final polish
                slow = inf_norm(rt) < options.tolerance && ct > 0.25 * cost;
                y = trial;
                r = rt;
                cost = ct;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                break;
            }
            lambda *= 3.0;
        }
        if (!improved || slow || step < 1e-13 || inf_norm(y) > 1e6) break;
    }
    out.x = lift(y);
    out.max_residual = inf_norm(r);
    out.converged = out.max_residual < options.tolerance;
    return out;
}

// a few undamped steps so the last printed digit is right; kept only
// while the residual keeps falling
Vec polish(const ResidualSystem& system, Vec x) {
    Vec r = system.residual(x);
    double best = inf_norm(r);
    for (int k = 0; k < 3 && best > 0.0; ++k) {
        const Vec trial = x + system.jacobian(x).colPivHouseholderQr().solve(-r);
        const Vec rt = system.residual(trial);
        if (!(inf_norm(rt) < best)) break;
        x = trial;
        r = rt;
        best = inf_norm(rt);
    }
    return x;
}

}  // namespace

LmResult levenberg_marquardt(const ResidualSystem& system, Vec x0, const SolverOptions& options) {
    if (x0.size() > 0 && inf_norm(x0) == 0.0) {
        // the origin is a critical point of every region product
        for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = cplx(1e-3 * static_cast<double>(i % 7 + 1), 1e-3);
    }
    return damped_gauss_newton(system, std::move(x0), nullptr, options);
}

Mat class_basis(const ResidualSystem& system) {
    const PlanarDiagram& d = system.diagram();
    std::map<std::vector<int>, int> classes;
    std::vector<int> of(system.unknown_count());
    auto class_of = [&](const std::vector<int>& key) {
        return classes.try_emplace(key, static_cast<int>(classes.size())).first->second;
    };
    auto size = [&](int face) { return static_cast<int>(d.region(face).sides()); };
    for (const auto& e : d.edges()) {
        const int black = d.color(e.left_face) == Color::Black ? e.left_face : e.right_face;
        const int white = black == e.left_face ? e.right_face : e.left_face;
        of[system.u_index(e.index)] = class_of({0, size(black), size(white), e.kappa});
    }
    for (int c = 0; c < d.crossing_count(); ++c) {
        std::vector<int> black, white;
        for (int k = 0; k < 4; ++k) {
            const int f = d.face_at_corner(c, k);
            (d.color(f) == Color::Black ? black : white).push_back(size(f));
        }
        std::sort(black.begin(), black.end());
        std::sort(white.begin(), white.end());
        std::vector<int> key{1};
        key.insert(key.end(), black.begin(), black.end());
        key.push_back(-1);
        key.insert(key.end(), white.begin(), white.end());
        of[system.w_index(c)] = class_of(key);
    }
    Mat p = Mat::Zero(system.unknown_count(), static_cast<Eigen::Index>(classes.size()));
    for (std::size_t i = 0; i < of.size(); ++i) p(static_cast<Eigen::Index>(i), of[i]) = 1.0;
    return p;
}

LmResult symmetric_start(const ResidualSystem& system, const Mat& basis, bool real, std::mt19937_64& rng,
                         const SolverOptions& options) {
    std::uniform_real_distribution<double> wide(-4.0, 4.0);
    LmResult reduced;
    // real iterates cannot step around poles, so most real starts stall; they are cheap to retry
    for (int attempt = 0; attempt < kSymmetricAttempts; ++attempt) {
        Vec y(basis.cols());
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = cplx(wide(rng), real ? 0.0 : wide(rng));
        reduced = damped_gauss_newton(system, y, &basis, options);
        if (reduced.converged) break;
    }
    if (!reduced.converged) return reduced;
    // polish without the constraint; a symmetric zero is a zero of the full map
    return levenberg_marquardt(system, reduced.x, options);
}

Vec initial_guess(const ResidualSystem& system, GuessMode mode, std::mt19937_64& rng) {
    const PlanarDiagram& d = system.diagram();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Vec x(system.unknown_count());
    if (mode == GuessMode::Random) {
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            cplx z;
            do z = {2 * unit(rng), 2 * unit(rng)};
            while (std::abs(z) > 2.0 || std::abs(z) < 1e-3);
            x(i) = z;
        }
        return x;
    }
    const bool real = mode == GuessMode::RealHeuristic;
    const double height = real ? 0.0 : (rng() % 2 ? 1.0 : -1.0) * (0.6 + 0.2 * unit(rng));
    const double spread = real ? 1.5 : 0.15;
    for (const auto& e : d.edges()) {
        const double re = 0.5 * e.kappa + spread * unit(rng);
        x(system.u_index(e.index)) = real ? cplx(re, 0.0) : cplx(re, height + spread * unit(rng));
    }
    for (int face : system.bigons()) {
        for (const auto& c : d.region(face).corners) {
            const auto& e = d.edge(c.edge_in);
            x(system.u_index(c.edge_in)) = d.color(face) == Color::Black ? 0.0 : static_cast<double>(e.kappa);
        }
    }
    std::vector<cplx> sum(d.crossing_count(), 0.0);
    std::vector<int> count(d.crossing_count(), 0);
    for (const auto& r : d.regions()) {
        const std::size_t n = r.sides();
        if (n < 3) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Corner& c = r.corners[i];
            const cplx u1 = system.side_label(x, c.edge_in, r.face);
            const cplx u2 = system.side_label(x, r.corners[(i + 1) % n].edge_in, r.face);
            sum[c.crossing] += static_cast<double>(c.kappa()) * regular_shape(static_cast<int>(n)) * u1 * u2;
            ++count[c.crossing];
        }
    }
    for (int c = 0; c < d.crossing_count(); ++c) {
        const cplx w = count[c] ? sum[c] / static_cast<double>(count[c]) : cplx(0.0, height);
        x(system.w_index(c)) = w + cplx(0.05 * unit(rng), real ? 0.0 : 0.05 * unit(rng));
    }
    return x;
}

Solution describe(const ResidualSystem& system, const Vec& x) {
    const PlanarDiagram& d = system.diagram();
    Solution s;
    s.x = x;
    s.labels = system.expand(x);
    s.shapes.resize(d.face_count());
    s.max_residual = inf_norm(system.residual(x));
    // iterates crawling onto a degenerate family stop with labels near
    // 1e-6 rather than at zero, so the cut is generous
    s.tags.nonzero_labels = true;
    for (const auto& r : d.regions()) {
        if (r.sides() < 3) continue;
        for (const auto& c : r.corners) {
            if (std::abs(system.side_label(x, c.edge_in, r.face)) < kZeroLabel) s.tags.nonzero_labels = false;
            if (std::abs(x(system.w_index(c.crossing))) < kZeroLabel) s.tags.nonzero_labels = false;
        }
    }
    s.tags.nonneg_imaginary = true;
    for (const auto& e : d.edges()) {
        if (x(system.u_index(e.index)).imag() < -1e-9) s.tags.nonneg_imaginary = false;
    }
    s.tags.real = x.imag().cwiseAbs().maxCoeff() < 1e-9;
    if (!s.tags.nonzero_labels) {
        s.regularity_deviation = std::numeric_limits<double>::infinity();
        return s;
    }
    for (const auto& r : d.regions()) {
        if (r.sides() < 3) continue;
        const double reg = regular_shape(static_cast<int>(r.sides()));
        s.shapes[r.face] = region_shapes(system, x, r.face);
        for (cplx z : s.shapes[r.face]) s.regularity_deviation += std::norm(z - reg);
    }
    return s;
}

std::vector<Solution> solve_all(const ResidualSystem& system, const SolverOptions& options) {
    if (options.restarts < 1) throw Error(ErrorCode::InvalidArgument, "restart budget must be positive");
    std::vector<LmResult> runs(options.restarts);
    const Mat basis = class_basis(system);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int k = next++; k < options.restarts; k = next++) {
            std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                              static_cast<std::uint32_t>(k)};
            std::mt19937_64 rng(seq);
            if (k % 4 == 1) {
                runs[k] = symmetric_start(system, basis, (k / 4) % 2 == 1, rng, options);
                continue;
            }
            const GuessMode mode = k % 4 == 3 ? GuessMode::Random : GuessMode::RegularHeuristic;
            runs[k] = levenberg_marquardt(system, initial_guess(system, mode, rng), options);
        }
    };
    int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, options.restarts);
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    std::vector<Vec> found;
    auto add = [&](const Vec& x) {
        for (const auto& f : found) {
            if (inf_norm(f - x) < options.dedup_tolerance) return false;
        }
        found.push_back(x);
        return true;
    };
    for (const auto& run : runs) {
        if (run.converged) add(polish(system, run.x));
    }
    if (found.empty()) throw Error(ErrorCode::NoConvergence, "no start reached the tolerance");
    // the coefficients are real, so conjugates are solutions too
    const std::size_t direct = found.size();
    for (std::size_t i = 0; i < direct; ++i) {
        const Vec conj = found[i].conjugate();
        if (inf_norm(conj - found[i]) < options.dedup_tolerance) continue;
        LmResult polished = levenberg_marquardt(system, conj, options);
        if (polished.converged) add(polish(system, polished.x));
    }

    std::vector<Solution> out, degenerate;
    for (const auto& x : found) {
        Solution s = describe(system, x);
        (s.tags.nonzero_labels ? out : degenerate).push_back(std::move(s));
    }
    if (options.keep_degenerate || out.empty()) out.insert(out.end(), degenerate.begin(), degenerate.end());
    std::sort(out.begin(), out.end(), [](const Solution& a, const Solution& b) {
        if (std::abs(a.regularity_deviation - b.regularity_deviation) > 1e-9) {
            return a.regularity_deviation < b.regularity_deviation;
        }
        return lex_less(a.x, b.x);
    });
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].tags.real) continue;
        for (std::size_t j = 0; j < out.size(); ++j) {
            if (j != i && inf_norm(out[j].x - out[i].x.conjugate()) < options.dedup_tolerance) {
                out[i].tags.conjugate_partner = static_cast<int>(j);
            }
        }
    }
    return out;
}

Solution select_geometric(const ResidualSystem& system, const std::vector<Solution>& solutions) {
    std::vector<const Solution*> pool;
    for (const auto& s : solutions) {
        if (s.tags.nonzero_labels && !s.tags.real) pool.push_back(&s);
    }
    if (system.diagram().is_alternating()) {
        std::vector<const Solution*> upper;
        for (const auto* s : pool) {
            if (s->tags.nonneg_imaginary) upper.push_back(s);
        }
        if (!upper.empty()) pool = std::move(upper);
    }
    if (pool.empty()) throw Error(ErrorCode::NoCandidate, "every solution was filtered out");
    const Solution* best = pool.front();
    for (const auto* s : pool) {
        if (s->regularity_deviation < best->regularity_deviation - 1e-9) best = s;
    }
    Solution chosen = *best;
    chosen.tags.heuristic = true;
    return chosen;
}

}  // namespace labelgeom
