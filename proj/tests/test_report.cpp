#include <gtest/gtest.h>

#include <cmath>
#include <regex>

#include "labelgeom/census.hpp"
#include "labelgeom/error.hpp"
#include "labelgeom/report.hpp"

using namespace labelgeom;

namespace {

RunReport census_run(const std::string& name, bool all = false) {
    RunOptions o;
    o.source = name;
    o.census = name;
    o.all_solutions = all;
    o.solver.restarts = 16;
    return run_pipeline(census_diagram(name), o);
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

const Json& geometric(const Json& report) { return report["solutions"][report["geometric"].get<std::size_t>()]; }

// nearest a + b*omega with small integers a, b
cplx snap_to_eisenstein(cplx z) {
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    cplx best = z;
    double gap = INFINITY;
    for (int a = -3; a <= 3; ++a) {
        for (int b = -3; b <= 3; ++b) {
            const cplx c = static_cast<double>(a) + static_cast<double>(b) * omega;
            if (std::abs(c - z) < gap) {
                gap = std::abs(c - z);
                best = c;
            }
        }
    }
    EXPECT_LT(gap, 1e-9);
    return best;
}

}  // namespace

TEST(Report, FigureEightPrintsOmega) {
    auto r = census_run("fig8");
    ASSERT_TRUE(r.certified);
    EXPECT_TRUE(r.census_passed);
    const Json& g = geometric(r.json);
    EXPECT_EQ(g["crossing_labels"][0], Json::parse("[-0.5, 0.866025403784439]"));
    EXPECT_NE(dump_report(r.json).find("0.866025403784439"), std::string::npos);
    EXPECT_EQ(r.json["white_side_rule"]["kappa"].size(), 8u);
    EXPECT_EQ(r.json["solutions"].size(), 2u);
    // the other one is the conjugate and carries no labels by default
    EXPECT_FALSE(r.json["solutions"][1 - r.json["geometric"].get<int>()].contains("edge_labels"));
}

TEST(Report, RoundTripIsLossless) {
    auto r = census_run("11a79");
    const std::string text = dump_report(r.json);
    EXPECT_EQ(dump_report(Json::parse(text)), text);
}

TEST(Report, FifteenSignificantDigits) {
    const std::string text = dump_report(census_run("turks_head", true).json);
    const std::regex num(R"([-+]?(\d+)(?:\.(\d+))?(?:e[-+]?\d+)?)");
    int checked = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), num); it != std::sregex_iterator(); ++it) {
        std::string digits = (*it)[1].str() + (*it)[2].str();
        digits.erase(0, digits.find_first_not_of('0'));
        EXPECT_LE(digits.size(), 15u) << it->str();
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(Report, DeterministicAcrossThreadCounts) {
    RunOptions a, b;
    a.solver.threads = 1;
    b.solver.threads = 4;
    a.solver.restarts = b.solver.restarts = 24;
    const auto d = census_diagram("9a37");
    EXPECT_EQ(dump_report(run_pipeline(d, a).json), dump_report(run_pipeline(d, b).json));
}

TEST(Report, TurksHeadListsFourWithTwoReal) {
    auto r = census_run("turks_head", true);
    ASSERT_EQ(r.json["solutions"].size(), 4u);
    int real = 0;
    for (const auto& s : r.json["solutions"]) {
        EXPECT_TRUE(s.contains("edge_labels"));
        if (s["tags"]["real"].get<bool>()) {
            ++real;
            EXPECT_FALSE(s["tags"]["geometric"].get<bool>());
        }
    }
    EXPECT_EQ(real, 2);
    EXPECT_TRUE(r.census_passed);
}

TEST(Report, NoCandidateLeavesGeometricNull) {
    RunOptions o;
    o.solver.restarts = 2;
    o.solver.tolerance = 1e-300;
    auto r = run_pipeline(census_diagram("fig8"), o);
    EXPECT_FALSE(r.certified);
    EXPECT_TRUE(r.json["geometric"].is_null());
    EXPECT_TRUE(r.json["holonomy"].is_null());
}

TEST(Report, VerticesOnRequest) {
    RunOptions o;
    o.dump_vertices = true;
    auto r = run_pipeline(census_diagram("borromean"), o);
    ASSERT_TRUE(r.json.contains("vertices"));
    EXPECT_EQ(r.json["vertices"].size(), 8u);  // all eight faces are triangles
    for (const auto& v : r.json["vertices"]) EXPECT_LT(v["closure_error"].get<double>(), 1e-10);
}

TEST(Report, EncircledReportsTangle) {
    auto r = census_run("encircled:hclasp_reversed");
    ASSERT_TRUE(r.json.contains("tangle"));
    EXPECT_FALSE(r.json["tangle"]["parallel"].get<bool>());
    EXPECT_NEAR(r.json["tangle"]["punctured_sphere_labels"][0][0].get<double>(), -0.25, 1e-9);
}

class CensusValues : public ::testing::TestWithParam<const char*> {};

TEST_P(CensusValues, StoredValuesReproduced) {
    auto r = census_run(GetParam());
    EXPECT_TRUE(r.certified);
    ASSERT_FALSE(r.json["census"]["checks"].empty());
    for (const auto& c : r.json["census"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
}

INSTANTIATE_TEST_SUITE_P(Names, CensusValues,
                         ::testing::Values("fig8", "borromean", "turks_head", "Ln:5", "9a37", "11a79", "encircled:twist3"),
                         [](const auto& info) {
                             std::string n = info.param;
                             for (char& ch : n) ch = std::isalnum(static_cast<unsigned char>(ch)) ? ch : '_';
                             return n;
                         });

TEST(CensusChecks, WrongSolutionFails) {
    auto s = ResidualSystem::assemble(census_diagram("fig8"));
    auto all = solve_all(s);
    auto g = select_geometric(s, all);
    const Solution& other = (all[0].x - g.x).norm() == 0.0 ? all[1] : all[0];
    bool any_failed = false;
    for (const auto& c : census_checks("fig8", s, all, other)) any_failed = any_failed || !c.passed();
    EXPECT_TRUE(any_failed);
}

TEST(Certificate, ReportVerifies) {
    auto r = census_run("9a37");
    auto c = verify_certificate(census_diagram("9a37"), r.json);
    EXPECT_LT(c.max_residual, 1e-12);
    EXPECT_LT(c.max_relator_deviation, 1e-10);
    EXPECT_TRUE(c.tags_checked);
}

TEST(Certificate, ExactFigureEightValues) {
    auto r = census_run("fig8");
    Json sol = Json::object();
    for (const char* key : {"edge_labels", "crossing_labels"}) {
        Json list = Json::array();
        for (const auto& z : geometric(r.json)[key]) {
            const cplx exact = snap_to_eisenstein({z[0].get<double>(), z[1].get<double>()});
            list.push_back(Json::array({exact.real(), exact.imag()}));
        }
        sol[key] = list;
    }
    auto c = verify_certificate(census_diagram("fig8"), sol);
    EXPECT_LT(c.max_residual, 1e-14);
    EXPECT_FALSE(c.tags_checked);
}

TEST(Certificate, PerturbedLabelsRejected) {
    auto r = census_run("fig8");
    Json sol = geometric(r.json);
    sol["edge_labels"][1][0] = sol["edge_labels"][1][0].get<double>() + 1e-3;
    EXPECT_EQ(code_of([&] { verify_certificate(census_diagram("fig8"), sol); }), ErrorCode::ToleranceExceeded);
}

TEST(Certificate, WrongTagRejected) {
    auto r = census_run("fig8");
    Json sol = geometric(r.json);
    sol["tags"]["real"] = true;
    EXPECT_EQ(code_of([&] { verify_certificate(census_diagram("fig8"), sol); }), ErrorCode::ToleranceExceeded);
}

TEST(Certificate, MalformedDocuments) {
    const auto d = census_diagram("fig8");
    EXPECT_EQ(code_of([&] { verify_certificate(d, Json::object()); }), ErrorCode::SchemaError);
    EXPECT_EQ(code_of([&] { verify_certificate(d, Json::array()); }), ErrorCode::SchemaError);
    EXPECT_EQ(code_of([&] { verify_certificate(d, Json{{"edge_labels", Json::array()}}); }), ErrorCode::SchemaError);
    Json sol = geometric(census_run("fig8").json);
    sol["crossing_labels"][0] = "x";
    EXPECT_EQ(code_of([&] { verify_certificate(d, sol); }), ErrorCode::SchemaError);
    Json report = census_run("fig8").json;
    report["geometric"] = nullptr;
    EXPECT_EQ(code_of([&] { verify_certificate(d, report); }), ErrorCode::SchemaError);
}
