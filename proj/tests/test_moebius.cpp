#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "labelgeom/error.hpp"
#include "labelgeom/moebius.hpp"

using namespace labelgeom;

namespace {

const cplx I{0.0, 1.0};

SpherePoint pt(cplx z) { return SpherePoint::at(z); }

cplx random_c(std::mt19937_64& rng, double r = 1.0) {
    std::uniform_real_distribution<double> u(-r, r);
    return {u(rng), u(rng)};
}

// plain 2x2 product, written out independently of the Moebius class
using M2 = std::array<cplx, 4>;
M2 mul(const M2& x, const M2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

TEST(Moebius, CrossRatioNormalization) {
    const cplx zeta{0.3, -0.7};
    EXPECT_LT(std::abs(cross_ratio(pt(1.0), SpherePoint::infinity(), pt(0.0), pt(zeta)) - zeta), 1e-15);
}

TEST(Moebius, CrossRatioRegularSquare) {
    cplx v = cross_ratio(pt(1.0), pt(I), pt(-1.0), pt(-I));
    EXPECT_LT(std::abs(v - 0.5), 1e-15);
    // the same number through w/(1+w)^2 at w = i
    EXPECT_LT(std::abs(v - I / ((1.0 + I) * (1.0 + I))), 1e-15);
}

TEST(Moebius, CrossRatioInfinityMatchesLimit) {
    std::mt19937_64 rng(7);
    for (int slot = 0; slot < 4; ++slot) {
        std::array<cplx, 4> z{random_c(rng), random_c(rng), random_c(rng), random_c(rng)};
        z[slot] = 1e9;
        std::array<SpherePoint, 4> p{pt(z[0]), pt(z[1]), pt(z[2]), pt(z[3])};
        const cplx approx = cross_ratio(p[0], p[1], p[2], p[3]);
        p[slot] = SpherePoint::infinity();
        const cplx exact = cross_ratio(p[0], p[1], p[2], p[3]);
        EXPECT_LT(std::abs(exact - approx), 1e-7) << "slot " << slot;
    }
}

TEST(Moebius, CrossRatioDegenerate) {
    try {
        cross_ratio(pt(1.0), pt(1.0), pt(0.0), pt(2.0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegeneratePoints);
    }
    EXPECT_THROW(cross_ratio(SpherePoint::infinity(), pt(1.0), SpherePoint::infinity(), pt(2.0)), Error);
}

TEST(MoebiusProperty, CrossRatioInvariance) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Moebius m{random_c(rng, 2), random_c(rng, 2), random_c(rng, 2), random_c(rng, 2)};
        if (std::abs(m.det()) < 0.1) continue;
        std::array<SpherePoint, 4> p{pt(random_c(rng)), pt(random_c(rng)), pt(random_c(rng)), pt(random_c(rng))};
        const cplx before = cross_ratio(p[0], p[1], p[2], p[3]);
        const cplx after = cross_ratio(m.apply(p[0]), m.apply(p[1]), m.apply(p[2]), m.apply(p[3]));
        EXPECT_LT(std::abs(before - after), 1e-10 * std::max(1.0, std::abs(before)));
    }
}

TEST(Moebius, RegularShapes) {
    EXPECT_NEAR(regular_shape(3), 1.0, 1e-15);
    EXPECT_NEAR(regular_shape(4), 0.5, 1e-15);
    for (int n = 4; n <= 64; ++n) {
        EXPECT_LT(regular_shape(n), regular_shape(n - 1));
        EXPECT_GT(regular_shape(n), 0.25);
    }
    EXPECT_THROW(regular_shape(2), Error);
}

TEST(Moebius, GammaProductRegularSquare) {
    std::vector<cplx> zeta(4, 0.5);
    Moebius p = region_gamma_product(zeta);
    M2 oracle{1, 0, 0, 1};
    for (cplx z : zeta) oracle = mul(M2{0, -z, 1, -1}, oracle);
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(p(k / 2, k % 2) - oracle[k]), 1e-15);
    EXPECT_LT(std::abs(p.a() + 0.25), 1e-15);
    EXPECT_LT(std::abs(p.d() + 0.25), 1e-15);
    EXPECT_LT(std::abs(p.b()), 1e-15);
    EXPECT_LT(std::abs(p.c()), 1e-15);
    EXPECT_TRUE(p.is_scalar());
}

TEST(Moebius, SmallPolynomials) {
    std::mt19937_64 rng(3);
    std::vector<cplx> z{random_c(rng), random_c(rng), random_c(rng), random_c(rng)};
    EXPECT_LT(std::abs(f_polynomial(3, z) - (1.0 - z[1])), 1e-14);
    EXPECT_LT(std::abs(f_polynomial(4, z) - (1.0 - z[1] - z[2])), 1e-14);
    EXPECT_LT(std::abs(region_gamma_product(std::span(z).first(4)).c() + (1.0 - z[1] - z[2])), 1e-14);
    std::vector<cplx> sum_one{0.2, 0.3, 0.7, 0.9};
    EXPECT_LT(std::abs(f_polynomial(4, sum_one)), 1e-15);
}

TEST(Moebius, RecursionAgreesWithProduct) {
    std::mt19937_64 rng(5);
    for (int n = 3; n <= 12; ++n) {
        std::vector<cplx> z;
        for (int k = 0; k < n; ++k) z.push_back(random_c(rng));
        EXPECT_LT(std::abs(f_polynomial(n, z) - f_recursive(n, z)), 1e-12) << "n=" << n;
    }
}

TEST(MoebiusProperty, RegularPolygonsClose) {
    for (int n = 3; n <= 20; ++n) {
        std::vector<cplx> z(n, regular_shape(n));
        EXPECT_LT(std::abs(f_polynomial(n, z)), 1e-10) << "n=" << n;
        EXPECT_TRUE(region_gamma_product(z).is_scalar());
        EXPECT_LT(develop_region(z).closure_error, 1e-10);
    }
    std::vector<cplx> five(5, regular_shape(5));
    EXPECT_LT(std::abs(f_polynomial(5, five)), 1e-12);
}

TEST(Moebius, DevelopSquare) {
    std::vector<cplx> z(4, 0.5);
    auto dev = develop_region(z);
    ASSERT_EQ(dev.vertices.size(), 4u);
    EXPECT_LT(dev.closure_error, 1e-12);
    EXPECT_TRUE(dev.vertices[1].infinite);
    EXPECT_LT(std::abs(dev.vertices[3].z - 0.5), 1e-15);
}

TEST(Moebius, DevelopPerturbed) {
    std::vector<cplx> z(4, 0.5);
    z[2] += 1e-3;
    EXPECT_GT(develop_region(z).closure_error, 1e-6);
    std::vector<cplx> zero{0.5, 0.0, 0.5, 0.5};
    try {
        develop_region(zero);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateShape);
    }
}

TEST(MoebiusProperty, ScalarIffCloses) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 4);
        std::vector<cplx> z;
        for (int k = 0; k < n; ++k) z.push_back(0.3 + random_c(rng, 0.2));
        if (trial % 2 == 0) {
            // close the polygon: pick four points, then the rest on random spots
            std::vector<SpherePoint> v;
            for (int k = 0; k < n; ++k) v.push_back(pt(std::polar(1.0 + 0.3 * k, 2 * std::numbers::pi * k / n + 0.1 * random_c(rng).real())));
            for (int k = 0; k < n; ++k) {
                z[k] = cross_ratio(v[(k - 1 + n) % n], v[k], v[(k + 1) % n], v[(k + 2) % n]);
            }
        }
        const bool scalar = region_gamma_product(z).is_scalar(1e-9);
        const bool closes = develop_region(z).closure_error < 1e-9;
        EXPECT_EQ(scalar, closes);
        if (trial % 2 == 0) EXPECT_TRUE(scalar);
    }
}

TEST(MoebiusProperty, RealShapesGiveConcyclicVertices) {
    // a polygon inscribed in the real line has real shapes, and conversely
    std::vector<SpherePoint> v{pt(-3.0), pt(-1.0), pt(0.5), pt(2.0), pt(7.0)};
    const int n = 5;
    std::vector<cplx> z;
    for (int k = 0; k < n; ++k) z.push_back(cross_ratio(v[(k - 1 + n) % n], v[k], v[(k + 1) % n], v[(k + 2) % n]));
    for (cplx s : z) EXPECT_LT(std::abs(s.imag()), 1e-14);
    auto dev = develop_region(z);
    EXPECT_LT(dev.closure_error, 1e-10);
    for (const auto& p : dev.vertices) {
        if (!p.infinite) EXPECT_LT(std::abs(p.z.imag()), 1e-12);
    }
    // a non-real shape moves a vertex off the circle through the first three
    z[1] += cplx(0, 0.1);
    z[2] -= cplx(0, 0.1);
    auto off = develop_region(z);
    bool off_line = false;
    for (const auto& p : off.vertices) off_line = off_line || (!p.infinite && std::abs(p.z.imag()) > 1e-3);
    EXPECT_TRUE(off_line);
}

TEST(Moebius, ProjectiveDistanceIgnoresSignAndScale) {
    Moebius m{1.0, 2.0, 3.0, 7.0};
    EXPECT_LT(projective_distance(m, m * cplx(-2.5, 1.0)), 1e-12);
    EXPECT_GT(projective_distance(m, Moebius::identity()), 0.1);
    EXPECT_LT(distance_from_identity(Moebius::identity() * -3.0), 1e-15);
    EXPECT_LT(projective_distance(m * m.inverse(), Moebius::identity()), 1e-12);
}
