#pragma once

#include <complex>
#include <span>
#include <vector>

namespace labelgeom {

using cplx = std::complex<double>;

/// Point of the Riemann sphere.
struct SpherePoint {
    cplx z{};
    bool infinite = false;

    static SpherePoint at(cplx z) { return {z, false}; }
    static SpherePoint infinity() { return {{}, true}; }
};

double chordal_distance(const SpherePoint& p, const SpherePoint& q);

class Moebius {
public:
    Moebius() = default;
    Moebius(cplx a, cplx b, cplx c, cplx d) : m_{a, b, c, d} {}

    static Moebius identity() { return {1.0, 0.0, 0.0, 1.0}; }
    /// z -> z + x
    static Moebius translation(cplx x) { return {1.0, x, 0.0, 1.0}; }
    /// [[0, -w], [1, 0]]
    static Moebius crossing(cplx w) { return {0.0, -w, 1.0, 0.0}; }

    cplx a() const { return m_[0]; }
    cplx b() const { return m_[1]; }
    cplx c() const { return m_[2]; }
    cplx d() const { return m_[3]; }
    cplx operator()(int row, int col) const { return m_[2 * row + col]; }

    cplx det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }
    cplx trace() const { return m_[0] + m_[3]; }
    double max_abs() const;

    Moebius operator*(const Moebius& o) const;
    Moebius operator*(cplx s) const { return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s}; }
    Moebius operator+(const Moebius& o) const;
    Moebius operator-(const Moebius& o) const;
    Moebius inverse() const;
    /// Scaled to determinant one (the square-root branch is arbitrary).
    Moebius normalized() const;

    SpherePoint apply(const SpherePoint& p) const;

    /// Scalar up to tol relative to the largest entry.
    bool is_scalar(double tol = 1e-9) const;

private:
    cplx m_[4]{};
};

/// Entrywise distance between det-normalized matrices, minimized over the
/// sign ambiguity.
double projective_distance(const Moebius& x, const Moebius& y);

/// Distance of a matrix from the scalar matrices +-I after det-normalization.
double distance_from_identity(const Moebius& m);

/// (z1-z2)(z3-z4) / ((z1-z3)(z2-z4)); infinite points cancel their factors.
cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3, const SpherePoint& z4);

/// Shape parameter shared by all corners of a regular ideal n-gon.
double regular_shape(int n);

/// [[0, -zeta_n], [1, -1]] ... [[0, -zeta_1], [1, -1]]
Moebius region_gamma_product(std::span<const cplx> zeta);

/// (-1)^(n+1) times the (2,1)-entry of region_gamma_product: the
/// polynomial in zeta_2..zeta_{n-1} whose vanishing closes the polygon.
cplx f_polynomial(int n, std::span<const cplx> zeta);

/// The same polynomial by its three-term recursion.
cplx f_recursive(int n, std::span<const cplx> zeta);

struct Development {
    std::vector<SpherePoint> vertices;
    double closure_error = 0.0;
};

/// Lays out an ideal polygon from its shape parameters: z1, z2, z3 = 1,
/// infinity, 0 and each further vertex from the next corner.  The closure
/// error is the largest chordal mismatch when wrapping around.
Development develop_region(std::span<const cplx> zeta);

}  // namespace labelgeom
