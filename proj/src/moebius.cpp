#include "labelgeom/moebius.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "labelgeom/error.hpp"

namespace labelgeom {

namespace {

// stereographic image on the unit sphere
std::array<double, 3> lift(const SpherePoint& p) {
    if (p.infinite) return {0.0, 0.0, 1.0};
    const double r2 = std::norm(p.z);
    return {2 * p.z.real() / (1 + r2), 2 * p.z.imag() / (1 + r2), (r2 - 1) / (1 + r2)};
}

bool same_point(const SpherePoint& p, const SpherePoint& q) {
    if (p.infinite || q.infinite) return p.infinite && q.infinite;
    return p.z == q.z;
}

}  // namespace

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
    auto a = lift(p), b = lift(q);
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

double Moebius::max_abs() const {
    double s = 0;
    for (auto v : m_) s = std::max(s, std::abs(v));
    return s;
}

Moebius Moebius::operator*(const Moebius& o) const {
    return {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
}

Moebius Moebius::operator+(const Moebius& o) const {
    return {m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]};
}

Moebius Moebius::operator-(const Moebius& o) const {
    return {m_[0] - o.m_[0], m_[1] - o.m_[1], m_[2] - o.m_[2], m_[3] - o.m_[3]};
}

Moebius Moebius::inverse() const {
    const cplx det = this->det();
    if (det == 0.0) throw Error(ErrorCode::InvalidArgument, "singular matrix");
    return Moebius{m_[3], -m_[1], -m_[2], m_[0]} * (1.0 / det);
}

Moebius Moebius::normalized() const {
    const cplx det = this->det();
    if (det == 0.0) throw Error(ErrorCode::InvalidArgument, "singular matrix");
    return *this * (1.0 / std::sqrt(det));
}

SpherePoint Moebius::apply(const SpherePoint& p) const {
    if (p.infinite) {
        if (m_[2] == 0.0) return SpherePoint::infinity();
        return SpherePoint::at(m_[0] / m_[2]);
    }
    const cplx num = m_[0] * p.z + m_[1];
    const cplx den = m_[2] * p.z + m_[3];
    if (den == 0.0) return SpherePoint::infinity();
    return SpherePoint::at(num / den);
}

bool Moebius::is_scalar(double tol) const {
    const double s = max_abs();
    if (s == 0) return true;
    return std::abs(m_[1]) <= tol * s && std::abs(m_[2]) <= tol * s && std::abs(m_[0] - m_[3]) <= tol * s;
}

double projective_distance(const Moebius& x, const Moebius& y) {
    // long words lose their determinant to cancellation; such a matrix is
    // far from anything worth comparing
    for (const Moebius* m : {&x, &y}) {
        const double scale = m->max_abs();
        if (!std::isfinite(scale) || std::abs(m->det()) <= 1e-14 * scale * scale) {
            return std::numeric_limits<double>::infinity();
        }
    }
    const Moebius a = x.normalized(), b = y.normalized();
    double plus = 0, minus = 0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            plus = std::max(plus, std::abs(a(r, c) - b(r, c)));
            minus = std::max(minus, std::abs(a(r, c) + b(r, c)));
        }
    }
    return std::min(plus, minus);
}

double distance_from_identity(const Moebius& m) { return projective_distance(m, Moebius::identity()); }

cplx cross_ratio(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3, const SpherePoint& z4) {
    const SpherePoint* pts[4] = {&z1, &z2, &z3, &z4};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (same_point(*pts[i], *pts[j])) throw Error(ErrorCode::DegeneratePoints, "repeated point");
        }
    }
    if (z1.infinite) return (z3.z - z4.z) / (z2.z - z4.z);
    if (z2.infinite) return -(z3.z - z4.z) / (z1.z - z3.z);
    if (z3.infinite) return -(z1.z - z2.z) / (z2.z - z4.z);
    if (z4.infinite) return (z1.z - z2.z) / (z1.z - z3.z);
    return (z1.z - z2.z) * (z3.z - z4.z) / ((z1.z - z3.z) * (z2.z - z4.z));
}

double regular_shape(int n) {
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "a polygon needs at least three sides");
    const double c = std::cos(std::numbers::pi / n);
    return 0.25 / (c * c);
}

Moebius region_gamma_product(std::span<const cplx> zeta) {
    Moebius p = Moebius::identity();
    for (cplx z : zeta) p = Moebius{0.0, -z, 1.0, -1.0} * p;
    return p;
}

cplx f_polynomial(int n, std::span<const cplx> zeta) {
    if (n < 3 || static_cast<int>(zeta.size()) < n) throw Error(ErrorCode::InvalidArgument, "need n >= 3 shapes");
    const cplx entry = region_gamma_product(zeta.first(n)).c();
    return n % 2 == 1 ? entry : -entry;
}

cplx f_recursive(int n, std::span<const cplx> zeta) {
    if (n < 3 || static_cast<int>(zeta.size()) < n) throw Error(ErrorCode::InvalidArgument, "need n >= 3 shapes");
    cplx prev = 1.0, cur = 1.0;  // f_1, f_2
    for (int k = 3; k <= n; ++k) {
        const cplx next = cur - zeta[k - 2] * prev;  // zeta_{k-1}
        prev = cur;
        cur = next;
    }
    return cur;
}

Development develop_region(std::span<const cplx> zeta) {
    const int n = static_cast<int>(zeta.size());
    if (n < 3) throw Error(ErrorCode::InvalidArgument, "a polygon needs at least three sides");
    for (cplx z : zeta) {
        if (z == 0.0 || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::DegenerateShape, "zero or infinite shape parameter");
        }
    }
    Development dev;
    std::vector<SpherePoint> z{SpherePoint::at(1.0), SpherePoint::infinity(), SpherePoint::at(0.0)};
    Moebius g = Moebius::identity();
    // corner i (1-based) sees z_{i-1}, z_i, z_{i+1} at 1, inf, 0
    for (int i = 2; i <= n + 1; ++i) {
        const cplx zi = zeta[(i - 1) % n];
        z.push_back(g.apply(SpherePoint::at(zi)));
        g = g * Moebius{0.0, -zi, 1.0, -1.0};
    }
    dev.vertices.assign(z.begin(), z.begin() + n);
    for (int k = 0; k < 3; ++k) dev.closure_error = std::max(dev.closure_error, chordal_distance(z[n + k], z[k]));
    return dev;
}

}  // namespace labelgeom
