#pragma once

#include "hvx/hypgeo.hpp"

#include <Eigen/Dense>

// SL(2,R) symmetry layer: group elements, the traceless-matrix <-> R^3
// identification, the Moebius lift to 3x3 matrices, the coadjoint action and
// momentum-type classification.

namespace hvx {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

/// 2x2 real matrix of unit determinant.
class GroupElement {
public:
    explicit GroupElement(const Mat2& m) : m_(m)
    {
        if (std::abs(m.determinant() - 1.0) > 1e-10) {
            throw Error("GroupElement: determinant differs from 1");
        }
    }

    static GroupElement identity() { return GroupElement(Mat2::Identity()); }

    const Mat2& mat() const { return m_; }
    GroupElement inverse() const
    {
        Mat2 inv;
        inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
        return GroupElement(inv);
    }
    GroupElement operator*(const GroupElement& o) const { return GroupElement(Mat2(m_ * o.m_)); }

private:
    Mat2 m_;
};

/// Traceless 2x2 matrix identified with an ambient 3-vector; also carries
/// dual-space values (the trace pairing makes the two isomorphic).
struct AlgebraElement {
    Vec3 v{Vec3::Zero()};

    AlgebraElement() = default;
    explicit AlgebraElement(const Vec3& coords) : v(coords) {}
};

using DualElement = AlgebraElement;

/// v = (x,y,z) -> [[x, y+z], [y-z, -x]];  det(hat(v)) = -<v,v>_H.
inline Mat2 hat(const Vec3& v)
{
    Mat2 m;
    m << v.x(), v.y() + v.z(), v.y() - v.z(), -v.x();
    return m;
}

/// Inverse of hat; requires a traceless matrix.
inline Vec3 vee(const Mat2& m)
{
    if (std::abs(m(0, 0) + m(1, 1)) > 1e-12 * (1.0 + m.cwiseAbs().maxCoeff())) {
        throw Error("vee: matrix is not traceless");
    }
    return Vec3(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(0, 1) - m(1, 0)));
}

/// The normalised Moebius representation of g on ambient R^3; preserves
/// <,>_H and maps the upper sheet to itself.
inline Mat3 mobius_lift(const GroupElement& g)
{
    const double a = g.mat()(0, 0), b = g.mat()(0, 1), c = g.mat()(1, 0), d = g.mat()(1, 1);
    Mat3 m;
    m << 2 * (a * d + b * c), -2 * (a * c - b * d), -2 * (a * c + b * d),
        -2 * (a * b - c * d), a * a - b * b - c * c + d * d, a * a + b * b - c * c - d * d,
        -2 * (a * b + c * d), a * a - b * b + c * c - d * d, a * a + b * b + c * c + d * d;
    return 0.5 * m;
}

/// Coadjoint action Ad*_{g^-1} mu = g mu g^-1; on vectors this is mobius_lift(g) * mu.
inline DualElement coadjoint(const GroupElement& g, const DualElement& mu)
{
    return DualElement(vee(Mat2(g.mat() * hat(mu.v) * g.inverse().mat())));
}

/// Matrix commutator; satisfies [xi, eta]^vee = -2 (xi x_H eta).
inline AlgebraElement bracket(const AlgebraElement& xi, const AlgebraElement& eta)
{
    const Mat2 a = hat(xi.v), b = hat(eta.v);
    return AlgebraElement(vee(Mat2(a * b - b * a)));
}

/// Natural pairing <mu, xi> = (1/2) tr(xi mu); equals <mu^vee, xi^vee>_H.
inline double pairing(const DualElement& mu, const AlgebraElement& xi)
{
    return 0.5 * (hat(xi.v) * hat(mu.v)).trace();
}

enum class MomentumType { Zero, Elliptic, Parabolic, Hyperbolic };

struct MomentumClass {
    MomentumType type;
    double det_mu; // det(hat(mu)) = z^2 - x^2 - y^2
};

inline double momentum_det(const DualElement& mu)
{
    return -minkowski_dot(mu.v, mu.v);
}

inline double default_momentum_tol(const DualElement& mu)
{
    return 1e-9 * std::max(1.0, mu.v.squaredNorm());
}

/// Sign class of det(mu): elliptic inside the null-cone, parabolic on it,
/// hyperbolic outside, zero at the origin.
inline MomentumClass classify_momentum(const DualElement& mu, double tol)
{
    if (!(tol > 0.0)) throw Error("classify_momentum: tol must be positive");
    const double det = momentum_det(mu);
    if (mu.v.norm() <= tol) return {MomentumType::Zero, det};
    if (det > tol) return {MomentumType::Elliptic, det};
    if (det < -tol) return {MomentumType::Hyperbolic, det};
    return {MomentumType::Parabolic, det};
}

inline MomentumClass classify_momentum(const DualElement& mu)
{
    return classify_momentum(mu, default_momentum_tol(mu));
}

/// Which null-cone component a parabolic momentum sits on.
inline int parabolic_sheet_sign(const DualElement& mu)
{
    return mu.v.z() >= 0.0 ? 1 : -1;
}

/// Closed-form exponential of the traceless matrix t*xi. With D = -det(t xi):
/// cosh/sinh branch for D > 0, cos/sin for D < 0, quadratic series near D = 0.
inline GroupElement algebra_exp(const AlgebraElement& xi, double t)
{
    const Mat2 m = t * hat(xi.v);
    const double disc = -m.determinant();
    Mat2 r;
    if (disc > 1e-12) {
        const double s = std::sqrt(disc);
        r = std::cosh(s) * Mat2::Identity() + (std::sinh(s) / s) * m;
    } else if (disc < -1e-12) {
        const double s = std::sqrt(-disc);
        r = std::cos(s) * Mat2::Identity() + (std::sin(s) / s) * m;
    } else {
        r = Mat2::Identity() + m + 0.5 * m * m;
        r /= std::sqrt(r.determinant());
    }
    return GroupElement(r);
}

/// Point at parameter t on the SL(2,R)_mu-orbit of nu, the conic
/// P_mu intersected with the hyperboloid.
inline HPoint orbit_curve(const DualElement& mu, const HPoint& nu, double t)
{
    if (mu.v.norm() == 0.0) throw Error("orbit_curve: degenerate momentum mu = 0");
    const Mat3 g = mobius_lift(algebra_exp(AlgebraElement(mu.v), t));
    return renormalize(g * nu.vec());
}

} // namespace hvx
