#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

// Hyperbolic-geometry primitives on the upper sheet of z^2 - x^2 - y^2 = 1,
// embedded in ambient R^3 with the Lorentzian inner product x1*x2 + y1*y2 - z1*z2.

namespace hvx {

using Vec3 = Eigen::Vector3d;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidPointError : Error {
    using Error::Error;
};

struct CollisionError : Error {
    using Error::Error;
};

// On-manifold tolerance for |<v,v>_H + 1|.
inline constexpr double tol_h2 = 1e-12;

/// Lorentzian inner product u.x*v.x + u.y*v.y - u.z*v.z.
template <typename DerivedU, typename DerivedV>
double minkowski_dot(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v)
{
    return u.x() * v.x() + u.y() * v.y() - u.z() * v.z();
}

/// Hyperbolic cross product; <u x_H v, u>_H = <u x_H v, v>_H = 0.
template <typename DerivedU, typename DerivedV>
Vec3 hcross(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedV>& v)
{
    return Vec3(u.y() * v.z() - u.z() * v.y(),
                u.z() * v.x() - u.x() * v.z(),
                -u.x() * v.y() + u.y() * v.x());
}

/// A point on the upper hyperboloid sheet: <v,v>_H = -1, z >= 1.
class HPoint {
public:
    explicit HPoint(const Vec3& v) : v_(v)
    {
        if (std::abs(minkowski_dot(v, v) + 1.0) > 1e-9 || v.z() < 1.0 - 1e-9) {
            throw InvalidPointError("HPoint: vector is not on the upper hyperboloid sheet");
        }
    }

    const Vec3& vec() const { return v_; }
    double x() const { return v_.x(); }
    double y() const { return v_.y(); }
    double z() const { return v_.z(); }

private:
    Vec3 v_;
};

/// Canonical chart (x, y) -> (x, y, sqrt(1 + x^2 + y^2)).
inline HPoint lift(double x, double y)
{
    return HPoint(Vec3(x, y, std::sqrt(1.0 + x * x + y * y)));
}

/// Project back onto the sheet by recomputing z from (x, y).
inline HPoint renormalize(const Vec3& v)
{
    return lift(v.x(), v.y());
}

/// Geodesic distance: arccosh(-<p,q>_H), with the argument clamped to 1
/// inside the roundoff window.
inline double hdistance(const HPoint& p, const HPoint& q)
{
    double arg = -minkowski_dot(p.vec(), q.vec());
    if (arg < 1.0) {
        if (arg < 1.0 - tol_h2) {
            throw InvalidPointError("hdistance: inner product argument below 1");
        }
        arg = 1.0;
    }
    return std::acosh(arg);
}

/// <p1, p2 x_H p3>_H; zero iff the three points lie on a common geodesic.
inline double coplanarity(const HPoint& p1, const HPoint& p2, const HPoint& p3)
{
    return minkowski_dot(p1.vec(), hcross(p2.vec(), p3.vec()));
}

} // namespace hvx
