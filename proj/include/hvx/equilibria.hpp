#pragma once

#include "hvx/dynamics.hpp"

#include <array>
#include <vector>

// Relative-equilibrium machinery: the linear (xi, lambda) stationarity system,
// the equilateral and geodesic families, and fixed-equilibrium tests.

namespace hvx {

inline constexpr double tol_re = 1e-8;

/// Output of the stationarity least-squares solve. The configuration is a
/// relative equilibrium exactly when the residual is at certificate level.
struct REReport {
    AlgebraElement xi;           // angular velocity
    std::vector<double> lambdas; // on-manifold Lagrange multipliers
    double residual = 0.0;       // norm of the unexplained gradient
};

/// Solve the 3N stationarity equations
///   xi_i = (1/2pi) sum_{p != r} Gamma_p X_p^i / L_pr + (lambda_r/Gamma_r) X_r^i
/// for (xi, lambda_1..lambda_N) by least squares.
REReport re_multipliers(const Configuration& config);

std::pair<bool, REReport> is_relative_equilibrium(const Configuration& config,
                                                  double tol = tol_re);

/// Three points with pairwise <X_i, X_j>_H = -k at equal height, equally
/// spaced about the z-axis.
Configuration make_equilateral(double k, const std::array<double, 3>& gammas);

/// Collinear frame X1 = (x1, 0, *), X2 = apex, X3 = (-x3, 0, *) together with
/// the pair quantities L_ij = <X_i, X_j>_H^2 - 1.
struct GeodesicGeometry {
    std::array<HPoint, 3> points;
    double L12, L23, L13;
};

GeodesicGeometry geodesic_config(double x1, double x3);

/// Left-hand side of the geodesic RE condition
///   sqrt(L23)(L13 - L12) G1 + sqrt(L13)(L23 - L12) G2 + sqrt(L12)(L23 - L13) G3.
double geodesic_re_residual(const std::array<double, 3>& gammas, double L12, double L23,
                            double L13);

/// The unique Gamma3 zeroing the geodesic RE condition for given geometry.
double solve_geodesic_gamma(double x1, double x3, double gamma1, double gamma2);

/// All roots x3 of the RE condition for fixed strengths and x1, scanned on a
/// log grid in (1e-3, 1e3) and bisected.
std::vector<double> solve_geodesic_geometry(const std::array<double, 3>& gammas, double x1);

/// Three-vortex algebraic equilibrium test sum_i Gamma_i (Gamma_j + Gamma_k) X_i = 0
/// (cyclic); for other N falls back to a vanishing-velocity test.
bool is_fixed_equilibrium(const Configuration& config, double tol);

/// Strength of the middle vortex making the isosceles geodesic configuration
/// with <X1,X2>_H = a an equilibrium: Gamma2 = Gamma1 a / (1 - a).
double isosceles_fixed_gamma2(double gamma1, double a);

/// Isosceles geodesic configuration with <X1,X2>_H = <X2,X3>_H = a (a < -1)
/// and strengths (gamma1, gamma2, gamma1).
Configuration make_isosceles(double a, double gamma1, double gamma2);

enum class REShape { Equilateral, Geodesic, Neither };

/// Coarse shape tag for a certified 3-vortex relative equilibrium.
REShape re_shape(const Configuration& config, double tol = 1e-6);

} // namespace hvx
