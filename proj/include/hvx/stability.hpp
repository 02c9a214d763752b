#pragma once

#include "hvx/equilibria.hpp"

#include <optional>
#include <utility>

// Formal-stability machinery: the symplectic normal space, the Hessian of the
// augmented Hamiltonian, definiteness verdicts and stability-region sweeps.

namespace hvx {

/// Two tangent directions spanning the symplectic normal space of a 3-vortex
/// relative equilibrium, built from generating directions D1, D2.
struct NormalBasis {
    std::array<Vec3, 3> eta, zeta;
    Vec3 D1, D2;
    std::array<double, 3> coeffs_a, coeffs_b;
};

/// Coefficients a solve sum_i Gamma_i a_i (D x_H X_i) = 0 (1-dimensional
/// kernel, normalized to max |a_i| = 1).
NormalBasis symplectic_normal_basis(const Configuration& config, const Vec3& D1, const Vec3& D2);

/// Default directions D1 = X1 + X2, D2 = X2 + X3, falling back to the ambient
/// y-axis when the configuration is coplanar and the defaults degenerate.
NormalBasis symplectic_normal_basis(const Configuration& config);

/// Analytic ambient-coordinate second derivative of the augmented Hamiltonian
/// (interaction + angular-velocity pairing + on-manifold constraint terms).
Eigen::MatrixXd augmented_hessian(const Configuration& config, const AlgebraElement& xi,
                                  const std::vector<double>& lambdas);

/// Q = B^T Hess B with B the 9x2 matrix of the normal-basis columns.
Mat2 restricted_hessian(const Configuration& config, const NormalBasis& basis);
Mat2 restricted_hessian(const Configuration& config);

enum class Definiteness { Definite, Indefinite, Degenerate };

double definiteness_tol(const Mat2& q);
Definiteness definiteness(const Mat2& q, double tol);
Definiteness definiteness(const Mat2& q);

enum class Modality {
    GmuStable,
    GStable,
    LeafwiseOnly,
    NotFormallyStable,
    ZeroMomentumCase,
    Undetermined // degenerate restricted Hessian: no verdict is coerced
};

struct StabilityVerdict {
    Definiteness formal = Definiteness::Degenerate;
    MomentumType momentum_type = MomentumType::Zero;
    Modality modality = Modality::Undetermined;
    Mat2 restricted_hessian = Mat2::Zero();
    double det_mu = 0.0;
    bool g_stable = false; // whether the verdict implies stability modulo the full group
};

/// Decision table on (definiteness, momentum type) for certified relative
/// equilibria with 2 or 3 vortices.
StabilityVerdict classify_stability(const Configuration& config);

/// Closed-form two-vortex verdict at separation c.
StabilityVerdict two_vortex_stability(double gamma1, double gamma2, double c);

/// Degree-9 stability discriminant for the isosceles geodesic family,
/// (512 A1 + A2) / Gamma1 with a = <X1,X2>_H.
double a_poly(double gamma1, double gamma2, double a);

struct SweepCell {
    double a = 0.0;
    double gamma2 = 0.0;
    int verdict_code = -1; // see sweep_verdict_code
    double A_value = 0.0;
    double det_mu = 0.0;
    double detQ = 0.0;
    bool mu_zero_curve = false;
};

int sweep_verdict_code(Modality m);

/// Row-major grid over (a, gamma2) for the isosceles family with
/// Gamma1 = Gamma3; cells evaluate classify_stability in parallel
/// (HYPERVORTEX_THREADS caps the worker count).
std::vector<SweepCell> sweep_isosceles(double gamma1, std::pair<double, double> a_range,
                                       std::pair<double, double> gamma2_range, int resolution);

/// Roots of a -> A(Gamma1, Gamma1 a/(1-a), a) on the fixed-equilibrium curve,
/// scanned over a in (-1.5, -1.001).
std::vector<double> equilibrium_curve_roots(double gamma1);

/// The pair of curve roots nearest a = -1.15, if two exist.
std::optional<std::pair<double, double>> equilibrium_interval(double gamma1);

} // namespace hvx
