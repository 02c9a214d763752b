#pragma once

#include "hvx/sl2.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// N-vortex phase space, vector field, conserved quantities and an adaptive
// Runge-Kutta integrator with on-manifold projection.

namespace hvx {

struct IntegrationError;

/// N distinct hyperboloid points with nonzero vortex strengths.
class Configuration {
public:
    Configuration(std::vector<HPoint> points, std::vector<double> gammas);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<HPoint>& points() const { return points_; }
    const std::vector<double>& gammas() const { return gammas_; }
    const HPoint& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
    double gamma(int i) const { return gammas_[static_cast<std::size_t>(i)]; }

private:
    std::vector<HPoint> points_;
    std::vector<double> gammas_;
};

struct StepStats {
    std::int64_t accepted = 0;
    std::int64_t rejected = 0;
};

struct TrajectorySample {
    double t = 0.0;
    Configuration config;
    double H = 0.0;
    Vec3 mu = Vec3::Zero();
    double h2_residual = 0.0;
    StepStats step_stats;
};

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 0.1;
    bool renormalize_each_step = true;
};

/// Thrown when the step size underflows near a collision; carries the last
/// good samples so partial output can be retained.
struct IntegrationError : Error {
    IntegrationError(const std::string& what, std::vector<TrajectorySample> partial)
        : Error(what), samples(std::move(partial))
    {
    }
    std::vector<TrajectorySample> samples;
};

/// The point-vortex vector field; each component is tangent to the sheet.
std::vector<Vec3> velocity(const Configuration& config);

/// Pair-interaction energy, summed over ordered pairs with prefactor 1/(4 pi).
double hamiltonian(const Configuration& config);

/// Momentum map J = sum_i Gamma_i X_i, valued in the dual algebra.
DualElement momentum(const Configuration& config);

/// Apply the closed-form 3x3 exponential of v -> xi x_H v to every point.
Configuration evolve_by_flow(const Configuration& config, const AlgebraElement& xi, double t);

/// KKS symplectic form on the coadjoint orbit: mu . (u x_H v) / (2 |mu|^2),
/// Euclidean dot and norm; u, v must be tangent at mu.
double kks_form(const HPoint& mu, const Vec3& u, const Vec3& v);

/// Adaptive Dormand-Prince 5(4) trajectory with cubic-Hermite sampling at
/// multiples of sample_dt and post-step renormalization.
std::vector<TrajectorySample> integrate(const Configuration& config, double t_end,
                                        const IntegratorConfig& icfg, double sample_dt);

} // namespace hvx
