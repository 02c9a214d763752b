#pragma once

#include "hvx/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

// Finite-difference probe of the augmented-Hamiltonian Hessian, used as an
// independent oracle for the analytic second derivatives.

namespace hvx_test {

// Augmented value; if r1/r2 are nonnegative, only terms involving those vortex
// indices are summed. Terms omitted this way are constant across a difference
// stencil that perturbs vortices r1 and r2 only, so the derivative is the same
// while the floating-point cancellation error drops with the summand magnitude.
inline double aug_value(const Eigen::VectorXd& x, const std::vector<double>& G,
                        const hvx::Vec3& xi, const std::vector<double>& lam, int r1 = -1,
                        int r2 = -1)
{
    constexpr double pi = std::numbers::pi;
    const double tau[3] = {1.0, 1.0, -1.0};
    const int n = static_cast<int>(G.size());
    const auto active = [&](int r) { return r1 < 0 || r == r1 || r == r2; };
    double val = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            if (r == s || (!active(r) && !active(s))) continue;
            const hvx::Vec3 xr = x.segment<3>(3 * r), xs = x.segment<3>(3 * s);
            const double c = hvx::minkowski_dot(xr, xs);
            val += -G[static_cast<std::size_t>(r)] * G[static_cast<std::size_t>(s)] *
                   std::log((c + 1.0) / (c - 1.0)) / (8.0 * pi);
        }
    }
    for (int r = 0; r < n; ++r) {
        if (!active(r)) continue;
        const hvx::Vec3 xr = x.segment<3>(3 * r);
        double pairing_term = 0.0;
        for (int i = 0; i < 3; ++i) pairing_term += tau[i] * xi[i] * xr[i];
        val -= G[static_cast<std::size_t>(r)] * pairing_term;
        val += 0.5 * lam[static_cast<std::size_t>(r)] * (hvx::minkowski_dot(xr, xr) + 1.0);
    }
    return val;
}

inline Eigen::MatrixXd fd_hessian(const hvx::Configuration& cfg, const hvx::Vec3& xi,
                                  const std::vector<double>& lam, double h = 1e-5)
{
    const int n = 3 * cfg.size();
    Eigen::VectorXd x0(n);
    for (int i = 0; i < cfg.size(); ++i) x0.segment<3>(3 * i) = cfg.point(i).vec();
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (const auto [si, sj, w] :
                 {std::tuple{1, 1, 1.0}, {1, -1, -1.0}, {-1, 1, -1.0}, {-1, -1, 1.0}}) {
                Eigen::VectorXd x = x0;
                x[i] += si * h;
                x[j] += sj * h;
                acc += w * aug_value(x, cfg.gammas(), xi, lam, i / 3, j / 3);
            }
            H(i, j) = acc / (4.0 * h * h);
        }
    }
    return H;
}

} // namespace hvx_test
