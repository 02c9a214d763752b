#include "hvx/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace hvx {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double tau_sign[3] = {1.0, 1.0, -1.0}; // metric signs of the ambient coordinates

Eigen::Matrix3d kernel_matrix(const Configuration& config, const Vec3& D)
{
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i) {
        m.col(i) = config.gamma(i) * hcross(D, config.point(i).vec());
    }
    return m;
}

std::array<double, 3> kernel_coeffs(const Configuration& config, const Vec3& D)
{
    const Eigen::Matrix3d m = kernel_matrix(config, D);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
    const Vec3 s = svd.singularValues();
    Vec3 a;
    if (s[1] > 1e-8 * std::max(s[0], 1e-300)) {
        a = svd.matrixV().col(2);
    } else if (s[0] > 1e-8) {
        // coplanar configurations reduce the system to one scalar constraint;
        // canonicalize the 2-dimensional kernel by zeroing the last coefficient
        const Vec3 v1 = svd.matrixV().col(1), v2 = svd.matrixV().col(2);
        a = v2[2] * v1 - v1[2] * v2;
        if (a.norm() < 1e-12) a = v2;
    } else {
        throw Error("symplectic_normal_basis: degenerate direction system");
    }
    int imax = 0;
    a.cwiseAbs().maxCoeff(&imax);
    a /= a[imax]; // max |a_i| = 1, deterministic sign
    return {a[0], a[1], a[2]};
}

void check_directions(const Configuration& config, const Vec3& D1, const Vec3& D2)
{
    const Vec3 n = D1.cross(D2);
    if (n.norm() <= 1e-10 * std::max(1.0, D1.norm() * D2.norm())) {
        throw Error("symplectic_normal_basis: D1, D2 do not span a plane (degenerate basis)");
    }
    for (int i = 0; i < 3; ++i) {
        const Vec3& x = config.point(i).vec();
        if (std::abs(n.dot(x)) <= 1e-9 * n.norm() * x.norm()) {
            throw Error("symplectic_normal_basis: a vortex lies in span(D1, D2)");
        }
    }
}

} // namespace

NormalBasis symplectic_normal_basis(const Configuration& config, const Vec3& D1, const Vec3& D2)
{
    if (config.size() != 3) throw Error("symplectic_normal_basis: need exactly 3 vortices");
    const DualElement mu = momentum(config);
    if (mu.v.norm() <= default_momentum_tol(mu)) {
        throw Error("symplectic_normal_basis: zero momentum");
    }
    check_directions(config, D1, D2);
    NormalBasis nb;
    nb.D1 = D1;
    nb.D2 = D2;
    nb.coeffs_a = kernel_coeffs(config, D1);
    nb.coeffs_b = kernel_coeffs(config, D2);
    for (int i = 0; i < 3; ++i) {
        nb.eta[static_cast<std::size_t>(i)] = nb.coeffs_a[static_cast<std::size_t>(i)] *
                                              hcross(D1, config.point(i).vec());
        nb.zeta[static_cast<std::size_t>(i)] = nb.coeffs_b[static_cast<std::size_t>(i)] *
                                               hcross(D2, config.point(i).vec());
    }
    return nb;
}

NormalBasis symplectic_normal_basis(const Configuration& config)
{
    const Vec3 x1 = config.point(0).vec(), x2 = config.point(1).vec(), x3 = config.point(2).vec();
    const Vec3 ey(0.0, 1.0, 0.0);
    const std::array<std::pair<Vec3, Vec3>, 3> candidates = {
        std::pair<Vec3, Vec3>{x1 + x2, x2 + x3},
        {x1 + x2, ey}, // coplanar configurations: defaults share the plane y = 0
        {ey, x2 + x3},
    };
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        try {
            return symplectic_normal_basis(config, candidates[i].first, candidates[i].second);
        } catch (const Error&) {
            if (i + 1 == candidates.size()) throw;
        }
    }
    throw Error("symplectic_normal_basis: no admissible directions");
}

Eigen::MatrixXd augmented_hessian(const Configuration& config, const AlgebraElement& xi,
                                  const std::vector<double>& lambdas)
{
    const int n = config.size();
    if (static_cast<int>(lambdas.size()) != n) {
        throw Error("augmented_hessian: one multiplier per vortex required");
    }
    (void)xi; // the pairing term is linear in X; it contributes no second derivative
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
            if (r == s) continue;
            const Vec3& xr = config.point(r).vec();
            const Vec3& xs = config.point(s).vec();
            const double c = minkowski_dot(xr, xs);
            const double fp = -2.0 / (c * c - 1.0);
            const double fpp = 4.0 * c / ((c * c - 1.0) * (c * c - 1.0));
            // each unordered pair appears twice in the ordered sum
            const double coef = -config.gamma(r) * config.gamma(s) / (8.0 * pi) * 2.0;
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    H(3 * r + i, 3 * r + j) +=
                        coef * fpp * (tau_sign[i] * xs[i]) * (tau_sign[j] * xs[j]);
                    H(3 * r + i, 3 * s + j) +=
                        coef * (fpp * (tau_sign[i] * xs[i]) * (tau_sign[j] * xr[j]) +
                                fp * tau_sign[i] * (i == j ? 1.0 : 0.0));
                }
            }
        }
        for (int i = 0; i < 3; ++i) {
            H(3 * r + i, 3 * r + i) += lambdas[static_cast<std::size_t>(r)] * tau_sign[i];
        }
    }
    return H;
}

Mat2 restricted_hessian(const Configuration& config, const NormalBasis& basis)
{
    const REReport rep = re_multipliers(config);
    const Eigen::MatrixXd H = augmented_hessian(config, rep.xi, rep.lambdas);
    Eigen::MatrixXd B(9, 2);
    for (int i = 0; i < 3; ++i) {
        B.block<3, 1>(3 * i, 0) = basis.eta[static_cast<std::size_t>(i)];
        B.block<3, 1>(3 * i, 1) = basis.zeta[static_cast<std::size_t>(i)];
    }
    Mat2 q = B.transpose() * H * B;
    return 0.5 * (q + q.transpose());
}

Mat2 restricted_hessian(const Configuration& config)
{
    return restricted_hessian(config, symplectic_normal_basis(config));
}

double definiteness_tol(const Mat2& q)
{
    return 1e-9 * std::max(q.squaredNorm(), 1e-30);
}

Definiteness definiteness(const Mat2& q, double tol)
{
    const double d = q.determinant();
    if (d > tol) return Definiteness::Definite;
    if (d < -tol) return Definiteness::Indefinite;
    return Definiteness::Degenerate;
}

Definiteness definiteness(const Mat2& q)
{
    return definiteness(q, definiteness_tol(q));
}

StabilityVerdict classify_stability(const Configuration& config)
{
    const auto [is_re, rep] = is_relative_equilibrium(config);
    if (!is_re) throw Error("classify_stability: configuration is not a relative equilibrium");
    const int n = config.size();
    if (n != 2 && n != 3) throw Error("classify_stability: need 2 or 3 vortices");

    const DualElement mu = momentum(config);
    const MomentumClass mc = classify_momentum(mu);
    StabilityVerdict v;
    v.momentum_type = mc.type;
    v.det_mu = mc.det_mu;

    if (n == 2) {
        // every pair is stable modulo the full group; modulo the isotropy group
        // only when the momentum is elliptic
        v.g_stable = true;
        v.modality = mc.type == MomentumType::Elliptic ? Modality::GmuStable
                                                       : Modality::LeafwiseOnly;
        return v;
    }

    if (mc.type == MomentumType::Zero) {
        v.modality = Modality::ZeroMomentumCase;
        v.g_stable = momentum_det(DualElement(rep.xi.v)) > 0.0; // elliptic angular velocity
        return v;
    }

    v.restricted_hessian = restricted_hessian(config);
    v.formal = definiteness(v.restricted_hessian);
    switch (v.formal) {
    case Definiteness::Definite:
        if (mc.type == MomentumType::Elliptic) {
            v.modality = Modality::GmuStable;
        } else {
            v.modality = Modality::GStable;
        }
        v.g_stable = true;
        break;
    case Definiteness::Indefinite:
        v.modality = Modality::NotFormallyStable;
        break;
    case Definiteness::Degenerate:
        v.modality = Modality::Undetermined;
        break;
    }
    return v;
}

StabilityVerdict two_vortex_stability(double gamma1, double gamma2, double c)
{
    if (!(c > 0.0)) throw Error("two_vortex_stability: separation must be positive");
    if (gamma1 == 0.0 || gamma2 == 0.0) throw Error("two_vortex_stability: zero vortex strength");
    const double x = std::sinh(0.5 * c);
    const Configuration pair({lift(x, 0.0), lift(-x, 0.0)}, {gamma1, gamma2});
    const MomentumClass mc = classify_momentum(momentum(pair));
    StabilityVerdict v;
    v.momentum_type = mc.type;
    v.det_mu = mc.det_mu;
    v.g_stable = true;
    const bool gmu = gamma1 * gamma2 > 0.0 ||
                     c < std::abs(std::log(std::abs(gamma1)) - std::log(std::abs(gamma2)));
    v.modality = gmu ? Modality::GmuStable : Modality::LeafwiseOnly;
    return v;
}

double a_poly(double gamma1, double gamma2, double a)
{
    if (gamma1 == 0.0) throw Error("a_poly: gamma1 must be nonzero");
    const double g1 = gamma1, g2 = gamma2;
    const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
    const double a6 = a5 * a, a7 = a6 * a, a8 = a7 * a, a9 = a8 * a;
    const double A1 = g1 * g1 * a9 - 2.0 * g1 * a8 * (g1 - g2 / 4.0) +
                      a7 * (-1.25 * g1 * g1 + 2.0 * g1 * g2) +
                      2.0 * a6 * (g1 + g2 / 4.0) * (g1 - g2) +
                      g1 * a5 / 4.0 * (g1 - 8.0 * g2) + g2 * a4 / 16.0 * (8.0 * g2 + g1) -
                      g1 * g2 / 32.0 * (a2 - 0.5);
    const double A2 = g1 * a5 + 0.5 * g2 * a4 - 1.25 * g1 * a3 - 11.0 / 8.0 * g2 * a2 +
                      0.25 * g1 * a - 0.125 * g2;
    return (512.0 * A1 + A2) / g1;
}

int sweep_verdict_code(Modality m)
{
    switch (m) {
    case Modality::GmuStable: return 0;
    case Modality::GStable: return 1;
    case Modality::LeafwiseOnly: return 2;
    case Modality::NotFormallyStable: return 3;
    case Modality::ZeroMomentumCase: return 4;
    case Modality::Undetermined: return 5;
    }
    return -1;
}

namespace {

int sweep_worker_count(int rows)
{
    int w = static_cast<int>(std::thread::hardware_concurrency());
    if (w < 1) w = 1;
    if (const char* env = std::getenv("HYPERVORTEX_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) w = std::min(w, cap);
    }
    return std::min(w, rows);
}

} // namespace

std::vector<SweepCell> sweep_isosceles(double gamma1, std::pair<double, double> a_range,
                                       std::pair<double, double> gamma2_range, int resolution)
{
    if (resolution < 2) throw Error("sweep_isosceles: resolution must be at least 2");
    if (!(a_range.first < -1.0) || !(a_range.second < -1.0)) {
        throw Error("sweep_isosceles: a-range must lie below -1");
    }
    if (gamma1 == 0.0) throw Error("sweep_isosceles: gamma1 must be nonzero");

    const int R = resolution;
    std::vector<SweepCell> grid(static_cast<std::size_t>(R) * static_cast<std::size_t>(R));
    const auto cell_at = [&](int ia, int ig) -> SweepCell& {
        return grid[static_cast<std::size_t>(ia) * static_cast<std::size_t>(R) +
                    static_cast<std::size_t>(ig)];
    };
    const auto coord = [](std::pair<double, double> range, int i, int res) {
        return range.first + (range.second - range.first) * i / (res - 1);
    };

    const auto run_row = [&](int ia) {
        const double a = coord(a_range, ia, R);
        for (int ig = 0; ig < R; ++ig) {
            const double g2 = coord(gamma2_range, ig, R);
            SweepCell& cell = cell_at(ia, ig);
            cell.a = a;
            cell.gamma2 = g2;
            cell.A_value = a_poly(gamma1, g2, a);
            cell.mu_zero_curve = std::abs(g2 - 2.0 * gamma1 * a) <= 1e-6 * std::max(1.0, std::abs(g2));
            if (std::abs(g2) < 1e-12) continue; // not a valid configuration
            try {
                const Configuration cfg = make_isosceles(a, gamma1, g2);
                const StabilityVerdict v = classify_stability(cfg);
                cell.verdict_code = sweep_verdict_code(v.modality);
                cell.det_mu = v.det_mu;
                cell.detQ = v.restricted_hessian.determinant();
            } catch (const Error&) {
                cell.verdict_code = -1;
            }
        }
    };

    const int workers = sweep_worker_count(R);
    if (workers <= 1) {
        for (int ia = 0; ia < R; ++ia) run_row(ia);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int ia = w; ia < R; ia += workers) run_row(ia);
            });
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

std::vector<double> equilibrium_curve_roots(double gamma1)
{
    if (gamma1 == 0.0) throw Error("equilibrium_curve_roots: gamma1 must be nonzero");
    const auto f = [&](double a) { return a_poly(gamma1, gamma1 * a / (1.0 - a), a); };
    std::vector<double> roots;
    const int grid = 6000;
    const double lo = -1.5, hi = -1.001;
    double aprev = lo, fprev = f(lo);
    for (int i = 1; i <= grid; ++i) {
        const double a = lo + (hi - lo) * i / grid;
        const double fa = f(a);
        if (fprev * fa < 0.0) {
            double l = aprev, r = a;
            while (r - l > 1e-10) {
                const double m = 0.5 * (l + r);
                if (f(l) * f(m) <= 0.0) r = m;
                else l = m;
            }
            roots.push_back(0.5 * (l + r));
        }
        aprev = a;
        fprev = fa;
    }
    return roots;
}

std::optional<std::pair<double, double>> equilibrium_interval(double gamma1)
{
    std::vector<double> roots = equilibrium_curve_roots(gamma1);
    if (roots.size() < 2) return std::nullopt;
    std::sort(roots.begin(), roots.end(), [](double x, double y) {
        return std::abs(x + 1.15) < std::abs(y + 1.15);
    });
    double a = roots[0], b = roots[1];
    if (a > b) std::swap(a, b);
    return std::make_pair(a, b);
}

} // namespace hvx
