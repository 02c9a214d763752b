#include "hvx/equilibria.hpp"

#include <cmath>
#include <numbers>

namespace hvx {

namespace {
constexpr double pi = std::numbers::pi;
}

REReport re_multipliers(const Configuration& config)
{
    const int n = config.size();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * n, 3 + n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(3 * n);
    for (int r = 0; r < n; ++r) {
        for (int i = 0; i < 3; ++i) {
            const int row = 3 * r + i;
            A(row, i) = 1.0;
            A(row, 3 + r) = -config.point(r).vec()[i] / config.gamma(r);
            double s = 0.0;
            for (int p = 0; p < n; ++p) {
                if (p == r) continue;
                const double c = minkowski_dot(config.point(p).vec(), config.point(r).vec());
                const double L = c * c - 1.0;
                s += config.gamma(p) * config.point(p).vec()[i] / L;
            }
            b[row] = s / (2.0 * pi);
        }
    }
    const Eigen::VectorXd sol = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    REReport rep;
    rep.xi = AlgebraElement(Vec3(sol.head<3>()));
    rep.lambdas.assign(sol.data() + 3, sol.data() + 3 + n);
    rep.residual = (A * sol - b).norm();
    return rep;
}

std::pair<bool, REReport> is_relative_equilibrium(const Configuration& config, double tol)
{
    if (!(tol > 0.0)) throw Error("is_relative_equilibrium: tol must be positive");
    REReport rep = re_multipliers(config);
    const bool ok = rep.residual <= tol;
    return {ok, std::move(rep)};
}

Configuration make_equilateral(double k, const std::array<double, 3>& gammas)
{
    if (!(k > 1.0)) throw Error("make_equilateral: size k must exceed 1 (degenerate triangle)");
    const double r = std::sqrt(2.0 * (k - 1.0) / 3.0);
    std::vector<HPoint> pts;
    for (int i = 0; i < 3; ++i) {
        const double th = 2.0 * pi * i / 3.0;
        pts.push_back(lift(r * std::cos(th), r * std::sin(th)));
    }
    return Configuration(std::move(pts), {gammas[0], gammas[1], gammas[2]});
}

GeodesicGeometry geodesic_config(double x1, double x3)
{
    if (!(x1 > 0.0) || !(x3 > 0.0)) throw Error("geodesic_config: x1, x3 must be positive");
    const HPoint X1 = lift(x1, 0.0);
    const HPoint X2 = lift(0.0, 0.0);
    const HPoint X3 = lift(-x3, 0.0);
    const double c13 = minkowski_dot(X1.vec(), X3.vec());
    return {{X1, X2, X3}, x1 * x1, x3 * x3, c13 * c13 - 1.0};
}

double geodesic_re_residual(const std::array<double, 3>& gammas, double L12, double L23,
                            double L13)
{
    return std::sqrt(L23) * (L13 - L12) * gammas[0] + std::sqrt(L13) * (L23 - L12) * gammas[1] +
           std::sqrt(L12) * (L23 - L13) * gammas[2];
}

double solve_geodesic_gamma(double x1, double x3, double gamma1, double gamma2)
{
    const GeodesicGeometry g = geodesic_config(x1, x3);
    const double coef = std::sqrt(g.L12) * (g.L23 - g.L13);
    if (std::abs(coef) < 1e-12) {
        throw Error("solve_geodesic_gamma: indeterminate (L23 = L13)");
    }
    const double rest = std::sqrt(g.L23) * (g.L13 - g.L12) * gamma1 +
                        std::sqrt(g.L13) * (g.L23 - g.L12) * gamma2;
    return -rest / coef;
}

std::vector<double> solve_geodesic_geometry(const std::array<double, 3>& gammas, double x1)
{
    if (!(x1 > 0.0)) throw Error("solve_geodesic_geometry: x1 must be positive");
    const auto f = [&](double x3) {
        const GeodesicGeometry g = geodesic_config(x1, x3);
        return geodesic_re_residual(gammas, g.L12, g.L23, g.L13);
    };
    std::vector<double> roots;
    const int grid = 3000;
    const double lo = std::log(1e-3), hi = std::log(1e3);
    double xprev = std::exp(lo), fprev = f(xprev);
    for (int i = 1; i <= grid; ++i) {
        const double x = std::exp(lo + (hi - lo) * i / grid);
        const double fx = f(x);
        if (fprev == 0.0) {
            roots.push_back(xprev);
        } else if (fprev * fx < 0.0) {
            double a = xprev, b = x;
            for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, a); ++it) {
                const double m = 0.5 * (a + b);
                if (f(a) * f(m) <= 0.0) b = m;
                else a = m;
            }
            roots.push_back(0.5 * (a + b));
        }
        xprev = x;
        fprev = fx;
    }
    return roots;
}

bool is_fixed_equilibrium(const Configuration& config, double tol)
{
    if (!(tol > 0.0)) throw Error("is_fixed_equilibrium: tol must be positive");
    if (config.size() == 3) {
        Vec3 s = Vec3::Zero();
        double scale = 1.0;
        for (int i = 0; i < 3; ++i) {
            const double coef =
                config.gamma(i) * (config.gamma((i + 1) % 3) + config.gamma((i + 2) % 3));
            s += coef * config.point(i).vec();
            scale = std::max(scale, std::abs(coef) * config.point(i).vec().norm());
        }
        return s.norm() <= tol * scale;
    }
    double vmax = 0.0;
    for (const Vec3& v : velocity(config)) vmax = std::max(vmax, v.norm());
    return vmax <= tol;
}

double isosceles_fixed_gamma2(double gamma1, double a)
{
    if (a > -1.0) throw Error("isosceles_fixed_gamma2: need a <= -1");
    return gamma1 * a / (1.0 - a);
}

Configuration make_isosceles(double a, double gamma1, double gamma2)
{
    if (!(a < -1.0)) throw Error("make_isosceles: need a < -1");
    const double x1 = std::sqrt(a * a - 1.0);
    return Configuration({lift(x1, 0.0), lift(0.0, 0.0), lift(-x1, 0.0)},
                         {gamma1, gamma2, gamma1});
}

REShape re_shape(const Configuration& config, double tol)
{
    if (config.size() != 3) return REShape::Neither;
    const double d12 = hdistance(config.point(0), config.point(1));
    const double d13 = hdistance(config.point(0), config.point(2));
    const double d23 = hdistance(config.point(1), config.point(2));
    if (std::abs(d12 - d13) <= tol && std::abs(d12 - d23) <= tol) return REShape::Equilateral;
    if (std::abs(coplanarity(config.point(0), config.point(1), config.point(2))) <= tol) {
        return REShape::Geodesic;
    }
    return REShape::Neither;
}

} // namespace hvx
