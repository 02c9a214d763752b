#include "hvx/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hvx {

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd flatten(const std::vector<HPoint>& pts)
{
    Eigen::VectorXd y(3 * static_cast<int>(pts.size()));
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        y.segment<3>(3 * i) = pts[static_cast<std::size_t>(i)].vec();
    }
    return y;
}

std::vector<HPoint> unflatten_renorm(const Eigen::VectorXd& y)
{
    std::vector<HPoint> pts;
    const int n = static_cast<int>(y.size()) / 3;
    pts.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        pts.push_back(renormalize(Vec3(y.segment<3>(3 * i))));
    }
    return pts;
}

// Vector field on the flattened state; same formula as velocity() but without
// re-validating a Configuration at every stage evaluation.
Eigen::VectorXd field(const Eigen::VectorXd& y, const std::vector<double>& gammas)
{
    const int n = static_cast<int>(gammas.size());
    Eigen::VectorXd dy = Eigen::VectorXd::Zero(3 * n);
    for (int r = 0; r < n; ++r) {
        const Vec3 xr = y.segment<3>(3 * r);
        Vec3 v = Vec3::Zero();
        for (int p = 0; p < n; ++p) {
            if (p == r) continue;
            const Vec3 xp = y.segment<3>(3 * p);
            const double c = minkowski_dot(xp, xr);
            const double L = c * c - 1.0;
            if (std::abs(L) < 1e-14) {
                throw CollisionError("velocity: coincident vortices (vanishing denominator)");
            }
            v += gammas[static_cast<std::size_t>(p)] * hcross(xp, xr) / L;
        }
        dy.segment<3>(3 * r) = v / pi;
    }
    return dy;
}

double min_pair_distance(const std::vector<HPoint>& pts)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            best = std::min(best, hdistance(pts[i], pts[j]));
        }
    }
    return best;
}

double h2_residual_of(const std::vector<HPoint>& pts)
{
    double worst = 0.0;
    for (const auto& p : pts) {
        worst = std::max(worst, std::abs(minkowski_dot(p.vec(), p.vec()) + 1.0));
    }
    return worst;
}

} // namespace

Configuration::Configuration(std::vector<HPoint> points, std::vector<double> gammas)
    : points_(std::move(points)), gammas_(std::move(gammas))
{
    if (points_.empty() || points_.size() != gammas_.size()) {
        throw Error("Configuration: need N >= 1 points with matching vortex strengths");
    }
    for (double g : gammas_) {
        if (g == 0.0 || !std::isfinite(g)) {
            throw Error("Configuration: vortex strengths must be nonzero and finite");
        }
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            if (hdistance(points_[i], points_[j]) <= 1e-9) {
                throw CollisionError("Configuration: coincident vortices");
            }
        }
    }
}

std::vector<Vec3> velocity(const Configuration& config)
{
    const Eigen::VectorXd dy = field(flatten(config.points()), config.gammas());
    std::vector<Vec3> out;
    out.reserve(static_cast<std::size_t>(config.size()));
    for (int r = 0; r < config.size(); ++r) {
        out.emplace_back(dy.segment<3>(3 * r));
    }
    return out;
}

double hamiltonian(const Configuration& config)
{
    double H = 0.0;
    for (int i = 0; i < config.size(); ++i) {
        for (int j = 0; j < config.size(); ++j) {
            if (i == j) continue;
            const double c = minkowski_dot(config.point(i).vec(), config.point(j).vec());
            if (c + 1.0 > -1e-14) {
                throw CollisionError("hamiltonian: coincident vortices (infinite energy)");
            }
            H += -config.gamma(i) * config.gamma(j) * std::log((c + 1.0) / (c - 1.0)) / (4.0 * pi);
        }
    }
    return H;
}

DualElement momentum(const Configuration& config)
{
    Vec3 mu = Vec3::Zero();
    for (int i = 0; i < config.size(); ++i) {
        mu += config.gamma(i) * config.point(i).vec();
    }
    return DualElement(mu);
}

Configuration evolve_by_flow(const Configuration& config, const AlgebraElement& xi, double t)
{
    // exp(t M) with M v = xi x_H v and M^3 = h M, h = <xi,xi>_H; the usual
    // Rodrigues split with hyperbolic / trigonometric / polynomial branches.
    Mat3 M;
    const Vec3& w = xi.v;
    M << 0.0, -w.z(), w.y(), w.z(), 0.0, -w.x(), w.y(), -w.x(), 0.0;
    const double h = minkowski_dot(w, w);
    const double th2 = t * t * h;
    double s1, s2; // exp(tM) = I + s1*M + s2*M^2
    if (th2 > 1e-12) {
        const double s = std::sqrt(h);
        s1 = std::sinh(t * s) / s;
        s2 = (std::cosh(t * s) - 1.0) / h;
    } else if (th2 < -1e-12) {
        const double s = std::sqrt(-h);
        s1 = std::sin(t * s) / s;
        s2 = (1.0 - std::cos(t * s)) / (-h);
    } else {
        s1 = t * (1.0 + th2 / 6.0);
        s2 = 0.5 * t * t * (1.0 + th2 / 12.0);
    }
    const Mat3 E = Mat3::Identity() + s1 * M + s2 * M * M;
    std::vector<HPoint> pts;
    pts.reserve(static_cast<std::size_t>(config.size()));
    for (const auto& p : config.points()) {
        pts.push_back(renormalize(E * p.vec()));
    }
    return Configuration(std::move(pts), config.gammas());
}

double kks_form(const HPoint& mu, const Vec3& u, const Vec3& v)
{
    const double scale = 1.0 + mu.vec().cwiseAbs().maxCoeff();
    if (std::abs(minkowski_dot(u, mu.vec())) > 1e-9 * scale * (1.0 + u.norm()) ||
        std::abs(minkowski_dot(v, mu.vec())) > 1e-9 * scale * (1.0 + v.norm())) {
        throw Error("kks_form: arguments are not tangent at mu");
    }
    return mu.vec().dot(hcross(u, v)) / (2.0 * mu.vec().squaredNorm());
}

namespace {

// Dormand-Prince 5(4) tableau (stage abscissae implicit in the a-coefficients;
// the field is autonomous).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct SampleWriter {
    const std::vector<double>& gammas;
    StepStats& stats;
    std::vector<TrajectorySample>& out;

    void emit(double t, const Eigen::VectorXd& y)
    {
        Configuration cfg(unflatten_renorm(y), gammas);
        TrajectorySample s{t, cfg, hamiltonian(cfg), momentum(cfg).v, h2_residual_of(cfg.points()),
                           stats};
        out.push_back(std::move(s));
    }
};

} // namespace

std::vector<TrajectorySample> integrate(const Configuration& config, double t_end,
                                        const IntegratorConfig& icfg, double sample_dt)
{
    if (!(t_end > 0.0) || !(sample_dt > 0.0)) {
        throw Error("integrate: t_end and sample_dt must be positive");
    }
    if (!(icfg.rel_tol > 0.0) || !(icfg.abs_tol > 0.0) || !(icfg.max_step > 0.0)) {
        throw Error("integrate: tolerances and max_step must be positive");
    }

    const std::vector<double>& G = config.gammas();
    Eigen::VectorXd y = flatten(config.points());
    double t = 0.0;
    StepStats stats;
    std::vector<TrajectorySample> samples;
    SampleWriter writer{G, stats, samples};
    writer.emit(0.0, y);
    long next_sample = 1;

    double h = std::min(icfg.max_step, sample_dt);
    Eigen::VectorXd k1 = field(y, G);

    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        // underflow of the error-controlled step signals a near-collision; the
        // final clamp to the remaining interval is legitimate and exempt
        if (h < 1e-13 * std::max(1.0, std::abs(t))) {
            throw IntegrationError("integrate: step size underflow (near-collision) at t = " +
                                       std::to_string(t),
                                   std::move(samples));
        }
        h = std::min({h, icfg.max_step, t_end - t});
        try {
            const Eigen::VectorXd k2 = field(y + h * (a21 * k1), G);
            const Eigen::VectorXd k3 = field(y + h * (a31 * k1 + a32 * k2), G);
            const Eigen::VectorXd k4 = field(y + h * (a41 * k1 + a42 * k2 + a43 * k3), G);
            const Eigen::VectorXd k5 = field(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), G);
            const Eigen::VectorXd k6 =
                field(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), G);
            const Eigen::VectorXd ynew =
                y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Eigen::VectorXd k7 = field(ynew, G);
            const Eigen::VectorXd errv =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double err2 = 0.0;
            for (int i = 0; i < y.size(); ++i) {
                const double sc =
                    icfg.abs_tol + icfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err2 += (errv[i] / sc) * (errv[i] / sc);
            }
            const double err = std::sqrt(err2 / static_cast<double>(y.size()));

            if (err <= 1.0) {
                ++stats.accepted;
                const double tnew = t + h;
                // cubic Hermite samples inside (t, tnew]
                while (next_sample * sample_dt <= tnew + 1e-12 && next_sample * sample_dt <= t_end + 1e-12) {
                    const double ts = next_sample * sample_dt;
                    const double th = (ts - t) / h;
                    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
                    const double h10 = th * (1 - th) * (1 - th);
                    const double h01 = th * th * (3 - 2 * th);
                    const double h11 = th * th * (th - 1);
                    const Eigen::VectorXd ys = h00 * y + (h10 * h) * k1 + h01 * ynew + (h11 * h) * k7;
                    writer.emit(ts, ys);
                    ++next_sample;
                }
                t = tnew;
                if (icfg.renormalize_each_step) {
                    const std::vector<HPoint> pts = unflatten_renorm(ynew);
                    if (min_pair_distance(pts) < 1e-6) {
                        throw IntegrationError(
                            "integrate: near-collision (pairwise distance below 1e-6) at t = " +
                                std::to_string(t),
                            std::move(samples));
                    }
                    y = flatten(pts);
                    k1 = field(y, G);
                } else {
                    y = ynew;
                    k1 = k7;
                }
                h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            } else {
                ++stats.rejected;
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            }
        } catch (IntegrationError&) {
            throw;
        } catch (const Error& e) {
            // a trial state left the model surface or two vortices merged;
            // surface it as an integration failure with the partial trajectory
            throw IntegrationError("integrate: invalid state near t = " + std::to_string(t) +
                                       " (" + e.what() + ")",
                                   std::move(samples));
        }
    }
    for (auto& s : samples) s.step_stats = stats;
    return samples;
}

} // namespace hvx
