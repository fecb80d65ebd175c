#include "aniso/interpolation.hpp"

#include <cmath>
#include <stdexcept>

#include "aniso/fft.hpp"
#include "aniso/norms.hpp"
#include "aniso/operators.hpp"
#include "aniso/spline.hpp"

namespace aniso {

DiagonalCouple::DiagonalCouple(Eigen::VectorXd w0, Eigen::VectorXd w1)
    : weights0(std::move(w0)), weights1(std::move(w1)) {
    if (weights0.size() != weights1.size() || weights0.size() == 0)
        throw std::invalid_argument("DiagonalCouple: matching nonempty weights");
    if (weights0.minCoeff() <= 0.0 || weights1.minCoeff() <= 0.0)
        throw std::invalid_argument("DiagonalCouple: weights must be positive");
}

static double k2_exact(const Eigen::VectorXd& u, const DiagonalCouple& cp,
                       double t) {
    double s = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        const double w0 = cp.weights0[i], w1 = cp.weights1[i];
        const double num = t * w0 * w1 * u[i];
        s += num * num / (w0 * w0 + t * t * w1 * w1);
    }
    return std::sqrt(s);
}

static double k_coordinate_descent(const Eigen::VectorXd& u,
                                   const DiagonalCouple& cp, double t) {
    const Eigen::ArrayXd w0 = cp.weights0.array(), w1 = cp.weights1.array();
    const Eigen::ArrayXd uu = u.array();
    auto obj = [&](const Eigen::ArrayXd& a) {
        return std::sqrt((w0 * a).square().sum()) +
               t * std::sqrt((w1 * (uu - a)).square().sum());
    };
    // start from the quadratic minimizer, which already certifies <= sqrt(2) K2
    Eigen::ArrayXd a = uu * (t * t * w1.square()) / (w0.square() + t * t * w1.square());
    double best = std::min({obj(a), obj(uu), obj(Eigen::ArrayXd::Zero(u.size()))});
    double A = std::sqrt((w0 * a).square().sum());
    double B = std::sqrt((w1 * (uu - a)).square().sum());
    const double scale = std::sqrt(uu.square().sum());
    if (scale == 0.0) return 0.0;
    for (int it = 0; it < 500; ++it) {
        if (A < 1e-14 * scale || B < 1e-14 * scale) break;
        Eigen::ArrayXd an =
            uu * (t * w1.square() * A) / (B * w0.square() + t * w1.square() * A);
        const double move = (an - a).abs().maxCoeff();
        a = an;
        A = std::sqrt((w0 * a).square().sum());
        B = std::sqrt((w1 * (uu - a)).square().sum());
        best = std::min(best, obj(a));
        if (move < 1e-14 * scale) break;
    }
    return best;
}

double k_functional(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                    double t, KMode mode) {
    if (!(t > 0.0)) throw std::invalid_argument("k_functional: t > 0 required");
    if (u.size() != couple.size())
        throw std::invalid_argument("k_functional: size mismatch");
    return mode == KMode::quadratic_exact ? k2_exact(u, couple, t)
                                          : k_coordinate_descent(u, couple, t);
}

NormResult real_interp_norm(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                            double theta, double p,
                            const RealInterpOptions& opts) {
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("real_interp_norm: theta in (0,1)");
    if (!(p > 1.0)) throw std::invalid_argument("real_interp_norm: p > 1");

    auto quad = [&](int nt) {
        const double dl = std::log(opts.t_max / opts.t_min) / (nt - 1);
        double integral = 0.0, prev = 0.0;
        for (int i = 0; i < nt; ++i) {
            const double t = opts.t_min * std::exp(i * dl);
            const double K = k_functional(u, couple, t, opts.mode);
            const double f = std::pow(std::pow(t, -theta) * K, p);
            if (i > 0) integral += 0.5 * (prev + f) * dl;
            prev = f;
        }
        return integral;
    };
    // analytic tails: K ~ t|u|_Y below t_min, K ~ |u|_X above t_max
    const double nx = couple.norm0(u), ny = couple.norm1(u);
    const double low =
        std::pow(ny, p) * std::pow(opts.t_min, (1.0 - theta) * p) / ((1.0 - theta) * p);
    const double high = std::pow(nx, p) * std::pow(opts.t_max, -theta * p) / (theta * p);

    NormResult r;
    const double body = quad(opts.n_t);
    r.value = std::pow(body + low + high, 1.0 / p);
    r.resolution = opts.n_t;
    r.est_error =
        std::abs(r.value - std::pow(quad(opts.n_t / 2) + low + high, 1.0 / p));
    r.components["tail-low"] = low;
    r.components["tail-high"] = high;
    return r;
}

// spectral coefficient moduli of the periodization, scaled so that the
// couple's l2 norms match L2 norms over the torus
static Eigen::VectorXd torus_coefficients(const SampledFunction& u, int N,
                                          double* period, Eigen::VectorXd* xi) {
    ops::Periodized per = ops::periodize(u, 3, N);
    Eigen::VectorXcd c = fft_forward(per.values.col(0));
    *period = per.period;
    xi->resize(per.N);
    Eigen::VectorXd out(per.N);
    const double scale = std::sqrt(per.period);
    for (int k = 0; k < per.N; ++k) {
        (*xi)[k] = fft_xi(k, per.N, per.period);
        out[k] = scale * std::abs(c[k]);
    }
    return out;
}

VerificationReport check_interp_identity(const std::vector<SampledFunction>& ensemble,
                                         const WeightParams& wp, double s1,
                                         double s2, double theta,
                                         const InterpIdentityOptions& opts) {
    if (ensemble.size() < 8)
        throw std::invalid_argument("check_interp_identity: need >= 8 functions");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("check_interp_identity: theta in (0,1)");
    if (wp.p != 2.0)
        throw std::invalid_argument(
            "check_interp_identity: diagonal couples require p = 2");
    const double s = (1.0 - theta) * s1 + theta * s2;
    if (FractionalOrder(s).is_integer() && s > 0.0)
        throw std::invalid_argument(
            "check_interp_identity: interpolated order must be noninteger");

    VerificationReport rep;
    rep.suite = "interp-identity";

    auto ratio_at = [&](const SampledFunction& u, int torus_n) {
        SampledFunction v = wp.mu < 1.0 ? ops::phi_mu(u, wp, true) : u;
        double period;
        Eigen::VectorXd xi;
        Eigen::VectorXd coef = torus_coefficients(v, torus_n, &period, &xi);
        Eigen::VectorXd w0(coef.size()), w1(coef.size());
        for (int k = 0; k < coef.size(); ++k) {
            const double m = std::abs(std::complex<double>(1.0, -xi[k]));
            w0[k] = std::pow(m, s1);
            w1[k] = std::pow(m, s2);
        }
        DiagonalCouple cp(w0, w1);
        const double lhs = real_interp_norm(coef, cp, theta, wp.p).value;
        const double rhs =
            norms::fractional_norm(u, SpaceSpec(SpaceSpec::Family::W, s, wp)).value;
        return std::pair<double, double>(lhs, rhs);
    };

    const int N = opts.torus_factor * opts.grid_n;
    double worst = 0.0, drift = 0.0;
    int idx = 0;
    for (const auto& u : ensemble) {
        auto [lhs, rhs] = ratio_at(u, N);
        auto [lhs2, rhs2] = ratio_at(u, 2 * N);
        const double r = lhs / rhs, r2 = lhs2 / rhs2;
        CheckInstance inst;
        inst.params["index"] = idx++;
        inst.params["s"] = s;
        inst.params["theta"] = theta;
        inst.lhs = lhs;
        inst.rhs = rhs;
        inst.ratio = r;
        inst.resolution = u.grid.size();
        rep.instances.push_back(inst);
        worst = std::max({worst, r, 1.0 / r});
        drift = std::max(drift, std::abs(r2 / r - 1.0));
    }
    rep.worst_ratio = worst;  // symmetric: max of ratio and its reciprocal
    rep.refinement_drift = drift;
    return rep;
}

}  // namespace aniso
