#include "aniso/oracle.hpp"

#include <cmath>

#include "aniso/grid.hpp"
#include "aniso/interpolation.hpp"

namespace aniso::oracle {

ClosedForm ClosedForm::monomial(double c, double gamma) {
    ClosedForm f;
    f.kind = Kind::monomial;
    f.coeff = c;
    f.gamma = gamma;
    return f;
}
ClosedForm ClosedForm::exponential(double c, double lambda) {
    ClosedForm f;
    f.kind = Kind::exponential;
    f.coeff = c;
    f.lambda = lambda;
    return f;
}
ClosedForm ClosedForm::trig(double c, double k, double phase) {
    ClosedForm f;
    f.kind = Kind::trig;
    f.coeff = c;
    f.k = k;
    f.phase = phase;
    return f;
}
ClosedForm ClosedForm::gaussian(double c, double a, double center) {
    ClosedForm f;
    f.kind = Kind::gaussian;
    f.coeff = c;
    f.a = a;
    f.center = center;
    return f;
}

double ClosedForm::eval(double t) const {
    switch (kind) {
        case Kind::monomial: return coeff * std::pow(t, gamma);
        case Kind::exponential: return coeff * std::exp(lambda * t);
        case Kind::trig: return coeff * std::sin(k * t + phase);
        case Kind::gaussian: return coeff * std::exp(-a * (t - center) * (t - center));
    }
    return 0.0;
}

bool ClosedForm::admissible(const WeightParams& wp) const {
    if (kind != Kind::monomial) return true;
    // need p(1-mu) + p*gamma > -1
    return gamma > -(1.0 - wp.mu) - 1.0 / wp.p;
}

// --- incomplete gamma -------------------------------------------------------

static double gamma_p_series(double s, double x) {
    double sum = 1.0 / s, term = sum;
    for (int n = 1; n < 500; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

static double gamma_q_contfrac(double s, double x) {
    // Lentz continued fraction for Q(s,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        double an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
}

double gamma_p(double s, double x) {
    if (!(s > 0.0) || x < 0.0)
        throw std::domain_error("gamma_p: need s > 0, x >= 0");
    if (x == 0.0) return 0.0;
    return (x < s + 1.0) ? gamma_p_series(s, x) : 1.0 - gamma_q_contfrac(s, x);
}

// --- closed-form weighted norms ---------------------------------------------

double exact_weighted_lp(const ClosedForm& cf, const WeightParams& wp, double T) {
    const double p = wp.p;
    const double a = wp.weight_exponent();  // p(1-mu) >= 0
    const double c = std::abs(cf.coeff);

    switch (cf.kind) {
        case ClosedForm::Kind::monomial: {
            double q = a + p * cf.gamma;
            if (!(q > -1.0))
                throw std::domain_error("exact_weighted_lp: monomial not integrable");
            return c * std::pow(std::pow(T, q + 1.0) / (q + 1.0), 1.0 / p);
        }
        case ClosedForm::Kind::exponential: {
            double b = p * cf.lambda;
            if (b == 0.0)
                return c * std::pow(std::pow(T, a + 1.0) / (a + 1.0), 1.0 / p);
            if (b > 0.0)
                throw std::domain_error("exact_weighted_lp: growing exponential unsupported");
            // int_0^T t^a e^{b t} dt = Gamma(a+1)/|b|^{a+1} * P(a+1, |b|T)
            double ip = std::exp(std::lgamma(a + 1.0)) / std::pow(-b, a + 1.0) *
                        gamma_p(a + 1.0, -b * T);
            return c * std::pow(ip, 1.0 / p);
        }
        case ClosedForm::Kind::trig: {
            if (p != 2.0 || wp.mu != 1.0)
                throw std::domain_error("exact_weighted_lp: trig needs p=2, mu=1");
            double k = cf.k, ph = cf.phase;
            double ip = T / 2.0 -
                        (std::sin(2.0 * k * T + 2.0 * ph) - std::sin(2.0 * ph)) / (4.0 * k);
            return c * std::sqrt(ip);
        }
        case ClosedForm::Kind::gaussian: {
            if (p != 2.0 || wp.mu != 1.0)
                throw std::domain_error("exact_weighted_lp: gaussian needs p=2, mu=1");
            double s = std::sqrt(2.0 * cf.a);
            double ip = std::sqrt(M_PI) / (2.0 * s) *
                        (std::erf(s * (T - cf.center)) + std::erf(s * cf.center));
            return c * std::sqrt(ip);
        }
    }
    throw std::logic_error("exact_weighted_lp: unreachable");
}

// --- dense quadrature with Richardson extrapolation -------------------------

QuadratureLadder dense_quadrature(const std::function<double(double)>& f,
                                  double T, int levels, int base_n) {
    if (levels < 3)
        throw std::invalid_argument("dense_quadrature: levels >= 3 required");
    std::vector<double> vals;
    int n = base_n;
    for (int l = 0; l < levels; ++l, n *= 2) {
        Grid1D g = default_grid(TimeDomain::finite(T), n);
        double s = 0.0;
        for (int i = 0; i < g.size(); ++i) s += g.quad_weights[i] * f(g.nodes[i]);
        vals.push_back(s);
    }
    QuadratureLadder out;
    out.value = vals.back();
    const int m = levels;
    double d1 = std::abs(vals[m - 2] - vals[m - 3]);
    double d2 = std::abs(vals[m - 1] - vals[m - 2]);
    out.monotone = true;
    for (int l = 2; l < m; ++l)
        if (std::abs(vals[l] - vals[l - 1]) > std::abs(vals[l - 1] - vals[l - 2]) + 1e-14)
            out.monotone = false;
    if (d2 < 1e-15 * std::abs(vals.back())) {
        out.rate = 16.0;  // converged to roundoff
        out.extrapolated = vals.back();
    } else {
        out.rate = std::log2(d1 / d2);
        double q = std::pow(2.0, out.rate);
        out.extrapolated = vals[m - 1] + (vals[m - 1] - vals[m - 2]) / (q - 1.0);
    }
    return out;
}

// --- brute-force K-functional -----------------------------------------------

KBruteResult brute_force_k(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                           double t) {
    if (u.size() > 16)
        throw std::invalid_argument("brute_force_k: at most 16 modes");
    if (!(t > 0.0)) throw std::invalid_argument("brute_force_k: t > 0");
    const Eigen::ArrayXd w0 = couple.weights0.array();
    const Eigen::ArrayXd w1 = couple.weights1.array();
    const Eigen::ArrayXd uu = u.array();

    auto obj = [&](const Eigen::ArrayXd& a) {
        return std::sqrt((w0 * a).square().sum()) +
               t * std::sqrt((w1 * (uu - a)).square().sum());
    };

    double scale = std::sqrt(uu.square().sum());
    if (scale == 0.0) return {0.0, 0.0};

    // Endpoint splits b=0 / a=0.
    double best = std::min(obj(uu), obj(Eigen::ArrayXd::Zero(u.size())));
    Eigen::ArrayXd abest = best == obj(uu) ? uu : Eigen::ArrayXd::Zero(u.size());

    // Interior stationarity: a_i = u_i * t w1_i^2 A / (B w0_i^2 + t w1_i^2 A)
    // where A = |a|_X, B = |u-a|_Y. Fixed-point iterate on (A, B).
    double A = couple.norm0(u.matrix()) * 0.5, B = couple.norm1(u.matrix()) * 0.5;
    Eigen::ArrayXd a = 0.5 * uu;
    for (int it = 0; it < 2000; ++it) {
        Eigen::ArrayXd anew = uu * (t * w1.square() * A) /
                              (B * w0.square() + t * w1.square() * A + 1e-300);
        double An = std::sqrt((w0 * anew).square().sum());
        double Bn = std::sqrt((w1 * (uu - anew)).square().sum());
        double move = (anew - a).abs().maxCoeff();
        a = anew;
        A = An;
        B = Bn;
        if (move < 1e-14 * scale) break;
        if (A < 1e-14 * scale || B < 1e-14 * scale) break;  // drifting to a kink
    }
    double finterior = obj(a);
    if (finterior < best) {
        best = finterior;
        abest = a;
    }

    // Gradient polish with backtracking from the best point (smoothed norms).
    const double eps = 1e-12 * scale;
    auto objs = [&](const Eigen::ArrayXd& x) {
        return std::sqrt((w0 * x).square().sum() + eps * eps) +
               t * std::sqrt((w1 * (uu - x)).square().sum() + eps * eps);
    };
    Eigen::ArrayXd x = abest;
    double fx = objs(x);
    double step = 0.1;
    double gnorm = 0.0;
    for (int it = 0; it < 5000; ++it) {
        double nx = std::sqrt((w0 * x).square().sum() + eps * eps);
        double ny = std::sqrt((w1 * (uu - x)).square().sum() + eps * eps);
        Eigen::ArrayXd g = w0.square() * x / nx - t * w1.square() * (uu - x) / ny;
        gnorm = std::sqrt(g.square().sum());
        if (gnorm * scale < 1e-10 * std::max(fx, 1e-300)) break;
        Eigen::ArrayXd xn = x - step * g;
        double fn = objs(xn);
        if (fn < fx) {
            x = xn;
            fx = fn;
            step *= 1.2;
        } else {
            step *= 0.5;
            if (step < 1e-16) break;
        }
    }
    best = std::min(best, obj(x));

    KBruteResult res;
    res.value = best;

    // First-order optimality residual. At the kink minimizers a=0 / a=u the
    // subgradient conditions are t|w1^2 u / w0| <= |W1 u| and
    // |w0^2 u / w1| <= t |W0 u| respectively; in the interior we use the
    // gradient norm.
    double f0 = obj(Eigen::ArrayXd::Zero(u.size()));
    double fu = obj(uu);
    if (best == f0) {
        double lhs = t * std::sqrt((w1.square() * uu / w0).square().sum());
        res.residual = std::max(0.0, lhs / couple.norm1(u.matrix()) - 1.0);
    } else if (best == fu) {
        double lhs = std::sqrt((w0.square() * uu / w1).square().sum());
        res.residual = std::max(0.0, lhs / (t * couple.norm0(u.matrix())) - 1.0);
    } else {
        res.residual = gnorm * scale / std::max(best, 1e-300);
    }
    return res;
}

}  // namespace aniso::oracle
