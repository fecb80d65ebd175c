#include "aniso/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aniso/fft.hpp"
#include "aniso/spline.hpp"

namespace aniso {

FractionalOperatorSpec::FractionalOperatorSpec(Kind k, double order_, double shift_)
    : kind(k), order(order_), shift(shift_) {
    if (!std::isfinite(order) || !std::isfinite(shift))
        throw std::invalid_argument("FractionalOperatorSpec: finite parameters required");
    if (kind == Kind::laplacian) {
        if (!(order > 0.0))
            throw std::invalid_argument("FractionalOperatorSpec: laplacian order > 0");
    } else {
        if (!(order >= 0.0 && order < 2.0))
            throw std::invalid_argument("FractionalOperatorSpec: time order in [0,2)");
    }
    if (shift < 0.0)
        throw std::invalid_argument("FractionalOperatorSpec: shift >= 0 required");
}

SumOperatorSpec::SumOperatorSpec(FractionalOperatorSpec t, FractionalOperatorSpec x)
    : time(t), space(x) {
    if (time.kind == FractionalOperatorSpec::Kind::laplacian ||
        space.kind != FractionalOperatorSpec::Kind::laplacian)
        throw std::invalid_argument("SumOperatorSpec: need a time part and a laplacian part");
    if (time.shift == 0.0 && space.shift == 0.0)
        throw std::invalid_argument("SumOperatorSpec: shifts must not both vanish");
}

namespace ops {

Eigen::VectorXd reflection_coefficients(int k) {
    if (k < 0 || k > 6)
        throw std::invalid_argument("reflection_coefficients: k in [0,6]");
    const int m = k + 1;
    Eigen::MatrixXd V(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) V(i, j) = std::pow(-double(j + 1), i);
    return V.fullPivLu().solve(Eigen::VectorXd::Ones(m));
}

SampledFunction phi_mu(const SampledFunction& u, const WeightParams& wp,
                       bool forward) {
    SampledFunction v = u;
    const double e = forward ? (1.0 - wp.mu) : -(1.0 - wp.mu);
    for (int i = 0; i < v.grid.size(); ++i)
        v.values.row(i) *= std::pow(v.grid.nodes[i], e);
    return v;
}

// Mirrors the grid of u across T so that the output nodes on (T,2T) are the
// reflections 2T - t_i; restriction to (0,T) is then node-exact by
// construction.
static Grid1D doubled_grid(const Grid1D& g) {
    const int n = g.size();
    const double T = g.T();
    Grid1D out;
    out.domain = TimeDomain::half_line(2.0 * T);
    out.grading = g.grading;
    out.edges.resize(2 * n + 1);
    out.nodes.resize(2 * n);
    out.quad_weights.resize(2 * n);
    for (int i = 0; i <= n; ++i) out.edges[i] = g.edges[i];
    for (int i = 1; i <= n; ++i) out.edges[n + i] = 2.0 * T - g.edges[n - i];
    for (int i = 0; i < n; ++i) out.nodes[i] = g.nodes[i];
    for (int i = 0; i < n; ++i) out.nodes[n + i] = 2.0 * T - g.nodes[n - 1 - i];
    for (int i = 0; i < 2 * n; ++i)
        out.quad_weights[i] = out.edges[i + 1] - out.edges[i];
    return out;
}

static std::vector<CubicSpline> build_splines(const SampledFunction& u) {
    std::vector<CubicSpline> s;
    s.reserve(u.d());
    for (int j = 0; j < u.d(); ++j) s.emplace_back(u.grid.nodes, u.values.col(j));
    return s;
}

SampledFunction extend_zero(const SampledFunction& u, const WeightParams& wp) {
    const int n = u.grid.size();
    const double T = u.grid.T();
    const double e = 1.0 - wp.mu;
    auto psi = [T](double tau) { return (2.0 * T - tau) * tau / (T * T); };

    // g = psi^{1-mu} u at the original nodes, splined for the off-node
    // argument 3T - 2t.
    Eigen::MatrixXd gvals(n, u.d());
    for (int i = 0; i < n; ++i)
        gvals.row(i) = std::pow(psi(u.grid.nodes[i]), e) * u.values.row(i);
    std::vector<CubicSpline> gs;
    for (int j = 0; j < u.d(); ++j) gs.emplace_back(u.grid.nodes, gvals.col(j));

    SampledFunction v;
    v.grid = doubled_grid(u.grid);
    v.value_p = u.value_p;
    v.value_scale = u.value_scale;
    v.values.setZero(2 * n, u.d());
    v.values.topRows(n) = u.values;
    for (int i = n; i < 2 * n; ++i) {
        const double t = v.grid.nodes[i];
        const int mir = 2 * n - 1 - i;  // node with value g(2T - t) exactly
        Eigen::RowVectorXd row = 3.0 * gvals.row(mir);
        if (t < 1.5 * T) {
            const double arg = 3.0 * T - 2.0 * t;
            for (int j = 0; j < u.d(); ++j) row[j] -= 2.0 * gs[j](arg);
        }
        v.values.row(i) = row;
    }
    return v;
}

// C^inf ramp: 1 at x <= 0, 0 at x >= 1, all derivatives vanish at both ends.
static double smooth_cut(double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    auto sigma = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
    return sigma(1.0 - x) / (sigma(1.0 - x) + sigma(x));
}

SampledFunction extend_general(const SampledFunction& u, int k) {
    if (k < 1 || k > 4)
        throw std::invalid_argument("extend_general: k in [1,4]");
    const int n = u.grid.size();
    const double T = u.grid.T();
    const double margin = T / (2.0 * k + 2.0);  // support ends at T + margin
    if (u.grid.nodes[n - 1] < T - margin)
        throw std::invalid_argument("extend_general: grid too coarse near T");
    const Eigen::VectorXd c = reflection_coefficients(k);
    auto s = build_splines(u);

    SampledFunction v;
    v.grid = doubled_grid(u.grid);
    v.value_p = u.value_p;
    v.value_scale = u.value_scale;
    v.values.setZero(2 * n, u.d());
    v.values.topRows(n) = u.values;
    for (int i = n; i < 2 * n; ++i) {
        const double t = v.grid.nodes[i];
        const double cut = smooth_cut((t - T) / margin);
        if (cut == 0.0) continue;
        for (int j = 0; j < u.d(); ++j) {
            double val = 0.0;
            // reflected arguments stay in (T/2, T)
            for (int l = 0; l <= k; ++l) val += c[l] * s[j](T - (l + 1) * (t - T));
            v.values(i, j) = cut * val;
        }
    }
    return v;
}

Eigen::VectorXd extend_spatial(const Eigen::VectorXd& half, int k) {
    const int n = static_cast<int>(half.size());
    if (k < 1 || k > 4) throw std::invalid_argument("extend_spatial: k in [1,4]");
    if (n < 8) throw std::invalid_argument("extend_spatial: grid too coarse");
    Eigen::VectorXd out(2 * n);
    out.head(n) = half;
    if (k == 1) {
        // even mirror, exact on the staggered grid
        for (int j = 0; j < n; ++j) out[2 * n - 1 - j] = half[j];
        return out;
    }
    Eigen::VectorXd y(n);
    for (int j = 0; j < n; ++j) y[j] = j + 0.5;  // units of h
    CubicSpline s(y, half);
    const Eigen::VectorXd c = reflection_coefficients(k - 1);
    const double ymax = n - 0.5;
    for (int j = 0; j < n; ++j) {
        double val = 0.0;
        for (int l = 0; l < k; ++l) val += c[l] * s(std::min((l + 1) * y[j], ymax));
        out[2 * n - 1 - j] = val;
    }
    return out;
}

SampledFunction translate(const SampledFunction& u, double t0) {
    if (!(t0 >= 0.0)) throw std::invalid_argument("translate: t0 >= 0 required");
    if (t0 == 0.0) return u;
    const int n = u.grid.size();
    auto s = build_splines(u);
    const double tlast = u.grid.nodes[n - 1];
    SampledFunction v = u;
    for (int i = 0; i < n; ++i) {
        const double arg = u.grid.nodes[i] + t0;
        if (arg > tlast)
            v.values.row(i).setZero();
        else
            for (int j = 0; j < u.d(); ++j) v.values(i, j) = s[j](arg);
    }
    return v;
}

Periodized periodize(const SampledFunction& u, int k, int N) {
    if (k < 1 || k > 4) throw std::invalid_argument("periodize: k in [1,4]");
    const double T = u.grid.T();
    const double margin = T / (2.0 * k + 2.0);
    if (N == 0) {
        N = 512;
        while (N < 4 * u.grid.size()) N *= 2;
    }
    if (!is_power_of_two(N))
        throw std::invalid_argument("periodize: N must be a power of two");
    const Eigen::VectorXd c = reflection_coefficients(k);
    auto s = build_splines(u);

    Periodized per;
    per.period = 4.0 * T;
    per.t_left = -T;
    per.N = N;
    per.values.setZero(N, u.d());
    for (int i = 0; i < N; ++i) {
        const double t = per.t_of(i);
        double cut;
        if (t >= 0.0 && t <= T)
            cut = 1.0;
        else if (t > T)
            cut = smooth_cut((t - T) / margin);
        else
            cut = smooth_cut(-t / margin);
        if (cut == 0.0) continue;
        for (int j = 0; j < u.d(); ++j) {
            double val;
            if (t >= 0.0 && t <= T) {
                val = s[j](t);
            } else if (t > T) {
                val = 0.0;
                for (int l = 0; l <= k; ++l) val += c[l] * s[j](T - (l + 1) * (t - T));
            } else {
                val = 0.0;
                for (int l = 0; l <= k; ++l) val += c[l] * s[j](-(l + 1) * t);
            }
            per.values(i, j) = cut * val;
        }
    }
    return per;
}

std::complex<double> multiplier_symbol(const FractionalOperatorSpec& spec,
                                       double xi) {
    using Kind = FractionalOperatorSpec::Kind;
    const std::complex<double> I(0.0, 1.0);
    switch (spec.kind) {
        case Kind::time_deriv_minus:
            return std::pow(spec.shift - I * xi, spec.order);
        case Kind::time_deriv_plus:
            return std::pow(spec.shift + I * xi, spec.order);
        case Kind::laplacian:
            return std::pow(std::complex<double>(spec.shift + xi, 0.0), spec.order);
    }
    return {};
}

Eigen::VectorXcd apply_multiplier_periodic(const Eigen::VectorXcd& vals,
                                           double period,
                                           const FractionalOperatorSpec& spec) {
    const int n = static_cast<int>(vals.size());
    Eigen::VectorXcd c = fft_forward(vals);
    if (spec.shift == 0.0 && std::abs(c[0]) > 1e-10 * vals.cwiseAbs().maxCoeff())
        throw std::domain_error(
            "apply_multiplier_periodic: zero shift with a nonzero mean "
            "(branch ambiguity at the zero mode)");
    const bool lap = spec.kind == FractionalOperatorSpec::Kind::laplacian;
    for (int kk = 0; kk < n; ++kk) {
        const double xi = fft_xi(kk, n, period);
        c[kk] *= multiplier_symbol(spec, lap ? xi * xi : xi);
    }
    return fft_inverse(c);
}

SampledFunction fractional_apply(const SampledFunction& u,
                                 const FractionalOperatorSpec& spec,
                                 const FractionalApplyOptions& opts) {
    Periodized per = periodize(u, opts.reflection_order, opts.torus_n);
    Eigen::VectorXd tt(per.N);
    for (int i = 0; i < per.N; ++i) tt[i] = per.t_of(i);

    SampledFunction v = u;
    for (int j = 0; j < u.d(); ++j) {
        Eigen::VectorXcd w = apply_multiplier_periodic(per.values.col(j),
                                                       per.period, spec);
        CubicSpline s(tt, w.real());
        for (int i = 0; i < u.grid.size(); ++i)
            v.values(i, j) = s(u.grid.nodes[i]);
    }
    return v;
}

Eigen::MatrixXd apply_spatial_multiplier(
    const Eigen::MatrixXd& rows, const SpatialGrid& g,
    const std::function<std::complex<double>(double, double)>& f) {
    if (rows.cols() != g.total())
        throw std::invalid_argument("apply_spatial_multiplier: shape mismatch");
    if (!is_power_of_two(g.n1) || (g.dims == 2 && !is_power_of_two(g.n2)))
        throw std::invalid_argument("apply_spatial_multiplier: grid sizes must be powers of two");
    Eigen::MatrixXd out(rows.rows(), rows.cols());
    const double P = g.circumference();
    for (int r = 0; r < rows.rows(); ++r) {
        if (g.dims == 1) {
            Eigen::VectorXcd c = fft_forward(rows.row(r).transpose().cast<cplx>());
            for (int i = 0; i < g.n1; ++i) c[i] *= f(fft_xi(i, g.n1, P), 0.0);
            out.row(r) = fft_inverse(c).real().transpose();
        } else {
            Eigen::MatrixXcd m(g.n1, g.n2);
            for (int j = 0; j < g.n2; ++j)
                for (int i = 0; i < g.n1; ++i) m(i, j) = rows(r, i + g.n1 * j);
            for (int j = 0; j < g.n2; ++j) m.col(j) = fft_forward(m.col(j));
            for (int i = 0; i < g.n1; ++i)
                m.row(i) = fft_forward(m.row(i).transpose()).transpose();
            for (int j = 0; j < g.n2; ++j)
                for (int i = 0; i < g.n1; ++i)
                    m(i, j) *= f(fft_xi(i, g.n1, P), fft_xi(j, g.n2, 2.0 * M_PI * g.L));
            for (int i = 0; i < g.n1; ++i)
                m.row(i) = fft_inverse(m.row(i).transpose()).transpose();
            for (int j = 0; j < g.n2; ++j) m.col(j) = fft_inverse(m.col(j));
            for (int j = 0; j < g.n2; ++j)
                for (int i = 0; i < g.n1; ++i) out(r, i + g.n1 * j) = m(i, j).real();
        }
    }
    return out;
}

SpaceTimeField spatial_derivative(const SpaceTimeField& u, int axis) {
    if (axis < 0 || axis >= u.xgrid.dims)
        throw std::invalid_argument("spatial_derivative: bad axis");
    SpaceTimeField v = u;
    const std::complex<double> I(0.0, 1.0);
    v.values = apply_spatial_multiplier(
        u.values, u.xgrid, [&](double xi1, double xi2) {
            return I * (axis == 0 ? xi1 : xi2);
        });
    return v;
}

Eigen::VectorXd trace_t0(const SampledFunction& u, const WeightParams& wp,
                         double sigma) {
    const int n = u.grid.size();
    const double mu = wp.mu;
    if (!(sigma > 0.0) || sigma > u.grid.T())
        throw std::invalid_argument("trace_t0: sigma must lie in (0, T]");
    const double q2 = 2.0 - mu, q3 = 3.0 - mu;
    const double kappa = 1.0 / q2 - 1.0 / q3;

    Eigen::VectorXd out(u.d());
    for (int j = 0; j < u.d(); ++j) {
        // Piecewise-linear interpolant of column j with breakpoints at the
        // nodes below sigma; first/last segments extended to 0 and sigma.
        // On each segment u = alpha + beta t, so
        //   F(t) = int_0^t tau^{1-mu}(u(t)-u(tau)) dtau = beta*kappa*t^{3-mu} + C
        // with a segment constant C, and both integrals of the trace formula
        // reduce to closed-form power integrals (exact for affine u).
        double G = 0.0;   // int_0^a tau^{1-mu} u dtau, running
        double I2 = 0.0;  // int_0^sigma t^{-(3-mu)} F(t) dt, running
        double a = 0.0;
        int seg = 0;
        while (a < sigma) {
            int lo = std::max(0, std::min(seg - 1, n - 2));
            const double t0 = u.grid.nodes[lo], t1 = u.grid.nodes[lo + 1];
            const double beta = (u.values(lo + 1, j) - u.values(lo, j)) / (t1 - t0);
            const double alpha = u.values(lo, j) - beta * t0;
            double b = (seg < n) ? std::min(u.grid.nodes[seg], sigma) : sigma;
            if (!(b > a)) { ++seg; continue; }

            const double C = alpha * std::pow(a, q2) / q2 +
                             beta * std::pow(a, q3) / q3 - G;
            I2 += beta * kappa * (b - a);
            if (a > 0.0)
                I2 += C * (std::pow(a, -q2) - std::pow(b, -q2)) / q2;
            G += alpha * (std::pow(b, q2) - std::pow(a, q2)) / q2 +
                 beta * (std::pow(b, q3) - std::pow(a, q3)) / q3;
            a = b;
            ++seg;
        }
        out[j] = q2 * (std::pow(sigma, -q2) * G - q2 * I2);
    }
    return out;
}

SpaceTimeField trace_rightinverse_S(const Eigen::VectorXd& u0,
                                    const SpatialGrid& xgrid, int m,
                                    const Grid1D& tgrid) {
    if (m < 1) throw std::invalid_argument("trace_rightinverse_S: m >= 1");
    if (u0.size() != xgrid.total())
        throw std::invalid_argument("trace_rightinverse_S: shape mismatch");
    SpaceTimeField f;
    f.tgrid = tgrid;
    f.xgrid = xgrid;
    f.values.resize(tgrid.size(), xgrid.total());
    Eigen::MatrixXd row = u0.transpose();
    for (int i = 0; i < tgrid.size(); ++i) {
        const double t = tgrid.nodes[i];
        f.values.row(i) = apply_spatial_multiplier(
            row, xgrid, [&](double xi1, double xi2) {
                const double lam = std::pow(1.0 + xi1 * xi1 + xi2 * xi2, m);
                return std::complex<double>(std::exp(-t * lam), 0.0);
            });
    }
    return f;
}

SpaceTimeField trace_y0(const HalfSpaceField& u) {
    if (u.ny() < 3) throw std::invalid_argument("trace_y0: need >= 3 layers");
    // quadratic extrapolation from y = h/2, 3h/2, 5h/2 to y = 0
    const double c0 = 15.0 / 8.0, c1 = -5.0 / 4.0, c2 = 3.0 / 8.0;
    SpaceTimeField g;
    g.tgrid = u.tgrid;
    g.xgrid = u.xgrid;
    g.values = c0 * u.layers[0] + c1 * u.layers[1] + c2 * u.layers[2];
    return g;
}

HalfSpaceField trace_y0_rightinverse(const Eigen::MatrixXcd& ghat,
                                     double t_period, const SpatialGrid& xgrid,
                                     int m, const Grid1D& tgrid, int ny,
                                     double hy) {
    if (m < 1) throw std::invalid_argument("trace_y0_rightinverse: m >= 1");
    if (xgrid.dims != 1)
        throw std::invalid_argument("trace_y0_rightinverse: tangential grid must be 1-D");
    if (ghat.cols() != xgrid.n1)
        throw std::invalid_argument("trace_y0_rightinverse: shape mismatch");
    const int Nt = static_cast<int>(ghat.rows());
    const int Nx = xgrid.n1;
    const std::complex<double> I(0.0, 1.0);

    HalfSpaceField f;
    f.tgrid = tgrid;
    f.xgrid = xgrid;
    f.hy = hy;
    f.layers.assign(ny, Eigen::MatrixXd::Zero(tgrid.size(), Nx));

    for (int kt = 0; kt < Nt; ++kt) {
        const double xit = fft_xi(kt, Nt, t_period);
        for (int kx = 0; kx < Nx; ++kx) {
            const std::complex<double> g = ghat(kt, kx);
            if (g == 0.0) continue;
            const double xix = xgrid.xi1(kx);
            const std::complex<double> lam =
                1.0 - I * xit + std::pow(xix * xix, m);
            if (lam.real() <= 0.0 && lam.imag() == 0.0)
                throw std::logic_error("trace_y0_rightinverse: root on the cut");
            const std::complex<double> rho = std::pow(lam, 1.0 / (2.0 * m));
            for (int l = 0; l < ny; ++l) {
                const std::complex<double> decay = std::exp(-f.y(l) * rho) * g;
                for (int i = 0; i < tgrid.size(); ++i) {
                    const std::complex<double> osc =
                        std::exp(I * (xit * tgrid.nodes[i]));
                    for (int x = 0; x < Nx; ++x)
                        f.layers[l](i, x) +=
                            (decay * osc * std::exp(I * (xix * xgrid.x1(x)))).real();
                }
            }
        }
    }
    return f;
}

}  // namespace ops
}  // namespace aniso
