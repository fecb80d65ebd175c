#pragma once

#include <Eigen/Dense>

#include "aniso/grid.hpp"
#include "aniso/types.hpp"

namespace aniso {

/// Scale of temporal function spaces over (0,T) with weight t^{p(1-mu)}:
///   L   weighted Lebesgue
///   W   Sobolev-Slobodetskii (integer derivatives + difference seminorm)
///   H   Bessel-potential via the (1 - d/dt)^s multiplier
///   B   Besov, realized like W for non-integer order
///   W0 / H0  the vanishing-at-0 subspaces (membership is checked)
struct SpaceSpec {
    enum class Family { L, W, H, B, W0, H0 };
    Family family;
    double order;
    WeightParams weight;

    SpaceSpec(Family f, double s, WeightParams wp);

    bool zero_trace_variant() const {
        return family == Family::W0 || family == Family::H0;
    }
    /// Orders s with fractional part equal to 1 - mu + 1/p are excluded for
    /// the vanishing-trace families.
    void check_not_limit() const;
};

namespace norms {

/// |u|_{L_{p,mu}} = (sum_i w_i t_i^{p(1-mu)} |u(t_i)|^p)^{1/p}.
/// est_error compares against the sum over pairwise-merged cells.
NormResult weighted_lp_norm(const SampledFunction& u, const WeightParams& wp);

/// W^k norm: weighted L_p norms of u and its finite-difference derivatives
/// up to order k (4-point stencils on the nonuniform grid). Needs
/// n >= 8 * 2^k; k <= 4.
NormResult sobolev_k_norm(const SampledFunction& u, int k, const WeightParams& wp);

/// Difference seminorm of order s in (0,1):
/// (int int_{|t-tau|>0} w(t,tau) |u(t)-u(tau)|^p / |t-tau|^{1+sp})^{1/p}
/// with w = max(t,tau)^{p(1-mu)}; cells closer than one local width to the
/// diagonal are excluded from the product quadrature.
NormResult slobodetskii_seminorm(const SampledFunction& u, double s,
                                 const WeightParams& wp);

struct FractionalNormOptions {
    int reflection_order = 3;
    int torus_n = 0;           // spectral torus size, 0 = automatic
    bool check_zero_trace = true;
    double zero_trace_rtol = 1e-6;
};

/// Norm of u in the requested space. W/B combine sobolev_k_norm of the
/// integer part with the difference seminorm of the fractional part; H
/// applies |1 - i xi|^s on the periodization. W0/H0 additionally verify the
/// vanishing of traces u^{(j)}(0), j < s - (1-mu+1/p), by extrapolation.
NormResult fractional_norm(const SampledFunction& u, const SpaceSpec& spec,
                           const FractionalNormOptions& opts = {});

/// Norm in H^{s,theta}((0,T) x torus) = H^s_t(L_p_x) cap L_p_t(H^theta_x)
/// realized as the sum of the two mixed norms. `time` fixes the temporal
/// family/order/weight; `space_order` is the spatial smoothness.
NormResult anisotropic_norm(const SpaceTimeField& u, const SpaceSpec& time,
                            double space_order);

/// Trace-space norm via the analytic semigroup generated by
/// A = (1 - Laplacian)^m:
/// ( int_0^inf sigma^{p(1-theta)} |A e^{-sigma A} x|_{L_p}^p dsigma/sigma )^{1/p},
/// log-quadrature on [1e-6, 1e3] plus analytic tail bounds.
NormResult semigroup_besov_norm(const Eigen::VectorXd& x, const SpatialGrid& xgrid,
                                double theta, double p, int m);

/// First finite-difference derivative on the nonuniform grid (4-point
/// interior stencils, one-sided at the ends).
SampledFunction derivative(const SampledFunction& u);
SampledFunction derivative_k(const SampledFunction& u, int k);

/// Extrapolated |u^{(j)}(0)| for j = 0..jmax (3-point Richardson in t).
Eigen::VectorXd boundary_derivative_estimates(const SampledFunction& u, int jmax);

}  // namespace norms
}  // namespace aniso
