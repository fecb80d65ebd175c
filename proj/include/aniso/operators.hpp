#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "aniso/grid.hpp"
#include "aniso/types.hpp"

namespace aniso {

/// Spectral fractional operator: (shift -/+ d/dt)^order in time or
/// (shift - Laplacian)^order in space, realized as a Fourier multiplier.
struct FractionalOperatorSpec {
    enum class Kind { time_deriv_minus, time_deriv_plus, laplacian };
    Kind kind;
    double order;
    double shift = 1.0;

    FractionalOperatorSpec(Kind k, double order_, double shift_ = 1.0);
};

/// L = (shift' -/+ d/dt)^alpha + (shift - Laplacian)^{beta/2}.
struct SumOperatorSpec {
    FractionalOperatorSpec time;
    FractionalOperatorSpec space;

    SumOperatorSpec(FractionalOperatorSpec t, FractionalOperatorSpec x);
};

/// Tangential-periodic field on a half space: time x (x', y) with y the
/// non-periodic normal direction sampled on uniform layers
/// y_l = (l + 1/2) * hy.
struct HalfSpaceField {
    Grid1D tgrid;
    SpatialGrid xgrid;  // tangential directions (dims 1; use n1=1 for none)
    double hy = 0.0;
    std::vector<Eigen::MatrixXd> layers;  // layers[l] is tgrid.size() x xgrid.total()

    int ny() const { return static_cast<int>(layers.size()); }
    double y(int l) const { return (l + 0.5) * hy; }
};

namespace ops {

/// Multiplication by t^{1-mu} (forward) or t^{-(1-mu)} (inverse).
SampledFunction phi_mu(const SampledFunction& u, const WeightParams& wp,
                       bool forward);

/// T-uniform extension of a vanishing-trace function from (0,T) to (0,2T):
/// 3 (psi^{1-mu} u)(2T-t) on [T,2T] minus 2 (psi^{1-mu} u)(3T-2t) on
/// [T,3T/2], with psi(tau) = (2T tau - tau^2)/T^2; zero past 2T.
SampledFunction extend_zero(const SampledFunction& u, const WeightParams& wp);

/// Order-k reflection extension past T with a smooth cutoff supported in
/// (0, T + T/(2k+2)); the result is reported on (0, 2T) as the truncated
/// half-line. Restriction to the original nodes is exact.
SampledFunction extend_general(const SampledFunction& u, int k);

/// Order-k reflection of half-torus samples (given at y=(j+1/2)h,
/// j=0..N-1) across y=0 onto the full torus of 2N points.
Eigen::VectorXd extend_spatial(const Eigen::VectorXd& half, int k);

/// Left translation (Lambda_{t0} u)(tau) = u(tau + t0), zero past T.
SampledFunction translate(const SampledFunction& u, double t0);

/// Smooth compactly supported periodization of u for spectral work:
/// order-k reflections across 0 and T, C^inf cutoff equal to 1 on (0,T),
/// zero-padding to a torus of period 4T on [-T, 3T).
struct Periodized {
    Eigen::MatrixXcd values;  // N x d samples on the torus
    double period = 0.0;
    double t_left = 0.0;  // physical time of sample 0
    int N = 0;

    double t_of(int j) const { return t_left + j * period / N; }
};
Periodized periodize(const SampledFunction& u, int k = 3, int N = 0);

/// Multiplier symbol at angular frequency xi (time kinds) or |xi|^2 (pass
/// xi2 = |xi|^2 for the laplacian kind).
std::complex<double> multiplier_symbol(const FractionalOperatorSpec& spec,
                                       double xi);

/// Apply the multiplier mode-wise on samples over a torus of the given
/// period. Exposed for eigenrelation tests.
Eigen::VectorXcd apply_multiplier_periodic(const Eigen::VectorXcd& vals,
                                           double period,
                                           const FractionalOperatorSpec& spec);

struct FractionalApplyOptions {
    int reflection_order = 3;
    int torus_n = 0;  // 0 = automatic
};

/// (shift -/+ d/dt)^order u via periodization + Fourier multiplier,
/// resampled on the original grid.
SampledFunction fractional_apply(const SampledFunction& u,
                                 const FractionalOperatorSpec& spec,
                                 const FractionalApplyOptions& opts = {});

/// Apply f(xi1, xi2) mode-wise to each row of `rows` (flattened spatial
/// slices over `g`); returns the real part.
Eigen::MatrixXd apply_spatial_multiplier(
    const Eigen::MatrixXd& rows, const SpatialGrid& g,
    const std::function<std::complex<double>(double, double)>& f);

/// Mode-wise i*xi_axis multiplication.
SpaceTimeField spatial_derivative(const SpaceTimeField& u, int axis);

/// Temporal trace u(0) from the integral representation
/// u(0) = (2-mu) ( sigma^{-(2-mu)} I1(sigma) - (2-mu) I2(sigma) ),
/// evaluated in closed form on the piecewise-linear interpolant of u;
/// exact for affine u.
Eigen::VectorXd trace_t0(const SampledFunction& u, const WeightParams& wp,
                         double sigma);

/// Semigroup orbit S u0 (t) = e^{-t (1-Laplacian)^m} u0, spectral.
SpaceTimeField trace_rightinverse_S(const Eigen::VectorXd& u0,
                                    const SpatialGrid& xgrid, int m,
                                    const Grid1D& tgrid);

/// Quadratic extrapolation of the first three y-layers to y=0.
SpaceTimeField trace_y0(const HalfSpaceField& u);

/// e^{-y L^{1/2m}} g for L = 1 - d/dt + (-Laplacian_{x'})^m, acting on the
/// band-limited coefficients ghat (DFT layout, time period t_period,
/// tangential grid xgrid); sampled on tgrid nodes and ny uniform y-layers
/// of spacing hy.
HalfSpaceField trace_y0_rightinverse(const Eigen::MatrixXcd& ghat,
                                     double t_period, const SpatialGrid& xgrid,
                                     int m, const Grid1D& tgrid, int ny,
                                     double hy);

/// Hestenes reflection coefficients: sum_j c_j (-j)^i = 1 for i = 0..k.
Eigen::VectorXd reflection_coefficients(int k);

}  // namespace ops
}  // namespace aniso
