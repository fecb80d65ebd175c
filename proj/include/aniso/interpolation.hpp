#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aniso/grid.hpp"
#include "aniso/report.hpp"
#include "aniso/types.hpp"

namespace aniso {

/// A compatible couple (X, Y) diagonalized by a shared spectral basis:
/// |u|_X = (sum_i (w0_i u_i)^2)^{1/2} and likewise for Y.
struct DiagonalCouple {
    Eigen::VectorXd weights0;
    Eigen::VectorXd weights1;

    DiagonalCouple(Eigen::VectorXd w0, Eigen::VectorXd w1);
    int size() const { return static_cast<int>(weights0.size()); }
    double norm0(const Eigen::VectorXd& u) const {
        return (weights0.array() * u.array()).matrix().norm();
    }
    double norm1(const Eigen::VectorXd& u) const {
        return (weights1.array() * u.array()).matrix().norm();
    }
};

enum class KMode { quadratic_exact, coordinate_descent };

/// K2(t,u) = inf (|a|_X^2 + t^2 |b|_Y^2)^{1/2}, closed form mode-wise, or a
/// coordinate-descent approximation of K(t,u) = inf |a|_X + t |b|_Y.
/// Always K2 <= K <= sqrt(2) K2.
double k_functional(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                    double t, KMode mode);

struct RealInterpOptions {
    int n_t = 160;           // log-spaced quadrature points in t
    double t_min = 1e-6;
    double t_max = 1e6;
    KMode mode = KMode::quadratic_exact;
};

/// (integral_0^inf (t^{-theta} K(t,u))^p dt/t)^{1/p} with analytic tails
/// K ~ t |u|_Y near 0 and K ~ |u|_X near infinity.
NormResult real_interp_norm(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                            double theta, double p,
                            const RealInterpOptions& opts = {});

struct InterpIdentityOptions {
    int grid_n = 256;     // base resolution of the time grids
    int torus_factor = 4; // spectral torus size = torus_factor * grid_n
};

/// Checks the real-interpolation identity (H^{s1}, H^{s2})_{theta,p} = W^s,
/// s = (1-theta)s1 + theta s2, as a two-sided ratio bracket over an ensemble.
/// For mu < 1 the K-functional is measured on Phi_mu-transformed data.
VerificationReport check_interp_identity(const std::vector<SampledFunction>& ensemble,
                                         const WeightParams& wp, double s1,
                                         double s2, double theta,
                                         const InterpIdentityOptions& opts = {});

}  // namespace aniso
