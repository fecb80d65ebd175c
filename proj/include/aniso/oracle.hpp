#pragma once

#include <Eigen/Dense>
#include <functional>

#include "aniso/types.hpp"

namespace aniso {

struct DiagonalCouple;  // interpolation.hpp

namespace oracle {

/// Closed-form test function on (0,T): c*t^gamma, c*exp(lambda*t),
/// c*sin(k*t + phase) or c*exp(-a*(t-center)^2).
struct ClosedForm {
    enum class Kind { monomial, exponential, trig, gaussian };
    Kind kind;
    double coeff = 1.0;
    double gamma = 0.0;   // monomial exponent
    double lambda = 0.0;  // exponential rate (<= 0 supported in closed form)
    double k = 1.0;       // trig frequency
    double phase = 0.0;
    double a = 1.0;       // gaussian decay
    double center = 0.0;  // gaussian center

    static ClosedForm monomial(double c, double gamma);
    static ClosedForm exponential(double c, double lambda);
    static ClosedForm trig(double c, double k, double phase = 0.0);
    static ClosedForm gaussian(double c, double a, double center);

    double eval(double t) const;
    /// L_{p,mu} membership on (0,T): only the monomial exponent can break it.
    bool admissible(const WeightParams& wp) const;
};

/// Closed-form |cf|_{L_{p,mu}(0,T)} via elementary antiderivatives and the
/// incomplete gamma function. Throws for non-integrable or unsupported
/// parameter combinations (trig/gaussian are only available for p=2, mu=1).
double exact_weighted_lp(const ClosedForm& cf, const WeightParams& wp, double T);

struct QuadratureLadder {
    double value = 0.0;         // finest-level value
    double extrapolated = 0.0;  // Richardson extrapolation
    double rate = 0.0;          // observed convergence rate
    bool monotone = true;       // refinement differences shrink monotonically
};

/// Integrate f over (0,T) on dyadically refined graded grids and Richardson
/// extrapolate. `levels >= 3`; base resolution doubles per level.
QuadratureLadder dense_quadrature(const std::function<double(double)>& f,
                                  double T, int levels, int base_n = 64);

struct KBruteResult {
    double value = 0.0;
    double residual = 0.0;  // first-order optimality residual (certificate)
};

/// Brute-force K(t,u) = inf_{u=a+b} |a|_X + t|b|_Y for a diagonal couple,
/// by interior fixed-point iteration plus gradient polish; independent of
/// the interpolation module's evaluators.
KBruteResult brute_force_k(const Eigen::VectorXd& u, const DiagonalCouple& couple,
                           double t);

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
double gamma_p(double s, double x);

}  // namespace oracle
}  // namespace aniso
