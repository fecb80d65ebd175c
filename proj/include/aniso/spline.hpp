#pragma once

#include <Eigen/Dense>

namespace aniso {

/// Natural cubic spline through (x_i, y_i), x strictly increasing.
/// Evaluation outside [x_0, x_n] extrapolates with the boundary cubic.
class CubicSpline {
  public:
    CubicSpline() = default;
    CubicSpline(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

    double operator()(double t) const;
    double derivative(double t) const;

  private:
    Eigen::VectorXd x_, y_, m_;  // m_ = second derivatives at knots
    int locate(double t) const;
};

}  // namespace aniso
