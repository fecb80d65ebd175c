#include "aniso/spline.hpp"

#include <stdexcept>

namespace aniso {

CubicSpline::CubicSpline(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
    : x_(x), y_(y) {
    const int n = static_cast<int>(x.size());
    if (n < 3 || y.size() != n)
        throw std::invalid_argument("CubicSpline: need >= 3 matching points");
    for (int i = 1; i < n; ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("CubicSpline: x must be strictly increasing");

    // Tridiagonal system for the second derivatives, natural BCs.
    m_ = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd a(n), b(n), c(n), r(n);
    a[0] = 0; b[0] = 1; c[0] = 0; r[0] = 0;
    for (int i = 1; i < n - 1; ++i) {
        double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        a[i] = h0 / 6.0;
        b[i] = (h0 + h1) / 3.0;
        c[i] = h1 / 6.0;
        r[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    a[n - 1] = 0; b[n - 1] = 1; c[n - 1] = 0; r[n - 1] = 0;

    // Thomas algorithm.
    for (int i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        r[i] -= w * r[i - 1];
    }
    m_[n - 1] = r[n - 1] / b[n - 1];
    for (int i = n - 2; i >= 0; --i) m_[i] = (r[i] - c[i] * m_[i + 1]) / b[i];
}

int CubicSpline::locate(double t) const {
    const int n = static_cast<int>(x_.size());
    if (t <= x_[1]) return 0;
    if (t >= x_[n - 2]) return n - 2;
    int lo = 1, hi = n - 2;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (x_[mid] <= t ? lo : hi) = mid;
    }
    return lo;
}

double CubicSpline::operator()(double t) const {
    int i = locate(t);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    return A * y_[i] + B * y_[i + 1] +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double t) const {
    int i = locate(t);
    double h = x_[i + 1] - x_[i];
    double A = (x_[i + 1] - t) / h, B = (t - x_[i]) / h;
    return (y_[i + 1] - y_[i]) / h +
           ((3 * B * B - 1) * m_[i + 1] - (3 * A * A - 1) * m_[i]) * h / 6.0;
}

}  // namespace aniso
