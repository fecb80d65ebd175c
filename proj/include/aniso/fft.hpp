#pragma once

#include <unsupported/Eigen/FFT>

#include <complex>
#include <vector>

namespace aniso {

using cplx = std::complex<double>;

/// Forward DFT, normalized so that coefficients are Fourier-series
/// coefficients: u(t) = sum_k c_k exp(i xi_k t).
inline Eigen::VectorXcd fft_forward(const Eigen::VectorXcd& u) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out(u.size());
    fft.fwd(out, u);
    return out / double(u.size());
}

inline Eigen::VectorXcd fft_inverse(const Eigen::VectorXcd& c) {
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out(c.size());
    Eigen::VectorXcd scaled = c * double(c.size());
    fft.inv(out, scaled);
    return out;
}

/// Angular frequency of DFT bin k on a torus of period P.
inline double fft_xi(int k, int n, double period) {
    int kk = (k <= n / 2) ? k : k - n;
    return 2.0 * M_PI * kk / period;
}

}  // namespace aniso
