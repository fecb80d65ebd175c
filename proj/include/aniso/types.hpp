#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace aniso {

/// Error thrown when parameters hit one of the limit exponents
/// s = k + 1 - mu + 1/p, which the theory excludes.
struct LimitExponentError : std::invalid_argument {
    explicit LimitExponentError(const std::string& what)
        : std::invalid_argument(what) {}
};

/// The pair (p, mu) governing the temporal weight t^{p(1-mu)}.
/// Requires 1 < p < inf and 1/p < mu <= 1.
struct WeightParams {
    double p;
    double mu;

    WeightParams(double p_, double mu_) : p(p_), mu(mu_) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("WeightParams: need 1 < p < inf");
        if (!(mu > 1.0 / p) || !(mu <= 1.0))
            throw std::invalid_argument("WeightParams: need 1/p < mu <= 1");
    }

    /// Weight exponent p(1-mu) >= 0.
    double weight_exponent() const { return p * (1.0 - mu); }

    /// The limit number 1 - mu + 1/p in [1/p, 1); traces at t=0 exist
    /// only above it.
    double trace_limit() const { return 1.0 - mu + 1.0 / p; }
};

/// Time interval: (0,T) or the half-line truncated at T_trunc.
struct TimeDomain {
    enum class Kind { finite, half_line };
    Kind kind;
    double T;  // interval length, or the numerical truncation point

    static TimeDomain finite(double T) {
        if (!(T > 0.0)) throw std::invalid_argument("TimeDomain: T > 0 required");
        return {Kind::finite, T};
    }
    static TimeDomain half_line(double T_trunc) {
        if (!(T_trunc > 0.0))
            throw std::invalid_argument("TimeDomain: T_trunc > 0 required");
        return {Kind::half_line, T_trunc};
    }
    bool truncated() const { return kind == Kind::half_line; }
};

/// Nonnegative order s split as s = [s] + s_* with s_* in [0,1).
struct FractionalOrder {
    double s;

    explicit FractionalOrder(double s_) : s(s_) {
        if (!(s >= 0.0) || !std::isfinite(s))
            throw std::invalid_argument("FractionalOrder: s >= 0 required");
    }
    int integer_part() const { return static_cast<int>(std::floor(s + 1e-12)); }
    double fractional_part() const { return s - integer_part(); }
    bool is_integer() const { return fractional_part() < 1e-12; }
};

/// A computed norm with resolution/error metadata and named summands.
struct NormResult {
    double value = 0.0;
    int resolution = 0;
    double est_error = 0.0;
    std::map<std::string, double> components;
};

}  // namespace aniso
