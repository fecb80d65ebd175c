#include <doctest.h>

#include <cmath>

#include "aniso/interpolation.hpp"
#include "aniso/oracle.hpp"

using namespace aniso;

TEST_CASE("closed-form weighted norms of monomials") {
    // |c t^g|^p weighted by t^{p(1-mu)}: integral of c^p t^{pg + p(1-mu)}
    WeightParams wp(2.0, 1.0);
    auto cf = oracle::ClosedForm::monomial(1.0, 1.0);
    CHECK(oracle::exact_weighted_lp(cf, wp, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
    // with weight exponent p(1-mu) = 0.5: integral of t^{2*0.25+0.5} = t on (0,1)
    WeightParams wq(2.0, 0.75);
    auto cg = oracle::ClosedForm::monomial(1.0, 0.25);
    CHECK(oracle::exact_weighted_lp(cg, wq, 1.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    // non-integrable exponent is rejected
    auto bad = oracle::ClosedForm::monomial(1.0, -0.8);
    CHECK(!bad.admissible(wp));
    CHECK_THROWS(oracle::exact_weighted_lp(bad, wp, 1.0));
}

TEST_CASE("closed-form weighted norm of a decaying exponential") {
    WeightParams wp(2.0, 1.0);
    auto cf = oracle::ClosedForm::exponential(1.0, -1.0);
    const double T = 5.0;
    const double expect = std::sqrt((1.0 - std::exp(-2.0 * T)) / 2.0);
    CHECK(oracle::exact_weighted_lp(cf, wp, T) ==
          doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("dense quadrature converges at the expected rates") {
    // polynomial: midpoint ladder is essentially exact after extrapolation
    auto poly = oracle::dense_quadrature(
        [](double t) { return 3.0 * t * t - t + 0.25; }, 1.0, 4);
    CHECK(poly.extrapolated == doctest::Approx(0.75).epsilon(1e-6));
    // sqrt singularity: graded grid restores a rate well above first order
    auto rt = oracle::dense_quadrature([](double t) { return std::sqrt(t); },
                                       1.0, 5);
    CHECK(rt.extrapolated == doctest::Approx(2.0 / 3.0).epsilon(1e-5));
    CHECK(rt.rate > 1.5);
    // jump discontinuity: first order at best
    auto jump = oracle::dense_quadrature(
        [](double t) { return t < 0.5 ? 1.0 : 0.0; }, 1.0, 5);
    CHECK(jump.extrapolated == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(jump.rate < 1.4);
}

TEST_CASE("brute-force K functional matches min(1,t) for identical norms") {
    const int n = 6;
    Eigen::VectorXd u(n);
    u << 1.0, -2.0, 0.5, 3.0, -1.0, 0.25;
    DiagonalCouple c(Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n));
    for (double t : {0.1, 0.7, 1.0, 2.5}) {
        auto r = oracle::brute_force_k(u, c, t);
        CHECK(r.value == doctest::Approx(std::min(1.0, t) * u.norm()).epsilon(1e-8));
        CHECK(r.residual < 1e-6);
    }
}

TEST_CASE("brute-force K functional single mode closed form") {
    // K(t) = min over split of |a| w0 + t |b| w1 with u = a + b scalar:
    // the optimum puts everything on the cheaper side
    Eigen::VectorXd u(1);
    u << 2.0;
    Eigen::VectorXd w0(1), w1(1);
    w0 << 1.0;
    w1 << 4.0;
    DiagonalCouple c(w0, w1);
    auto r = oracle::brute_force_k(u, c, 0.1);  // t*w1 = 0.4 < w0
    CHECK(r.value == doctest::Approx(0.8).epsilon(1e-8));
    auto r2 = oracle::brute_force_k(u, c, 10.0);  // w0 = 1 cheaper
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("brute-force K agrees with the quadratic bracket") {
    Eigen::VectorXd u(4), w0(4), w1(4);
    u << 1.0, 0.5, -0.25, 2.0;
    w0 << 1.0, 2.0, 0.5, 1.5;
    w1 << 3.0, 0.7, 2.0, 0.1;
    DiagonalCouple c(w0, w1);
    for (double t : {0.3, 1.0, 4.0}) {
        const double k2 = k_functional(u, c, t, KMode::quadratic_exact);
        auto r = oracle::brute_force_k(u, c, t);
        CHECK(r.value >= k2 * (1.0 - 1e-9));
        CHECK(r.value <= std::sqrt(2.0) * k2 * (1.0 + 1e-9));
    }
}

TEST_CASE("regularized incomplete gamma endpoints") {
    CHECK(oracle::gamma_p(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(oracle::gamma_p(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(oracle::gamma_p(0.5, 50.0) == doctest::Approx(1.0).epsilon(1e-10));
}
