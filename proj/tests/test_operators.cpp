#include <doctest.h>

#include <cmath>
#include <complex>

#include "aniso/fft.hpp"
#include "aniso/norms.hpp"
#include "aniso/operators.hpp"

using namespace aniso;
using cd = std::complex<double>;

TEST_CASE("phi transform is an exact isometry onto the unweighted space") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    for (auto [p, mu] : {std::pair{2.0, 0.75}, {3.0, 0.9}, {2.0, 1.0}}) {
        WeightParams wp(p, mu);
        WeightParams flat(p, 1.0);
        SampledFunction u = sample_scalar(
            [](double t) { return std::cos(3.0 * t) + 0.5 * t; }, g);
        SampledFunction v = ops::phi_mu(u, wp, true);
        CHECK(norms::weighted_lp_norm(v, flat).value ==
              doctest::Approx(norms::weighted_lp_norm(u, wp).value).epsilon(1e-13));
        SampledFunction w = ops::phi_mu(v, wp, false);
        for (int i = 0; i < g.size(); ++i)
            CHECK(w.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-13));
    }
}

TEST_CASE("zero extension is node-exact, continuous at T, and vanishes past 2T") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    WeightParams wp(2.0, 0.8);
    SampledFunction u = sample_scalar(
        [](double t) { return t * std::sin(2.0 * t + 0.3); }, g);
    SampledFunction e = ops::extend_zero(u, wp);
    REQUIRE(e.grid.T() == doctest::Approx(2.0));
    // restriction to the original nodes is exact
    for (int i = 0; i < g.size(); ++i) {
        CHECK(e.grid.nodes[i] == doctest::Approx(g.nodes[i]).epsilon(1e-14));
        CHECK(e.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-14));
    }
    // continuity across T: adjacent samples on both sides stay close
    const int n = g.size();
    CHECK(std::abs(e.values(n, 0) - e.values(n - 1, 0)) < 0.05);
    // zero at the far end
    CHECK(std::abs(e.values(e.grid.size() - 1, 0)) < 1e-4);
}

TEST_CASE("general extension preserves the original samples and has bounded support") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    const int k = 2;
    SampledFunction u =
        sample_scalar([](double t) { return 1.0 + t * t - 0.3 * t; }, g);
    SampledFunction e = ops::extend_general(u, k);
    for (int i = 0; i < g.size(); ++i)
        CHECK(e.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-14));
    // support is contained in (0, T + T/(2k+2))
    const double support_end = 1.0 + 1.0 / (2.0 * k + 2.0);
    for (int i = 0; i < e.grid.size(); ++i)
        if (e.grid.nodes[i] > support_end)
            CHECK(e.values(i, 0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("spatial reflection of order one is the even mirror") {
    Eigen::VectorXd half(16);
    for (int j = 0; j < 16; ++j) half[j] = std::sin(0.3 * j) + j;
    Eigen::VectorXd full = ops::extend_spatial(half, 1);
    REQUIRE(full.size() == 32);
    for (int j = 0; j < 16; ++j) {
        CHECK(full[j] == doctest::Approx(half[j]));
        CHECK(full[31 - j] == doctest::Approx(half[j]));
    }
    // constants are preserved by every order
    Eigen::VectorXd c = Eigen::VectorXd::Constant(16, 2.5);
    for (int k : {1, 2, 3}) {
        Eigen::VectorXd e = ops::extend_spatial(c, k);
        for (int j = 0; j < e.size(); ++j)
            CHECK(e[j] == doctest::Approx(2.5).epsilon(1e-10));
    }
}

TEST_CASE("translation against closed forms and the contraction property") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 512);
    WeightParams wp(2.0, 1.0);
    SampledFunction u = sample_scalar([](double t) { return t; }, g);
    SampledFunction v = ops::translate(u, 0.5);
    // v(tau) = tau + 1/2 on (0, 1/2), zero after; squared norm 7/24
    CHECK(norms::weighted_lp_norm(v, wp).value ==
          doctest::Approx(std::sqrt(7.0 / 24.0)).epsilon(0.02));
    CHECK(norms::weighted_lp_norm(v, wp).value <=
          norms::weighted_lp_norm(u, wp).value);
    // contraction also against a decaying weight
    WeightParams wq(2.0, 0.75);
    CHECK(norms::weighted_lp_norm(v, wq).value <=
          norms::weighted_lp_norm(u, wq).value * (1.0 + 1e-12));
    // zero shift is the identity
    SampledFunction w = ops::translate(u, 0.0);
    for (int i = 0; i < g.size(); ++i)
        CHECK(w.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-12));
}

TEST_CASE("translation difference quotient approximates the derivative") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 512);
    SampledFunction u = sample_scalar([](double t) { return std::sin(t); }, g);
    const double h = 1e-3;
    SampledFunction v = ops::translate(u, h);
    for (int i = 0; i < g.size(); ++i) {
        const double t = g.nodes[i];
        if (t > 0.9) break;  // truncation region
        CHECK((v.values(i, 0) - u.values(i, 0)) / h ==
              doctest::Approx(std::cos(t)).epsilon(5e-3));
    }
}

TEST_CASE("reflection coefficients reproduce polynomials") {
    Eigen::VectorXd c1 = ops::reflection_coefficients(1);
    REQUIRE(c1.size() == 2);
    CHECK(c1[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c1[1] == doctest::Approx(-2.0).epsilon(1e-12));
    for (int k : {2, 3, 4}) {
        Eigen::VectorXd c = ops::reflection_coefficients(k);
        for (int i = 0; i <= k; ++i) {
            double s = 0.0;
            for (int j = 1; j <= k + 1; ++j)
                s += c[j - 1] * std::pow(-double(j), i);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("multiplier symbols at reference frequencies") {
    using K = FractionalOperatorSpec::Kind;
    FractionalOperatorSpec d1(K::time_deriv_minus, 1.0);
    CHECK(ops::multiplier_symbol(d1, 0.0) == cd(1.0, 0.0));
    CHECK(std::abs(ops::multiplier_symbol(d1, 2.0) - cd(1.0, -2.0)) < 1e-14);
    FractionalOperatorSpec dp(K::time_deriv_plus, 1.0);
    CHECK(std::abs(ops::multiplier_symbol(dp, 2.0) - cd(1.0, 2.0)) < 1e-14);
    FractionalOperatorSpec lap(K::laplacian, 0.5);
    // laplacian kind receives |xi|^2
    CHECK(ops::multiplier_symbol(lap, 4.0).real() ==
          doctest::Approx(std::sqrt(5.0)).epsilon(1e-13));
    CHECK_THROWS_AS(FractionalOperatorSpec(K::time_deriv_minus, 2.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(FractionalOperatorSpec(K::laplacian, -1.0),
                    std::invalid_argument);
}

TEST_CASE("periodic multiplier eigenrelation and semigroup law are exact") {
    const int N = 64;
    const double period = 2.0 * M_PI;
    Eigen::VectorXcd mode(N);
    const int k = 5;
    for (int j = 0; j < N; ++j)
        mode[j] = std::exp(cd(0.0, k * j * period / N));
    using K = FractionalOperatorSpec::Kind;
    FractionalOperatorSpec spec(K::time_deriv_minus, 0.6);
    Eigen::VectorXcd out = ops::apply_multiplier_periodic(mode, period, spec);
    const cd sym = ops::multiplier_symbol(spec, double(k));
    for (int j = 0; j < N; ++j)
        CHECK(std::abs(out[j] - sym * mode[j]) < 1e-10);
    // semigroup law: order a then order b equals order a+b
    FractionalOperatorSpec a(K::time_deriv_minus, 0.45);
    FractionalOperatorSpec b(K::time_deriv_minus, 0.8);
    FractionalOperatorSpec ab(K::time_deriv_minus, 1.25);
    Eigen::VectorXcd u(N);
    for (int j = 0; j < N; ++j)
        u[j] = std::sin(3.0 * j * period / N) + 0.2 * std::cos(7.0 * j * period / N);
    Eigen::VectorXcd two = ops::apply_multiplier_periodic(
        ops::apply_multiplier_periodic(u, period, a), period, b);
    Eigen::VectorXcd one = ops::apply_multiplier_periodic(u, period, ab);
    for (int j = 0; j < N; ++j) CHECK(std::abs(two[j] - one[j]) < 1e-10);
}

TEST_CASE("fractional application at order zero is the identity") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 256);
    SampledFunction u = sample_scalar(
        [](double t) { return std::exp(-t) * std::sin(4.0 * t); }, g);
    FractionalOperatorSpec id(FractionalOperatorSpec::Kind::time_deriv_minus, 0.0);
    SampledFunction v = ops::fractional_apply(u, id);
    for (int i = 0; i < g.size(); ++i)
        CHECK(std::abs(v.values(i, 0) - u.values(i, 0)) < 1e-4);
}

TEST_CASE("first-order fractional derivative matches the classical one") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 256);
    SampledFunction u = sample_scalar([](double t) { return std::sin(t); }, g);
    FractionalOperatorSpec d1(FractionalOperatorSpec::Kind::time_deriv_minus, 1.0);
    SampledFunction v = ops::fractional_apply(u, d1);
    // (1 - d/dt) sin = sin - cos away from the periodization boundary
    for (int i = 0; i < g.size(); ++i) {
        const double t = g.nodes[i];
        if (t < 0.05 || t > 0.95) continue;
        CHECK(std::abs(v.values(i, 0) - (std::sin(t) - std::cos(t))) < 5e-4);
    }
}

TEST_CASE("fractional application satisfies the semigroup law on samples") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 256);
    SampledFunction u = sample_scalar(
        [](double t) { return t * t * (1.0 - t) * std::sin(3.0 * t); }, g);
    using K = FractionalOperatorSpec::Kind;
    SampledFunction two = ops::fractional_apply(
        ops::fractional_apply(u, FractionalOperatorSpec(K::time_deriv_minus, 0.3)),
        FractionalOperatorSpec(K::time_deriv_minus, 0.4));
    SampledFunction one =
        ops::fractional_apply(u, FractionalOperatorSpec(K::time_deriv_minus, 0.7));
    double scale = 0.0, err = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        if (g.nodes[i] > 0.9) break;  // periodization boundary zone
        scale = std::max(scale, std::abs(one.values(i, 0)));
        err = std::max(err, std::abs(two.values(i, 0) - one.values(i, 0)));
    }
    CHECK(err < 0.02 * scale);
}

TEST_CASE("temporal trace formula is exact on affine data") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    WeightParams wp(2.0, 0.8);
    for (double sigma : {0.25, 0.5}) {
        SampledFunction c = sample_scalar([](double) { return 3.7; }, g);
        CHECK(ops::trace_t0(c, wp, sigma)[0] == doctest::Approx(3.7).epsilon(1e-12));
        SampledFunction aff =
            sample_scalar([](double t) { return 3.7 - 2.0 * t; }, g);
        CHECK(ops::trace_t0(aff, wp, sigma)[0] ==
              doctest::Approx(3.7).epsilon(1e-12));
    }
}

TEST_CASE("temporal trace converges on uniform grids and saturates on graded ones") {
    WeightParams wp(2.0, 1.0);
    auto err_at = [&](int n) {
        Grid1D g = make_graded_grid(TimeDomain::finite(1.0), n, Grading::uniform());
        SampledFunction u = sample_scalar(
            [](double t) { return std::exp(-3.0 * (t - 0.2) * (t - 0.2)); }, g);
        const double exact = std::exp(-3.0 * 0.04);
        return std::abs(ops::trace_t0(u, wp, 0.5)[0] - exact);
    };
    const double e1 = err_at(64), e2 = err_at(512);
    const double rate = std::log(e1 / e2) / std::log(8.0);
    CHECK(rate > 1.5);
    // the graded grid resolves the boundary so well that the error is
    // already at the extrapolation floor
    Grid1D g = default_grid(TimeDomain::finite(1.0), 64);
    SampledFunction u = sample_scalar(
        [](double t) { return std::exp(-3.0 * (t - 0.2) * (t - 0.2)); }, g);
    CHECK(std::abs(ops::trace_t0(u, wp, 0.5)[0] - std::exp(-3.0 * 0.04)) < 1e-6);
    // the representation is sigma-independent up to quadrature error
    CHECK(ops::trace_t0(u, wp, 0.25)[0] ==
          doctest::Approx(ops::trace_t0(u, wp, 0.5)[0]).epsilon(1e-6));
}

TEST_CASE("semigroup right inverse acts diagonally on spatial modes") {
    SpatialGrid xg;
    xg.dims = 1;
    xg.n1 = 16;
    xg.L = 1.0;
    Grid1D tg = default_grid(TimeDomain::finite(1.0), 32);
    const int k = 3, m = 2;
    Eigen::VectorXd u0(xg.n1);
    for (int j = 0; j < xg.n1; ++j) u0[j] = std::sin(k * xg.x1(j));
    SpaceTimeField f = ops::trace_rightinverse_S(u0, xg, m, tg);
    const double lam = std::pow(1.0 + k * k, m);
    for (int i = 0; i < tg.size(); ++i)
        for (int j = 0; j < xg.n1; ++j)
            CHECK(f.values(i, j) ==
                  doctest::Approx(std::exp(-tg.nodes[i] * lam) * u0[j])
                      .epsilon(1e-11));
}

TEST_CASE("normal trace extrapolation is exact on quadratics in y") {
    Grid1D tg = default_grid(TimeDomain::finite(1.0), 16);
    SpatialGrid xg;
    xg.dims = 1;
    xg.n1 = 4;
    xg.L = 1.0;
    HalfSpaceField f;
    f.tgrid = tg;
    f.xgrid = xg;
    f.hy = 0.1;
    f.layers.assign(3, Eigen::MatrixXd::Zero(tg.size(), xg.n1));
    for (int l = 0; l < 3; ++l) {
        const double y = f.y(l);
        f.layers[l].setConstant(2.0 - 0.7 * y + 1.3 * y * y);
    }
    SpaceTimeField tr = ops::trace_y0(f);
    for (int i = 0; i < tg.size(); ++i)
        for (int j = 0; j < xg.n1; ++j)
            CHECK(tr.values(i, j) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("normal right inverse decays like the principal root") {
    SpatialGrid xg;
    xg.dims = 1;
    xg.n1 = 4;
    xg.L = 1.0;
    Grid1D tg = default_grid(TimeDomain::finite(1.0), 16);
    // single constant mode: lambda = 1, so the field is exp(-y)
    Eigen::MatrixXcd ghat = Eigen::MatrixXcd::Zero(8, xg.n1);
    ghat(0, 0) = 1.0;
    HalfSpaceField f = ops::trace_y0_rightinverse(ghat, 4.0, xg, 1, tg, 5, 0.2);
    for (int l = 0; l < 5; ++l)
        CHECK(f.layers[l](0, 0) ==
              doctest::Approx(std::exp(-f.y(l))).epsilon(1e-12));
    // trace recovery through thin layers
    HalfSpaceField thin = ops::trace_y0_rightinverse(ghat, 4.0, xg, 1, tg, 3, 1e-4);
    SpaceTimeField tr = ops::trace_y0(thin);
    CHECK(tr.values(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("normal right inverse matches the trace for oscillatory data") {
    SpatialGrid xg;
    xg.dims = 1;
    xg.n1 = 8;
    xg.L = 1.0;
    Grid1D tg = default_grid(TimeDomain::finite(1.0), 32);
    const double t_period = 4.0;
    Eigen::MatrixXcd ghat = Eigen::MatrixXcd::Zero(8, xg.n1);
    ghat(1, 2) = cd(0.3, -0.1);
    ghat(7, 6) = std::conj(ghat(1, 2));  // real field
    HalfSpaceField thin = ops::trace_y0_rightinverse(ghat, t_period, xg, 1, tg, 3, 1e-4);
    SpaceTimeField tr = ops::trace_y0(thin);
    for (int i = 0; i < tg.size(); ++i)
        for (int x = 0; x < xg.n1; ++x) {
            cd expect = 0.0;
            expect += ghat(1, 2) *
                      std::exp(cd(0.0, fft_xi(1, 8, t_period) * tg.nodes[i] +
                                           xg.xi1(2) * xg.x1(x)));
            expect += ghat(7, 6) *
                      std::exp(cd(0.0, fft_xi(7, 8, t_period) * tg.nodes[i] +
                                           xg.xi1(6) * xg.x1(x)));
            CHECK(tr.values(i, x) == doctest::Approx(expect.real()).epsilon(1e-6));
        }
}
