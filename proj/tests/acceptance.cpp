#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "aniso/fft.hpp"
#include "aniso/interpolation.hpp"
#include "aniso/norms.hpp"
#include "aniso/operators.hpp"
#include "aniso/oracle.hpp"
#include "aniso/verify.hpp"

using namespace aniso;

// End-to-end checks of the library's headline guarantees, one test case per
// guarantee. Tolerances are pinned; none of these should drift under
// refactoring.

TEST_CASE("1: sharp boundary inequality holds with the optimal constant") {
    verify::SuiteOptions opts;
    opts.n = 256;
    opts.ensemble_size = 16;
    for (auto [p, mu] : {std::pair{2.0, 1.0}, {2.0, 0.75}}) {
        WeightParams wp(p, mu);
        auto rep = verify::run_hardy_suite(wp, 1.0, opts);
        CHECK(rep.verdict == Verdict::pass);
        CHECK(rep.worst_ratio <= 1.02);
        CHECK(rep.refinement_drift < 0.10);
    }
    // the closed-form instance is reproduced to machine precision, far inside
    // the 1e-3 acceptance band
    WeightParams w2(2.0, 1.0);
    auto rep = verify::run_hardy_suite(w2, 1.0, opts);
    bool found = false;
    for (const auto& inst : rep.instances)
        if (inst.params.count("closed_form")) {
            found = true;
            CHECK(std::abs(inst.lhs - 2.0) < 1e-3);
            CHECK(std::abs(inst.rhs - 4.0) < 1e-3);
        }
    REQUIRE(found);
}

TEST_CASE("2: the weight transform is an isometry to machine precision") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 256);
    for (auto [p, mu] : {std::pair{2.0, 1.0}, {2.0, 0.75}, {4.0, 0.8}}) {
        WeightParams wp(p, mu);
        WeightParams flat(p, 1.0);
        SampledFunction u = sample_scalar(
            [](double t) { return std::exp(-t) * std::sin(5.0 * t) + 0.2; }, g);
        SampledFunction v = ops::phi_mu(u, wp, true);
        const double a = norms::weighted_lp_norm(u, wp).value;
        const double b = norms::weighted_lp_norm(v, flat).value;
        CHECK(std::abs(a - b) <= 1e-10 * a);
        SampledFunction w = ops::phi_mu(v, wp, false);
        double err = 0.0;
        for (int i = 0; i < g.size(); ++i)
            err = std::max(err, std::abs(w.values(i, 0) - u.values(i, 0)));
        CHECK(err <= 1e-10);
    }
}

TEST_CASE("3: extensions restrict exactly and are uniform in the interval length") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    WeightParams wp(2.0, 0.8);
    SampledFunction u =
        sample_scalar([](double t) { return t * std::sin(3.0 * t); }, g);
    SampledFunction e0 = ops::extend_zero(u, wp);
    SampledFunction eg = ops::extend_general(u, 2);
    for (int i = 0; i < g.size(); ++i) {
        CHECK(e0.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-13));
        CHECK(eg.values(i, 0) == doctest::Approx(u.values(i, 0)).epsilon(1e-13));
    }
    verify::SuiteOptions opts;
    opts.n = 128;
    auto rep = verify::run_T_uniformity_sweep("extend0", {0.1, 1.0, 10.0}, opts);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.extra.at("variation") < 2.0);
}

TEST_CASE("4: the integral trace formula is exact on affine data and convergent") {
    Grid1D g = default_grid(TimeDomain::finite(1.0), 128);
    WeightParams wp(2.0, 0.75);
    SampledFunction aff =
        sample_scalar([](double t) { return 2.5 - 1.25 * t; }, g);
    for (double sigma : {0.25, 0.5}) {
        const double tr = ops::trace_t0(aff, wp, sigma)[0];
        CHECK(std::abs(tr - 2.5) <= 1e-12);
    }
    auto err_at = [&](int n) {
        Grid1D gg = make_graded_grid(TimeDomain::finite(1.0), n, Grading::uniform());
        SampledFunction u = sample_scalar(
            [](double t) { return std::exp(-4.0 * (t - 0.3) * (t - 0.3)); }, gg);
        return std::abs(ops::trace_t0(u, wp, 0.5)[0] - std::exp(-4.0 * 0.09));
    };
    const double rate = std::log(err_at(64) / err_at(512)) / std::log(8.0);
    CHECK(rate >= 0.9);
}

TEST_CASE("5: both right inverses reproduce their boundary data") {
    // temporal: the semigroup orbit of u0 has trace u0
    SpatialGrid xg;
    xg.dims = 1;
    xg.n1 = 16;
    xg.L = 1.0;
    Grid1D tg = default_grid(TimeDomain::finite(1.0), 128);
    Eigen::VectorXd u0(xg.n1);
    for (int j = 0; j < xg.n1; ++j)
        u0[j] = std::sin(xg.x1(j)) + 0.5 * std::cos(2.0 * xg.x1(j));
    SpaceTimeField orbit = ops::trace_rightinverse_S(u0, xg, 1, tg);
    WeightParams wp(2.0, 1.0);
    SampledFunction slice;
    slice.grid = tg;
    slice.values = orbit.values;
    Eigen::VectorXd tr = ops::trace_t0(slice, wp, 0.5);
    for (int j = 0; j < xg.n1; ++j) CHECK(std::abs(tr[j] - u0[j]) <= 1e-6);

    // spatial: extrapolating the layered field recovers the boundary data
    Eigen::MatrixXcd ghat = Eigen::MatrixXcd::Zero(8, xg.n1);
    ghat(1, 2) = std::complex<double>(0.4, 0.2);
    ghat(7, 14) = std::conj(ghat(1, 2));  // real boundary data
    HalfSpaceField f = ops::trace_y0_rightinverse(ghat, 4.0, xg, 1, tg, 3, 1e-4);
    SpaceTimeField g0 = ops::trace_y0(f);
    for (int i = 0; i < tg.size(); ++i)
        for (int x = 0; x < xg.n1; ++x) {
            std::complex<double> expect =
                ghat(1, 2) * std::exp(std::complex<double>(
                                 0.0, fft_xi(1, 8, 4.0) * tg.nodes[i] +
                                          xg.xi1(2) * xg.x1(x)));
            expect += std::conj(expect);
            CHECK(std::abs(g0.values(i, x) - expect.real()) <= 2e-6);
        }
}

TEST_CASE("6: fractional derivatives compose and match the classical norm") {
    const int N = 128;
    const double period = 2.0 * M_PI;
    using K = FractionalOperatorSpec::Kind;
    Eigen::VectorXcd u(N);
    for (int j = 0; j < N; ++j)
        u[j] = std::sin(2.0 * j * period / N) + 0.3 * std::cos(5.0 * j * period / N);
    for (auto [a, b] : {std::pair{0.3, 0.5}, {0.7, 0.9}, {0.25, 1.0}}) {
        Eigen::VectorXcd two = ops::apply_multiplier_periodic(
            ops::apply_multiplier_periodic(u, period,
                                           FractionalOperatorSpec(K::time_deriv_minus, a)),
            period, FractionalOperatorSpec(K::time_deriv_minus, b));
        Eigen::VectorXcd one = ops::apply_multiplier_periodic(
            u, period, FractionalOperatorSpec(K::time_deriv_minus, a + b));
        for (int j = 0; j < N; ++j) CHECK(std::abs(two[j] - one[j]) <= 1e-10);
    }
    // spectral first-order norm vs the classical Sobolev norm, for data
    // vanishing at both endpoints (no boundary cross term)
    Grid1D g = default_grid(TimeDomain::finite(1.0), 256);
    WeightParams wp(2.0, 1.0);
    SampledFunction v = sample_scalar(
        [](double t) { return t * t * (1.0 - t) * (1.0 - t) * std::sin(4.0 * t); }, g);
    const double h1 = norms::fractional_norm(v, SpaceSpec(SpaceSpec::Family::H, 1.0, wp)).value;
    const double w1 = norms::sobolev_k_norm(v, 1, wp).value;
    CHECK(std::abs(h1 / w1 - 1.0) <= 0.01);
}

TEST_CASE("7: real interpolation between spectral orders lands in the middle space") {
    Grid1D grid = default_grid(TimeDomain::finite(1.0), 128);
    WeightParams w1(2.0, 1.0);
    auto ens1 = verify::smooth_ensemble(grid, 8, 7);
    auto rep1 = check_interp_identity(ens1, w1, 0.0, 1.0, 0.5);
    rep1.finalize(3.0, 0.10);
    CHECK(rep1.verdict == Verdict::pass);
    CHECK(rep1.refinement_drift <= 0.10);

    WeightParams w2(2.0, 0.75);
    auto ens2 = verify::zero_trace_ensemble(grid, 8, 8, 1);
    auto rep2 = check_interp_identity(ens2, w2, 0.0, 1.0, 0.5);
    rep2.finalize(3.0, 0.10);
    CHECK(rep2.verdict == Verdict::pass);
    CHECK(rep2.refinement_drift <= 0.10);

    // the two K evaluators bracket each other as claimed
    Eigen::VectorXd u(4), a(4), b(4);
    u << 1.0, -0.5, 0.3, 2.0;
    a << 1.0, 2.0, 0.5, 1.0;
    b << 0.3, 4.0, 2.0, 0.7;
    DiagonalCouple c(a, b);
    for (double t : {0.2, 1.0, 5.0}) {
        const double k2 = k_functional(u, c, t, KMode::quadratic_exact);
        const double kcd = k_functional(u, c, t, KMode::coordinate_descent);
        CHECK(kcd >= k2 * (1.0 - 1e-12));
        CHECK(kcd <= std::sqrt(2.0) * k2 * (1.0 + 1e-12));
    }
}

TEST_CASE("8: mixed-derivative domination holds mode-wise and on sampled fields") {
    verify::SuiteOptions opts;
    opts.n = 128;
    opts.ensemble_size = 16;
    WeightParams wp(2.0, 1.0);
    verify::MixedDerivativeParams mp;
    mp.sigma = 0.5;
    auto rep = verify::run_mixed_derivative_suite(mp, wp, opts);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.refinement_drift <= 0.10);
    bool mode_wise = false;
    for (const auto& inst : rep.instances)
        if (inst.params.count("mode_wise")) {
            mode_wise = true;
            CHECK(inst.ratio <= 1.0);
        }
    REQUIRE(mode_wise);
}

TEST_CASE("9: trace space exponent formulas are exact arithmetic") {
    using V = verify::TraceQuery::Variant;
    verify::TraceQuery q;
    q.variant = V::temporal_alpha_scaled;
    q.p = 2.0;
    q.mu = 0.75;
    q.alpha = 1.0;
    q.r = 0.0;
    q.beta = 2.0;
    CHECK(verify::trace_space_order(q) == 0.5);
    q.mu = 1.0;
    CHECK(verify::trace_space_order(q) == 1.0);

    verify::TraceQuery sl;
    sl.variant = V::temporal_slope;
    sl.p = 2.0;
    sl.mu = 1.0;
    sl.s = 0.5;
    sl.r = 0.0;
    sl.beta = 2.0;
    CHECK(verify::trace_space_order(sl) == 2.0);

    verify::TraceQuery sp;
    sp.variant = V::spatial;
    sp.p = 2.0;
    sp.mu = 1.0;
    sp.s = 1.0;
    sp.m = 1;
    auto orders = verify::spatial_trace_orders(sp);
    CHECK(orders.first == 0.75);
    CHECK(orders.second == 1.5);
}

TEST_CASE("10: trace suites run to a stable verdict and reject limit exponents") {
    verify::SuiteOptions opts;
    opts.n = 128;
    opts.ensemble_size = 8;
    verify::TraceQuery tq;
    tq.variant = verify::TraceQuery::Variant::temporal_alpha_scaled;
    tq.alpha = 1.0;
    tq.m = 1;
    tq.beta = 2.0;
    auto rep = verify::run_trace_suites(tq, opts);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(std::isfinite(rep.worst_ratio));
    CHECK(rep.refinement_drift <= 0.10);

    verify::TraceQuery sq;
    sq.variant = verify::TraceQuery::Variant::spatial;
    sq.s = 0.75;
    sq.m = 2;
    auto rep2 = verify::run_trace_suites(sq, opts);
    CHECK(rep2.verdict == Verdict::pass);
    CHECK(std::isfinite(rep2.worst_ratio));

    verify::TraceQuery bad;
    bad.variant = verify::TraceQuery::Variant::temporal_general;
    bad.p = 2.0;
    bad.mu = 1.0;
    bad.s = 0.5;
    bad.k = 0;
    CHECK_THROWS_AS(bad.validate(), LimitExponentError);
}

TEST_CASE("11: the full battery is deterministic byte for byte") {
    auto run_battery = [&](const std::string& tag) {
        std::ostringstream all;
        verify::SuiteOptions opts;
        opts.seed = 13;
        opts.n = 128;
        opts.ensemble_size = 8;
        WeightParams wp(2.0, 1.0);
        all << to_json(verify::run_hardy_suite(wp, 1.0, opts));
        all << to_json(verify::run_poincare_suite(wp, {0.25, 1.0, 4.0}, 1.0, opts));
        verify::EmbeddingQuery eq{2.0, 4.0, 1.0, 0.8, 0.5,
                                  verify::EmbeddingQuery::Target::weighted};
        all << to_json(verify::run_embedding_suite(eq, opts));
        verify::MixedDerivativeParams mp;
        all << to_json(verify::run_mixed_derivative_suite(mp, wp, opts));
        all << to_json(verify::run_T_uniformity_sweep("extend0", {0.5, 1.0, 2.0}, opts));
        (void)tag;
        return all.str();
    };
    const std::string a = run_battery("a");
    const std::string b = run_battery("b");
    CHECK(a == b);
    CHECK(a.size() > 1000);

    // and through the CLI, including the JSON artifact on disk
#ifdef ANISO_BIN_PATH
    auto artifact = [&](const std::string& path) {
        const std::string cmd = std::string(ANISO_BIN_PATH) +
                                " verify --suite hardy --seed 13 --out " + path +
                                " > /dev/null 2>&1";
        REQUIRE(std::system(cmd.c_str()) == 0);
        std::ifstream f(path);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    CHECK(artifact("/tmp/aniso_acc_a.json") == artifact("/tmp/aniso_acc_b.json"));
#endif
}
