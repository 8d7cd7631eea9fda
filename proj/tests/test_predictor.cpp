#include <doctest.h>

#include <cmath>
#include <set>

#include "ecca/bounds.hpp"
#include "ecca/coverage.hpp"
#include "ecca/optimizer.hpp"
#include "ecca/predictor.hpp"

using namespace ecca;
using namespace ecca::predictor;

TEST_CASE("general-route right-hand side") {
    // M(2,2) = 16 / l(2)
    const double m22 = 16.0 / bounds::prefactor_l(2);
    CHECK_EQ(m22, doctest::Approx(31.4115).epsilon(1e-4));

    // doubling k multiplies the value by 2^(t-1)
    for (int t = 2; t <= 4; ++t) {
        const double ratio = rhs_general(t, 40, 3, 5) / rhs_general(t, 20, 3, 5);
        CHECK_EQ(ratio, doctest::Approx(std::pow(2.0, t - 1)).epsilon(1e-9));
    }

    // eventually strictly decreasing in m
    double prev = rhs_general(2, 10, 2, 50);
    for (std::int64_t m = 51; m < 80; ++m) {
        const double cur = rhs_general(2, 10, 2, m);
        CHECK_LT(cur, prev);
        prev = cur;
    }
    CHECK_THROWS_AS(rhs_general(2, 10, 2, 1), std::invalid_argument);
}

TEST_CASE("optimized-route right-hand side") {
    // the (2,2) specialization 4 sqrt(m) k / (l(2) 4^m)
    for (std::int64_t m : {2, 3, 4, 20}) {
        const double expected =
            4.0 * std::sqrt(static_cast<double>(m)) * 10 / (bounds::prefactor_l(2) * std::pow(4.0, m));
        CHECK_EQ(rhs_optimized(2, 10, 2, m, 0.0), doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK_LT(rhs_optimized(2, 10, 2, 20, 0.0), 1.0);

    // ratio of consecutive m tends to the dominant base
    const double f0 = f0_for(3, 2);
    const double base = std::pow(2.0, f0) / std::pow(4.0, 2);
    const double ratio = rhs_optimized(3, 10, 2, 200, f0) / rhs_optimized(3, 10, 2, 199, f0);
    CHECK_EQ(ratio, doctest::Approx(base).epsilon(1e-2));

    // an f0 above the threshold makes the bound vacuous
    CHECK_THROWS_AS(rhs_optimized(2, 10, 2, 5, 3.0), VacuousBoundError);
}

TEST_CASE("smallest_m fixtures for t=2, v=2") {
    // Direct evaluation: rhs(3) ~ 2.13 >= 1 and rhs(4) ~ 0.61 < 1.
    const Prediction p10 = smallest_m(2, 10, 2, Route::Optimized);
    CHECK_EQ(p10.m, 4);
    CHECK_EQ(p10.rows, 8);
    CHECK_LT(p10.ln_rhs_at_m, 0.0);
    CHECK_GE(p10.ln_rhs_at_prev, 0.0);

    const Prediction p4 = smallest_m(2, 4, 2, Route::Optimized);
    CHECK_EQ(p4.m, 3);
    CHECK_EQ(p4.rows, 6);
}

TEST_CASE("smallest_m certificate and monotonicity") {
    std::int64_t prev_m = 0;
    for (std::int64_t k = 4; k <= 128; k *= 2) {
        const Prediction p = smallest_m(2, k, 3, Route::Optimized);
        CHECK_GE(p.m, prev_m);
        prev_m = p.m;
        CHECK_LT(p.ln_rhs_at_m, 0.0);
        if (!std::isnan(p.ln_rhs_at_prev)) CHECK_GE(p.ln_rhs_at_prev, 0.0);
    }
}

TEST_CASE("general route never predicts below the optimized route") {
    for (int t = 2; t <= 4; ++t)
        for (int v = 2; v <= 4; ++v)
            for (std::int64_t k : {10, 100, 1000}) {
                const auto general = smallest_m(t, k, v, Route::General);
                const auto optimized = smallest_m(t, k, v, Route::Optimized);
                CHECK_GE(general.rows, optimized.rows);
            }
}

TEST_CASE("figure_curve is monotone and route-ordered") {
    const std::vector<std::int64_t> ks{10, 30, 100, 300, 1000, 3000, 10000};
    const auto optimized = figure_curve(6, 2, ks, Route::Optimized);
    const auto general = figure_curve(6, 2, ks, Route::General);
    REQUIRE_EQ(optimized.size(), ks.size());
    for (std::size_t i = 0; i + 1 < optimized.size(); ++i)
        CHECK_LE(optimized[i].rows, optimized[i + 1].rows);
    for (std::size_t i = 0; i < optimized.size(); ++i)
        CHECK_LE(optimized[i].rows, general[i].rows);

    const auto single = figure_curve(2, 2, std::vector<std::int64_t>{16}, Route::Optimized);
    REQUIRE_EQ(single.size(), 1);
    CHECK_EQ(single[0].k, 16);

    // threaded evaluation returns identical points
    const auto threaded = figure_curve(6, 2, ks, Route::Optimized, 4);
    for (std::size_t i = 0; i < ks.size(); ++i) {
        CHECK_EQ(threaded[i].k, optimized[i].k);
        CHECK_EQ(threaded[i].rows, optimized[i].rows);
    }
}

TEST_CASE("curve slope approaches the asymptotic bound from above") {
    // N / log2(k) decreases toward the bound; the regression slope over the
    // top decade is already within 5% (measured 3.1% for t=6, v=2).
    const double bound = optimizer::d_bound_from_f0(6, 2, f0_for(6, 2)).value;
    std::vector<std::int64_t> ks;
    for (double e = 4.0; e <= 6.01; e += 0.25)
        ks.push_back(static_cast<std::int64_t>(std::llround(std::pow(10.0, e))));
    const auto pts = figure_curve(6, 2, ks, Route::Optimized);
    double prev_ratio = 1e300;
    for (const auto& p : pts) {
        const double ratio = static_cast<double>(p.rows) / std::log2(static_cast<double>(p.k));
        CHECK_GT(ratio, bound);  // approaches from above
        CHECK_LT(ratio, prev_ratio);
        prev_ratio = ratio;
    }
    const double slope = regression_slope(pts);
    CHECK_EQ(slope / bound, doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("asymptotic slope matches the bound across the grid") {
    // Evaluated symbolically at k = 2^30..2^60 (log-space); within 2%
    // everywhere (measured worst 1.7%).
    for (int t : {2, 3, 4, 5, 6})
        for (int v : {2, 3, 10}) {
            const double f0 = f0_for(t, v);
            const double bound = optimizer::d_bound_from_f0(t, v, f0).value;
            std::vector<CurvePoint> pts;
            for (int e = 30; e <= 60; e += 10) {
                const auto p = smallest_m_log2k(t, static_cast<double>(e), v, Route::Optimized, f0);
                pts.push_back({std::int64_t{1} << e, p.rows});
            }
            const double slope = regression_slope(pts);
            CHECK_EQ(slope / bound, doctest::Approx(1.0).epsilon(0.02));
        }
}

TEST_CASE("juxtaposition base case is the 4x3 binary array") {
    const PartialArray a = juxtapose_t2(2, 3);
    CHECK_EQ(a.shape().rows, 4);
    CHECK(verify_ca(a).is_covering_array());
    // same columns as the verification fixture, in some order
    std::set<Column> cols{a.column(0), a.column(1), a.column(2)};
    CHECK_EQ(cols, std::set<Column>{{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}});
}

TEST_CASE("juxtaposition stacks one copy per symbol pair") {
    const PartialArray a = juxtapose_t2(3, 3);
    CHECK_EQ(a.shape().rows, 12);  // 4 * C(3,2)
    CHECK_EQ(a.shape().v, 3);
    CHECK(verify_ca(a).is_covering_array());
}

TEST_CASE("juxtaposition size tracks C(v,2) log2 k") {
    for (int v : {2, 3, 4}) {
        const double pairs = v * (v - 1) / 2.0;
        for (int k = 4; k <= 20; k += 4) {
            const PartialArray a = juxtapose_t2(v, k);
            CHECK(verify_ca(a).is_covering_array());
            const double ratio =
                static_cast<double>(a.shape().rows) / (pairs * std::log2(static_cast<double>(k)));
            CHECK_LE(ratio, 2.5 + 1e-9);  // worst at k = 4 (N2 = 5, log2 k = 2)
        }
        const PartialArray big = juxtapose_t2(v, 20);
        const double ratio20 =
            static_cast<double>(big.shape().rows) / (pairs * std::log2(20.0));
        CHECK_LE(ratio20, 1.9);  // measured 1.851 (N2 = 8 at k = 20)
    }
}

TEST_CASE("regression slope") {
    std::vector<CurvePoint> exact;
    for (std::int64_t k : {4, 8, 16, 64, 1024})
        exact.push_back({k, static_cast<std::int64_t>(3 * std::log2(static_cast<double>(k)) + 7)});
    CHECK_EQ(regression_slope(exact), doctest::Approx(3.0).epsilon(1e-9));

    // duplicate k values are ordinary observations
    std::vector<CurvePoint> dup{{4, 9}, {4, 11}, {16, 15}, {16, 17}};
    CHECK_EQ(regression_slope(dup), doctest::Approx(3.0).epsilon(1e-9));

    CHECK_THROWS_AS(regression_slope(std::vector<CurvePoint>{{4, 9}}), std::invalid_argument);
    CHECK_THROWS_AS(regression_slope(std::vector<CurvePoint>{{4, 9}, {4, 11}}),
                    std::invalid_argument);
}

TEST_CASE("sizes csv ingestion") {
    const auto recs = parse_sizes_csv("# best known sizes\nt,k,v,N\n2,4,2,5\n2,10,2,6 # inline\n");
    REQUIRE_EQ(recs.size(), 2);
    CHECK_EQ(recs[0].t, 2);
    CHECK_EQ(recs[0].k, 4);
    CHECK_EQ(recs[0].rows, 5);
    CHECK_EQ(recs[1].k, 10);
    CHECK_THROWS_AS(parse_sizes_csv("2,4,2\n"), ParseError);
    CHECK_THROWS_AS(parse_sizes_csv("a,b,c,d\n"), ParseError);
}

TEST_CASE("curve csv format") {
    const std::vector<CurvePoint> pts{{10, 12}, {100, 18}};
    CHECK_EQ(curve_csv(2, 2, pts, Route::Optimized),
             "k,N,route,t,v\n10,12,optimized,2,2\n100,18,optimized,2,2\n");
}
