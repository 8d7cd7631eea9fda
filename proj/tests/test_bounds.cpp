#include <doctest.h>

#include <cmath>

#include "ecca/bounds.hpp"
#include "ecca/counting.hpp"

using namespace ecca;
using namespace ecca::bounds;

namespace {

// Independent minimizer of Q(x) = (1 + c1 x^t)/x over (0, 1]: dense grid
// scan to bracket, then golden-section refinement. Never consults the
// closed form.
double q_min_oracle(double c1, int t) {
    auto q = [&](double x) { return (1.0 + c1 * std::pow(x, t)) / x; };
    const int grid = 10'000;
    double best_x = 1.0, best = q(1.0);
    for (int i = 1; i < grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double val = q(x);
        if (val < best) {
            best = val;
            best_x = x;
        }
    }
    double lo = std::max(best_x - 1.0 / grid, 1e-12), hi = std::min(best_x + 1.0 / grid, 1.0);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = q(x1), f2 = q(x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = q(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = q(x2);
        }
    }
    return std::min(f1, f2);
}

}  // namespace

TEST_CASE("entropy function") {
    CHECK_EQ(entropy_h(0.5), doctest::Approx(1.0).epsilon(1e-12));
    CHECK_EQ(entropy_h(0.0), 0.0);
    CHECK_EQ(entropy_h(1.0), 0.0);
    CHECK_EQ(entropy_h(0.381966), doctest::Approx(0.9594187).epsilon(1e-6));
    CHECK_THROWS_AS(entropy_h(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(entropy_h(1.1), std::invalid_argument);
}

TEST_CASE("binomial estimate prefactors") {
    CHECK_EQ(prefactor_l(2), doctest::Approx(0.5093674).epsilon(1e-6));
    CHECK_LT(prefactor_l(2), prefactor_u(2));
}

TEST_CASE("binomial estimate brackets the exact value") {
    {
        const auto est = binom_bounds(2, 2);
        CHECK_LT(est.lower(), 6.0);
        CHECK_GT(est.upper(), 6.0);
    }
    for (int v = 2; v <= 10; ++v)
        for (std::int64_t m = 2; m <= 50; ++m) {
            const auto est = binom_bounds(m, v);
            const mpz_class exact = binomial_exact(static_cast<unsigned long>(m * v),
                                                   static_cast<unsigned long>(m));
            signed long exp2 = 0;
            const double mant = mpz_get_d_2exp(&exp2, exact.get_mpz_t());
            const double log_exact = std::log(mant) + exp2 * std::log(2.0);
            CHECK_LT(est.log_lower, log_exact);
            CHECK_GT(est.log_upper, log_exact);
        }
    CHECK_THROWS_AS(binom_bounds(1, 2), std::invalid_argument);
}

TEST_CASE("q_min closed form") {
    CHECK_EQ(q_min(4.0, 2), doctest::Approx(4.0).epsilon(1e-12));
    // limit c1 -> 1+ at t = 2
    CHECK_EQ(q_min(1.0 + 1e-12, 2), doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(q_min(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(q_min(0.5, 2), std::invalid_argument);
}

TEST_CASE("q_min matches dense numeric minimization") {
    for (int t = 2; t <= 6; ++t)
        for (double c1 : {2.0, 10.0, 1000.0}) {
            const double closed = q_min(c1, t);
            const double numeric = q_min_oracle(c1, t);
            CHECK_EQ(closed, doctest::Approx(numeric).epsilon(1e-9));
        }
}

TEST_CASE("existence predicate") {
    CHECK(existence_predicate(CAParams(2, 4, 2, 2), 0.5));

    // |I| = 20 at (v=2, m=3): threshold is exactly c1 = 100
    const CAParams p(2, 4, 2, 3);
    CHECK(existence_predicate(p, 99.0));
    CHECK_FALSE(existence_predicate(p, 100.0));

    // flips from true to false exactly once as c1 grows
    int flips = 0;
    bool prev = existence_predicate(p, 1.0);
    for (double c1 = 2.0; c1 <= 256.0; c1 *= 2.0) {
        const bool cur = existence_predicate(p, c1);
        if (cur != prev) {
            ++flips;
            CHECK(prev);
            CHECK_FALSE(cur);
        }
        prev = cur;
    }
    CHECK_EQ(flips, 1);
}

TEST_CASE("classic bound values") {
    CHECK_EQ(d_bound_lll_classic(2, 2).value, doctest::Approx(2.41).epsilon(0.005));
    CHECK_EQ(d_bound_lll_classic(2, 10).value, doctest::Approx(68.97).epsilon(0.001));
    CHECK_EQ(d_bound_lll_classic(6, 2).value, doctest::Approx(220.07).epsilon(0.001));
}

TEST_CASE("general balanced bound values") {
    CHECK_EQ(d_bound_ec_general(2, 2).value, doctest::Approx(2.0).epsilon(1e-12));
    CHECK_EQ(d_bound_ec_general(2, 5).value, doctest::Approx(15.53).epsilon(0.001));
    CHECK_EQ(d_bound_ec_general(6, 7).value, doctest::Approx(407728.23).epsilon(0.001));
}

TEST_CASE("strength-2 closed form") {
    CHECK_EQ(d_bound_t2(2).value, 1.0);
    CHECK_EQ(d_bound_t2(3).value, doctest::Approx(3.97).epsilon(0.005));
    CHECK_EQ(d_bound_t2(4).value, doctest::Approx(8.16).epsilon(0.005));
}

TEST_CASE("strength-3 closed form") {
    CHECK_EQ(xi_t3(2), doctest::Approx(0.3819660113).epsilon(1e-9));
    const auto b2 = d_bound_t3(2);
    CHECK_EQ(b2.certificate->f0, doctest::Approx(3.4712096).epsilon(1e-6));
    CHECK_EQ(b2.value, doctest::Approx(7.5644334).epsilon(1e-6));
    CHECK_LT(std::abs(b2.value - 7.56), 0.01);
    CHECK_EQ(d_bound_t3(3).value, doctest::Approx(32.03).epsilon(0.001));
    for (int v = 2; v <= 100; ++v) CHECK_LT(xi_t3(v), 1.0);
}

TEST_CASE("bound ordering over the printed ranges") {
    for (int v = 2; v <= 10; ++v) {
        CHECK_LE(d_bound_t2(v).value, d_bound_ec_general(2, v).value + 1e-9);
        CHECK_LE(d_bound_ec_general(2, v).value, d_bound_lll_classic(2, v).value + 1e-9);
        CHECK_LE(d_bound_t3(v).value, d_bound_ec_general(3, v).value + 1e-9);
        CHECK_LE(d_bound_ec_general(3, v).value, d_bound_lll_classic(3, v).value + 1e-9);
    }
}

TEST_CASE("general bound approaches (t-1)(v^t - v/2) ln 2") {
    for (int t = 2; t <= 6; ++t) {
        const double v = 100.0;
        const double approx = (t - 1) * (std::pow(v, t) - v / 2.0) * std::log(2.0);
        CHECK_EQ(d_bound_ec_general(t, 100).value / approx, doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("bounds are increasing in v") {
    for (int t = 2; t <= 6; ++t)
        for (int v = 2; v < 50; ++v) {
            CHECK_LT(d_bound_lll_classic(t, v).value, d_bound_lll_classic(t, v + 1).value);
            CHECK_LT(d_bound_ec_general(t, v).value, d_bound_ec_general(t, v + 1).value);
        }
    for (int v = 2; v < 50; ++v) {
        CHECK_LT(d_bound_t2(v).value, d_bound_t2(v + 1).value);
        CHECK_LT(d_bound_t3(v).value, d_bound_t3(v + 1).value);
    }
}
