#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hone/cf.hpp"
#include "hone/exponent.hpp"
#include "hone/series.hpp"

using namespace hone;

namespace {

SeriesSpec make_spec(long a, std::vector<long> P, std::vector<std::vector<BigInt>> Q,
                     long x1, std::size_t depth) {
    SeriesSpec s;
    s.a = a;
    s.P = std::move(P);
    s.Q = std::move(Q);
    s.x1 = x1;
    s.depth = depth;
    return s;
}

SeriesSpec hone_spec(std::size_t depth) {
    return make_spec(1, {0, 1}, {{0}, {1}}, 2, depth);
}

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TEST_CASE("mu_from_lambda") {
    const double l = 1.0 + kSqrt2;
    CHECK(mu_from_lambda(l, l) == doctest::Approx(2.0 + 1.0 / kSqrt2).epsilon(1e-15));
    const double g = (3.0 + std::sqrt(5.0)) / 2.0;
    CHECK(mu_from_lambda(g, g) == doctest::Approx(g).epsilon(1e-12));
    CHECK(mu_from_lambda(3.0, 3.0) == doctest::Approx(3.0));
    CHECK_THROWS_AS(mu_from_lambda(2.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(mu_from_lambda(1.5, 3.0), std::domain_error);
}

TEST_CASE("mu_closed_form branches") {
    CHECK(mu_closed_form(hone_spec(5)) ==
          doctest::Approx(2.0 + 1.0 / kSqrt2).epsilon(1e-15));
    // q = 0, r = 1: lambda = 3
    CHECK(mu_closed_form(make_spec(1, {0, 1}, {{0, 1}}, 2, 5)) ==
          doctest::Approx(3.0).epsilon(1e-15));
    // q = 1, r = 1: lambda = (3 + sqrt(13))/2
    CHECK(mu_closed_form(make_spec(1, {0, 1}, {{0, 0}, {0, 1}}, 2, 5)) ==
          doctest::Approx((3.0 + std::sqrt(13.0)) / 2.0).epsilon(1e-15));
    // zero corner coefficient (X^2 + Y): no closed form
    CHECK_THROWS_AS(
        mu_closed_form(make_spec(1, {0, 1}, {{0, 1}, {0, 0}, {1, 0}}, 2, 5)),
        SpecError);
}

TEST_CASE("exponent estimate for a toy two-term CF") {
    GeneralCF cf{{BigRat(1), BigRat(1)}, {BigRat(2), BigRat(3)}, true};
    const auto est = estimate_mu_cf(cf);
    REQUIRE(est.size() == 1);
    CHECK(est[0].first == 1);
    CHECK(est[0].second ==
          doctest::Approx(2.0 + std::log(3.0) / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("exponent estimates split into the two branch subsequences") {
    const SeriesSpec s = hone_spec(12);
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 12), pair);
    const auto est = estimate_mu_cf(cf);
    REQUIRE(!est.empty());

    std::vector<double> lx;
    for (const auto& x : pair.xs) lx.push_back(log_big(x).value);

    double odd_last = 0, even_last = 0;
    for (const auto& [n, v] : est) {
        if (n % 2 == 1) {
            // odd n = 2k+1: approaches 2 + log x_k / (log x_{k+1} - log x_k)
            const std::size_t k = (n - 1) / 2;
            if (k >= 6)
                CHECK(v == doctest::Approx(2.0 + lx[k] / (lx[k + 1] - lx[k]))
                               .epsilon(0.02));
            odd_last = v;
        } else {
            even_last = v;
        }
    }
    CHECK(odd_last == doctest::Approx(2.0 + 1.0 / kSqrt2).epsilon(0.02));
    CHECK(even_last == doctest::Approx(1.0 + kSqrt2).epsilon(0.02));
    CHECK(even_last < odd_last);  // the 2 + 1/(lambda-1) branch dominates here
    CHECK(running_limsup(est) == doctest::Approx(2.0 + 1.0 / kSqrt2).epsilon(0.02));
}

TEST_CASE("degenerate b entry is rejected") {
    GeneralCF cf{{BigRat(1), BigRat(1)}, {BigRat(0), BigRat(3)}, true};
    CHECK_THROWS_AS(estimate_mu_cf(cf), std::domain_error);
}

TEST_CASE("condition checks on the Hone case") {
    const SeriesSpec s = hone_spec(10);
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 10), pair);
    const auto rep = check_conditions(s, pair, cf);
    CHECK(rep.cond_weight_decay.verdict == Verdict::pass);  // log|y| = 0 throughout
    for (const auto& [n, v] : rep.cond_weight_decay.values) CHECK(v == 0.0);
    CHECK(rep.cond_growth_ratio.verdict == Verdict::pass);
    CHECK(rep.first_index_ratio_above_2 >= 1);
    for (const auto& [n, v] : rep.cond_growth_ratio.values)
        if (n >= 2) CHECK(v > 2.0);
    CHECK(rep.cond_tail_sum.verdict == Verdict::pass);
    CHECK(rep.cond_numer_size.verdict == Verdict::pass);
    CHECK(rep.growth_terms_ok);
}

TEST_CASE("weight decay ratios shrink for growing y") {
    const SeriesSpec s = make_spec(2, {0, 1}, {{0, 0}, {0, 1}}, 3, 12);  // Q = XY
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 12), pair);
    const auto rep = check_conditions(s, pair, cf);
    const auto& vals = rep.cond_weight_decay.values;
    REQUIRE(vals.size() >= 6);
    // log|y_{n+2}| is linear in n, log x_n doubly exponential
    for (std::size_t i = 3; i < vals.size(); ++i)
        CHECK(vals[i].second < vals[i - 1].second);
    CHECK(vals.back().second < 0.01);
    CHECK(rep.cond_weight_decay.verdict == Verdict::pass);
}

TEST_CASE("product identity: exact rational form") {
    const SeriesSpec s = hone_spec(7);
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 7), pair);
    for (std::size_t k = 0; k <= 4; ++k) {
        BigRat lhs = 1;
        for (std::size_t i = 0; i < 2 * k + 1; ++i) lhs *= cf.b[i];
        // (x1-y1)/x1 * x_{k+1}/x_k * prod_j y_{j+1}^2 (1 - t2y_j/t2x_j)
        BigRat rhs = make_rat(pair.xs[1] - pair.ys[1], pair.xs[1]) *
                     make_rat(pair.xs[k + 1], pair.xs[k]);
        for (std::size_t j = 0; j < k; ++j) {
            const BigRat t2x = make_rat(pair.xs[j + 2] * pair.xs[j],
                                        pair.xs[j + 1] * pair.xs[j + 1]);
            rhs *= BigRat(pair.ys[j + 1] * pair.ys[j + 1]) *
                   (1 - BigRat(pair.theta2_y[j]) / t2x);
        }
        CHECK(lhs == rhs);
        if (k == 0) CHECK(lhs == pair.xs[1] - pair.ys[1]);
    }
}

TEST_CASE("product identity residual stays bounded") {
    const SeriesSpec s = hone_spec(12);
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 12), pair);
    double prev = 0;
    for (std::size_t k = 1; k <= 10; ++k) {
        const double r = product_identity_check(pair, cf, k);
        CHECK(r <= 2.0);
        if (k >= 8) CHECK(std::abs(r - prev) < 1e-3);  // settles to a constant
        prev = r;
    }
}

TEST_CASE("b_{2k+1} >= y_k^2 and theta^2 ratio decay") {
    const SeriesSpec s = make_spec(2, {0, 0, 1}, {{0}, {1}}, 3, 10);  // a=2, P=X^2
    const auto pair = build_sequences(s);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 10), pair);
    for (std::size_t k = 1; 2 * k + 1 <= cf.size(); ++k)
        CHECK(cf.b[2 * k] >= BigRat(pair.ys[k] * pair.ys[k]));
    // theta^2 y_k / theta^2 x_k <= 2 / x_k^{1/2} past burn-in, squared form
    for (std::size_t k = 3; k + 2 <= pair.depth(); ++k) {
        const BigRat t2x = make_rat(pair.xs[k + 2] * pair.xs[k],
                                    pair.xs[k + 1] * pair.xs[k + 1]);
        const BigRat ratio = BigRat(pair.theta2_y[k]) / t2x;
        CHECK(ratio * ratio * BigRat(pair.xs[k]) <= 4);
    }
}

TEST_CASE("analyze_exponent consistency with the closed form") {
    const SeriesSpec s = hone_spec(12);
    const auto pair = build_sequences(s);
    const ExponentReport rep = analyze_exponent(s, pair);
    REQUIRE(rep.has_closed_form);
    CHECK(rep.mu_closed == doctest::Approx(2.0 + 1.0 / kSqrt2).epsilon(1e-15));
    CHECK(rep.mu_formula == doctest::Approx(rep.mu_closed).epsilon(1e-3));
    CHECK(rep.mu_cf_running == doctest::Approx(rep.mu_closed).epsilon(1e-2));
    CHECK(rep.liminf_est > 2.0);
    CHECK(rep.regime == "2+1/(liminf-1)");
    const std::string js = report_to_json(rep);
    CHECK(js.find("mu_cf_running") != std::string::npos);
    const std::string cs = report_to_csv(rep);
    CHECK(cs.rfind("n,ratio,estimate,bound", 0) == 0);
}
