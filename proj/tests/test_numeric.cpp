#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hone/numeric.hpp"

using namespace hone;

namespace {

std::mt19937_64 rng(20260823);

BigRat random_rat(long max_abs = 1000) {
    std::uniform_int_distribution<long> num(-max_abs, max_abs);
    std::uniform_int_distribution<long> den(1, max_abs);
    return make_rat(BigInt(num(rng)), BigInt(den(rng)));
}

BigRat random_nonzero_rat(long max_abs = 1000) {
    for (;;) {
        BigRat r = random_rat(max_abs);
        if (r != 0) return r;
    }
}

BigInt random_big(std::size_t bits) {
    static gmp_randclass grng(gmp_randinit_default);
    BigInt x = grng.get_z_bits(static_cast<unsigned long>(bits));
    return x + 1;  // keep it positive
}

}  // namespace

TEST_CASE("theta") {
    CHECK(theta(BigRat(1), BigRat(1)) == 1);
    CHECK(theta(BigRat(2), BigRat(8)) == 4);
    CHECK(theta(BigRat(3), BigRat(-6)) == -2);
    CHECK_THROWS_AS(theta(BigRat(0), BigRat(1)), std::domain_error);
}

TEST_CASE("theta2") {
    CHECK(theta2(BigRat(1), BigRat(1), BigRat(1)) == 1);
    CHECK(theta2(BigRat(1), BigRat(2), BigRat(8)) == 2);
    // from x_0..x_4 = 1, 2, 8, 160, 208000
    CHECK(theta2(BigRat(2), BigRat(8), BigRat(160)) == 5);
    CHECK_THROWS_AS(theta2(BigRat(1), BigRat(0), BigRat(1)), std::domain_error);
}

TEST_CASE("theta2 is theta composed with itself") {
    for (int i = 0; i < 200; ++i) {
        const BigRat u = random_nonzero_rat(), v = random_nonzero_rat(),
                     w = random_nonzero_rat();
        CHECK(theta2(u, v, w) == theta(theta(u, v), theta(v, w)));
    }
}

TEST_CASE("rational arithmetic exactness smoke test") {
    for (int i = 0; i < 200; ++i) {
        const BigRat a = random_rat(), b = random_rat(), c = random_rat();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("log_big basics") {
    CHECK(log_big(BigInt(1)).value == 0.0);
    CHECK(log_big(BigInt(2)).value == doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(log_big(BigInt(2)).rel_err_bound <= 1e-12);
    CHECK_THROWS_AS(log_big(BigInt(0)), std::domain_error);
    CHECK_THROWS_AS(log_big(BigInt(-5)), std::domain_error);
}

TEST_CASE("log_big of 10^1000 equals 1000 ln 10") {
    const BigInt x = pow_int(BigInt(10), 1000);
    const double expect = 1000.0 * std::log(10.0);
    const LogValue lv = log_big(x);
    CHECK(std::abs(lv.value - expect) / expect <= 1e-12);
}

TEST_CASE("log_big is additive within error bounds") {
    for (std::size_t bits : {100u, 5000u, 100000u}) {
        for (int i = 0; i < 5; ++i) {
            const BigInt x = random_big(bits), y = random_big(bits / 2 + 2);
            const LogValue lx = log_big(x), ly = log_big(y), lxy = log_big(x * y);
            const double tol = lx.abs_err() + ly.abs_err() + lxy.abs_err() + 1e-9;
            CHECK(std::abs(lxy.value - lx.value - ly.value) <= tol);
        }
    }
}
