#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hone/cf.hpp"
#include "hone/config.hpp"
#include "hone/series.hpp"

using namespace hone;

namespace {

const char* kHoneConfig = R"({
  "spec": {"a": 1, "P": [0, 1], "Q": [[0], [1]], "x1": "2"},
  "depth": 10,
  "bit_cap": 4194304,
  "precision_digits": 30,
  "output_format": "json",
  "cache_dir": "/tmp/hone-test"
})";

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig cfg = parse_config(kHoneConfig);
    CHECK(cfg.spec.a == 1);
    CHECK(cfg.spec.P == std::vector<long>{0, 1});
    CHECK(cfg.spec.x1 == 2);
    CHECK(cfg.spec.depth == 10);
    CHECK(cfg.spec.bit_cap == 4194304);
    CHECK(cfg.precision_digits == 30);
    cfg.validate();
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_config("not json"), SpecError);
    CHECK_THROWS_AS(parse_config(R"({"depth": 5})"), SpecError);  // missing spec
    CHECK_THROWS_AS(
        parse_config(R"({"spec": {"a": 1, "P": [0,1], "Q": [[0],[1]], "x1": 1.5}})"),
        SpecError);

    RunConfig cfg = parse_config(kHoneConfig);
    cfg.spec.depth = 2;
    CHECK_THROWS_AS(cfg.validate(), SpecError);
    cfg = parse_config(kHoneConfig);
    cfg.precision_digits = 0;
    CHECK_THROWS_AS(cfg.validate(), SpecError);
    cfg = parse_config(kHoneConfig);
    cfg.output_format = "xml";
    CHECK_THROWS_AS(cfg.validate(), SpecError);
    cfg = parse_config(kHoneConfig);
    cfg.spec.x1 = 1;
    CHECK_THROWS_AS(cfg.validate(), SpecError);
}

TEST_CASE("cf json round trip") {
    const RunConfig cfg = parse_config(kHoneConfig);
    SeriesSpec spec = cfg.spec;
    spec.depth = 5;
    const auto pair = build_sequences(spec);
    const GeneralCF cf = equivalence_transform(series_to_cf(pair, 5), pair);
    const GeneralCF back = cf_from_json(cf_to_json(cf));
    REQUIRE(back.size() == cf.size());
    CHECK(back.integral);
    for (std::size_t i = 0; i < cf.size(); ++i) {
        CHECK(back.a[i] == cf.a[i]);
        CHECK(back.b[i] == cf.b[i]);
    }
    CHECK(eval_cf(back) == partial_sum(pair, 5));
}

TEST_CASE("decimal output of sigma") {
    const RunConfig cfg = parse_config(kHoneConfig);
    SeriesSpec spec = cfg.spec;
    spec.depth = 8;
    const auto pair = build_sequences(spec);
    const DecimalResult dec = decimal_of_sigma(pair, 30);
    // reparse and compare against the exact partial sum
    const std::string& s = dec.decimal;
    const auto dot = s.find('.');
    REQUIRE(dot != std::string::npos);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const bool neg = digits[0] == '-';
    if (neg) digits.erase(0, 1);
    BigRat printed = make_rat(int_from_string(digits), pow_int(10, 30));
    if (neg) printed = -printed;
    const BigRat sigma = partial_sum(pair, dec.used_depth);
    BigRat err(dec.error_bound);
    err.canonicalize();
    CHECK(abs(sigma - printed) <= err);
    CHECK(err < make_rat(1, pow_int(10, 29)));
}

TEST_CASE("negative series decimal") {
    RunConfig cfg = parse_config(kHoneConfig);
    SeriesSpec spec = cfg.spec;
    spec.a = -1;
    spec.depth = 8;
    const auto pair = build_sequences(spec);
    const DecimalResult dec = decimal_of_sigma(pair, 20);
    CHECK(dec.decimal.substr(0, 5) == "-0.38");  // -1/2 + 1/8 - 1/160 + ...
}

TEST_CASE("insufficient depth for requested precision") {
    const RunConfig cfg = parse_config(kHoneConfig);
    SeriesSpec spec = cfg.spec;
    spec.depth = 4;
    const auto pair = build_sequences(spec);
    CHECK_THROWS_AS(decimal_of_sigma(pair, 2000), ResourceError);
}
