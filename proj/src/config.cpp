#include "hone/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hone {

using nlohmann::json;

namespace {

BigInt big_from_json(const json& j) {
    if (j.is_string()) return int_from_string(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.get<long>());
    throw SpecError("expected integer or decimal string, got " + j.dump());
}

}  // namespace

void RunConfig::validate() const {
    if (spec.depth < 3) throw SpecError("depth must be >= 3");
    if (precision_digits < 1) throw SpecError("precision_digits must be >= 1");
    if (output_format != "json" && output_format != "csv")
        throw SpecError("output_format must be json or csv");
    spec.validate();
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    try {
        const json& s = j.at("spec");
        cfg.spec.a = big_from_json(s.at("a"));
        cfg.spec.P = s.at("P").get<std::vector<long>>();
        cfg.spec.Q.clear();
        for (const auto& row : s.at("Q")) {
            std::vector<BigInt> r;
            for (const auto& e : row) r.push_back(big_from_json(e));
            cfg.spec.Q.push_back(std::move(r));
        }
        cfg.spec.x1 = big_from_json(s.at("x1"));
        cfg.spec.depth = j.value("depth", std::size_t(10));
        cfg.spec.bit_cap = j.value("bit_cap", std::size_t(1) << 22);
        cfg.precision_digits = j.value("precision_digits", 30);
        cfg.output_format = j.value("output_format", std::string("json"));
        cfg.cache_dir = j.value("cache_dir", std::string(".hone-cache"));
    } catch (const json::exception& e) {
        throw SpecError(std::string("config field error: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw SpecError("cannot open config file " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str());
}

std::string cf_to_json(const GeneralCF& cf) {
    json entries = json::array();
    for (std::size_t i = 0; i < cf.size(); ++i)
        entries.push_back({{"n", i + 1},
                           {"a", to_string(cf.a[i])},
                           {"b", to_string(cf.b[i])}});
    json j = {{"format_version", 1}, {"integral", cf.integral}, {"cf", entries}};
    return j.dump(2);
}

GeneralCF cf_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SpecError(std::string("CF file is not valid JSON: ") + e.what());
    }
    if (j.value("format_version", -1) != 1)
        throw SpecError("CF file has unsupported format_version");
    GeneralCF cf;
    for (const auto& e : j.at("cf")) {
        BigRat a(e.at("a").get<std::string>(), 10);
        BigRat b(e.at("b").get<std::string>(), 10);
        a.canonicalize();
        b.canonicalize();
        cf.a.push_back(std::move(a));
        cf.b.push_back(std::move(b));
    }
    cf.integral = true;
    for (std::size_t i = 0; i < cf.size(); ++i)
        if (!is_integer(cf.a[i]) || !is_integer(cf.b[i])) cf.integral = false;
    return cf;
}

std::string convergents_to_json(const std::vector<Convergent>& cs) {
    json arr = json::array();
    for (const auto& c : cs)
        arr.push_back({{"n", c.n}, {"p", to_string(c.p)}, {"q", to_string(c.q)}});
    json j = {{"format_version", 1}, {"convergents", arr}};
    return j.dump(2);
}

DecimalResult decimal_of_sigma(const SequencePair& pair, int digits) {
    if (pair.depth() < 2)
        throw std::invalid_argument("decimal_of_sigma: depth must be >= 2");
    const std::size_t N = pair.depth() - 1;
    const BigRat tail = make_rat(2 * abs(pair.ys[N + 1]), pair.xs[N + 1]);
    BigInt scale = pow_int(10, static_cast<unsigned long>(digits));
    if (tail * BigRat(scale) >= 1) {
        // Tail bound shrinks roughly like x_{N+1}^-1; report how deep to go.
        double have = log_big(pair.xs[N + 1]).value / std::log(10.0);
        std::ostringstream os;
        os << "insufficient depth for " << digits << " digits: tail bound ~10^-"
           << std::floor(have) << "; increase depth (roughly by "
           << std::ceil(std::log2(double(digits) / std::max(1.0, have)) + 1)
           << " or regenerate deeper)";
        throw ResourceError(os.str(), N);
    }

    const BigRat sigma = partial_sum(pair, N);
    const bool neg = sigma < 0;
    BigRat av = abs(sigma);
    BigInt ip = av.get_num() / av.get_den();
    BigRat frac = av - BigRat(ip);
    const BigRat scaled = frac * BigRat(scale);
    BigInt fd = scaled.get_num() / scaled.get_den();
    std::string fs = fd.get_str();
    fs.insert(fs.begin(), static_cast<std::size_t>(digits) - fs.size(), '0');

    DecimalResult out;
    out.decimal = (neg ? "-" : "") + ip.get_str() + "." + fs;
    BigRat err = tail + make_rat(1, scale);
    out.error_bound = to_string(err);
    out.used_depth = N;
    return out;
}

}  // namespace hone
