#include "hone/series.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace hone {

using nlohmann::json;

namespace {

constexpr int kCacheFormatVersion = 1;

BigInt eval_P_big(const std::vector<long>& P, long n) {
    BigInt acc = 0;
    BigInt pw = 1;
    for (long c : P) {
        acc += c * pw;
        pw *= n;
    }
    return acc;
}

}  // namespace

std::size_t SeriesSpec::q_degree() const {
    for (std::size_t i = Q.size(); i-- > 0;)
        for (const auto& b : Q[i])
            if (b != 0) return i;
    return 0;
}

std::size_t SeriesSpec::r_degree() const {
    std::size_t r = 0;
    for (const auto& row : Q)
        for (std::size_t j = row.size(); j-- > 0;)
            if (row[j] != 0 && j > r) r = j;
    return r;
}

bool SeriesSpec::corner_nonzero() const {
    const std::size_t q = q_degree(), r = r_degree();
    return q < Q.size() && r < Q[q].size() && Q[q][r] != 0;
}

long SeriesSpec::eval_P(long n) const {
    BigInt v = eval_P_big(P, n);
    if (!v.fits_slong_p())
        throw SpecError("P(" + std::to_string(n) + ") does not fit a machine word");
    return v.get_si();
}

BigInt SeriesSpec::eval_Q(const BigInt& x, const BigInt& y) const {
    BigInt acc = 0;
    BigInt xp = 1;
    for (const auto& row : Q) {
        BigInt yp = 1;
        for (const auto& beta : row) {
            if (beta != 0) acc += beta * xp * yp;
            yp *= y;
        }
        xp *= x;
    }
    return acc;
}

void SeriesSpec::validate(std::vector<std::string>* warnings) const {
    if (a == 0) throw SpecError("a must be nonzero");
    if (P.empty()) throw SpecError("P must be non-constant");
    if (P[0] != 0) throw SpecError("P must satisfy P(0) = 0");
    bool p_nonconst = false;
    for (std::size_t k = 0; k < P.size(); ++k) {
        if (P[k] < 0) throw SpecError("P has a negative coefficient");
        if (k >= 1 && P[k] > 0) p_nonconst = true;
    }
    if (!p_nonconst) throw SpecError("P must be non-constant");

    if (Q.empty()) throw SpecError("Q must be non-constant");
    bool q_nonconst = false;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (std::size_t j = 0; j < Q[i].size(); ++j) {
            if (Q[i][j] < 0) throw SpecError("Q has a negative coefficient");
            if (Q[i][j] != 0 && i + j >= 1) q_nonconst = true;
        }
    if (!q_nonconst) throw SpecError("Q must be non-constant");

    if (x1 < 2) throw SpecError("x1 must be an integer >= 2");
    if (depth < 1) throw SpecError("depth must be >= 1");
    if (bit_cap < (1u << 16)) throw SpecError("bit_cap must be >= 2^16");

    // b_1 = x_1 - y_1 must be a positive integer for the transform.
    const long p1 = eval_P(1);
    BigInt y1 = (a >= 0 || p1 % 2 == 0) ? pow_int(abs(a), p1)
                                        : -pow_int(abs(a), p1);
    if (x1 - y1 < 1) throw SpecError("x1 - y1 must be >= 1");
    if (warnings && y1 < 1)
        warnings->push_back("y_1 = " + to_string(y1) +
                            " < 1: outside the hypothesis x1 > y1 >= 1 behind the closed forms; "
                            "only x1 - y1 >= 1 is used downstream");
    if (warnings && !corner_nonzero())
        warnings->push_back(
            "corner coefficient of Q is zero: closed-form exponent "
            "unavailable for this Q");
}

std::string SeriesSpec::cache_key() const {
    std::ostringstream os;
    os << "a=" << a << ";P=";
    for (long c : P) os << c << ",";
    os << ";Q=";
    for (const auto& row : Q) {
        for (const auto& b : row) os << b << ",";
        os << "|";
    }
    os << ";x1=" << x1;
    const std::size_t h = std::hash<std::string>{}(os.str());
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

std::vector<BigInt> gen_y(const SeriesSpec& spec, std::size_t N) {
    spec.validate();
    std::vector<BigInt> ys;
    ys.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        const long e = spec.eval_P(static_cast<long>(n));
        BigInt y = pow_int(abs(spec.a), e);
        if (spec.a < 0 && e % 2 != 0) y = -y;
        if (y == 0) throw SpecError("y_n vanished");  // unreachable for a != 0
        ys.push_back(y);
    }
    return ys;
}

std::vector<BigInt> gen_theta2_y(const SeriesSpec& spec, std::size_t N) {
    std::vector<BigInt> out;
    if (N < 2) return out;
    out.reserve(N - 1);
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        const long e = spec.eval_P(static_cast<long>(n) + 2) -
                       2 * spec.eval_P(static_cast<long>(n) + 1) +
                       spec.eval_P(static_cast<long>(n));
        if (e < 0 || e % 2 != 0)
            throw SpecError("second difference of P is not a non-negative even "
                            "integer at n = " + std::to_string(n));
        out.push_back(pow_int(abs(spec.a), e));
    }
    return out;
}

std::vector<BigInt> gen_x(const SeriesSpec& spec, const std::vector<BigInt>& ys,
                          std::size_t N) {
    if (ys.size() < N + 1) throw SpecError("ys shorter than requested depth");
    const std::vector<BigInt> t2y = gen_theta2_y(spec, N);

    std::vector<BigInt> xs;
    xs.reserve(N + 1);
    xs.push_back(1);
    if (N >= 1) xs.push_back(spec.x1);
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        BigInt t = xs[n] * spec.eval_Q(xs[n], xs[n + 1]) + t2y[n];
        BigInt num = xs[n + 1] * xs[n + 1] * t;
        if (!mpz_divisible_p(num.get_mpz_t(), xs[n].get_mpz_t()))
            throw InvariantError("recurrence step not exactly divisible at n = " +
                                     std::to_string(n),
                                 static_cast<long>(n));
        BigInt next;
        mpz_divexact(next.get_mpz_t(), num.get_mpz_t(), xs[n].get_mpz_t());
        if (bit_length(next) > spec.bit_cap)
            throw ResourceError("bit cap " + std::to_string(spec.bit_cap) +
                                    " exceeded at n = " + std::to_string(n + 2),
                                n + 1);
        xs.push_back(std::move(next));
    }
    return xs;
}

SequencePair build_sequences(const SeriesSpec& spec,
                             std::vector<std::string>* warnings) {
    spec.validate(warnings);
    SequencePair pair;
    pair.ys = gen_y(spec, spec.depth);
    try {
        pair.xs = gen_x(spec, pair.ys, spec.depth);
    } catch (const ResourceError& e) {
        pair.xs = gen_x(spec, pair.ys, e.achieved_depth);
        pair.ys.resize(e.achieved_depth + 1);
        pair.truncated = true;
        if (warnings)
            warnings->push_back(std::string(e.what()) + "; truncated to depth " +
                                std::to_string(e.achieved_depth));
    }
    pair.theta2_y = gen_theta2_y(spec, pair.depth());
    return pair;
}

std::vector<BigInt> check_growth_terms(const SeriesSpec& spec, const SequencePair& pair) {
    std::vector<BigInt> out;
    const std::size_t N = pair.depth();
    if (N < 2) return out;
    out.reserve(N - 1);
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        BigRat t2x = make_rat(pair.xs[n + 2] * pair.xs[n],
                              pair.xs[n + 1] * pair.xs[n + 1]);
        BigRat v = (t2x - BigRat(pair.theta2_y[n])) / BigRat(pair.xs[n]);
        if (!is_integer(v) || v <= 0)
            throw InvariantError(
                "(theta^2 x_n - theta^2 y_n)/x_n not a positive integer at n = " +
                    std::to_string(n),
                static_cast<long>(n));
        BigInt q_val = spec.eval_Q(pair.xs[n], pair.xs[n + 1]);
        if (v.get_num() != q_val)
            throw InvariantError("growth term differs from Q(x_n, x_{n+1}) at n = " +
                                     std::to_string(n),
                                 static_cast<long>(n));
        out.push_back(v.get_num());
    }
    return out;
}

BigRat partial_sum(const SequencePair& pair, std::size_t n) {
    if (n < 1 || n > pair.depth())
        throw std::out_of_range("partial_sum: index out of range");
    BigRat s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += make_rat(pair.ys[k], pair.xs[k]);
    return s;
}

std::string cache_path(const std::string& cache_dir, const SeriesSpec& spec) {
    return cache_dir + "/seq-" + spec.cache_key() + ".json";
}

void save_cache(const std::string& path, const SeriesSpec& spec,
                const SequencePair& pair) {
    json j;
    j["format_version"] = kCacheFormatVersion;
    j["cache_key"] = spec.cache_key();
    json xs = json::array(), ys = json::array(), t2 = json::array();
    for (const auto& x : pair.xs) xs.push_back(to_string(x));
    for (const auto& y : pair.ys) ys.push_back(to_string(y));
    for (const auto& t : pair.theta2_y) t2.push_back(to_string(t));
    j["xs"] = std::move(xs);
    j["ys"] = std::move(ys);
    j["theta2_y"] = std::move(t2);
    j["truncated"] = pair.truncated;

    // Write-then-rename keeps concurrent readers of the same key consistent.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw std::runtime_error("cannot write cache file " + tmp);
        os << j.dump();
    }
    std::filesystem::rename(tmp, path);
}

bool load_cache(const std::string& path, const SeriesSpec& spec,
                SequencePair* out) {
    std::ifstream is(path);
    if (!is) return false;
    json j;
    try {
        is >> j;
    } catch (const json::exception&) {
        return false;
    }
    if (j.value("format_version", -1) != kCacheFormatVersion) return false;
    if (j.value("cache_key", "") != spec.cache_key()) return false;

    SequencePair pair;
    for (const auto& s : j.at("xs")) pair.xs.push_back(int_from_string(s));
    for (const auto& s : j.at("ys")) pair.ys.push_back(int_from_string(s));
    for (const auto& s : j.at("theta2_y"))
        pair.theta2_y.push_back(int_from_string(s));
    pair.truncated = j.value("truncated", false);
    if (!pair.truncated && pair.depth() < spec.depth) return false;
    *out = std::move(pair);
    return true;
}

}  // namespace hone
