#include "hone/cf.hpp"

#include <stdexcept>
#include <string>

namespace hone {

namespace {

std::vector<BigRat> to_rats(const std::vector<BigInt>& v) {
    std::vector<BigRat> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

BigInt floor_rat(const BigRat& v) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
    return q;
}

}  // namespace

GeneralCF series_to_cf(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys,
                    std::size_t n) {
    if (n < 1) throw std::invalid_argument("series_to_cf: n must be >= 1");
    if (xs.size() < n + 1 || ys.size() < n + 1)
        throw std::invalid_argument("series_to_cf: sequences shorter than n");
    if (xs[0] != 1 || ys[0] != 1)
        throw std::invalid_argument("series_to_cf: x_0 and y_0 must be 1");
    for (std::size_t k = 0; k <= n; ++k) {
        if (ys[k] == 0)
            throw std::domain_error("series_to_cf: y_" + std::to_string(k) + " = 0");
        if (xs[k] == 0)
            throw std::domain_error("series_to_cf: x_" + std::to_string(k) + " = 0");
    }

    GeneralCF cf;
    cf.a.reserve(2 * n);
    cf.b.reserve(2 * n);
    cf.a.push_back(ys[1]);
    cf.b.push_back(xs[1] - ys[1]);
    for (std::size_t k = 2; k <= 2 * n; ++k) {
        if (k % 2 == 0) {
            const std::size_t j = k / 2;  // a_2j = theta y_{j-1}, b_2j = x_{j-1}
            cf.a.push_back(theta(ys[j - 1], ys[j]));
            cf.b.push_back(xs[j - 1]);
        } else {
            const std::size_t j = (k - 1) / 2;
            cf.a.push_back(theta2(ys[j - 1], ys[j], ys[j + 1]));
            cf.b.push_back((theta2(xs[j - 1], xs[j], xs[j + 1]) -
                            theta2(ys[j - 1], ys[j], ys[j + 1])) /
                           xs[j - 1]);
        }
    }
    return cf;
}

GeneralCF series_to_cf(const SequencePair& pair, std::size_t n) {
    if (n > pair.depth())
        throw std::invalid_argument("series_to_cf: n exceeds generated depth");
    return series_to_cf(to_rats(pair.xs), to_rats(pair.ys), n);
}

GeneralCF equivalence_transform(const GeneralCF& cf,
                                const std::vector<BigRat>& ys,
                                bool require_integral) {
    GeneralCF out;
    out.a.reserve(cf.size());
    out.b.reserve(cf.size());
    // r_1 = 1, r_2k = 1, r_{2k+1} = y_k^2 (k >= 1); a'_n = r_n r_{n-1} a_n,
    // b'_n = r_n b_n.
    BigRat r_prev = 1;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        const std::size_t n = i + 1;
        BigRat r_n = 1;
        if (n >= 3 && n % 2 == 1) {
            const std::size_t k = (n - 1) / 2;
            if (ys.size() < k + 1)
                throw std::invalid_argument("equivalence_transform: ys too short");
            r_n = BigRat(ys[k] * ys[k]);
        }
        out.a.push_back(r_n * r_prev * cf.a[i]);
        out.b.push_back(r_n * cf.b[i]);
        r_prev = r_n;
    }

    bool all_int = true;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (!is_integer(out.a[i]) || !is_integer(out.b[i])) {
            all_int = false;
            if (require_integral)
                throw InvariantError(
                    "equivalence transform left a non-integer entry at index " +
                        std::to_string(i + 1),
                    static_cast<long>(i + 1));
        }
    out.integral = all_int;

    if (out.integral) {
        // b_{2k+1} >= y_k^2 >= 1, forced upstream by integrality of the growth terms.
        for (std::size_t n = 3; n <= out.size(); n += 2) {
            const std::size_t k = (n - 1) / 2;
            if (out.b[n - 1] < ys[k] * ys[k])
                throw InvariantError("b_" + std::to_string(n) + " < y_k^2",
                                     static_cast<long>(n));
        }
    }
    return out;
}

GeneralCF equivalence_transform(const GeneralCF& cf, const SequencePair& pair) {
    return equivalence_transform(cf, to_rats(pair.ys), true);
}

std::vector<Convergent> convergents(const GeneralCF& cf) {
    if (cf.size() == 0) throw std::invalid_argument("convergents: empty CF");
    if (!cf.integral)
        throw std::invalid_argument("convergents: CF must be integral");
    std::vector<Convergent> out;
    out.reserve(cf.size());
    BigInt p_prev2 = 1, p_prev = 0;  // p_{-1} = 1, p_0 = 0
    BigInt q_prev2 = 0, q_prev = 1;  // q_{-1} = 0, q_0 = 1
    for (std::size_t i = 0; i < cf.size(); ++i) {
        const BigInt an = cf.a[i].get_num();
        const BigInt bn = cf.b[i].get_num();
        BigInt p = bn * p_prev + an * p_prev2;
        BigInt q = bn * q_prev + an * q_prev2;
        out.push_back({i + 1, p, q});
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        q_prev2 = std::move(q_prev);
        q_prev = std::move(q);
    }
    return out;
}

BigRat eval_cf(const GeneralCF& cf) {
    if (cf.size() == 0) throw std::invalid_argument("eval_cf: empty CF");
    // Forward convergent recurrence over rationals. Bottom-up evaluation can
    // hit transient zero denominators on CFs whose value is perfectly well
    // defined; here only a zero final denominator is an error.
    BigRat p_prev2 = 1, p_prev = 0;
    BigRat q_prev2 = 0, q_prev = 1;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        BigRat p = cf.b[i] * p_prev + cf.a[i] * p_prev2;
        BigRat q = cf.b[i] * q_prev + cf.a[i] * q_prev2;
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        q_prev2 = std::move(q_prev);
        q_prev = std::move(q);
    }
    if (q_prev == 0) throw std::domain_error("eval_cf: zero final denominator");
    return p_prev / q_prev;
}

std::vector<BigInt> rcf_of_rational(const BigRat& v) {
    // Euclidean algorithm on (num, den) directly; going through mpq would
    // re-run a gcd per digit, which is what dominates for huge operands.
    std::vector<BigInt> digits;
    BigInt p = v.get_num(), q = v.get_den();
    while (true) {
        BigInt d, r;
        mpz_fdiv_qr(d.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        digits.push_back(std::move(d));
        if (r == 0) break;
        p = std::move(q);
        q = std::move(r);
    }
    if (digits.size() > 1 && digits.back() == 1) {
        digits.pop_back();
        digits.back() += 1;
    }
    return digits;
}

CertifiedRcf certified_rcf(const SequencePair& pair, std::size_t N) {
    if (N < 1 || N + 1 > pair.depth())
        throw std::invalid_argument("certified_rcf: need depth >= N+1");
    // Tail bound 2|y_{N+1}|/x_{N+1} needs geometric decay of |y_k|/x_k with
    // ratio <= 1/2; check it on the available range.
    for (std::size_t k = N; k + 1 <= pair.depth(); ++k) {
        if (pair.xs[k + 1] < pair.xs[k] * pair.xs[k])
            throw InvariantError("certified_rcf: x_{k+1} < x_k^2 at k = " +
                                     std::to_string(k),
                                 static_cast<long>(k));
        if (2 * abs(pair.ys[k + 1]) * pair.xs[k] > abs(pair.ys[k]) * pair.xs[k + 1])
            throw InvariantError(
                "certified_rcf: term ratio above 1/2 at k = " + std::to_string(k),
                static_cast<long>(k));
    }

    CertifiedRcf out;
    out.tail_bound = make_rat(2 * abs(pair.ys[N + 1]), pair.xs[N + 1]);

    // The full value lies in [sigma_N - tail, sigma_N + tail]. The set of
    // reals whose expansion starts with a given digit prefix is an interval,
    // so every digit prefix shared by both endpoints is shared by the full
    // value as well.
    const BigRat sigma_n = partial_sum(pair, N);
    out.digits = rcf_of_rational(sigma_n);
    const auto lo = rcf_of_rational(sigma_n - out.tail_bound);
    const auto hi = rcf_of_rational(sigma_n + out.tail_bound);
    std::size_t common = 0;
    while (common < lo.size() && common < hi.size() && lo[common] == hi[common])
        ++common;
    // The final digit of a terminating expansion is ambiguous ([.., a, 1] vs
    // [.., a+1]); if an endpoint ran out inside the prefix, drop one digit.
    if (common > 0 && (common == lo.size() || common == hi.size())) --common;
    out.certified = std::min(common, out.digits.size());
    return out;
}

}  // namespace hone
