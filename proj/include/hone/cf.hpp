#pragma once

#include <cstddef>
#include <vector>

#include "hone/numeric.hpp"
#include "hone/series.hpp"

namespace hone {

// General continued fraction a_1/(b_1 + a_2/(b_2 + ...)), stored 0-based:
// a[0] is the partial numerator a_1. Entries are exact rationals until the
// equivalence transform clears denominators and sets `integral`.
struct GeneralCF {
    std::vector<BigRat> a;
    std::vector<BigRat> b;
    bool integral = false;

    std::size_t size() const { return a.size(); }
};

struct Convergent {
    std::size_t n = 0;
    BigInt p;
    BigInt q;
};

/// The 2n-term expansion of sigma_n = sum_{k=1..n} y_k/x_k:
/// a_1 = y_1, b_1 = x_1 - y_1, and for k >= 1
/// a_2k = theta y_{k-1}, a_{2k+1} = theta^2 y_{k-1},
/// b_2k = x_{k-1}, b_{2k+1} = (theta^2 x_{k-1} - theta^2 y_{k-1})/x_{k-1}.
/// Sequences are 0-indexed with xs[0] = ys[0] = 1; all entries nonzero.
GeneralCF series_to_cf(const std::vector<BigRat>& xs, const std::vector<BigRat>& ys,
                    std::size_t n);
GeneralCF series_to_cf(const SequencePair& pair, std::size_t n);

/// Equivalence transform with multipliers r_2k = 1, r_{2k+1} = y_k^2: value
/// of every convergent is preserved, and for generated integer sequences the
/// result has integer entries a_2k = y_{k-1} y_k, a_{2k+1} = y_{k-1} y_{k+1},
/// b_{2k+1} = y_k^2 (theta^2 x_{k-1} - theta^2 y_{k-1})/x_{k-1} >= y_k^2.
/// With require_integral the transform throws InvariantError unless every
/// entry comes out an integer.
GeneralCF equivalence_transform(const GeneralCF& cf,
                                const std::vector<BigRat>& ys,
                                bool require_integral = true);
GeneralCF equivalence_transform(const GeneralCF& cf, const SequencePair& pair);

/// Convergents p_n/q_n via p_n = b_n p_{n-1} + a_n p_{n-2} (p_0=0, p_{-1}=1),
/// same recurrence for q. Requires an integral CF.
std::vector<Convergent> convergents(const GeneralCF& cf);

/// Exact evaluation via the forward convergent recurrence over rationals.
/// Throws std::domain_error if the final denominator vanishes.
BigRat eval_cf(const GeneralCF& cf);

/// Regular continued fraction digits of v (floor-based Euclidean algorithm),
/// canonical form: last digit >= 2 whenever there is more than one digit.
std::vector<BigInt> rcf_of_rational(const BigRat& v);

// RCF digits of sigma_N that are provably digits of the full series sigma.
// With tail_bound = 2|y_{N+1}|/x_{N+1}, sigma lies in sigma_N +- tail_bound;
// the digit prefix shared by the expansions of both interval endpoints is
// shared by everything in between, all comparisons exact.
struct CertifiedRcf {
    std::vector<BigInt> digits;  // computed prefix of RCF(sigma_N)
    std::size_t certified = 0;   // leading digits provably shared with sigma
    BigRat tail_bound;
};

/// Requires pair depth >= N+1 and the doubling regime x_{k+1} >= x_k^2,
/// 2|y_{k+1}| x_k <= |y_k| x_{k+1} on the available range k >= N.
CertifiedRcf certified_rcf(const SequencePair& pair, std::size_t N);

}  // namespace hone
