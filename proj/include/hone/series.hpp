#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hone/numeric.hpp"

namespace hone {

struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
    ResourceError(const std::string& msg, std::size_t achieved_depth)
        : std::runtime_error(msg), achieved_depth(achieved_depth) {}
    std::size_t achieved_depth;
};

struct InvariantError : std::runtime_error {
    InvariantError(const std::string& msg, long index)
        : std::runtime_error(msg), index(index) {}
    long index;
};

// User parameters of one series: y_n = a^{P(n)} and x_n from the quadratic
// recurrence x_{n+2} x_n = x_{n+1}^2 (x_n Q(x_n, x_{n+1}) + theta^2 y_n).
struct SeriesSpec {
    BigInt a = 1;
    // P coefficients, index = degree. Constant term must be 0, all >= 0.
    std::vector<long> P;
    // Q coefficient matrix, Q[i][j] multiplies X^i Y^j. All >= 0.
    std::vector<std::vector<BigInt>> Q;
    BigInt x1 = 2;
    std::size_t depth = 10;
    std::size_t bit_cap = std::size_t(1) << 22;

    /// Degree of Q in X (largest i with a nonzero row).
    std::size_t q_degree() const;
    /// Degree of Q in Y (largest j with a nonzero entry in any row).
    std::size_t r_degree() const;
    /// True iff the corner coefficient beta_{q,r} is nonzero. The closed-form
    /// growth exponent is only available in that case.
    bool corner_nonzero() const;

    long eval_P(long n) const;
    BigInt eval_Q(const BigInt& x, const BigInt& y) const;

    /// Throws SpecError on a structural violation; appends non-fatal notes
    /// (e.g. y_1 < 1, zero corner coefficient) to `warnings` when given.
    void validate(std::vector<std::string>* warnings = nullptr) const;

    /// Stable key for the sequence cache.
    std::string cache_key() const;
};

// Generated sequences, indexed from 0 with x_0 = y_0 = 1.
struct SequencePair {
    std::vector<BigInt> xs;
    std::vector<BigInt> ys;
    std::vector<BigInt> theta2_y;  // theta^2 y_n = a^{P(n+2)-2P(n+1)+P(n)}
    bool truncated = false;        // bit cap reached before requested depth

    std::size_t depth() const { return xs.empty() ? 0 : xs.size() - 1; }
};

/// [y_0 .. y_N], y_n = a^{P(n)}.
std::vector<BigInt> gen_y(const SeriesSpec& spec, std::size_t N);

/// theta^2 y_n for n = 0..N-2; every exponent is checked non-negative and
/// even, so the values are positive integers for any nonzero a.
std::vector<BigInt> gen_theta2_y(const SeriesSpec& spec, std::size_t N);

/// [x_0 .. x_N] from the recurrence; every division is checked exact.
/// Throws ResourceError once an x_n would exceed spec.bit_cap bits.
std::vector<BigInt> gen_x(const SeriesSpec& spec, const std::vector<BigInt>& ys,
                          std::size_t N);

/// Full generation with validation; on hitting the bit cap returns the
/// truncated pair with `truncated` set instead of throwing.
SequencePair build_sequences(const SeriesSpec& spec,
                             std::vector<std::string>* warnings = nullptr);

/// The integers (theta^2 x_n - theta^2 y_n)/x_n for n = 0..N-2. Throws
/// InvariantError unless each is a positive integer equal to Q(x_n, x_{n+1}).
std::vector<BigInt> check_growth_terms(const SeriesSpec& spec, const SequencePair& pair);

/// sigma_n = sum_{k=1..n} y_k/x_k, exact.
BigRat partial_sum(const SequencePair& pair, std::size_t n);

// Sequence cache: one JSON file per spec under cache_dir, big integers as
// decimal strings, format_version field required.
std::string cache_path(const std::string& cache_dir, const SeriesSpec& spec);
void save_cache(const std::string& path, const SeriesSpec& spec,
                const SequencePair& pair);
/// Loads a cached pair if present and generated at depth >= spec.depth.
bool load_cache(const std::string& path, const SeriesSpec& spec,
                SequencePair* out);

}  // namespace hone
