#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hone/numeric.hpp"
#include "hone/series.hpp"

namespace hone {

// Element x + y*sqrt(R) of a real quadratic extension of Q, R a positive
// non-square integer. Lets the closed-form solution of the two-term
// recurrence be evaluated exactly: the roots live in Q(sqrt(A^2-4B)) and the
// sqrt part of u_n must cancel.
struct QuadRat {
    BigRat x;
    BigRat y;
    BigInt R;

    QuadRat(BigRat x_, BigRat y_, BigInt R_)
        : x(std::move(x_)), y(std::move(y_)), R(std::move(R_)) {}

    QuadRat operator+(const QuadRat& o) const;
    QuadRat operator-(const QuadRat& o) const;
    QuadRat operator*(const QuadRat& o) const;
    QuadRat operator/(const QuadRat& o) const;
    bool operator==(const QuadRat& o) const { return x == o.x && y == o.y; }

    bool is_rational() const { return y == 0; }
};

// Perturbed two-term linear recurrence u_{n+2} = A u_{n+1} - B u_n + tau_n
// with distinct characteristic roots lambda, nu of x^2 - A x + B = 0.
struct RecurrenceModel {
    double A = 0;
    double B = 0;
    double u0 = 0;
    double u1 = 0;
    std::vector<double> tau;
    // Value used to extend tau past the provided range when the series for
    // C (and D) needs more terms; defaults to the last provided tau.
    double tau_tail = std::numeric_limits<double>::quiet_NaN();

    /// Larger-modulus root.
    double lambda() const;
    /// Other root; |nu| < |lambda|.
    double nu() const;
    double tail_value() const;
};

struct AsymptoticsReport {
    double lambda = 0;
    double nu = 0;
    std::string regime;  // "q<r+3", "q=r+3", "q>r+3" (or "|nu|<1" etc.)
    double C = 0;
    double C_fit = 0;       // least-squares fit on the trailing half
    double C_discrepancy = 0;
    bool has_D = false;
    double D = 0;
    std::vector<std::pair<std::size_t, double>> residuals;
    bool residuals_conform = true;
    std::string note;
};

/// u_1..u_N via the closed form (distinct-roots form when B != 0, the B = 0 limit
/// otherwise). Throws std::domain_error if A^2 = 4B or the roots are complex.
std::vector<double> solve_recurrence(const RecurrenceModel& model, std::size_t N);

/// Direct iteration of the recurrence, the oracle the closed form is checked
/// against.
std::vector<double> iterate_recurrence(const RecurrenceModel& model, std::size_t N);

/// Exact closed form over Q(sqrt(A^2-4B)) for rational A, B, u0, u1, tau.
std::vector<BigRat> solve_recurrence_exact(const BigRat& A, const BigRat& B,
                                           const BigRat& u0, const BigRat& u1,
                                           const std::vector<BigRat>& tau,
                                           std::size_t N);
std::vector<BigRat> iterate_recurrence_exact(const BigRat& A, const BigRat& B,
                                             const BigRat& u0, const BigRat& u1,
                                             const std::vector<BigRat>& tau,
                                             std::size_t N);

/// C = (u1 - nu*u0 + sum_{k>=1} tau_{k-1} lambda^{-k})/(lambda - nu), series
/// truncated once the geometric tail bound drops below 1e-12; D analogous
/// when |nu| > 1. Regime tag from |nu| vs 1.
AsymptoticsReport growth_constants(const RecurrenceModel& model);

/// Builds u_n = log x_n and tau_n from exact data, then runs growth_constants
/// and reports residuals log x_n - C lambda^n [- D nu^n] per regime.
AsymptoticsReport analyze_sequence(const SeriesSpec& spec, const SequencePair& pair,
                                   std::size_t burn_in = 3);

std::string asym_report_to_json(const AsymptoticsReport& report);
std::string residuals_to_csv(const AsymptoticsReport& report);

}  // namespace hone
