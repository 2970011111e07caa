#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hone/cf.hpp"
#include "hone/numeric.hpp"
#include "hone/series.hpp"

namespace hone {

enum class Verdict { pass, inconclusive, fail };

std::string to_string(Verdict v);

// One finite-depth diagnostic: a trajectory of (index, value) pairs with a
// verdict. Asymptotic hypotheses are never claimed proven, only trends.
struct TrendCheck {
    std::vector<std::pair<std::size_t, double>> values;
    Verdict verdict = Verdict::inconclusive;
    std::string note;
};

struct ConditionReport {
    TrendCheck cond_weight_decay;    // log|y_{n+2}| / log x_n -> 0
    TrendCheck cond_growth_ratio;   // log x_{n+1} / log x_n stays > 2
    TrendCheck cond_tail_sum;    // sum |a_{n+1}/(b_n b_{n+1})| converges
    TrendCheck cond_numer_size;   // log|a_n| / log|b_n| -> 0
    TrendCheck cond_weight_next;  // log|y_{n+1}| / log x_n -> 0
    TrendCheck cond_weight_sum;   // sum_j log|y_j| / log x_n -> 0
    bool growth_terms_ok = false;
    std::size_t first_index_ratio_above_2 = 0;  // for cond_growth_ratio
};

struct ExponentReport {
    std::vector<std::pair<std::size_t, double>> lambda_ratios;
    double lambda_ratio_err_bound = 0.0;
    double liminf_est = 0.0;
    double limsup_est = 0.0;
    double mu_formula = 0.0;   // two-branch formula on the finite-depth extrema
    std::vector<std::pair<std::size_t, double>> mu_cf_est;
    double mu_cf_running = 0.0;  // sup of the trailing window of the estimates
    bool has_closed_form = false;
    double mu_closed = 0.0;
    double lambda_closed = 0.0;
    std::string regime;  // "limsup" or "2+1/(liminf-1)"
    ConditionReport conditions;
};

/// max{limsup, 2 + 1/(liminf - 1)}. Throws std::domain_error if liminf <= 2.
double mu_from_lambda(double lambda_liminf, double lambda_limsup);

/// Closed-form exponent for a generated spec: lambda = (r+2+sqrt((r+2)^2+4q))/2,
/// mu = 2 + 1/sqrt(2) when (q,r) = (1,0), mu = lambda otherwise. Requires a
/// nonzero corner coefficient beta_{q,r}.
double mu_closed_form(const SeriesSpec& spec);
double lambda_closed_form(const SeriesSpec& spec);

/// Finite-depth estimates 2 + log|b_{n+1}| / log|b_1 ... b_n|, emitted for
/// every n whose prefix product exceeds 1, computed as sums of log_big values.
std::vector<std::pair<std::size_t, double>> estimate_mu_cf(const GeneralCF& cf);

/// Supremum over the trailing quarter of a trajectory (at least two entries).
double running_limsup(const std::vector<std::pair<std::size_t, double>>& traj);

ConditionReport check_conditions(const SeriesSpec& spec, const SequencePair& pair,
                                 const GeneralCF& cf, std::size_t burn_in = 3);

/// Log-space residual of the product identity
/// log(b_1...b_{2k+1}) = log x_{k+1} - log x_k + 2 sum_{j<=k} log|y_j| + O(1).
double product_identity_check(const SequencePair& pair, const GeneralCF& cf,
                              std::size_t k);

/// Full analysis pipeline for a generated pair (expansion -> transform -> estimates).
ExponentReport analyze_exponent(const SeriesSpec& spec, const SequencePair& pair,
                                std::size_t burn_in = 3);

std::string report_to_json(const ExponentReport& report);
std::string report_to_csv(const ExponentReport& report);

}  // namespace hone
