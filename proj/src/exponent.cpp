#include "hone/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hone {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        default: return "inconclusive";
    }
}

namespace {

double log_abs(const BigRat& r) {
    // Entries here are integers (integral CFs) or ratios of moderate integers.
    return log_big(abs(r.get_num())).value - log_big(abs(r.get_den())).value;
}

// Trend toward 0: identically zero passes outright, otherwise the trailing
// half must stay small and not exceed the leading half.
Verdict vanishing_trend(const std::vector<std::pair<std::size_t, double>>& vals) {
    if (vals.empty()) return Verdict::inconclusive;
    double all_max = 0, head_max = 0, tail_max = 0;
    const std::size_t half = vals.size() / 2;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double v = std::abs(vals[i].second);
        all_max = std::max(all_max, v);
        (i < half ? head_max : tail_max) = std::max(i < half ? head_max : tail_max, v);
    }
    if (all_max == 0.0) return Verdict::pass;
    if (tail_max >= 1.0) return Verdict::fail;
    if (tail_max < 0.5 && tail_max <= head_max) return Verdict::pass;
    return Verdict::inconclusive;
}

}  // namespace

double mu_from_lambda(double lambda_liminf, double lambda_limsup) {
    if (!(lambda_liminf > 2.0))
        throw std::domain_error("mu_from_lambda: requires liminf > 2");
    return std::max(lambda_limsup, 2.0 + 1.0 / (lambda_liminf - 1.0));
}

double lambda_closed_form(const SeriesSpec& spec) {
    if (!spec.corner_nonzero())
        throw SpecError("lambda_closed_form: corner coefficient of Q is zero");
    const double q = static_cast<double>(spec.q_degree());
    const double r = static_cast<double>(spec.r_degree());
    if (q + r == 0) throw SpecError("lambda_closed_form: Q is constant");
    return 0.5 * (r + 2.0 + std::sqrt((r + 2.0) * (r + 2.0) + 4.0 * q));
}

double mu_closed_form(const SeriesSpec& spec) {
    const std::size_t q = spec.q_degree(), r = spec.r_degree();
    const double lambda = lambda_closed_form(spec);
    if (q == 1 && r == 0) {
        if (std::abs(lambda - (1.0 + std::sqrt(2.0))) > 1e-12)
            throw std::logic_error("lambda != 1+sqrt(2) in the (1,0) branch");
        return 2.0 + 1.0 / std::sqrt(2.0);
    }
    if (lambda < (3.0 + std::sqrt(5.0)) / 2.0 - 1e-12)
        throw std::logic_error("lambda below (3+sqrt(5))/2 outside the (1,0) branch");
    return lambda;
}

std::vector<std::pair<std::size_t, double>> estimate_mu_cf(const GeneralCF& cf) {
    if (!cf.integral)
        throw std::invalid_argument("estimate_mu_cf: CF must be integral");
    const std::size_t M = cf.size();
    std::vector<double> logb(M);
    for (std::size_t i = 0; i < M; ++i) {
        const BigInt b = cf.b[i].get_num();
        if (b == 0)
            throw std::domain_error("estimate_mu_cf: b_" + std::to_string(i + 1) +
                                    " = 0");
        logb[i] = log_big(abs(b)).value;
    }
    std::vector<std::pair<std::size_t, double>> out;
    double prefix = 0.0;
    for (std::size_t n = 1; n + 1 <= M; ++n) {
        prefix += logb[n - 1];  // log|b_1 ... b_n|
        if (prefix <= 0.0) continue;  // leading b's may all be 1
        out.emplace_back(n, 2.0 + logb[n] / prefix);
    }
    return out;
}

double running_limsup(const std::vector<std::pair<std::size_t, double>>& traj) {
    if (traj.empty()) throw std::invalid_argument("running_limsup: empty trajectory");
    // The estimates split into two interleaved convergent subsequences, so a
    // short trailing window (at least two entries, covering both parities)
    // tracks the limsup without dragging in poorly converged early terms.
    const std::size_t window = std::min(
        traj.size(), std::max<std::size_t>(2, (traj.size() + 3) / 4));
    const std::size_t start = traj.size() - window;
    double sup = -1e300;
    for (std::size_t i = start; i < traj.size(); ++i)
        sup = std::max(sup, traj[i].second);
    return sup;
}

ConditionReport check_conditions(const SeriesSpec& spec, const SequencePair& pair,
                                 const GeneralCF& cf, std::size_t burn_in) {
    const std::size_t N = pair.depth();
    if (N < 5) throw std::invalid_argument("check_conditions: depth must be >= 5");
    ConditionReport rep;

    std::vector<double> lx(N + 1), ly(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        lx[n] = log_big(pair.xs[n]).value;
        ly[n] = log_big(abs(pair.ys[n])).value;
    }

    for (std::size_t n = 1; n + 2 <= N; ++n)
        rep.cond_weight_decay.values.emplace_back(n, ly[n + 2] / lx[n]);
    rep.cond_weight_decay.verdict = vanishing_trend(rep.cond_weight_decay.values);

    for (std::size_t n = 1; n + 1 <= N; ++n)
        rep.cond_growth_ratio.values.emplace_back(n, lx[n + 1] / lx[n]);
    {
        double tail_min = 1e300;
        const std::size_t half = rep.cond_growth_ratio.values.size() / 2;
        for (std::size_t i = half; i < rep.cond_growth_ratio.values.size(); ++i)
            tail_min = std::min(tail_min, rep.cond_growth_ratio.values[i].second);
        rep.cond_growth_ratio.verdict = tail_min > 2.0 ? Verdict::pass : Verdict::inconclusive;
        std::ostringstream os;
        os << "min over trailing half = " << tail_min;
        rep.cond_growth_ratio.note = os.str();
        for (const auto& [n, v] : rep.cond_growth_ratio.values)
            if (v > 2.0) {
                rep.first_index_ratio_above_2 = n;
                break;
            }
    }

    // tail sum: partial sums of |a_{n+1}/(b_n b_{n+1})| in log space, with a
    // same-parity geometric-decay certificate on the terms.
    {
        const std::size_t M = cf.size();
        std::vector<double> terms;
        double s = 0;
        for (std::size_t n = 1; n + 1 <= M; ++n) {
            const double t = std::exp(log_abs(cf.a[n]) - log_abs(cf.b[n - 1]) -
                                      log_abs(cf.b[n]));
            terms.push_back(t);
            s += t;
            rep.cond_tail_sum.values.emplace_back(n, s);
        }
        bool dominated = terms.size() > 2 * burn_in + 2;
        for (std::size_t i = std::max<std::size_t>(2 * burn_in, terms.size() / 2);
             dominated && i + 2 < terms.size(); ++i)
            if (terms[i + 2] > 0.9 * terms[i] && terms[i + 2] > 1e-300)
                dominated = false;
        rep.cond_tail_sum.verdict = dominated ? Verdict::pass : Verdict::inconclusive;
    }

    for (std::size_t n = 1; n <= cf.size(); ++n) {
        const double lb = log_abs(cf.b[n - 1]);
        if (lb > 0) rep.cond_numer_size.values.emplace_back(n, log_abs(cf.a[n - 1]) / lb);
    }
    rep.cond_numer_size.verdict = vanishing_trend(rep.cond_numer_size.values);

    for (std::size_t n = 1; n + 1 <= N; ++n)
        rep.cond_weight_next.values.emplace_back(n, ly[n + 1] / lx[n]);
    rep.cond_weight_next.verdict = vanishing_trend(rep.cond_weight_next.values);

    {
        double acc = 0;
        for (std::size_t n = 1; n <= N; ++n) {
            acc += ly[n];
            rep.cond_weight_sum.values.emplace_back(n, acc / lx[n]);
        }
        rep.cond_weight_sum.verdict = vanishing_trend(rep.cond_weight_sum.values);
    }

    try {
        check_growth_terms(spec, pair);
        rep.growth_terms_ok = true;
    } catch (const InvariantError&) {
        rep.growth_terms_ok = false;
    }
    return rep;
}

double product_identity_check(const SequencePair& pair, const GeneralCF& cf,
                              std::size_t k) {
    if (cf.size() < 2 * k + 1 || pair.depth() < k + 1)
        throw std::out_of_range("product_identity_check: k too large");
    double sum_logb = 0;
    for (std::size_t i = 0; i < 2 * k + 1; ++i) sum_logb += log_abs(cf.b[i]);
    double rhs = log_big(pair.xs[k + 1]).value - log_big(pair.xs[k]).value;
    for (std::size_t j = 1; j <= k; ++j) rhs += 2.0 * log_big(abs(pair.ys[j])).value;
    return std::abs(sum_logb - rhs);
}

ExponentReport analyze_exponent(const SeriesSpec& spec, const SequencePair& pair,
                                std::size_t burn_in) {
    ExponentReport rep;
    const std::size_t N = pair.depth();
    if (N < 5) throw std::invalid_argument("analyze_exponent: depth must be >= 5");

    std::vector<LogValue> lx(N + 1);
    for (std::size_t n = 0; n <= N; ++n) lx[n] = log_big(pair.xs[n]);
    for (std::size_t n = 1; n + 1 <= N; ++n) {
        rep.lambda_ratios.emplace_back(n, lx[n + 1].value / lx[n].value);
        rep.lambda_ratio_err_bound =
            std::max(rep.lambda_ratio_err_bound,
                     2.0 * (lx[n].rel_err_bound + lx[n + 1].rel_err_bound));
    }

    {
        double lo = 1e300, hi = -1e300;
        const std::size_t start =
            std::max(burn_in, rep.lambda_ratios.size() / 2);
        for (std::size_t i = start; i < rep.lambda_ratios.size(); ++i) {
            lo = std::min(lo, rep.lambda_ratios[i].second);
            hi = std::max(hi, rep.lambda_ratios[i].second);
        }
        rep.liminf_est = lo;
        rep.limsup_est = hi;
    }
    if (rep.liminf_est > 2.0)
        rep.mu_formula = mu_from_lambda(rep.liminf_est, rep.limsup_est);

    const GeneralCF raw = series_to_cf(pair, N);
    const GeneralCF cf = equivalence_transform(raw, pair);
    rep.mu_cf_est = estimate_mu_cf(cf);
    rep.mu_cf_running = running_limsup(rep.mu_cf_est);

    if (spec.corner_nonzero()) {
        rep.has_closed_form = true;
        rep.lambda_closed = lambda_closed_form(spec);
        rep.mu_closed = mu_closed_form(spec);
    }
    if (rep.liminf_est > 2.0)
        rep.regime = rep.limsup_est >= 2.0 + 1.0 / (rep.liminf_est - 1.0)
                         ? "limsup"
                         : "2+1/(liminf-1)";
    rep.conditions = check_conditions(spec, pair, cf, burn_in);
    return rep;
}

namespace {

json trend_to_json(const TrendCheck& t) {
    json vals = json::array();
    for (const auto& [n, v] : t.values) vals.push_back({{"n", n}, {"value", v}});
    return {{"values", vals}, {"verdict", to_string(t.verdict)}, {"note", t.note}};
}

}  // namespace

std::string report_to_json(const ExponentReport& rep) {
    json j;
    j["format_version"] = 1;
    json lr = json::array();
    for (const auto& [n, v] : rep.lambda_ratios) lr.push_back({{"n", n}, {"value", v}});
    j["lambda_ratios"] = std::move(lr);
    j["lambda_ratio_err_bound"] = rep.lambda_ratio_err_bound;
    j["liminf_est"] = rep.liminf_est;
    j["limsup_est"] = rep.limsup_est;
    j["mu_formula"] = rep.mu_formula;
    json est_arr = json::array();
    for (const auto& [n, v] : rep.mu_cf_est) est_arr.push_back({{"n", n}, {"value", v}});
    j["mu_cf_est"] = std::move(est_arr);
    j["mu_cf_running"] = rep.mu_cf_running;
    j["has_closed_form"] = rep.has_closed_form;
    if (rep.has_closed_form) {
        j["mu_closed"] = rep.mu_closed;
        j["lambda_closed"] = rep.lambda_closed;
    }
    j["regime"] = rep.regime;
    j["conditions"] = {{"weight_decay", trend_to_json(rep.conditions.cond_weight_decay)},
                       {"growth_ratio", trend_to_json(rep.conditions.cond_growth_ratio)},
                       {"tail_sum", trend_to_json(rep.conditions.cond_tail_sum)},
                       {"numer_size", trend_to_json(rep.conditions.cond_numer_size)},
                       {"weight_next", trend_to_json(rep.conditions.cond_weight_next)},
                       {"weight_sum", trend_to_json(rep.conditions.cond_weight_sum)},
                       {"growth_terms_ok", rep.conditions.growth_terms_ok},
                       {"first_index_ratio_above_2",
                        rep.conditions.first_index_ratio_above_2}};
    return j.dump(2);
}

std::string report_to_csv(const ExponentReport& rep) {
    std::ostringstream os;
    os << "n,ratio,estimate,bound\n";
    os.precision(17);
    const auto& ests = rep.mu_cf_est;
    std::size_t ci = 0;
    for (const auto& [n, ratio] : rep.lambda_ratios) {
        double est = std::numeric_limits<double>::quiet_NaN();
        // pair lambda ratio at n with the odd-index estimate 2n+1 when present
        while (ci < ests.size() && ests[ci].first < 2 * n + 1) ++ci;
        if (ci < ests.size() && ests[ci].first == 2 * n + 1) est = ests[ci].second;
        os << n << ',' << ratio << ',' << est << ','
           << rep.lambda_ratio_err_bound << '\n';
    }
    return os.str();
}

}  // namespace hone
