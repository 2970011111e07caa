#include "hone/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hone/asymptotics.hpp"
#include "hone/cf.hpp"
#include "hone/exponent.hpp"

namespace hone {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

namespace {

void add(VerifyReport& rep, const std::string& name, bool pass,
         const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
}

}  // namespace

VerifyReport verify_pair(const SeriesSpec& spec, const SequencePair& pair) {
    VerifyReport rep;
    const std::size_t N = pair.depth();

    // Recurrence identity on the stored values; catches corrupted caches.
    {
        bool ok = N >= 1 && pair.xs[0] == 1 && pair.xs[1] == spec.x1;
        long bad = -1;
        for (std::size_t n = 0; ok && n + 2 <= N; ++n) {
            BigInt rhs = pair.xs[n + 1] * pair.xs[n + 1] *
                         (pair.xs[n] * spec.eval_Q(pair.xs[n], pair.xs[n + 1]) +
                          pair.theta2_y[n]);
            if (pair.xs[n + 2] * pair.xs[n] != rhs) {
                ok = false;
                bad = static_cast<long>(n);
            }
        }
        add(rep, "recurrence_exact_division", ok,
            ok ? "" : "mismatch at n = " + std::to_string(bad));
    }

    // Divisibility chain and doubling lower bound x_n >= x_1^{2^{n-1}}.
    {
        bool ok = true;
        long bad = -1;
        BigInt low = spec.x1;
        for (std::size_t n = 1; ok && n + 1 <= N; ++n) {
            if (!mpz_divisible_p(pair.xs[n + 1].get_mpz_t(), pair.xs[n].get_mpz_t()) ||
                pair.xs[n + 1] <= pair.xs[n]) {
                ok = false;
                bad = static_cast<long>(n);
            }
            low = low * low;
            if (ok && pair.xs[n + 1] < low) {
                ok = false;
                bad = static_cast<long>(n);
            }
        }
        add(rep, "divisibility_and_min_growth", ok,
            ok ? "" : "violated at n = " + std::to_string(bad));
    }

    {
        bool ok = true;
        std::string detail;
        try {
            check_growth_terms(spec, pair);
        } catch (const InvariantError& e) {
            ok = false;
            detail = e.what();
        }
        add(rep, "growth_terms_positive_integer", ok, detail);
    }

    // sigma_n equals its 2n-term expansion, exactly, at several depths.
    {
        bool ok = true;
        std::string detail;
        try {
            for (std::size_t n = 1; n <= std::min<std::size_t>(N, 6); ++n)
                if (eval_cf(series_to_cf(pair, n)) != partial_sum(pair, n)) {
                    ok = false;
                    detail = "mismatch at n = " + std::to_string(n);
                    break;
                }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        add(rep, "series_cf_identity", ok, detail);
    }

    GeneralCF cf;
    {
        bool ok = true;
        std::string detail;
        try {
            const GeneralCF raw = series_to_cf(pair, N);
            cf = equivalence_transform(raw, pair);
            if (eval_cf(cf) != eval_cf(raw)) {
                ok = false;
                detail = "value changed by equivalence transform";
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        add(rep, "equivalence_transform_integral", ok, detail);
    }

    if (cf.integral) {
        // p_n q_{n-1} - p_{n-1} q_n = (-1)^{n-1} a_1 ... a_n at every index.
        bool ok = true;
        std::string detail;
        const auto cs = convergents(cf);
        BigInt prod_a = 1;
        BigInt p_prev = 0, q_prev = 1;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            prod_a *= cf.a[i].get_num();
            BigInt det = cs[i].p * q_prev - p_prev * cs[i].q;
            BigInt expect = (i % 2 == 0) ? prod_a : -prod_a;
            if (det != expect) {
                ok = false;
                detail = "determinant mismatch at n = " + std::to_string(i + 1);
                break;
            }
            if (cs[i].q < 1) {
                ok = false;
                detail = "q_n < 1 at n = " + std::to_string(i + 1);
                break;
            }
            p_prev = cs[i].p;
            q_prev = cs[i].q;
        }
        if (ok && cs.back().q != 0) {
            BigRat last = make_rat(cs.back().p, cs.back().q);
            if (last != eval_cf(cf)) {
                ok = false;
                detail = "last convergent differs from exact value";
            }
        }
        add(rep, "determinant_identity", ok, detail);

        // Product-identity residual must stay bounded in k.
        bool pok = true;
        std::string pdetail;
        const std::size_t kmax = std::min(N - 1, (cf.size() - 1) / 2);
        double early = 0, late = 0;
        for (std::size_t k = 1; k <= kmax; ++k) {
            const double r = product_identity_check(pair, cf, k);
            (k <= kmax / 2 ? early : late) = std::max(k <= kmax / 2 ? early : late, r);
        }
        pok = late <= std::max(2.0, 2.0 * early);
        {
            std::ostringstream os;
            os << "residual early max " << early << ", late max " << late;
            pdetail = os.str();
        }
        add(rep, "product_identity_residual_bounded", pok, pdetail);
    }

    if (spec.corner_nonzero() && N >= 8 && !pair.truncated) {
        bool ok = true;
        std::string detail;
        try {
            const AsymptoticsReport ar = analyze_sequence(spec, pair);
            ok = ar.residuals_conform;
            detail = ar.regime + "; " + ar.note;
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        add(rep, "regime_residuals", ok, detail);
    }

    return rep;
}

std::string grid_label(const SeriesSpec& spec) {
    std::ostringstream os;
    os << "a=" << spec.a << " P=[";
    for (std::size_t i = 0; i < spec.P.size(); ++i)
        os << spec.P[i] << (i + 1 < spec.P.size() ? "," : "");
    os << "] Q=[";
    for (std::size_t i = 0; i < spec.Q.size(); ++i) {
        for (std::size_t j = 0; j < spec.Q[i].size(); ++j)
            os << spec.Q[i][j] << (j + 1 < spec.Q[i].size() ? "," : "");
        os << (i + 1 < spec.Q.size() ? ";" : "");
    }
    os << "] x1=" << spec.x1;
    return os.str();
}

std::vector<GridResult> run_grid(const std::vector<SeriesSpec>& specs,
                                 bool parallel) {
    std::vector<GridResult> out(specs.size());
    const long count = static_cast<long>(specs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < count; ++i) {
        GridResult& r = out[i];
        r.label = grid_label(specs[i]);
        try {
            const SequencePair pair = build_sequences(specs[i]);
            r.depth = pair.depth();
            const VerifyReport rep = verify_pair(specs[i], pair);
            r.ok = rep.all_pass();
            if (!r.ok)
                for (const auto& c : rep.checks)
                    if (!c.pass) r.error += c.name + ": " + c.detail + "; ";
        } catch (const std::exception& e) {
            r.ok = false;
            r.error = e.what();
        }
    }
    return out;
}

std::vector<SeriesSpec> standard_grid(std::size_t depth) {
    const std::vector<long> as = {-2, -1, 1, 2, 3};
    const std::vector<std::vector<long>> Ps = {{0, 1}, {0, 0, 1}, {0, 1, 0, 1}};
    const std::vector<std::vector<std::vector<BigInt>>> Qs = {
        {{0}, {1}},            // X
        {{0, 1}},              // Y
        {{0, 0}, {0, 1}},      // XY
        {{0, 1}, {0, 0}, {1, 0}},  // X^2 + Y
    };
    std::vector<SeriesSpec> out;
    for (long a : as)
        for (const auto& P : Ps)
            for (const auto& Q : Qs) {
                SeriesSpec s;
                s.a = a;
                s.P = P;
                s.Q = Q;
                s.depth = depth;
                long p1 = 0;
                for (long c : P) p1 += c;  // P(1) = sum of coefficients
                BigInt y1 = pow_int(BigInt(std::abs(a)), p1);
                if (a < 0 && p1 % 2 != 0) y1 = -y1;
                s.x1 = std::max(BigInt(2), BigInt(y1 + 1));
                out.push_back(std::move(s));
            }
    return out;
}

}  // namespace hone
