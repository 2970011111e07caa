#include "hone/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hone {

using nlohmann::json;

QuadRat QuadRat::operator+(const QuadRat& o) const { return {x + o.x, y + o.y, R}; }
QuadRat QuadRat::operator-(const QuadRat& o) const { return {x - o.x, y - o.y, R}; }

QuadRat QuadRat::operator*(const QuadRat& o) const {
    return {x * o.x + y * o.y * BigRat(R), x * o.y + y * o.x, R};
}

QuadRat QuadRat::operator/(const QuadRat& o) const {
    BigRat norm = o.x * o.x - o.y * o.y * BigRat(R);
    if (norm == 0) throw std::domain_error("QuadRat: division by zero norm");
    return *this * QuadRat{o.x / norm, -o.y / norm, R};
}

namespace {

struct Roots {
    double lambda;
    double nu;
};

Roots roots_of(double A, double B) {
    const double disc = A * A - 4.0 * B;
    if (disc == 0.0) throw std::domain_error("recurrence: A^2 = 4B (repeated root)");
    if (disc < 0.0) throw std::domain_error("recurrence: complex roots unsupported");
    const double s = std::sqrt(disc);
    double r1 = (A + s) / 2.0, r2 = (A - s) / 2.0;
    if (std::abs(r2) > std::abs(r1)) std::swap(r1, r2);
    if (r1 == 0.0) std::swap(r1, r2);  // keep lambda != 0
    return {r1, r2};
}

}  // namespace

double RecurrenceModel::lambda() const { return roots_of(A, B).lambda; }
double RecurrenceModel::nu() const { return roots_of(A, B).nu; }

double RecurrenceModel::tail_value() const {
    if (!std::isnan(tau_tail)) return tau_tail;
    return tau.empty() ? 0.0 : tau.back();
}

std::vector<double> iterate_recurrence(const RecurrenceModel& model, std::size_t N) {
    std::vector<double> u(N + 1);
    u[0] = model.u0;
    if (N >= 1) u[1] = model.u1;
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        const double t = n < model.tau.size() ? model.tau[n] : model.tail_value();
        u[n + 2] = model.A * u[n + 1] - model.B * u[n] + t;
    }
    return u;
}

std::vector<double> solve_recurrence(const RecurrenceModel& model, std::size_t N) {
    const auto [lambda, nu] = roots_of(model.A, model.B);
    auto tau_at = [&](std::size_t k) {
        return k < model.tau.size() ? model.tau[k] : model.tail_value();
    };
    std::vector<double> u(N + 1);
    u[0] = model.u0;
    if (model.B != 0.0) {
        for (std::size_t n = 1; n <= N; ++n) {
            double s = (model.u1 - nu * model.u0) * std::pow(lambda, double(n)) +
                       (lambda * model.u0 - model.u1) * std::pow(nu, double(n));
            for (std::size_t k = 1; k + 1 <= n; ++k)
                s += tau_at(k - 1) * (std::pow(lambda, double(n - k)) -
                                      std::pow(nu, double(n - k)));
            u[n] = s / (lambda - nu);
        }
    } else {
        // nu = 0; the B -> 0 limit of the closed form.
        for (std::size_t n = 1; n <= N; ++n) {
            double s = model.u1 * std::pow(lambda, double(n));
            for (std::size_t k = 1; k + 1 <= n; ++k)
                s += tau_at(k - 1) * std::pow(lambda, double(n - k));
            u[n] = s / lambda;
        }
    }
    return u;
}

std::vector<BigRat> iterate_recurrence_exact(const BigRat& A, const BigRat& B,
                                             const BigRat& u0, const BigRat& u1,
                                             const std::vector<BigRat>& tau,
                                             std::size_t N) {
    std::vector<BigRat> u(N + 1);
    u[0] = u0;
    if (N >= 1) u[1] = u1;
    for (std::size_t n = 0; n + 2 <= N; ++n) {
        if (n >= tau.size())
            throw std::invalid_argument("iterate_recurrence_exact: tau too short");
        u[n + 2] = A * u[n + 1] - B * u[n] + tau[n];
    }
    return u;
}

std::vector<BigRat> solve_recurrence_exact(const BigRat& A, const BigRat& B,
                                           const BigRat& u0, const BigRat& u1,
                                           const std::vector<BigRat>& tau,
                                           std::size_t N) {
    const BigRat disc = A * A - 4 * B;
    if (disc == 0)
        throw std::domain_error("solve_recurrence_exact: A^2 = 4B (repeated root)");
    if (disc < 0)
        throw std::domain_error("solve_recurrence_exact: complex roots unsupported");

    std::vector<BigRat> u(N + 1);
    u[0] = u0;

    if (B == 0) {
        const BigRat lambda = A;  // other root is 0; A != 0 since disc != 0
        std::vector<BigRat> lp(N + 1);
        lp[0] = 1;
        for (std::size_t i = 1; i <= N; ++i) lp[i] = lp[i - 1] * lambda;
        for (std::size_t n = 1; n <= N; ++n) {
            BigRat s = u1 * lp[n];
            for (std::size_t k = 1; k + 1 <= n; ++k) {
                if (k - 1 >= tau.size())
                    throw std::invalid_argument("solve_recurrence_exact: tau too short");
                s += tau[k - 1] * lp[n - k];
            }
            u[n] = s / lambda;
        }
        return u;
    }

    // lambda, nu = (A +- sqrt(disc))/2 live in Q(sqrt(R)), R = num(disc)*den(disc).
    const BigInt R = disc.get_num() * disc.get_den();
    const BigRat half(1, 2);
    const QuadRat sqrt_disc{BigRat(0), make_rat(1, disc.get_den()), R};
    const QuadRat lambda = QuadRat{A * half, BigRat(0), R} + sqrt_disc * QuadRat{half, BigRat(0), R};
    const QuadRat nu = QuadRat{A * half, BigRat(0), R} - sqrt_disc * QuadRat{half, BigRat(0), R};

    std::vector<QuadRat> lp, np;
    lp.reserve(N + 1);
    np.reserve(N + 1);
    lp.emplace_back(BigRat(1), BigRat(0), R);
    np.emplace_back(BigRat(1), BigRat(0), R);
    for (std::size_t i = 1; i <= N; ++i) {
        lp.push_back(lp.back() * lambda);
        np.push_back(np.back() * nu);
    }

    // Exact square root of R when R is a perfect square (then the sqrt part
    // need not cancel and is folded back into Q).
    BigInt sqrtR;
    const bool square = mpz_perfect_square_p(R.get_mpz_t()) != 0;
    if (square) mpz_sqrt(sqrtR.get_mpz_t(), R.get_mpz_t());

    const QuadRat c1 = QuadRat{u1, BigRat(0), R} - nu * QuadRat{u0, BigRat(0), R};
    const QuadRat c2 = lambda * QuadRat{u0, BigRat(0), R} - QuadRat{u1, BigRat(0), R};
    for (std::size_t n = 1; n <= N; ++n) {
        QuadRat s = c1 * lp[n] + c2 * np[n];
        for (std::size_t k = 1; k + 1 <= n; ++k) {
            if (k - 1 >= tau.size())
                throw std::invalid_argument("solve_recurrence_exact: tau too short");
            s = s + QuadRat{tau[k - 1], BigRat(0), R} * (lp[n - k] - np[n - k]);
        }
        QuadRat v = s / sqrt_disc;
        if (square) {
            u[n] = v.x + v.y * BigRat(sqrtR);
        } else {
            if (v.y != 0)
                throw std::logic_error("solve_recurrence_exact: sqrt part did not cancel");
            u[n] = v.x;
        }
    }
    return u;
}

AsymptoticsReport growth_constants(const RecurrenceModel& model) {
    const auto [lambda, nu] = roots_of(model.A, model.B);
    if (!(std::abs(lambda) > 1.0))
        throw std::domain_error("growth_constants: |lambda| must exceed 1");

    double sup_tau = std::abs(model.tail_value());
    for (double t : model.tau) sup_tau = std::max(sup_tau, std::abs(t));
    if (sup_tau > 1e6 && model.tau.size() >= 4 &&
        std::abs(model.tau.back()) > 2.0 * std::abs(model.tau[model.tau.size() / 2]))
        throw std::domain_error("growth_constants: tau appears unbounded");

    auto tau_at = [&](std::size_t k) {
        return k < model.tau.size() ? model.tau[k] : model.tail_value();
    };
    auto series = [&](double root) {
        double s = 0.0, p = 1.0;
        const double ar = std::abs(root);
        for (std::size_t k = 1;; ++k) {
            p /= root;
            s += tau_at(k - 1) * p;
            const double tail = sup_tau * std::pow(ar, -double(k)) / (ar - 1.0);
            if (tail < 1e-12) break;
            if (k > 1000000)
                throw std::runtime_error("growth_constants: series did not converge");
        }
        return s;
    };

    AsymptoticsReport rep;
    rep.lambda = lambda;
    rep.nu = nu;
    rep.C = (model.u1 - nu * model.u0 + series(lambda)) / (lambda - nu);
    rep.C_fit = rep.C;
    const double an = std::abs(nu);
    if (an > 1.0 + 1e-9) {
        rep.has_D = true;
        rep.D = (lambda * model.u0 - model.u1 - series(nu)) / (lambda - nu);
        rep.regime = "|nu|>1";
    } else if (an >= 1.0 - 1e-9) {
        rep.regime = "|nu|=1";
    } else {
        rep.regime = "|nu|<1";
    }
    return rep;
}

AsymptoticsReport analyze_sequence(const SeriesSpec& spec, const SequencePair& pair,
                                   std::size_t burn_in) {
    const std::size_t N = pair.depth();
    if (N < 8) throw std::invalid_argument("analyze_sequence: depth must be >= 8");
    if (!spec.corner_nonzero())
        throw SpecError("analyze_sequence: corner coefficient of Q is zero");
    const std::size_t q = spec.q_degree(), r = spec.r_degree();

    std::vector<double> u(N + 1);
    for (std::size_t n = 0; n <= N; ++n) u[n] = log_big(pair.xs[n]).value;

    RecurrenceModel model;
    model.A = double(r) + 2.0;
    model.B = -double(q);
    model.u0 = u[0];
    model.u1 = u[1];
    for (std::size_t n = 0; n + 2 <= N; ++n)
        model.tau.push_back(u[n + 2] - model.A * u[n + 1] + model.B * u[n]);
    model.tau_tail = log_big(spec.Q[q][r]).value;  // tau_n -> log beta_{q,r}

    AsymptoticsReport rep = growth_constants(model);
    if (q < r + 3)
        rep.regime = "q<r+3";
    else if (q == r + 3)
        rep.regime = "q=r+3";
    else
        rep.regime = "q>r+3";

    // Least-squares fit of u_n against lambda^n on the trailing half.
    {
        double num = 0, den = 0;
        for (std::size_t n = N / 2; n <= N; ++n) {
            const double p = std::pow(rep.lambda, double(n));
            num += u[n] * p;
            den += p * p;
        }
        rep.C_fit = num / den;
        rep.C_discrepancy = std::abs(rep.C - rep.C_fit);
    }

    for (std::size_t n = 0; n <= N; ++n) {
        double res = u[n] - rep.C * std::pow(rep.lambda, double(n));
        if (rep.has_D) res -= rep.D * std::pow(rep.nu, double(n));
        rep.residuals.emplace_back(n, res);
    }

    // Conformance: bounded residuals (O(n)-normalized in the q = r+3 regime).
    {
        double head = 0, tail = 0;
        const std::size_t half = (N + 1) / 2;
        for (const auto& [n, res] : rep.residuals) {
            double w = std::abs(res);
            if (q == r + 3) w /= std::max<double>(1.0, double(n));
            if (n < burn_in) continue;
            (n < half ? head : tail) = std::max(n < half ? head : tail, w);
        }
        rep.residuals_conform = tail <= std::max(1.0, 2.0 * head);
        std::ostringstream os;
        os << "max normalized residual: head " << head << ", tail " << tail;
        rep.note = os.str();
    }
    return rep;
}

std::string asym_report_to_json(const AsymptoticsReport& rep) {
    json j;
    j["format_version"] = 1;
    j["lambda"] = rep.lambda;
    j["nu"] = rep.nu;
    j["regime"] = rep.regime;
    j["C"] = rep.C;
    j["C_fit"] = rep.C_fit;
    j["C_discrepancy"] = rep.C_discrepancy;
    j["has_D"] = rep.has_D;
    if (rep.has_D) j["D"] = rep.D;
    json res = json::array();
    for (const auto& [n, v] : rep.residuals) res.push_back({{"n", n}, {"residual", v}});
    j["residuals"] = std::move(res);
    j["residuals_conform"] = rep.residuals_conform;
    j["note"] = rep.note;
    return j.dump(2);
}

std::string residuals_to_csv(const AsymptoticsReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "n,residual\n";
    for (const auto& [n, v] : rep.residuals) os << n << ',' << v << '\n';
    return os.str();
}

}  // namespace hone
