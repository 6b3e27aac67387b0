#include "censorgames/multi_proposer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "censorgames/rng.hpp"

namespace censorgames {

namespace {

void check_builders(int m) {
    if (m < 2) throw std::invalid_argument("equilibrium solving needs m >= 2 builders");
}

double nonneg_finite(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
    return v;
}

// f(p) = B*(1-(1-p)^m) - m*p*c: the telescoped indifference condition.
double balanced_gap(double p, double B, double c, int m) {
    return B * (1.0 - std::pow(1.0 - p, m)) - m * p * c;
}

EquilibriumSolution finish(double p, int m, double c, double defender_spend,
                           EquilibriumRegime regime) {
    EquilibriumSolution s;
    s.include_prob = p;
    s.attacker_win_prob = std::pow(1.0 - p, m);
    s.defender_win_prob = 1.0 - s.attacker_win_prob;
    s.expected_spend_attacker = (1.0 - p) * m * c;
    s.expected_spend_defender = defender_spend;
    s.regime = regime;
    return s;
}

}  // namespace

void BudgetBalancedOffer::validate() const {
    nonneg_finite(total_payment, "total_payment");
    nonneg_finite(exclusion_payment, "exclusion_payment");
}

void ConditionalOffer::validate() const {
    nonneg_finite(sole_payment, "sole_payment");
    nonneg_finite(shared_payment, "shared_payment");
    nonneg_finite(exclusion_payment, "exclusion_payment");
    if (shared_payment >= sole_payment)
        throw std::invalid_argument("conditional offer needs shared_payment < sole_payment");
}

EquilibriumSolution solve_budget_balanced(const BudgetBalancedOffer& offer, int m) {
    check_builders(m);
    offer.validate();
    const double B = offer.total_payment;
    const double c = offer.exclusion_payment;

    if (B <= c)
        return finish(0.0, m, c, 0.0, EquilibriumRegime::AllExclude);
    if (B > m * c)
        return finish(1.0, m, c, B, EquilibriumRegime::AllInclude);

    // Here c < B <= m*c, so f(0+) > 0 and f(1) <= 0: bisect. Guard against a
    // malformed curve by requiring a single sign change on a coarse scan.
    int changes = 0;
    double prev = balanced_gap(1.0 / 1024, B, c, m);
    for (int i = 2; i < 1024; ++i) {
        const double cur = balanced_gap(i / 1024.0, B, c, m);
        if ((prev > 0) != (cur > 0)) ++changes;
        prev = cur;
    }
    if (changes > 1)
        throw equilibrium_error("indifference curve has multiple sign changes");

    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (balanced_gap(mid, B, c, m) > 0.0 ? lo : hi) = mid;
    }
    const double p = 0.5 * (lo + hi);
    const double defender_spend = (1.0 - std::pow(1.0 - p, m)) * B;
    return finish(p, m, c, defender_spend, EquilibriumRegime::Mixed);
}

double indifference_residual_balanced(double p, double B, double c, int m) {
    check_builders(m);
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    // Expected share of an includer: the other m-1 builders include j times.
    double residual = -c;
    double binom = 1.0;  // C(m-1, j) p^j (1-p)^(m-1-j), built incrementally
    for (int j = 0; j <= m - 1; ++j) {
        const double weight =
            binom * std::pow(p, j) * std::pow(1.0 - p, m - 1 - j);
        residual += weight * B / (j + 1);
        binom = binom * (m - 1 - j) / (j + 1);
    }
    return residual;
}

EquilibriumSolution solve_conditional(const ConditionalOffer& offer, int m) {
    check_builders(m);
    offer.validate();
    const double B = offer.sole_payment;
    const double b = offer.shared_payment;
    const double c = offer.exclusion_payment;

    if (c >= B) return finish(0.0, m, c, 0.0, EquilibriumRegime::AllExclude);
    if (c <= b) return finish(1.0, m, c, m * b, EquilibriumRegime::AllInclude);

    const double p = 1.0 - std::pow((c - b) / (B - b), 1.0 / (m - 1));

    // Defender pays B on a sole inclusion, per-head b when two or more include.
    double spend = m * p * std::pow(1.0 - p, m - 1) * B;
    double binom = static_cast<double>(m) * (m - 1) / 2;  // C(m, j) from j = 2 up
    for (int j = 2; j <= m; ++j) {
        spend += binom * std::pow(p, j) * std::pow(1.0 - p, m - j) * j * b;
        binom = binom * (m - j) / (j + 1);
    }
    return finish(p, m, c, spend, EquilibriumRegime::Mixed);
}

double defender_win_floor(double c, double B, int m) {
    check_builders(m);
    nonneg_finite(c, "c");
    if (!(B > 0.0) || !std::isfinite(B)) throw std::invalid_argument("B must be finite and > 0");
    if (c >= B) throw std::invalid_argument("defender_win_floor needs c < B");
    return 1.0 - std::pow(c / B, static_cast<double>(m) / (m - 1));
}

bool attacker_sure_win_condition(int T, int N, int m, double D, double A) {
    if (T < 1 || N < 1 || N > T || m < 1)
        throw std::invalid_argument("need 1 <= N <= T and m >= 1");
    nonneg_finite(D, "D");
    nonneg_finite(A, "A");
    return static_cast<double>(T - N + 1) * m * D / N <= A;
}

FloorCondition defender_floor_condition(int T, int N, int m, double D, double A) {
    if (T < 1 || N < 1 || N > T || m < 1)
        throw std::invalid_argument("need 1 <= N <= T and m >= 1");
    nonneg_finite(D, "D");
    nonneg_finite(A, "A");
    FloorCondition fc;
    fc.holds = A < static_cast<double>(T - 4 * N + 1) * m * D / N;
    fc.win_prob_floor = 1.0 - std::exp(-2.0 * N / 3.0);
    return fc;
}

namespace {

// Largest c such that m*c <= budget holds after rounding; budget/m alone can
// overshoot by an ulp and trip the hard budget check.
double budget_share(double budget, int m) {
    double c = budget / m;
    while (c > 0.0 && c * m > budget) c = std::nextafter(c, 0.0);
    return c;
}

class ConstantGmDefender final : public GmDefenderPolicy {
public:
    ConstantGmDefender(double B, double b) : offer_{B, b} {}

    GmOffer offer(const GmRoundView& view) override {
        // Clamp so the worst-case payment fits what is left of the budget.
        const double d = view.state.defender_budget;
        return GmOffer{std::min(offer_.total_payment, d),
                       std::min(offer_.shared_payment, budget_share(d, view.builders))};
    }

private:
    GmOffer offer_;
};

class RandomGmDefender final : public GmDefenderPolicy {
public:
    RandomGmDefender(std::uint64_t stream, double cap_abs) : gen_(stream), cap_(cap_abs) {
        nonneg_finite(cap_abs, "cap_abs");
    }

    GmOffer offer(const GmRoundView& view) override {
        const double hi = std::min(cap_, view.state.defender_budget);
        return GmOffer{gen_.next_double(0.0, hi), 0.0};
    }

private:
    SplitMix64 gen_;
    double cap_;
};

class RatioGmAttacker final : public GmAttackerPolicy {
public:
    explicit RatioGmAttacker(double ratio) : ratio_(nonneg_finite(ratio, "ratio")) {}

    double exclusion_payment(const GmRoundView& view, const GmOffer& offer) override {
        return std::min(ratio_ * offer.total_payment,
                        budget_share(view.state.attacker_budget, view.builders));
    }

private:
    double ratio_;
};

class ConstantGmAttacker final : public GmAttackerPolicy {
public:
    explicit ConstantGmAttacker(double c) : c_(nonneg_finite(c, "c")) {}

    double exclusion_payment(const GmRoundView& view, const GmOffer&) override {
        return std::min(c_, budget_share(view.state.attacker_budget, view.builders));
    }

private:
    double c_;
};

}  // namespace

std::unique_ptr<GmDefenderPolicy> gm_defender_constant(double B, double b) {
    return std::make_unique<ConstantGmDefender>(B, b);
}

std::unique_ptr<GmDefenderPolicy> gm_defender_random(std::uint64_t stream, double cap_abs) {
    return std::make_unique<RandomGmDefender>(stream, cap_abs);
}

std::unique_ptr<GmAttackerPolicy> gm_attacker_ratio(double ratio) {
    return std::make_unique<RatioGmAttacker>(ratio);
}

std::unique_ptr<GmAttackerPolicy> gm_attacker_constant(double c) {
    return std::make_unique<ConstantGmAttacker>(c);
}

MonteCarloReport simulate_gm(const GameParams& params, int m, Mechanism mechanism,
                             const GmDefenderFactory& defender, const GmAttackerFactory& attacker,
                             int trials, std::uint64_t seed) {
    params.validate();
    check_builders(m);
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    const int T = params.total_rounds;
    const int N = params.required_wins;

    // Equilibria depend only on the posted offers, so cache them; constant
    // policies then cost one solve for the whole run.
    std::map<std::tuple<double, double, double>, double> include_prob;
    const auto solve_p = [&](const GmOffer& o, double c) {
        const auto key = std::make_tuple(o.total_payment, o.shared_payment, c);
        if (auto it = include_prob.find(key); it != include_prob.end()) return it->second;
        const double p =
            mechanism == Mechanism::BudgetBalanced
                ? solve_budget_balanced({o.total_payment, c}, m).include_prob
                : solve_conditional({o.total_payment, o.shared_payment, c}, m).include_prob;
        include_prob.emplace(key, p);
        return p;
    };

    int defender_wins = 0;
    for (int trial = 0; trial < trials; ++trial) {
        const auto u64 = [](int v) { return static_cast<std::uint64_t>(v); };
        GameState st{T, N, 0, params.defender_budget, params.attacker_budget};
        auto dpol = defender(st, derive_stream(seed, {u64(trial), 1}));
        auto apol = attacker(st, derive_stream(seed, {u64(trial), 2}));

        for (int round = 0; terminal_status(st) == GameOutcome::Ongoing; ++round) {
            GmRoundView view{round, st, m, mechanism};
            const GmOffer offer = dpol->offer(view);
            const double c = apol->exclusion_payment(view, offer);

            const double B = offer.total_payment;
            const double b = mechanism == Mechanism::Conditional ? offer.shared_payment : 0.0;
            const double worst_defender = std::max(B, m * b);
            if (!(B >= 0.0) || !(b >= 0.0) || !std::isfinite(B) || !std::isfinite(b) ||
                (mechanism == Mechanism::Conditional && b >= B) ||
                worst_defender > st.defender_budget)
                throw strategy_fault(round, "defender offer", worst_defender, st.defender_budget);
            if (!(c >= 0.0) || !std::isfinite(c) || m * c > st.attacker_budget)
                throw strategy_fault(round, "attacker offer", m * c, st.attacker_budget);

            const double p = solve_p(offer, c);
            SplitMix64 gen(derive_stream(seed, {u64(trial), 3, u64(round)}));
            int includers = 0;
            for (int j = 0; j < m; ++j)
                if (gen.bernoulli(p)) ++includers;

            st.attacker_budget -= c * (m - includers);
            st.rounds_left -= 1;
            if (includers > 0) {
                st.wins_left -= 1;
                if (mechanism == Mechanism::BudgetBalanced)
                    st.defender_budget -= B;
                else
                    st.defender_budget -= includers == 1 ? B : includers * b;
            }
        }
        if (terminal_status(st) == GameOutcome::DefenderWon) ++defender_wins;
    }

    MonteCarloReport report;
    report.trials = trials;
    report.defender_wins = defender_wins;
    report.seed = seed;
    report.estimated_win_rate = static_cast<double>(defender_wins) / trials;
    return report;
}

}  // namespace censorgames
