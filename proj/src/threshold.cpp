#include "censorgames/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace censorgames {

double g1_coefficient(int t, int n) {
    if (t < 1 || n < 1 || n > t)
        throw std::invalid_argument("g1_coefficient needs 1 <= n <= t");
    return static_cast<double>(t - n + 1) / static_cast<double>(n);
}

double threshold_budget(ThresholdTable<double>& table, int t, int n, int s, double d) {
    if (!(d >= 0.0) || !std::isfinite(d))
        throw std::invalid_argument("defender budget must be finite and >= 0");
    return table.coefficient(t, n, s) * d;
}

double required_defender_budget(ThresholdTable<double>& table, int t, int n, int s, double a) {
    if (!(a >= 0.0) || !std::isfinite(a))
        throw std::invalid_argument("attacker budget must be finite and >= 0");
    return a / table.coefficient(t, n, s);
}

ThresholdBounds threshold_bounds(int t, int n, int s, double k) {
    if (t < 1 || n < 1 || n > t || s < 0 || s > t)
        throw std::invalid_argument("threshold_bounds needs 1 <= n <= t and 0 <= s <= t");
    if (n - 1 > s)
        throw std::invalid_argument("threshold_bounds requires n - 1 <= s");
    if (!(k >= 1.0)) throw std::invalid_argument("special_factor must be >= 1");
    const double common = t + static_cast<double>(s) * (k - 1.0);
    return ThresholdBounds{(common - k * (n - 1)) / n, (common - (n - 1)) / n};
}

double asymptotic_gap(int t, int n, int s, double k) {
    if (t < 1 || n < 1 || n > t || s < 0 || s > t)
        throw std::invalid_argument("asymptotic_gap needs 1 <= n <= t and 0 <= s <= t");
    if (!(k >= 1.0)) throw std::invalid_argument("special_factor must be >= 1");
    return k * n / (t + (k - 1.0) * s);
}

namespace {

// Specials remaining after this round is consumed.
int next_specials(const GameState& st, RoundType rt) {
    return st.specials_left - (rt == RoundType::Special ? 1 : 0);
}

void check_round_state(const GameState& st, RoundType rt) {
    if (st.rounds_left < 1 || st.wins_left < 1 || st.wins_left > st.rounds_left ||
        st.specials_left < 0 || st.specials_left > st.rounds_left)
        throw std::invalid_argument("state outside the game domain");
    if (rt == RoundType::Special && st.specials_left < 1)
        throw std::invalid_argument("special round but state has no specials left");
    if (rt == RoundType::Regular && st.rounds_left - st.specials_left < 1)
        throw std::invalid_argument("regular round but state has only specials left");
    if (!(st.defender_budget >= 0.0) || !(st.attacker_budget >= 0.0))
        throw std::invalid_argument("budgets must be >= 0");
}

}  // namespace

double optimal_defender_bid(ThresholdTable<double>& table, const GameState& st, RoundType rt,
                            double epsilon_scale) {
    check_round_state(st, rt);
    if (!(epsilon_scale > 0.0)) throw std::invalid_argument("epsilon_scale must be > 0");
    const double k = table.special_factor();
    const double d = st.defender_budget;
    const double a = st.attacker_budget;

    if (st.wins_left == 1) return d;

    if (st.wins_left == st.rounds_left) {
        // Must win every remaining round; outbid the attacker's full budget.
        const double eps = epsilon_scale * std::max(1.0, a);
        const double match = rt == RoundType::Special ? a / k : a;
        return std::min(d, match + eps);
    }

    const int t = st.rounds_left, n = st.wins_left;
    const int s = next_specials(st, rt);
    const double kappa = censor_factor(rt, k);
    const double lose = table.coefficient(t - 1, n - 1, s);
    const double win = table.coefficient(t - 1, n, s);
    return d * (lose - win) / (kappa + lose);
}

AttackerResponse optimal_attacker_response(ThresholdTable<double>& table, const GameState& st,
                                           RoundType rt, double defender_bid) {
    check_round_state(st, rt);
    const double d = st.defender_budget;
    const double a = st.attacker_budget;
    if (!(defender_bid >= 0.0) || defender_bid > d || !std::isfinite(defender_bid))
        throw std::invalid_argument("defender bid outside [0, defender_budget]");

    const int t = st.rounds_left, n = st.wins_left;
    const int s = next_specials(st, rt);
    const double cost = censor_factor(rt, table.special_factor()) * defender_bid;

    AttackerResponse r;
    r.let_win_requirement = n == 1 ? std::numeric_limits<double>::infinity()
                                   : table.coefficient(t - 1, n - 1, s) * (d - defender_bid);
    r.win_now_requirement = cost + (n == t ? 0.0 : table.coefficient(t - 1, n, s) * d);

    const bool can_let = r.let_win_requirement <= a;
    const bool can_win = r.win_now_requirement <= a;
    if (can_win && (!can_let || r.win_now_requirement < r.let_win_requirement)) {
        r.censor = true;
        r.bid = cost;
    }
    return r;
}

}  // namespace censorgames
