#pragma once

// Exact solver for the attacker's minimal winning budget.
//
// With t rounds left, n defender wins still required, s of the remaining
// rounds special (k times costlier to censor) and defender budget d, the
// attacker wins under optimal play from both sides iff her budget is at
// least A(t,n,s) * d. The coefficient A satisfies a two-way recurrence,
// depending on whether the next round consumed is special,
//
//   A(t,n,s) = A(t-1,n-1,s-1) * (k + A(t-1,n,s-1)) / (k + A(t-1,n-1,s-1))
//
// or regular,
//
//   A(t,n,s) = A(t-1,n-1,s) * (1 + A(t-1,n,s)) / (1 + A(t-1,n-1,s))
//
// (both orderings yield the same value; schedule order never matters),
// with closed forms on the domain boundary:
//
//   A(t,1,s) = k*s + (t-s)            every remaining round must be bought
//   A(t,n,0) = (t-n+1)/n              no special rounds
//   A(t,n,t) = k*(t-n+1)/n            only special rounds
//   A(t,t,s) = k / (s + k*(t-s))      defender must win every round
//
// ThresholdTable fills the recurrence bottom-up, consuming special rounds
// when s <= t-s and regular rounds otherwise, so a query costs
// O(min(s, t-s) * n) new cells. Cells are memoized across queries.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "censorgames/game.hpp"

namespace censorgames {

// Real is double for fast evaluation or Rational for exact arithmetic.
template <class Real>
class ThresholdTable {
public:
    explicit ThresholdTable(Real special_factor) : k_(std::move(special_factor)) {
        if (!(k_ >= Real(1)))
            throw std::invalid_argument("special_factor must be >= 1");
    }

    const Real& special_factor() const { return k_; }

    // A(t,n,s). Throws std::invalid_argument outside 1 <= n <= t, 0 <= s <= t.
    const Real& coefficient(int t, int n, int s);

    // Number of memoized interior cells.
    std::size_t size() const { return memo_.size(); }

    // Closed form for boundary cells; pre: (t,n,s) in domain and on a boundary.
    Real boundary(int t, int n, int s) const;

private:
    static constexpr int kMaxCoord = (1 << 21) - 1;

    static std::uint64_t pack(int t, int n, int s) {
        return (static_cast<std::uint64_t>(t) << 42) |
               (static_cast<std::uint64_t>(n) << 21) | static_cast<std::uint64_t>(s);
    }

    static bool on_boundary(int t, int n, int s) {
        return n == t || n == 1 || s == 0 || s == t;
    }

    void check_domain(int t, int n, int s) const;
    const Real& fill(int t, int n, int s);

    Real k_;
    std::unordered_map<std::uint64_t, Real> memo_;
};

template <class Real>
void ThresholdTable<Real>::check_domain(int t, int n, int s) const {
    if (t < 1 || n < 1 || n > t || s < 0 || s > t)
        throw std::invalid_argument("threshold coefficient needs 1 <= n <= t and 0 <= s <= t");
    if (t > kMaxCoord)
        throw std::invalid_argument("round count exceeds supported range (2^21 - 1)");
}

template <class Real>
Real ThresholdTable<Real>::boundary(int t, int n, int s) const {
    // Priority matters only for cells on several boundaries at once, where
    // the formulas agree; n == t must come first because the recurrences
    // never apply there.
    if (n == t) return k_ / (Real(s) + k_ * Real(t - s));
    if (n == 1) return k_ * Real(s) + Real(t - s);
    if (s == 0) return Real(t - n + 1) / Real(n);
    if (s == t) return k_ * Real(t - n + 1) / Real(n);
    throw std::invalid_argument("boundary() called on an interior cell");
}

template <class Real>
const Real& ThresholdTable<Real>::coefficient(int t, int n, int s) {
    check_domain(t, n, s);
    auto it = memo_.find(pack(t, n, s));
    if (it != memo_.end()) return it->second;
    return fill(t, n, s);
}

template <class Real>
const Real& ThresholdTable<Real>::fill(int t, int n, int s) {
    if (on_boundary(t, n, s))
        return memo_.emplace(pack(t, n, s), boundary(t, n, s)).first->second;

    const bool special_first = s <= t - s;

    // Dense query patterns usually find both children already memoized;
    // combine them directly instead of walking the whole trapezoid.
    {
        const int sc = special_first ? s - 1 : s;
        const auto lose_it = memo_.find(pack(t - 1, n - 1, sc));
        if (lose_it != memo_.end()) {
            if (const auto win_it = memo_.find(pack(t - 1, n, sc)); win_it != memo_.end()) {
                const Real step = special_first ? k_ : Real(1);
                Real value =
                    lose_it->second * (step + win_it->second) / (step + lose_it->second);
                return memo_.emplace(pack(t, n, s), std::move(value)).first->second;
            }
        }
    }

    // Walk levels of the recurrence toward the target. Consuming special
    // rounds bottoms out at the s == 0 boundary after s levels; consuming
    // regular rounds bottoms out at s == t after t-s levels. Pick the
    // shorter descent. At level j the subgame has t_j rounds, s_j specials,
    // and the defender-win coordinate ranges over a window around n whose
    // width shrinks toward the base.
    const int levels = special_first ? s : t - s;
    const Real step = special_first ? k_ : Real(1);

    std::vector<Real> prev, cur;
    prev.reserve(static_cast<std::size_t>(n) + 1);
    cur.reserve(static_cast<std::size_t>(n) + 1);

    int lo_prev = 0;
    for (int j = 0; j <= levels; ++j) {
        const int tj = t - (levels - j);
        const int sj = special_first ? j : s;
        const int lo = std::max(1, n - (levels - j));
        const int hi = std::min(n, tj);
        cur.clear();

        for (int nj = lo; nj <= hi; ++nj) {
            const std::uint64_t key = pack(tj, nj, sj);
            if (auto it = memo_.find(key); it != memo_.end()) {
                cur.push_back(it->second);
                continue;
            }
            Real value;
            if (on_boundary(tj, nj, sj)) {
                value = boundary(tj, nj, sj);
            } else {
                // Both children live on the previous level: (t-1, n-1, s')
                // and (t-1, n, s') with s' = sj-1 (special) or sj (regular).
                const Real& lose = prev[static_cast<std::size_t>(nj - 1 - lo_prev)];
                const Real& win = prev[static_cast<std::size_t>(nj - lo_prev)];
                value = lose * (step + win) / (step + lose);
            }
            memo_.emplace(key, value);
            cur.push_back(std::move(value));
        }
        prev.swap(cur);
        lo_prev = lo;
    }
    return memo_.at(pack(t, n, s));
}

// The plain game without special rounds: attacker wins iff a >= (t-n+1)/n * d.
double g1_coefficient(int t, int n);

// A(t,n,s) * d, the least attacker budget that beats defender budget d.
double threshold_budget(ThresholdTable<double>& table, int t, int n, int s, double d);

// a / A(t,n,s): any defender budget strictly above this defeats attacker budget a.
double required_defender_budget(ThresholdTable<double>& table, int t, int n, int s, double a);

// Sandwich bounds on A(t,n,s), valid when n-1 <= s (throws otherwise):
//   (t + s(k-1) - k(n-1)) / n  <=  A  <=  (t + s(k-1) - (n-1)) / n.
// The lower bound is what constant bidding d/n guarantees the defender.
struct ThresholdBounds {
    double lower = 0;
    double upper = 0;
};
ThresholdBounds threshold_bounds(int t, int n, int s, double k);

// k*n / (t + (k-1)*s). When this is small, constant bidding is near-optimal:
// lower/A >= 1 - gap and A/upper >= 1 - gap.
double asymptotic_gap(int t, int n, int s, double k);

// Coefficient for an explicit schedule, evaluated positionally from the
// round order given (no sortedness assumption). Agrees with
// ThresholdTable::coefficient for every permutation; used to test exactly
// that. Memoizes internally per call, O(t*n) time, recursion depth t.
template <class Real>
Real schedule_coefficient(const RoundSchedule& schedule, int n, const Real& k);

// Defender's optimal bid at state (t,n,s,d,a) for the coming round.
//   n == 1       : bid the whole budget d
//   n == t, n > 1: bid just above what the attacker can match,
//                  min(d, a + eps) regular / min(d, a/k + eps) special,
//                  eps = epsilon_scale * max(1, a)
//   otherwise    : the recurrence's interior maximizer,
//                  d * (A(t-1,n-1,s') - A(t-1,n,s')) / (kappa + A(t-1,n-1,s'))
//                  with kappa = k and s' = s-1 on special rounds, 1 and s on
//                  regular rounds.
double optimal_defender_bid(ThresholdTable<double>& table, const GameState& state, RoundType rt,
                            double epsilon_scale = 1e-9);

struct AttackerResponse {
    bool censor = false;
    double bid = 0;                  // censor cost if censoring, else 0
    double let_win_requirement = 0;  // budget needed to win after conceding this round
    double win_now_requirement = 0;  // budget needed if censoring this round
};

// Attacker's optimal reply to a defender bid b at state (t,n,s,d,a).
// Conceding commits her to A(t-1,n-1,s') * (d-b) later (impossible if n == 1);
// censoring costs kappa*b now plus A(t-1,n,s') * d later (nothing later if
// n == t). She picks the cheaper requirement she can actually afford,
// preferring to concede on ties, and concedes when she can afford neither.
AttackerResponse optimal_attacker_response(ThresholdTable<double>& table, const GameState& state,
                                           RoundType rt, double defender_bid);

template <class Real>
Real schedule_coefficient_impl(const std::vector<RoundType>& rounds, int start, int n,
                               const Real& k, std::unordered_map<std::uint64_t, Real>& memo) {
    const int t = static_cast<int>(rounds.size()) - start;
    if (n == 1) {
        Real total(0);
        for (int i = start; i < static_cast<int>(rounds.size()); ++i)
            total += rounds[static_cast<std::size_t>(i)] == RoundType::Special ? k : Real(1);
        return total;
    }
    if (n == t) {
        Real inv_total(0);
        for (int i = start; i < static_cast<int>(rounds.size()); ++i)
            inv_total += rounds[static_cast<std::size_t>(i)] == RoundType::Special
                             ? Real(1) / k
                             : Real(1);
        return Real(1) / inv_total;
    }
    const std::uint64_t key =
        (static_cast<std::uint64_t>(start) << 32) | static_cast<std::uint64_t>(n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const Real kappa = rounds[static_cast<std::size_t>(start)] == RoundType::Special ? k : Real(1);
    Real lose = schedule_coefficient_impl(rounds, start + 1, n - 1, k, memo);
    Real win = schedule_coefficient_impl(rounds, start + 1, n, k, memo);
    Real value = lose * (kappa + win) / (kappa + lose);
    return memo.emplace(key, std::move(value)).first->second;
}

template <class Real>
Real schedule_coefficient(const RoundSchedule& schedule, int n, const Real& k) {
    if (schedule.size() < 1 || n < 1 || n > schedule.size())
        throw std::invalid_argument("schedule coefficient needs 1 <= n <= t");
    if (!(k >= Real(1))) throw std::invalid_argument("special_factor must be >= 1");
    std::unordered_map<std::uint64_t, Real> memo;
    return schedule_coefficient_impl(schedule.rounds(), 0, n, k, memo);
}

// Relative deviation between the positional evaluations of two schedules
// that are permutations of each other. Zero (up to rounding) certifies that
// round order does not change the threshold.
template <class Real>
Real swap_invariance_check(int t, int n, const RoundSchedule& schedule_a,
                           const RoundSchedule& schedule_b, const Real& k) {
    if (schedule_a.size() != t || schedule_b.size() != t)
        throw std::invalid_argument("schedules must both have length t");
    if (schedule_a.special_count() != schedule_b.special_count())
        throw std::invalid_argument("schedules must have equal special counts");
    const Real va = schedule_coefficient(schedule_a, n, k);
    const Real vb = schedule_coefficient(schedule_b, n, k);
    const Real diff = va >= vb ? va - vb : vb - va;
    const Real scale = va >= vb ? va : vb;
    if (scale == Real(0)) return Real(0);
    return diff / scale;
}

}  // namespace censorgames
