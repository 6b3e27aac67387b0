#pragma once

// Rounds with m independent builders instead of a single proposer.
//
// Each round the defender posts a payment offer, the attacker posts a
// per-builder exclusion payment c, and every builder independently chooses
// to include the defender's transaction or not. One inclusion wins the
// round for the defender. Builders play the symmetric mixed equilibrium of
// the one-shot game induced by the offers:
//
//   budget-balanced: total B is split equally among includers (paid iff at
//   least one includes); excluders get c each. Indifference:
//     sum_{j=0}^{m-1} C(m-1,j) p^j (1-p)^{m-1-j} * B/(j+1) = c
//   which telescopes to B*(1-(1-p)^m) = m*p*c.
//
//   conditional: a sole includer gets B, two or more get b < B each,
//   excluders get c each. Indifference:
//     (1-p)^{m-1} * B + (1 - (1-p)^{m-1}) * b = c
//   giving 1-p = ((c-b)/(B-b))^{1/(m-1)}.
//
// Degenerate offers pin pure equilibria: everyone excludes when c is large
// enough, everyone includes when c is small enough.

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>

#include "censorgames/engine.hpp"
#include "censorgames/game.hpp"

namespace censorgames {

enum class Mechanism { BudgetBalanced, Conditional };
enum class EquilibriumRegime { AllExclude, AllInclude, Mixed };

struct BudgetBalancedOffer {
    double total_payment = 0;      // B, shared by includers, paid iff >= 1 includes
    double exclusion_payment = 0;  // c, attacker pays each non-includer

    void validate() const;
};

struct ConditionalOffer {
    double sole_payment = 0;       // B, paid to a lone includer
    double shared_payment = 0;     // b < B, paid per includer when >= 2 include
    double exclusion_payment = 0;  // c

    void validate() const;
};

struct EquilibriumSolution {
    double include_prob = 0;             // p, per builder
    double attacker_win_prob = 0;        // (1-p)^m
    double defender_win_prob = 0;        // 1 - (1-p)^m
    double expected_spend_attacker = 0;  // (1-p)*m*c
    double expected_spend_defender = 0;
    EquilibriumRegime regime = EquilibriumRegime::AllExclude;
};

// The Mixed-regime root finder detected a malformed indifference curve
// (multiple sign changes); indicates a bug or pathological offer.
class equilibrium_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// AllExclude (p=0) when B <= c, AllInclude (p=1) when B > m*c, otherwise the
// unique mixed p solving B*(1-(1-p)^m) = m*p*c, by bisection to 1e-14.
EquilibriumSolution solve_budget_balanced(const BudgetBalancedOffer& offer, int m);

// Left-minus-right of the unsimplified indifference sum; cross-validates the
// telescoped equation used by the solver.
double indifference_residual_balanced(double p, double B, double c, int m);

// AllExclude when c >= B, AllInclude when c <= b, otherwise the closed form.
EquilibriumSolution solve_conditional(const ConditionalOffer& offer, int m);

// 1 - (c/B)^(m/(m-1)): lower bound on the defender's per-round win
// probability under the budget-balanced mechanism when c < B.
double defender_win_floor(double c, double B, int m);

// True iff (T-N+1)*m*D/N <= A: posting c = D/N every round then guarantees
// the attacker wins the whole game, whatever the defender does.
bool attacker_sure_win_condition(int T, int N, int m, double D, double A);

struct FloorCondition {
    bool holds = false;
    double win_prob_floor = 0;  // 1 - exp(-2N/3)
};

// True iff A < (T-4N+1)*m*D/N: the defender offering B = D/N each round then
// wins with probability at least the returned floor (same statement reused
// for the conditional mechanism with b = 0).
FloorCondition defender_floor_condition(int T, int N, int m, double D, double A);

struct GmOffer {
    double total_payment = 0;   // B (both mechanisms)
    double shared_payment = 0;  // b (conditional only; ignored otherwise)
};

struct GmRoundView {
    int round_index = 0;
    GameState state;  // budgets and win counters; specials are not part of this game
    int builders = 0;
    Mechanism mechanism = Mechanism::BudgetBalanced;
};

class GmDefenderPolicy {
public:
    virtual ~GmDefenderPolicy() = default;
    virtual GmOffer offer(const GmRoundView& view) = 0;
};

class GmAttackerPolicy {
public:
    virtual ~GmAttackerPolicy() = default;
    // Exclusion payment c, chosen after seeing the defender's offer.
    virtual double exclusion_payment(const GmRoundView& view, const GmOffer& offer) = 0;
};

using GmDefenderFactory =
    std::function<std::unique_ptr<GmDefenderPolicy>(const GameState& initial, std::uint64_t stream)>;
using GmAttackerFactory =
    std::function<std::unique_ptr<GmAttackerPolicy>(const GameState& initial, std::uint64_t stream)>;

// Ready-made policies. Each clamps its posted amounts so the worst-case
// realized payment never exceeds the poster's remaining budget.
std::unique_ptr<GmDefenderPolicy> gm_defender_constant(double B, double b = 0.0);
// Offers a uniform draw from [0, min(cap_abs, remaining budget)].
std::unique_ptr<GmDefenderPolicy> gm_defender_random(std::uint64_t stream, double cap_abs);
// Posts c = ratio * B of the observed offer.
std::unique_ptr<GmAttackerPolicy> gm_attacker_ratio(double ratio);
// Posts a constant c.
std::unique_ptr<GmAttackerPolicy> gm_attacker_constant(double c);

// Monte Carlo playout of whole games. Per round: solve the equilibrium for
// the posted offers, sample m inclusion decisions Bernoulli(p) from the
// substream (seed, trial, round), defender wins the round iff >= 1 include.
// Realized payments: the attacker pays c per non-includer unconditionally;
// the defender pays per mechanism. Offers whose worst-case realized payment
// exceeds the remaining budget (B or m*b over d; m*c over a) abort the run
// with strategy_fault. Defender needs N round wins, attacker T-N+1.
MonteCarloReport simulate_gm(const GameParams& params, int m, Mechanism mechanism,
                             const GmDefenderFactory& defender,
                             const GmAttackerFactory& attacker, int trials, std::uint64_t seed);

}  // namespace censorgames
