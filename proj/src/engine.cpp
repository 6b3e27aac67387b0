#include "censorgames/engine.hpp"

#include <cmath>
#include <string>

#include "censorgames/rng.hpp"

namespace censorgames {

namespace {

std::string fault_message(int round_index, const std::string& who, double bid, double budget) {
    return who + " strategy bid " + std::to_string(bid) + " outside [0, " +
           std::to_string(budget) + "] at round " + std::to_string(round_index);
}

double checked_bid(double bid, double budget, int round_index, const char* who) {
    if (!(bid >= 0.0) || bid > budget || !std::isfinite(bid))
        throw strategy_fault(round_index, who, bid, budget);
    return bid;
}

}  // namespace

strategy_fault::strategy_fault(int round_index, const std::string& who, double bid, double budget)
    : std::runtime_error(fault_message(round_index, who, bid, budget)),
      round_index_(round_index) {}

GameTrace play_game(const GameParams& params, const RoundSchedule& schedule,
                    DefenderStrategy& defender, AttackerStrategy& attacker) {
    GameTrace trace;
    trace.params = params;
    trace.schedule = schedule;
    GameState st = GameState::initial(params, schedule);

    for (int i = 0; terminal_status(st) == GameOutcome::Ongoing; ++i) {
        const RoundType rt = schedule.at(i);
        const double b =
            checked_bid(defender.next_bid(st, rt), st.defender_budget, i, "defender");
        const double b2 =
            checked_bid(attacker.respond(st, rt, b), st.attacker_budget, i, "attacker");
        auto [next, result] = apply_round(st, rt, params.special_factor, b, b2);
        trace.rounds.push_back(result);
        st = next;
    }

    trace.outcome = terminal_status(st);
    trace.final_state = st;
    return trace;
}

RoundSchedule sample_schedule(int total_rounds, double p, std::uint64_t stream) {
    return RoundSchedule::sample(total_rounds, p, stream);
}

MonteCarloReport run_probabilistic(const GameParams& params, const DefenderFactory& defender,
                                   const AttackerFactory& attacker, int trials,
                                   std::uint64_t seed) {
    params.validate();
    if (!params.special_prob)
        throw std::invalid_argument("run_probabilistic needs params.special_prob");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");

    const double p = *params.special_prob;
    int defender_wins = 0;

    for (int trial = 0; trial < trials; ++trial) {
        const auto u64 = [](int v) { return static_cast<std::uint64_t>(v); };
        const RoundSchedule schedule =
            RoundSchedule::sample(params.total_rounds, p, derive_stream(seed, {u64(trial), 0}));
        const GameState initial = GameState::initial(params, schedule);
        auto d = defender(initial, derive_stream(seed, {u64(trial), 1}));
        auto a = attacker(initial, derive_stream(seed, {u64(trial), 2}));

        // Strategies see a masked state: the current round's type is known,
        // future types are not, so specials_left shows only this round.
        GameState st = initial;
        for (int i = 0; terminal_status(st) == GameOutcome::Ongoing; ++i) {
            const RoundType rt = schedule.at(i);
            GameState view = st;
            view.specials_left = rt == RoundType::Special ? 1 : 0;
            const double b = checked_bid(d->next_bid(view, rt), st.defender_budget, i, "defender");
            const double b2 =
                checked_bid(a->respond(view, rt, b), st.attacker_budget, i, "attacker");
            st = apply_round(st, rt, params.special_factor, b, b2).first;
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

double hoeffding_bound(int t, double delta) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    const double raw = 1.0 - 2.0 * std::exp(-2.0 * delta * delta / t);
    return std::min(1.0, std::max(0.0, raw));
}

}  // namespace censorgames
