#pragma once

// Playout engine: deterministic single games with a known schedule, and
// seeded Monte Carlo over sampled schedules for the randomized variant
// where each round is special with probability p.
//
// Reproducibility contract: all randomness flows through derive_stream
// (rng.hpp). Trial i of a run with seed S uses the substreams
//   (S, i, 0) schedule coin flips (one per round index),
//   (S, i, 1) defender strategy randomness,
//   (S, i, 2) attacker strategy randomness,
// so reports are identical across runs, platforms, and trial orderings.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "censorgames/game.hpp"
#include "censorgames/strategies.hpp"

namespace censorgames {

// A strategy emitted an out-of-range bid; playouts abort rather than clamp,
// so buggy strategies cannot silently pass statistical tests.
class strategy_fault : public std::runtime_error {
public:
    strategy_fault(int round_index, const std::string& who, double bid, double budget);
    int round_index() const { return round_index_; }

private:
    int round_index_;
};

struct GameTrace {
    GameParams params;
    RoundSchedule schedule;
    std::vector<RoundResult> rounds;  // rounds[i] played at schedule index i
    GameOutcome outcome = GameOutcome::Ongoing;
    GameState final_state;
};

struct MonteCarloReport {
    int trials = 0;
    int defender_wins = 0;
    std::uint64_t seed = 0;
    double estimated_win_rate = 0;
    std::optional<double> hoeffding_floor;  // filled by callers who have a delta in mind
};

// Runs one game to completion with full information: strategies see the true
// state including the remaining special count. Throws strategy_fault on an
// out-of-budget bid.
GameTrace play_game(const GameParams& params, const RoundSchedule& schedule,
                    DefenderStrategy& defender, AttackerStrategy& attacker);

// Schedule with each round independently special with probability p.
RoundSchedule sample_schedule(int total_rounds, double p, std::uint64_t stream);

// Fresh single-playout strategies per trial. The factory receives the
// initial state of that trial's game and the trial's randomness substream.
using DefenderFactory =
    std::function<std::unique_ptr<DefenderStrategy>(const GameState& initial, std::uint64_t stream)>;
using AttackerFactory =
    std::function<std::unique_ptr<AttackerStrategy>(const GameState& initial, std::uint64_t stream)>;

// Monte Carlo over sampled schedules. params.special_prob must be set.
// Round types are revealed to strategies only as rounds start: the state a
// strategy sees carries the current round's special flag, never the count of
// specials still hidden in the future.
MonteCarloReport run_probabilistic(const GameParams& params, const DefenderFactory& defender,
                                   const AttackerFactory& attacker, int trials,
                                   std::uint64_t seed);

// 1 - 2*exp(-2*delta^2/t), clamped to [0,1]: lower bound on the probability
// that a Binomial(t, p) count lands within delta of its mean.
double hoeffding_bound(int t, double delta);

}  // namespace censorgames
