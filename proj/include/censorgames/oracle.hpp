#pragma once

// Brute-force ground truth for small games on an integer bid grid.
//
// Both budgets and all bids are whole numbers, the attacker censors a round
// by matching its cost exactly (paying kappa * b), and ties still favor the
// attacker. This makes the game finite, so the winner under optimal play
// can be computed by exhaustive minimax with no game theory at all. The
// solver and optimal strategies are validated against it: as the grid gets
// finer, grid_threshold(d) / d approaches the threshold coefficient from
// below, with an O(1) gap in grid units (the integer restriction on the
// defender's bids works in the attacker's favor).

#include <cstdint>
#include <unordered_map>

#include "censorgames/game.hpp"

namespace censorgames {

struct IntGameSpec {
    RoundSchedule schedule;
    int wins_needed = 1;     // n
    int special_factor = 1;  // k
    int defender_budget = 0; // d

    void validate() const;
};

// Minimax over integer bids; memoizes subgame values across calls, so keep
// one instance per spec when probing many attacker budgets.
class IntMinimax {
public:
    explicit IntMinimax(IntGameSpec spec);

    const IntGameSpec& spec() const { return spec_; }

    // Winner with attacker budget a under optimal play by both sides.
    Winner winner(int attacker_budget);

    // Least attacker budget that wins. The winner is monotone in the
    // attacker budget, so binary search against winner(); never exceeds
    // t * k * d (enough to censor every round at the maximal cost).
    int threshold();

    std::size_t states_explored() const { return memo_.size(); }

private:
    bool attacker_wins(int round, int wins_left, int d, int a);

    IntGameSpec spec_;
    std::unordered_map<std::uint64_t, bool> memo_;
};

// Convenience wrappers for one-shot queries.
Winner minimax_winner(const IntGameSpec& spec, int attacker_budget);
int grid_threshold(const IntGameSpec& spec);

}  // namespace censorgames
