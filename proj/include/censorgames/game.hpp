#pragma once

// Core state machine for censorship bidding games.
//
// A defender needs n of t sequential rounds; a censoring attacker needs the
// other t-n+1. Each round the defender publicly offers a fee b, then the
// attacker may outbid with a counter-offer b'. The attacker takes a regular
// round when b' >= b and a special round when b' >= k*b (special rounds are
// k times costlier to censor); ties always favor the attacker. The round
// winner pays their own bid, the loser pays nothing.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace censorgames {

enum class RoundType { Regular, Special };
enum class Winner { Defender, Attacker };
enum class GameOutcome { Ongoing, DefenderWon, AttackerWon };

// Ordered round types for one full game, first round at index 0.
class RoundSchedule {
public:
    RoundSchedule() = default;
    explicit RoundSchedule(std::vector<RoundType> rounds) : rounds_(std::move(rounds)) {}

    // "RSSR" -> Regular, Special, Special, Regular.
    static RoundSchedule parse(const std::string& text);

    // s special rounds up front, the remaining t-s regular.
    static RoundSchedule specials_first(int t, int s);

    // i.i.d. coin flips: round i is special with probability p, drawn from
    // the substream (stream, i).
    static RoundSchedule sample(int t, double p, std::uint64_t stream);

    int size() const { return static_cast<int>(rounds_.size()); }
    RoundType at(int i) const { return rounds_.at(static_cast<std::size_t>(i)); }
    int special_count() const;
    std::string to_string() const;
    const std::vector<RoundType>& rounds() const { return rounds_; }

private:
    std::vector<RoundType> rounds_;
};

struct GameParams {
    int total_rounds = 1;                // T
    int required_wins = 1;               // N, defender's target
    double special_factor = 1;           // k, censorship cost multiplier
    double defender_budget = 0;          // D
    double attacker_budget = 0;          // A
    std::optional<double> special_prob;  // p, probabilistic variant only

    // Throws std::invalid_argument unless 1 <= N <= T, k >= 1, budgets >= 0,
    // p in [0,1] when present, and all values are finite.
    void validate() const;
};

struct GameState {
    int rounds_left = 0;        // t
    int wins_left = 0;          // n, defender wins still required
    int specials_left = 0;      // s
    double defender_budget = 0; // d
    double attacker_budget = 0; // a

    static GameState initial(const GameParams& p, const RoundSchedule& schedule);
};

struct RoundResult {
    RoundType round_type = RoundType::Regular;
    double defender_bid = 0;  // b
    double attacker_bid = 0;  // b'
    Winner winner = Winner::Defender;
    double payment = 0;       // deducted from the winner's budget (their own bid)
};

// Cost multiplier the attacker faces this round.
inline double censor_factor(RoundType rt, double k) {
    return rt == RoundType::Special ? k : 1.0;
}

// Attacker iff b' >= b (Regular) or b' >= k*b (Special); ties to the attacker.
inline Winner round_winner(RoundType rt, double k, double defender_bid, double attacker_bid) {
    return attacker_bid >= censor_factor(rt, k) * defender_bid ? Winner::Attacker
                                                               : Winner::Defender;
}

// DefenderWon once her required wins are in; AttackerWon once too few rounds
// remain for the defender to reach them.
inline GameOutcome terminal_status(const GameState& s) {
    if (s.wins_left <= 0) return GameOutcome::DefenderWon;
    if (s.wins_left > s.rounds_left) return GameOutcome::AttackerWon;
    return GameOutcome::Ongoing;
}

inline bool is_terminal(const GameState& s) {
    return terminal_status(s) != GameOutcome::Ongoing;
}

// Resolves one round and returns the successor state plus what happened.
// The input state must be non-terminal, the round type consistent with the
// state's specials count, and each bid within [0, that player's budget];
// violations throw std::invalid_argument.
std::pair<GameState, RoundResult> apply_round(const GameState& s, RoundType rt, double k,
                                              double defender_bid, double attacker_bid);

}  // namespace censorgames
