#include "censorgames/oracle.hpp"

#include <stdexcept>

namespace censorgames {

void IntGameSpec::validate() const {
    const int t = schedule.size();
    if (t < 1) throw std::invalid_argument("schedule must have at least one round");
    if (wins_needed < 1 || wins_needed > t)
        throw std::invalid_argument("wins_needed must lie in [1, rounds]");
    if (t > 8) throw std::invalid_argument("reference solver is limited to 8 rounds");
    if (special_factor < 1) throw std::invalid_argument("special_factor must be >= 1");
    if (defender_budget < 0 || defender_budget > 64)
        throw std::invalid_argument("defender_budget must lie in [0, 64]");
}

IntMinimax::IntMinimax(IntGameSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

Winner IntMinimax::winner(int attacker_budget) {
    if (attacker_budget < 0) throw std::invalid_argument("attacker budget must be >= 0");
    return attacker_wins(0, spec_.wins_needed, spec_.defender_budget, attacker_budget)
               ? Winner::Attacker
               : Winner::Defender;
}

bool IntMinimax::attacker_wins(int round, int wins_left, int d, int a) {
    const int t = spec_.schedule.size();
    if (wins_left <= 0) return false;
    if (wins_left > t - round) return true;

    const std::uint64_t key = (static_cast<std::uint64_t>(round) << 56) |
                              (static_cast<std::uint64_t>(wins_left) << 48) |
                              (static_cast<std::uint64_t>(d) << 32) |
                              static_cast<std::uint64_t>(a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int kappa = spec_.schedule.at(round) == RoundType::Special ? spec_.special_factor : 1;

    // Attacker wins iff she has a winning reply to every defender bid.
    bool result = true;
    for (int b = 0; b <= d; ++b) {
        const int cost = kappa * b;
        if (cost <= a && attacker_wins(round + 1, wins_left, d, a - cost)) continue;
        if (attacker_wins(round + 1, wins_left - 1, d - b, a)) continue;
        result = false;  // bid b defeats both replies
        break;
    }
    memo_.emplace(key, result);
    return result;
}

int IntMinimax::threshold() {
    int lo = 0;
    int hi = spec_.schedule.size() * spec_.special_factor * spec_.defender_budget;
    if (winner(lo) == Winner::Attacker) return lo;
    // Invariant: winner(lo) == Defender, winner(hi) == Attacker.
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (winner(mid) == Winner::Attacker ? hi : lo) = mid;
    }
    return hi;
}

Winner minimax_winner(const IntGameSpec& spec, int attacker_budget) {
    return IntMinimax(spec).winner(attacker_budget);
}

int grid_threshold(const IntGameSpec& spec) { return IntMinimax(spec).threshold(); }

}  // namespace censorgames
