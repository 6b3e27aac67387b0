#include "censorgames/game.hpp"

#include <cmath>

#include "censorgames/rng.hpp"

namespace censorgames {

RoundSchedule RoundSchedule::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("schedule text is empty");
    std::vector<RoundType> rounds;
    rounds.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'R': case 'r': rounds.push_back(RoundType::Regular); break;
            case 'S': case 's': rounds.push_back(RoundType::Special); break;
            default:
                throw std::invalid_argument("schedule may contain only 'R' and 'S', got '" +
                                            std::string(1, c) + "'");
        }
    }
    return RoundSchedule(std::move(rounds));
}

RoundSchedule RoundSchedule::specials_first(int t, int s) {
    if (t < 1 || s < 0 || s > t)
        throw std::invalid_argument("need t >= 1 and 0 <= s <= t in specials_first");
    std::vector<RoundType> rounds(static_cast<std::size_t>(t), RoundType::Regular);
    for (int i = 0; i < s; ++i) rounds[static_cast<std::size_t>(i)] = RoundType::Special;
    return RoundSchedule(std::move(rounds));
}

RoundSchedule RoundSchedule::sample(int t, double p, std::uint64_t stream) {
    if (t < 1) throw std::invalid_argument("round count must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("special probability outside [0,1]");
    std::vector<RoundType> rounds(static_cast<std::size_t>(t), RoundType::Regular);
    for (int i = 0; i < t; ++i) {
        SplitMix64 gen(derive_stream(stream, {static_cast<std::uint64_t>(i)}));
        if (gen.bernoulli(p)) rounds[static_cast<std::size_t>(i)] = RoundType::Special;
    }
    return RoundSchedule(std::move(rounds));
}

int RoundSchedule::special_count() const {
    int s = 0;
    for (RoundType rt : rounds_)
        if (rt == RoundType::Special) ++s;
    return s;
}

std::string RoundSchedule::to_string() const {
    std::string text;
    text.reserve(rounds_.size());
    for (RoundType rt : rounds_) text.push_back(rt == RoundType::Special ? 'S' : 'R');
    return text;
}

void GameParams::validate() const {
    if (total_rounds < 1) throw std::invalid_argument("total_rounds must be >= 1");
    if (required_wins < 1) throw std::invalid_argument("required_wins must be >= 1");
    if (required_wins > total_rounds)
        throw std::invalid_argument("required_wins exceeds total_rounds");
    if (!(special_factor >= 1.0) || !std::isfinite(special_factor))
        throw std::invalid_argument("special_factor must be finite and >= 1");
    if (!(defender_budget >= 0.0) || !std::isfinite(defender_budget))
        throw std::invalid_argument("defender_budget must be finite and >= 0");
    if (!(attacker_budget >= 0.0) || !std::isfinite(attacker_budget))
        throw std::invalid_argument("attacker_budget must be finite and >= 0");
    if (special_prob && !(*special_prob >= 0.0 && *special_prob <= 1.0))
        throw std::invalid_argument("special_prob must lie in [0,1]");
}

GameState GameState::initial(const GameParams& p, const RoundSchedule& schedule) {
    p.validate();
    if (schedule.size() != p.total_rounds)
        throw std::invalid_argument("schedule length disagrees with params.total_rounds");
    return GameState{p.total_rounds, p.required_wins, schedule.special_count(),
                     p.defender_budget, p.attacker_budget};
}

std::pair<GameState, RoundResult> apply_round(const GameState& s, RoundType rt, double k,
                                              double defender_bid, double attacker_bid) {
    if (is_terminal(s)) throw std::invalid_argument("apply_round on a terminal state");
    if (rt == RoundType::Special && s.specials_left <= 0)
        throw std::invalid_argument("special round but no specials left in state");
    if (rt == RoundType::Regular && s.rounds_left - s.specials_left <= 0)
        throw std::invalid_argument("regular round but only specials left in state");
    if (!(k >= 1.0)) throw std::invalid_argument("special_factor must be >= 1");
    if (!(defender_bid >= 0.0) || defender_bid > s.defender_budget || !std::isfinite(defender_bid))
        throw std::invalid_argument("defender bid outside [0, defender_budget]");
    if (!(attacker_bid >= 0.0) || attacker_bid > s.attacker_budget || !std::isfinite(attacker_bid))
        throw std::invalid_argument("attacker bid outside [0, attacker_budget]");

    RoundResult r;
    r.round_type = rt;
    r.defender_bid = defender_bid;
    r.attacker_bid = attacker_bid;
    r.winner = round_winner(rt, k, defender_bid, attacker_bid);

    GameState next = s;
    next.rounds_left -= 1;
    if (rt == RoundType::Special) next.specials_left -= 1;

    if (r.winner == Winner::Attacker) {
        r.payment = attacker_bid;
        next.attacker_budget -= attacker_bid;
    } else {
        r.payment = defender_bid;
        next.wins_left -= 1;
        next.defender_budget -= defender_bid;
    }
    return {next, r};
}

}  // namespace censorgames
