#pragma once

// Pluggable per-round decision rules for both players.
//
// A strategy object lives for one playout. The engine queries the defender
// first, shows her bid to the attacker, then resolves the round. Factories
// here cover the constructive strategies the solver is built around
// (constant fraction, cost-threshold filters, table-driven optimal play)
// plus seeded random baselines.

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "censorgames/game.hpp"
#include "censorgames/threshold.hpp"

namespace censorgames {

struct StrategyDescriptor {
    std::string kind;
    std::map<std::string, double> parameters;
};

class DefenderStrategy {
public:
    virtual ~DefenderStrategy() = default;
    // Bid for the coming round; must lie in [0, state.defender_budget].
    virtual double next_bid(const GameState& state, RoundType rt) = 0;
    virtual StrategyDescriptor descriptor() const = 0;
};

class AttackerStrategy {
public:
    virtual ~AttackerStrategy() = default;
    // Counter-bid after observing the defender; must lie in [0, state.attacker_budget].
    virtual double respond(const GameState& state, RoundType rt, double defender_bid) = 0;
    virtual StrategyDescriptor descriptor() const = 0;
};

// Bids d0/n0 forever, where (d0, n0) are the defender budget and required
// wins at adoption. A winning defender spends at most d0 in total.
std::unique_ptr<DefenderStrategy> defender_constant_fraction(const GameState& adoption);

// Plays the solver's optimal bid at every state (full-information play).
// Strategies built from one factory call share a threshold table.
std::unique_ptr<DefenderStrategy> defender_optimal(double k, double epsilon_scale = 1e-9);
std::unique_ptr<DefenderStrategy> defender_optimal(std::shared_ptr<ThresholdTable<double>> table,
                                                   double epsilon_scale = 1e-9);

// Censors any round whose cost (b regular, k*b special) is at most theta and
// affordable; pays exactly that cost. Needs k to price special rounds.
std::unique_ptr<AttackerStrategy> attacker_threshold_filter(double theta, double k);

// Threshold filter with cost cap d0/n0 on regular rounds and k*d0/n0 on
// special ones, (d0, n0) fixed at adoption; pays only the minimal winning
// cost rather than the cap itself.
std::unique_ptr<AttackerStrategy> attacker_fraction(const GameState& adoption, double k);

// Censors or concedes per the solver's branch rule, paying minimal cost.
std::unique_ptr<AttackerStrategy> attacker_optimal(double k);
std::unique_ptr<AttackerStrategy> attacker_optimal(std::shared_ptr<ThresholdTable<double>> table);

// Seeded baselines: each round bids a uniform fraction of the remaining
// budget drawn from [lo_frac, hi_frac] (within [0,1]).
std::unique_ptr<DefenderStrategy> random_defender(std::uint64_t stream, double lo_frac = 0.0,
                                                  double hi_frac = 1.0);
std::unique_ptr<AttackerStrategy> random_attacker(std::uint64_t stream, double lo_frac = 0.0,
                                                  double hi_frac = 1.0);

}  // namespace censorgames
