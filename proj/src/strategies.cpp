#include "censorgames/strategies.hpp"

#include <algorithm>
#include <stdexcept>

#include "censorgames/rng.hpp"

namespace censorgames {

namespace {

class ConstantFractionDefender final : public DefenderStrategy {
public:
    explicit ConstantFractionDefender(const GameState& adoption)
        : bid_(adoption.defender_budget / adoption.wins_left) {
        if (is_terminal(adoption))
            throw std::invalid_argument("constant-fraction defender adopted at a terminal state");
    }

    double next_bid(const GameState& state, RoundType) override {
        // The constant never exceeds the remaining budget along a normal
        // playout; the clamp only absorbs float dust in the last win.
        return std::min(bid_, state.defender_budget);
    }

    StrategyDescriptor descriptor() const override {
        return {"constant_fraction", {{"bid", bid_}}};
    }

private:
    double bid_;
};

class OptimalDefender final : public DefenderStrategy {
public:
    OptimalDefender(std::shared_ptr<ThresholdTable<double>> table, double epsilon_scale)
        : table_(std::move(table)), epsilon_scale_(epsilon_scale) {}

    double next_bid(const GameState& state, RoundType rt) override {
        return optimal_defender_bid(*table_, state, rt, epsilon_scale_);
    }

    StrategyDescriptor descriptor() const override {
        return {"optimal", {{"k", table_->special_factor()}, {"epsilon", epsilon_scale_}}};
    }

private:
    std::shared_ptr<ThresholdTable<double>> table_;
    double epsilon_scale_;
};

class ThresholdFilterAttacker final : public AttackerStrategy {
public:
    ThresholdFilterAttacker(double theta, double k) : theta_(theta), k_(k) {
        if (!(theta >= 0.0)) throw std::invalid_argument("filter threshold must be >= 0");
        if (!(k >= 1.0)) throw std::invalid_argument("special_factor must be >= 1");
    }

    double respond(const GameState& state, RoundType rt, double defender_bid) override {
        const double cost = censor_factor(rt, k_) * defender_bid;
        return cost <= theta_ && cost <= state.attacker_budget ? cost : 0.0;
    }

    StrategyDescriptor descriptor() const override {
        return {"threshold_filter", {{"theta", theta_}, {"k", k_}}};
    }

private:
    double theta_;
    double k_;
};

class FractionAttacker final : public AttackerStrategy {
public:
    FractionAttacker(const GameState& adoption, double k)
        : cap_(adoption.defender_budget / adoption.wins_left), k_(k) {
        if (is_terminal(adoption))
            throw std::invalid_argument("fraction attacker adopted at a terminal state");
        if (!(k >= 1.0)) throw std::invalid_argument("special_factor must be >= 1");
    }

    double respond(const GameState& state, RoundType rt, double defender_bid) override {
        // Cap scales with the round: d0/n0 regular, k*d0/n0 special, so the
        // decision is simply defender_bid <= d0/n0 either way.
        const double cost = censor_factor(rt, k_) * defender_bid;
        const double cap = censor_factor(rt, k_) * cap_;
        return cost <= cap && cost <= state.attacker_budget ? cost : 0.0;
    }

    StrategyDescriptor descriptor() const override {
        return {"fraction", {{"cap", cap_}, {"k", k_}}};
    }

private:
    double cap_;
    double k_;
};

class OptimalAttacker final : public AttackerStrategy {
public:
    explicit OptimalAttacker(std::shared_ptr<ThresholdTable<double>> table)
        : table_(std::move(table)) {}

    double respond(const GameState& state, RoundType rt, double defender_bid) override {
        return optimal_attacker_response(*table_, state, rt, defender_bid).bid;
    }

    StrategyDescriptor descriptor() const override {
        return {"optimal", {{"k", table_->special_factor()}}};
    }

private:
    std::shared_ptr<ThresholdTable<double>> table_;
};

class RandomDefender final : public DefenderStrategy {
public:
    RandomDefender(std::uint64_t stream, double lo, double hi) : gen_(stream), lo_(lo), hi_(hi) {
        if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
            throw std::invalid_argument("random bid fractions need 0 <= lo <= hi <= 1");
    }

    double next_bid(const GameState& state, RoundType) override {
        return gen_.next_double(lo_, hi_) * state.defender_budget;
    }

    StrategyDescriptor descriptor() const override {
        return {"random", {{"lo_frac", lo_}, {"hi_frac", hi_}}};
    }

private:
    SplitMix64 gen_;
    double lo_, hi_;
};

class RandomAttacker final : public AttackerStrategy {
public:
    RandomAttacker(std::uint64_t stream, double lo, double hi) : gen_(stream), lo_(lo), hi_(hi) {
        if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
            throw std::invalid_argument("random bid fractions need 0 <= lo <= hi <= 1");
    }

    double respond(const GameState& state, RoundType, double) override {
        return gen_.next_double(lo_, hi_) * state.attacker_budget;
    }

    StrategyDescriptor descriptor() const override {
        return {"random", {{"lo_frac", lo_}, {"hi_frac", hi_}}};
    }

private:
    SplitMix64 gen_;
    double lo_, hi_;
};

}  // namespace

std::unique_ptr<DefenderStrategy> defender_constant_fraction(const GameState& adoption) {
    return std::make_unique<ConstantFractionDefender>(adoption);
}

std::unique_ptr<DefenderStrategy> defender_optimal(double k, double epsilon_scale) {
    return defender_optimal(std::make_shared<ThresholdTable<double>>(k), epsilon_scale);
}

std::unique_ptr<DefenderStrategy> defender_optimal(std::shared_ptr<ThresholdTable<double>> table,
                                                   double epsilon_scale) {
    return std::make_unique<OptimalDefender>(std::move(table), epsilon_scale);
}

std::unique_ptr<AttackerStrategy> attacker_threshold_filter(double theta, double k) {
    return std::make_unique<ThresholdFilterAttacker>(theta, k);
}

std::unique_ptr<AttackerStrategy> attacker_fraction(const GameState& adoption, double k) {
    return std::make_unique<FractionAttacker>(adoption, k);
}

std::unique_ptr<AttackerStrategy> attacker_optimal(double k) {
    return attacker_optimal(std::make_shared<ThresholdTable<double>>(k));
}

std::unique_ptr<AttackerStrategy> attacker_optimal(std::shared_ptr<ThresholdTable<double>> table) {
    return std::make_unique<OptimalAttacker>(std::move(table));
}

std::unique_ptr<DefenderStrategy> random_defender(std::uint64_t stream, double lo_frac,
                                                  double hi_frac) {
    return std::make_unique<RandomDefender>(stream, lo_frac, hi_frac);
}

std::unique_ptr<AttackerStrategy> random_attacker(std::uint64_t stream, double lo_frac,
                                                  double hi_frac) {
    return std::make_unique<RandomAttacker>(stream, lo_frac, hi_frac);
}

}  // namespace censorgames
