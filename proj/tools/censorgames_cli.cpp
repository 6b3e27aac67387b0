// Command-line front end: threshold solving, optimal bid listings, game
// simulation, parameter sweeps, golden-value evaluation and integer oracle
// cross-checks.
//
// All commands read an optional JSON config (--config); explicit flags
// override config fields. Reports go to stdout or --out as JSON or CSV.
// Exit codes: 0 success, 1 usage/config error, 2 eval failure, 3 strategy
// fault.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "censorgames/engine.hpp"
#include "censorgames/game.hpp"
#include "censorgames/multi_proposer.hpp"
#include "censorgames/oracle.hpp"
#include "censorgames/rational.hpp"
#include "censorgames/report_io.hpp"
#include "censorgames/rng.hpp"
#include "censorgames/strategies.hpp"
#include "censorgames/threshold.hpp"

namespace cg = censorgames;
using ordered_json = nlohmann::ordered_json;

namespace {

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class eval_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flags shared by every subcommand; unset optionals fall back to config.
struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    bool exact = false;
    std::optional<std::string> unit;

    // Game parameters, usable instead of (or overriding) the config file.
    std::optional<std::string> game;
    std::optional<int> T, N, s;
    std::optional<double> k, D, A, p;
    std::optional<std::string> schedule;
    std::optional<std::string> defender, attacker;
    std::optional<std::string> mechanism;
    std::optional<int> builders;
    std::optional<long long> limit;

    // Oracle integers.
    std::optional<int> oracle_d, oracle_a;

    nlohmann::json config;  // parsed --config file, or null
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--seed", o.seed, "RNG seed (u64)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--out", o.out_path, "output path (default stdout)");
    cmd->add_option("--format", o.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--exact", o.exact, "exact rational arithmetic (solve only)");
    cmd->add_option("--unit", o.unit, "currency label copied into reports");
}

void add_param_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--game", o.game, "game kind: G1|G1K|G1KP|GM");
    cmd->add_option("--T", o.T, "total rounds");
    cmd->add_option("--N", o.N, "defender wins required");
    cmd->add_option("--s", o.s, "number of special rounds");
    cmd->add_option("--k", o.k, "special round censorship factor (>= 1)");
    cmd->add_option("--D", o.D, "defender budget");
    cmd->add_option("--A", o.A, "attacker budget");
    cmd->add_option("--p", o.p, "per-round special probability");
    cmd->add_option("--schedule", o.schedule, "explicit round types, e.g. RSRR");
}

void load_config(CommonOpts& o) {
    if (o.config_path.empty()) return;
    std::ifstream f(o.config_path);
    if (!f) throw usage_error("cannot open config file: " + o.config_path);
    try {
        o.config = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error("config parse error: " + std::string(e.what()));
    }
    if (o.config.contains("schema_version")) {
        const auto& v = o.config["schema_version"];
        if (!v.is_number_integer() || v.get<int>() != 1)
            throw usage_error("unsupported schema_version (expected 1)");
    }
}

const nlohmann::json* jfind(const nlohmann::json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

template <class T>
std::optional<T> jget(const nlohmann::json& j, const char* key) {
    const nlohmann::json* v = jfind(j, key);
    if (!v) return std::nullopt;
    try {
        return v->get<T>();
    } catch (const nlohmann::json::exception&) {
        throw usage_error(std::string("config field '") + key + "' has the wrong type");
    }
}

// Flag wins, then config (possibly nested under params_key), then default.
template <class T>
std::optional<T> resolve(const std::optional<T>& flag, const nlohmann::json& cfg,
                         const char* key) {
    if (flag) return flag;
    if (const nlohmann::json* params = jfind(cfg, "params"))
        if (auto v = jget<T>(*params, key)) return v;
    return jget<T>(cfg, key);
}

template <class T>
T require(const std::optional<T>& v, const char* what) {
    if (!v) throw usage_error(std::string("missing required parameter: ") + what);
    return *v;
}

std::string resolve_unit(const CommonOpts& o) {
    if (o.unit) return *o.unit;
    return jget<std::string>(o.config, "unit").value_or("");
}

std::string resolve_format(const CommonOpts& o, const std::string& fallback) {
    std::string f = o.format ? *o.format : std::string();
    if (f.empty())
        if (const nlohmann::json* out = jfind(o.config, "output"))
            f = jget<std::string>(*out, "format").value_or("");
    if (f.empty()) f = fallback;
    if (f != "json" && f != "csv") throw usage_error("output format must be json or csv");
    return f;
}

std::string resolve_out_path(const CommonOpts& o) {
    if (o.out_path) return *o.out_path;
    if (const nlohmann::json* out = jfind(o.config, "output"))
        return jget<std::string>(*out, "path").value_or("");
    return "";
}

std::uint64_t resolve_seed(const CommonOpts& o) {
    if (o.seed) return *o.seed;
    return jget<std::uint64_t>(o.config, "seed").value_or(0);
}

int resolve_trials(const CommonOpts& o, int fallback) {
    int trials = o.trials ? *o.trials : jget<int>(o.config, "trials").value_or(fallback);
    if (trials < 1 || trials > 100000000)
        throw usage_error("trials must lie in [1, 1e8]");
    return trials;
}

void reject_exact(const CommonOpts& o, const char* cmd) {
    if (o.exact)
        throw usage_error(std::string("--exact is only supported by solve, not ") + cmd);
}

// ---------------------------------------------------------------- schedules

// Exactly one of: explicit round string, special count, or probability.
struct ScheduleSpec {
    std::optional<std::string> explicit_rounds;
    std::optional<int> specials;
    std::optional<double> prob;
};

ScheduleSpec resolve_schedule(const CommonOpts& o) {
    ScheduleSpec spec;
    // Any schedule flag replaces the config's schedule choice entirely.
    if (o.schedule || o.s || o.p) {
        spec.explicit_rounds = o.schedule;
        spec.specials = o.s;
        spec.prob = o.p;
    } else if (const nlohmann::json* sj = jfind(o.config, "schedule")) {
        spec.explicit_rounds = jget<std::string>(*sj, "explicit");
        spec.specials = jget<int>(*sj, "specials");
        spec.prob = jget<double>(*sj, "prob");
    }
    const int forms = (spec.explicit_rounds ? 1 : 0) + (spec.specials ? 1 : 0) +
                      (spec.prob ? 1 : 0);
    if (forms > 1)
        throw usage_error(
            "give exactly one schedule form: explicit string, special count, or probability");
    return spec;
}

// --------------------------------------------------------------- descriptors

cg::StrategyDescriptor parse_descriptor_json(const nlohmann::json& j, const char* side) {
    cg::StrategyDescriptor d;
    auto kind = jget<std::string>(j, "kind");
    if (!kind) throw usage_error(std::string(side) + " strategy needs a 'kind' field");
    d.kind = *kind;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "kind") continue;
        if (!it->is_number())
            throw usage_error(std::string(side) + " strategy parameter '" + it.key() +
                              "' must be numeric");
        d.parameters[it.key()] = it->get<double>();
    }
    return d;
}

// "kind" or "kind:value"; the value fills the kind's main parameter.
cg::StrategyDescriptor parse_descriptor_string(const std::string& text, const char* side) {
    cg::StrategyDescriptor d;
    const auto colon = text.find(':');
    d.kind = text.substr(0, colon);
    if (colon != std::string::npos) {
        const std::string value = text.substr(colon + 1);
        static const std::map<std::string, std::string> main_param = {
            {"threshold_filter", "theta"}, {"random", "hi"}, {"ratio", "ratio"},
            {"constant", "value"},
        };
        auto it = main_param.find(d.kind);
        if (it == main_param.end())
            throw usage_error(std::string(side) + " strategy '" + d.kind +
                              "' takes no inline parameter");
        try {
            d.parameters[it->second] = std::stod(value);
        } catch (const std::exception&) {
            throw usage_error(std::string(side) + " strategy parameter is not a number: " + value);
        }
    }
    return d;
}

std::optional<cg::StrategyDescriptor> resolve_descriptor(const CommonOpts& o,
                                                         const char* side,
                                                         const std::optional<std::string>& flag) {
    if (flag) return parse_descriptor_string(*flag, side);
    if (const nlohmann::json* j = jfind(o.config, side)) return parse_descriptor_json(*j, side);
    return std::nullopt;
}

double param_or(const cg::StrategyDescriptor& d, const char* name, double fallback) {
    auto it = d.parameters.find(name);
    return it == d.parameters.end() ? fallback : it->second;
}

std::optional<double> param_opt(const cg::StrategyDescriptor& d, const char* name) {
    auto it = d.parameters.find(name);
    if (it == d.parameters.end()) return std::nullopt;
    return it->second;
}

cg::DefenderFactory make_defender_factory(const cg::StrategyDescriptor& d, double k) {
    if (d.kind == "constant_fraction")
        return [](const cg::GameState& initial, std::uint64_t) {
            return cg::defender_constant_fraction(initial);
        };
    if (d.kind == "optimal") {
        auto table = std::make_shared<cg::ThresholdTable<double>>(k);
        return [table](const cg::GameState&, std::uint64_t) {
            return cg::defender_optimal(table);
        };
    }
    if (d.kind == "random") {
        const double lo = param_or(d, "lo", 0.0);
        const double hi = param_or(d, "hi", 1.0);
        return [lo, hi](const cg::GameState&, std::uint64_t stream) {
            return cg::random_defender(stream, lo, hi);
        };
    }
    throw usage_error("unknown defender kind: " + d.kind +
                      " (expected constant_fraction|optimal|random)");
}

cg::AttackerFactory make_attacker_factory(const cg::StrategyDescriptor& d, double k) {
    if (d.kind == "threshold_filter") {
        const auto theta = param_opt(d, "theta");
        if (!theta) throw usage_error("threshold_filter needs a 'theta' parameter");
        return [theta = *theta, k](const cg::GameState&, std::uint64_t) {
            return cg::attacker_threshold_filter(theta, k);
        };
    }
    if (d.kind == "fraction")
        return [k](const cg::GameState& initial, std::uint64_t) {
            return cg::attacker_fraction(initial, k);
        };
    if (d.kind == "optimal") {
        auto table = std::make_shared<cg::ThresholdTable<double>>(k);
        return [table](const cg::GameState&, std::uint64_t) {
            return cg::attacker_optimal(table);
        };
    }
    if (d.kind == "random") {
        const double lo = param_or(d, "lo", 0.0);
        const double hi = param_or(d, "hi", 1.0);
        return [lo, hi](const cg::GameState&, std::uint64_t stream) {
            return cg::random_attacker(stream, lo, hi);
        };
    }
    throw usage_error("unknown attacker kind: " + d.kind +
                      " (expected threshold_filter|fraction|optimal|random)");
}

cg::GmDefenderFactory make_gm_defender_factory(const cg::StrategyDescriptor& d, double D, int N) {
    if (d.kind == "constant") {
        const double B = param_or(d, "B", param_or(d, "value", D / N));
        const double b = param_or(d, "b", 0.0);
        return [B, b](const cg::GameState&, std::uint64_t) {
            return cg::gm_defender_constant(B, b);
        };
    }
    if (d.kind == "random") {
        const double cap = param_or(d, "cap", D);
        return [cap](const cg::GameState&, std::uint64_t stream) {
            return cg::gm_defender_random(stream, cap);
        };
    }
    throw usage_error("unknown GM defender kind: " + d.kind + " (expected constant|random)");
}

cg::GmAttackerFactory make_gm_attacker_factory(const cg::StrategyDescriptor& d, double D, int N) {
    if (d.kind == "ratio") {
        const double ratio = param_or(d, "ratio", 0.9);
        return [ratio](const cg::GameState&, std::uint64_t) {
            return cg::gm_attacker_ratio(ratio);
        };
    }
    if (d.kind == "constant") {
        const double c = param_or(d, "c", param_or(d, "value", D / N));
        return [c](const cg::GameState&, std::uint64_t) {
            return cg::gm_attacker_constant(c);
        };
    }
    throw usage_error("unknown GM attacker kind: " + d.kind + " (expected ratio|constant)");
}

// -------------------------------------------------------------------- solve

int cmd_solve(const CommonOpts& o) {
    const int t = require(resolve(o.T, o.config, "T"), "T");
    const int n = require(resolve(o.N, o.config, "N"), "N");
    const int s = resolve(o.s, o.config, "s").value_or(0);
    const double k = resolve(o.k, o.config, "k").value_or(1.0);
    const auto D = resolve(o.D, o.config, "D");
    const auto A = resolve(o.A, o.config, "A");

    cg::ThresholdTable<double> table(k);
    const double coeff = table.coefficient(t, n, s);
    const double g1 = cg::g1_coefficient(t, n);

    std::optional<cg::ThresholdBounds> bounds;
    std::optional<double> gap;
    if (n - 1 <= s) {
        bounds = cg::threshold_bounds(t, n, s, k);
        gap = cg::asymptotic_gap(t, n, s, k);
    }

    std::optional<std::string> exact_text;
    if (o.exact) {
        if (t > 64)
            throw usage_error("exact mode supports T <= 64; drop --exact for larger games");
        if (k != std::floor(k)) throw usage_error("exact mode needs an integer k");
        cg::ThresholdTable<cg::Rational> xtable{cg::Rational(k)};
        exact_text = xtable.coefficient(t, n, s).str();
    }

    const std::string format = resolve_format(o, "json");
    std::string text;
    if (format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "solve";
        const std::string unit = resolve_unit(o);
        if (!unit.empty()) j["unit"] = unit;
        j["t"] = t;
        j["n"] = n;
        j["s"] = s;
        j["k"] = k;
        j["coefficient"] = coeff;
        if (exact_text) j["coefficient_exact"] = *exact_text;
        j["g1_coefficient"] = g1;
        j["threshold_budget"] = D ? ordered_json(coeff * *D) : ordered_json(nullptr);
        j["required_defender_budget"] = A ? ordered_json(*A / coeff) : ordered_json(nullptr);
        if (bounds)
            j["bounds"] = ordered_json{{"lower", bounds->lower}, {"upper", bounds->upper}};
        else
            j["bounds"] = nullptr;
        j["asymptotic_gap"] = gap ? ordered_json(*gap) : ordered_json(nullptr);
        text = j.dump(2) + "\n";
    } else {
        text =
            "t,n,s,k,coefficient,g1_coefficient,threshold_budget,required_defender_budget,"
            "bound_lower,bound_upper,asymptotic_gap\n";
        text += std::to_string(t) + ',' + std::to_string(n) + ',' + std::to_string(s) + ',' +
                cg::format_number(k) + ',' + cg::format_number(coeff) + ',' +
                cg::format_number(g1) + ',';
        text += D ? cg::format_number(coeff * *D) : std::string();
        text += ',';
        text += A ? cg::format_number(*A / coeff) : std::string();
        text += ',';
        text += bounds ? cg::format_number(bounds->lower) : std::string();
        text += ',';
        text += bounds ? cg::format_number(bounds->upper) : std::string();
        text += ',';
        text += gap ? cg::format_number(*gap) : std::string();
        text += '\n';
    }
    cg::write_text(text, resolve_out_path(o));
    return 0;
}

// --------------------------------------------------------------------- bids

struct BidRow {
    int round = 0;
    cg::RoundType type = cg::RoundType::Regular;
    double budget = 0;  // defender's budget entering the round
    double bid = 0;
    double fraction = 0;
};

// Lists the optimal defender bid per round along a forced path: either the
// defender wins every round, or the attacker censors every round. Without
// an attacker budget the last-stand rounds bid the full remaining budget.
std::vector<BidRow> bid_path(cg::ThresholdTable<double>& table, const cg::RoundSchedule& schedule,
                             int n0, double d0, double a0, bool defender_wins_path,
                             long long max_rows) {
    std::vector<BidRow> rows;
    cg::GameState st;
    st.rounds_left = schedule.size();
    st.wins_left = n0;
    st.specials_left = schedule.special_count();
    st.defender_budget = d0;
    st.attacker_budget = a0;

    for (int i = 0; i < schedule.size(); ++i) {
        if (cg::terminal_status(st) != cg::GameOutcome::Ongoing) break;
        if (static_cast<long long>(rows.size()) >= max_rows) break;
        const cg::RoundType rt = schedule.at(i);
        const double bid = cg::optimal_defender_bid(table, st, rt);
        BidRow row;
        row.round = i + 1;
        row.type = rt;
        row.budget = st.defender_budget;
        row.bid = bid;
        row.fraction = st.defender_budget > 0 ? bid / st.defender_budget : 0.0;
        rows.push_back(row);

        st.rounds_left -= 1;
        if (rt == cg::RoundType::Special) st.specials_left -= 1;
        if (defender_wins_path) {
            st.wins_left -= 1;
            st.defender_budget -= bid;
        } else if (std::isfinite(st.attacker_budget)) {
            st.attacker_budget -= cg::censor_factor(rt, table.special_factor()) * bid;
            if (st.attacker_budget < 0) st.attacker_budget = 0;
        }
    }
    return rows;
}

int cmd_bids(const CommonOpts& o) {
    reject_exact(o, "bids");
    const int t = require(resolve(o.T, o.config, "T"), "T");
    const int n = require(resolve(o.N, o.config, "N"), "N");
    const double k = resolve(o.k, o.config, "k").value_or(1.0);
    const double d = resolve(o.D, o.config, "D").value_or(1.0);
    const auto A = resolve(o.A, o.config, "A");
    const double a = A ? *A : std::numeric_limits<double>::infinity();

    const ScheduleSpec spec = resolve_schedule(o);
    cg::RoundSchedule schedule =
        spec.explicit_rounds ? cg::RoundSchedule::parse(*spec.explicit_rounds)
                             : cg::RoundSchedule::specials_first(t, spec.specials.value_or(0));
    if (spec.prob) throw usage_error("bids needs a deterministic schedule, not a probability");
    if (schedule.size() != t)
        throw usage_error("schedule length does not match T");

    long long max_rows = o.limit.value_or(10000);
    if (max_rows < 1) throw usage_error("--limit must be >= 1");

    cg::ThresholdTable<double> table(k);
    const auto winning = bid_path(table, schedule, n, d, a, true, max_rows);
    const auto censored = bid_path(table, schedule, n, d, a, false, max_rows);
    const bool truncated = t > max_rows;

    const std::string format = resolve_format(o, "json");
    std::string text;
    if (format == "json") {
        const auto rows_json = [](const std::vector<BidRow>& rows) {
            ordered_json arr = ordered_json::array();
            for (const BidRow& r : rows)
                arr.push_back(ordered_json{{"round", r.round},
                                           {"type", cg::to_string(r.type)},
                                           {"defender_budget", r.budget},
                                           {"bid", r.bid},
                                           {"fraction", r.fraction}});
            return arr;
        };
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "bids";
        const std::string unit = resolve_unit(o);
        if (!unit.empty()) j["unit"] = unit;
        j["t"] = t;
        j["n"] = n;
        j["k"] = k;
        j["defender_budget"] = d;
        j["attacker_budget"] = A ? ordered_json(*A) : ordered_json(nullptr);
        j["truncated"] = truncated;
        j["defender_wins_path"] = rows_json(winning);
        j["attacker_censors_path"] = rows_json(censored);
        text = j.dump(2) + "\n";
    } else {
        text = "path,round,type,defender_budget,bid,fraction\n";
        const auto append = [&text](const char* path, const std::vector<BidRow>& rows) {
            for (const BidRow& r : rows) {
                text += path;
                text += ',' + std::to_string(r.round);
                text += r.type == cg::RoundType::Special ? ",S," : ",R,";
                text += cg::format_number(r.budget) + ',' + cg::format_number(r.bid) + ',' +
                        cg::format_number(r.fraction) + '\n';
            }
        };
        append("defender_wins", winning);
        append("attacker_censors", censored);
    }
    cg::write_text(text, resolve_out_path(o));
    return 0;
}

// ----------------------------------------------------------------- simulate

std::string resolve_game(const CommonOpts& o) {
    std::string game = o.game ? *o.game : jget<std::string>(o.config, "game").value_or("");
    if (game.empty()) throw usage_error("missing game kind (G1|G1K|G1KP|GM)");
    if (game != "G1" && game != "G1K" && game != "G1KP" && game != "GM")
        throw usage_error("unknown game kind: " + game + " (expected G1|G1K|G1KP|GM)");
    return game;
}

int cmd_simulate(const CommonOpts& o) {
    reject_exact(o, "simulate");
    const std::string game = resolve_game(o);
    const int T = require(resolve(o.T, o.config, "T"), "T");
    const int N = require(resolve(o.N, o.config, "N"), "N");
    const double k = resolve(o.k, o.config, "k").value_or(1.0);
    const double D = require(resolve(o.D, o.config, "D"), "D");
    const double A = require(resolve(o.A, o.config, "A"), "A");
    const std::uint64_t seed = resolve_seed(o);
    const std::string unit = resolve_unit(o);
    const std::string out_path = resolve_out_path(o);
    const std::string format = resolve_format(o, "json");

    cg::GameParams params;
    params.total_rounds = T;
    params.required_wins = N;
    params.special_factor = k;
    params.defender_budget = D;
    params.attacker_budget = A;

    const ScheduleSpec sched = resolve_schedule(o);

    if (game == "G1" || game == "G1K") {
        if (game == "G1" && k != 1.0)
            throw usage_error("G1 has no special rounds; use k=1 or game G1K");
        cg::RoundSchedule schedule =
            sched.explicit_rounds
                ? cg::RoundSchedule::parse(*sched.explicit_rounds)
                : cg::RoundSchedule::specials_first(T, sched.specials.value_or(0));
        if (sched.prob)
            throw usage_error("probabilistic schedules belong to game G1KP");
        if (schedule.size() != T) throw usage_error("schedule length does not match T");
        if (game == "G1" && schedule.special_count() != 0)
            throw usage_error("G1 schedules cannot contain special rounds");

        const auto ddesc = resolve_descriptor(o, "defender", o.defender)
                               .value_or(cg::StrategyDescriptor{"optimal", {}});
        const auto adesc = resolve_descriptor(o, "attacker", o.attacker)
                               .value_or(cg::StrategyDescriptor{"optimal", {}});
        auto dfac = make_defender_factory(ddesc, k);
        auto afac = make_attacker_factory(adesc, k);

        cg::GameState initial = cg::GameState::initial(params, schedule);
        auto defender = dfac(initial, cg::derive_stream(seed, {0, 1}));
        auto attacker = afac(initial, cg::derive_stream(seed, {0, 2}));
        cg::GameTrace trace = cg::play_game(params, schedule, *defender, *attacker);
        cg::write_text(format == "json" ? cg::to_json_text(trace, unit)
                                        : cg::to_csv_text(trace),
                       out_path);
        return 0;
    }

    if (game == "G1KP") {
        if (!sched.prob) throw usage_error("G1KP needs a schedule probability p");
        params.special_prob = *sched.prob;
        const int trials = resolve_trials(o, 1000);
        const auto ddesc = resolve_descriptor(o, "defender", o.defender)
                               .value_or(cg::StrategyDescriptor{"constant_fraction", {}});
        const auto adesc = resolve_descriptor(o, "attacker", o.attacker)
                               .value_or(cg::StrategyDescriptor{"fraction", {}});
        auto report = cg::run_probabilistic(params, make_defender_factory(ddesc, k),
                                            make_attacker_factory(adesc, k), trials, seed);
        cg::write_text(format == "json" ? cg::to_json_text(report, unit)
                                        : cg::to_csv_text(report),
                       out_path);
        return 0;
    }

    // GM
    if (sched.explicit_rounds || sched.specials || sched.prob)
        throw usage_error("GM rounds have no special types; omit the schedule");
    std::string mech_name = o.mechanism ? *o.mechanism : std::string();
    int m = o.builders.value_or(0);
    if (const nlohmann::json* mj = jfind(o.config, "mechanism")) {
        if (mech_name.empty()) mech_name = jget<std::string>(*mj, "type").value_or("");
        if (m == 0) m = jget<int>(*mj, "builders").value_or(0);
    }
    if (mech_name.empty()) mech_name = "budget_balanced";
    if (m == 0) throw usage_error("GM needs the number of builders (--builders)");
    cg::Mechanism mechanism;
    if (mech_name == "budget_balanced")
        mechanism = cg::Mechanism::BudgetBalanced;
    else if (mech_name == "conditional")
        mechanism = cg::Mechanism::Conditional;
    else
        throw usage_error("unknown mechanism: " + mech_name +
                          " (expected budget_balanced|conditional)");

    const int trials = resolve_trials(o, 1000);
    const auto ddesc = resolve_descriptor(o, "defender", o.defender)
                           .value_or(cg::StrategyDescriptor{"constant", {}});
    const auto adesc = resolve_descriptor(o, "attacker", o.attacker)
                           .value_or(cg::StrategyDescriptor{"constant", {}});
    auto report = cg::simulate_gm(params, m, mechanism, make_gm_defender_factory(ddesc, D, N),
                                  make_gm_attacker_factory(adesc, D, N), trials, seed);
    cg::write_text(format == "json" ? cg::to_json_text(report, unit) : cg::to_csv_text(report),
                   out_path);
    return 0;
}

// -------------------------------------------------------------------- sweep

// Axis forms: number, [list], {"from":a,"to":b,"step":c}, {"fraction_of_t":f}.
struct Axis {
    std::vector<double> values;
    std::optional<double> fraction_of_t;
};

Axis parse_axis(const nlohmann::json& j, const char* name, bool allow_fraction) {
    Axis axis;
    if (j.is_number()) {
        axis.values.push_back(j.get<double>());
        return axis;
    }
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number())
                throw usage_error(std::string("sweep axis '") + name + "' has a non-number");
            axis.values.push_back(v.get<double>());
        }
        if (axis.values.empty())
            throw usage_error(std::string("sweep axis '") + name + "' is empty");
        return axis;
    }
    if (j.is_object()) {
        if (allow_fraction)
            if (auto f = jget<double>(j, "fraction_of_t")) {
                axis.fraction_of_t = *f;
                return axis;
            }
        const auto from = jget<double>(j, "from");
        const auto to = jget<double>(j, "to");
        const double step = jget<double>(j, "step").value_or(1.0);
        if (!from || !to || step <= 0)
            throw usage_error(std::string("sweep axis '") + name +
                              "' needs from/to and a positive step");
        for (double v = *from; v <= *to + step * 1e-9; v += step) axis.values.push_back(v);
        return axis;
    }
    throw usage_error(std::string("sweep axis '") + name + "' has an unsupported form");
}

std::size_t axis_size(const Axis& a) { return a.fraction_of_t ? 1 : a.values.size(); }

int cmd_sweep(const CommonOpts& o) {
    reject_exact(o, "sweep");
    const nlohmann::json* sweep = jfind(o.config, "sweep");
    if (!sweep) throw usage_error("sweep needs a config file with a 'sweep' section");
    const std::string kind = jget<std::string>(*sweep, "kind").value_or("threshold");
    const std::string format = resolve_format(o, "csv");
    const std::string out_path = resolve_out_path(o);

    constexpr std::size_t kMaxCells = 10000000;
    std::string csv;
    ordered_json rows = ordered_json::array();

    if (kind == "threshold") {
        const nlohmann::json* tj = jfind(*sweep, "t");
        const nlohmann::json* nj = jfind(*sweep, "n");
        const nlohmann::json* sj = jfind(*sweep, "s");
        const nlohmann::json* kj = jfind(*sweep, "k");
        if (!tj || !nj || !sj || !kj)
            throw usage_error("threshold sweep needs axes t, n, s, k");
        Axis ts = parse_axis(*tj, "t", false);
        Axis ns = parse_axis(*nj, "n", false);
        Axis ss = parse_axis(*sj, "s", true);
        Axis ks = parse_axis(*kj, "k", false);
        const std::size_t cells =
            axis_size(ts) * axis_size(ns) * axis_size(ss) * axis_size(ks);
        if (cells > kMaxCells) throw usage_error("sweep grid exceeds 10^7 cells");

        std::map<double, std::unique_ptr<cg::ThresholdTable<double>>> tables;
        csv = "t,n,s,k,coefficient\n";
        for (double tv : ts.values)
            for (double nv : ns.values) {
                std::vector<double> svals =
                    ss.fraction_of_t
                        ? std::vector<double>{static_cast<double>(
                              std::llround(tv * *ss.fraction_of_t))}
                        : ss.values;
                for (double sv : svals)
                    for (double kv : ks.values) {
                        const int t = static_cast<int>(std::llround(tv));
                        const int n = static_cast<int>(std::llround(nv));
                        const int s = static_cast<int>(std::llround(sv));
                        if (t < 1 || n < 1 || n > t || s < 0 || s > t) continue;
                        auto& table = tables[kv];
                        if (!table)
                            table = std::make_unique<cg::ThresholdTable<double>>(kv);
                        const double coeff = table->coefficient(t, n, s);
                        if (format == "csv") {
                            csv += std::to_string(t) + ',' + std::to_string(n) + ',' +
                                   std::to_string(s) + ',' + cg::format_number(kv) + ',' +
                                   cg::format_number(coeff) + '\n';
                        } else {
                            rows.push_back(ordered_json{{"t", t},
                                                        {"n", n},
                                                        {"s", s},
                                                        {"k", kv},
                                                        {"coefficient", coeff}});
                        }
                    }
            }
    } else if (kind == "equilibrium") {
        const std::string mech =
            jget<std::string>(*sweep, "mechanism").value_or("budget_balanced");
        if (mech != "budget_balanced" && mech != "conditional")
            throw usage_error("unknown sweep mechanism: " + mech);
        const nlohmann::json* mj = jfind(*sweep, "m");
        const nlohmann::json* Bj = jfind(*sweep, "B");
        const nlohmann::json* cj = jfind(*sweep, "c");
        if (!mj || !Bj || !cj) throw usage_error("equilibrium sweep needs axes m, B, c");
        Axis ms = parse_axis(*mj, "m", false);
        Axis Bs = parse_axis(*Bj, "B", false);
        const nlohmann::json* bj = jfind(*sweep, "b");
        Axis bs = bj ? parse_axis(*bj, "b", false) : Axis{{0.0}, std::nullopt};
        Axis cs = parse_axis(*cj, "c", false);
        const std::size_t cells =
            axis_size(ms) * axis_size(Bs) * axis_size(bs) * axis_size(cs);
        if (cells > kMaxCells) throw usage_error("sweep grid exceeds 10^7 cells");

        csv = "mechanism,m,B,b,c,p,P_A,E_A,E_D\n";
        for (double mv : ms.values)
            for (double Bv : Bs.values)
                for (double bv : bs.values)
                    for (double cv : cs.values) {
                        const int m = static_cast<int>(std::llround(mv));
                        if (m < 2) continue;
                        cg::EquilibriumSolution sol;
                        if (mech == "budget_balanced") {
                            if (bv != 0.0) continue;  // b is conditional-only
                            sol = cg::solve_budget_balanced({Bv, cv}, m);
                        } else {
                            if (bv >= Bv) continue;
                            sol = cg::solve_conditional({Bv, bv, cv}, m);
                        }
                        if (format == "csv") {
                            csv += mech + ',' + std::to_string(m) + ',' +
                                   cg::format_number(Bv) + ',' + cg::format_number(bv) + ',' +
                                   cg::format_number(cv) + ',' +
                                   cg::format_number(sol.include_prob) + ',' +
                                   cg::format_number(sol.attacker_win_prob) + ',' +
                                   cg::format_number(sol.expected_spend_attacker) + ',' +
                                   cg::format_number(sol.expected_spend_defender) + '\n';
                        } else {
                            rows.push_back(ordered_json{
                                {"mechanism", mech},
                                {"m", m},
                                {"B", Bv},
                                {"b", bv},
                                {"c", cv},
                                {"p", sol.include_prob},
                                {"P_A", sol.attacker_win_prob},
                                {"E_A", sol.expected_spend_attacker},
                                {"E_D", sol.expected_spend_defender}});
                        }
                    }
    } else {
        throw usage_error("unknown sweep kind: " + kind + " (expected threshold|equilibrium)");
    }

    if (format == "csv") {
        cg::write_text(csv, out_path);
    } else {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "sweep";
        j["rows"] = std::move(rows);
        cg::write_text(j.dump(2) + "\n", out_path);
    }
    return 0;
}

// --------------------------------------------------------------------- eval

struct EvalCheck {
    const char* name;
    double value;
    double lo;
    double hi;
};

int cmd_eval(const CommonOpts& o) {
    reject_exact(o, "eval");
    cg::ThresholdTable<double> t60(60.0);
    cg::ThresholdTable<double> t25(25.0);

    const double coeff_big = t60.coefficient(50000, 60, 1000);
    const double ts_big = cg::threshold_bounds(50000, 60, 1000, 60.0).lower;
    const double coeff_214 = t25.coefficient(214, 57, 57);
    const auto bounds_214 = cg::threshold_bounds(214, 57, 57, 25.0);
    const double budget = 1e10;

    const EvalCheck checks[] = {
        {"coefficient_50000_60_1000_k60", coeff_big, 1785.0, 1787.0},
        {"bound_ratio_50000", ts_big / coeff_big, 0.980, 0.990},
        {"coefficient_214_57_57_k25", coeff_214, 9.05, 9.15},
        {"lower_bound_214", bounds_214.lower, 3.18, 3.20},
        {"upper_bound_214", bounds_214.upper, 26.75, 26.85},
        {"bound_ratio_214", bounds_214.lower / coeff_214, 0.346, 0.356},
        {"required_budget_plain", budget / cg::g1_coefficient(50000, 60), 1.19e7, 1.21e7},
        {"required_budget_specials", budget / coeff_big, 5.5e6, 5.7e6},
    };

    bool all_pass = true;
    std::string text;
    ordered_json jchecks = ordered_json::array();
    for (const EvalCheck& c : checks) {
        const bool pass = c.value >= c.lo && c.value <= c.hi;
        all_pass = all_pass && pass;
        text += std::string(pass ? "PASS" : "FAIL") + "  " + c.name + "  value=" +
                cg::format_number(c.value) + "  window=[" + cg::format_number(c.lo) + ", " +
                cg::format_number(c.hi) + "]\n";
        jchecks.push_back(ordered_json{{"name", c.name},
                                       {"value", c.value},
                                       {"lo", c.lo},
                                       {"hi", c.hi},
                                       {"pass", pass}});
    }
    text += all_pass ? "eval: all checks passed\n" : "eval: some checks FAILED\n";

    // The table always goes to stdout; --out additionally saves a JSON report.
    const std::string out_path = resolve_out_path(o);
    if (!out_path.empty()) {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "eval";
        j["checks"] = std::move(jchecks);
        j["all_pass"] = all_pass;
        cg::write_text(j.dump(2) + "\n", out_path);
    }
    std::fwrite(text.data(), 1, text.size(), stdout);
    return all_pass ? 0 : 2;
}

// ------------------------------------------------------------------- oracle

int cmd_oracle(const CommonOpts& o) {
    reject_exact(o, "oracle");
    const nlohmann::json* oj = jfind(o.config, "oracle");
    const nlohmann::json empty;
    if (!oj) oj = &empty;

    std::optional<std::string> sched_text = o.schedule;
    if (!sched_text) sched_text = jget<std::string>(*oj, "schedule");
    std::optional<int> t = o.T ? o.T : jget<int>(*oj, "T");
    std::optional<int> s = o.s ? o.s : jget<int>(*oj, "s");
    const int n = require(o.N ? o.N : jget<int>(*oj, "n"), "n (wins needed)");
    std::optional<double> kopt = o.k ? o.k : jget<double>(*oj, "k");
    const double kreal = kopt.value_or(1.0);
    if (kreal != std::floor(kreal) || kreal < 1)
        throw usage_error("oracle needs an integer k >= 1");
    const int k = static_cast<int>(kreal);
    const int d = require(o.oracle_d ? o.oracle_d : jget<int>(*oj, "d"), "d (defender budget)");
    std::optional<int> a = o.oracle_a ? o.oracle_a : jget<int>(*oj, "a");

    cg::IntGameSpec spec;
    if (sched_text) {
        spec.schedule = cg::RoundSchedule::parse(*sched_text);
    } else {
        if (!t) throw usage_error("oracle needs --schedule or --T with optional --s");
        spec.schedule = cg::RoundSchedule::specials_first(*t, s.value_or(0));
    }
    spec.wins_needed = n;
    spec.special_factor = k;
    spec.defender_budget = d;
    spec.validate();
    if (a && (*a < 0 || *a > 64))
        throw usage_error("oracle attacker budget must lie in [0, 64]");

    const int threshold = cg::grid_threshold(spec);
    const double prediction =
        cg::schedule_coefficient(spec.schedule, n, static_cast<double>(k)) * d;

    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "oracle";
    j["schedule"] = spec.schedule.to_string();
    j["n"] = n;
    j["k"] = k;
    j["d"] = d;
    if (a) {
        j["a"] = *a;
        j["winner"] = cg::to_string(cg::minimax_winner(spec, *a));
    } else {
        j["a"] = nullptr;
        j["winner"] = nullptr;
    }
    j["threshold"] = threshold;
    j["solver_prediction"] = prediction;
    j["deviation"] = threshold - prediction;
    cg::write_text(j.dump(2) + "\n", resolve_out_path(o));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"censorship game solver and simulator"};
    app.require_subcommand(1);

    CommonOpts o;
    CLI::App* solve = app.add_subcommand("solve", "threshold coefficient and budget bounds");
    CLI::App* bids = app.add_subcommand("bids", "optimal per-round bid listing");
    CLI::App* simulate = app.add_subcommand("simulate", "play games and report outcomes");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps to CSV");
    CLI::App* eval = app.add_subcommand("eval", "golden-value self check");
    CLI::App* oracle = app.add_subcommand("oracle", "integer reference solver cross-check");

    for (CLI::App* cmd : {solve, bids, simulate, sweep, eval, oracle}) {
        add_common_flags(cmd, o);
        add_param_flags(cmd, o);
    }
    simulate->add_option("--defender", o.defender, "defender strategy kind[:param]");
    simulate->add_option("--attacker", o.attacker, "attacker strategy kind[:param]");
    simulate->add_option("--mechanism", o.mechanism, "GM mechanism: budget_balanced|conditional");
    simulate->add_option("--builders", o.builders, "GM builders per round (m >= 2)");
    bids->add_option("--limit", o.limit, "max rows per path (default 10000)");
    oracle->add_option("--d", o.oracle_d, "integer defender budget (<= 64)");
    oracle->add_option("--a", o.oracle_a, "integer attacker budget (<= 64)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) {
            load_config(o);
            return cmd_solve(o);
        }
        if (bids->parsed()) {
            load_config(o);
            return cmd_bids(o);
        }
        if (simulate->parsed()) {
            load_config(o);
            return cmd_simulate(o);
        }
        if (sweep->parsed()) {
            load_config(o);
            return cmd_sweep(o);
        }
        if (eval->parsed()) {
            load_config(o);
            return cmd_eval(o);
        }
        if (oracle->parsed()) {
            load_config(o);
            return cmd_oracle(o);
        }
        std::fprintf(stderr, "no command given\n");
        return 1;
    } catch (const cg::strategy_fault& e) {
        std::fprintf(stderr, "strategy fault: %s\n", e.what());
        return 3;
    } catch (const eval_failure& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
