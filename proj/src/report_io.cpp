#include "censorgames/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace censorgames {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return ordered_json(v).dump();
}

std::string to_string(Winner w) {
    return w == Winner::Defender ? "defender" : "attacker";
}

std::string to_string(GameOutcome o) {
    switch (o) {
        case GameOutcome::Ongoing: return "ongoing";
        case GameOutcome::DefenderWon: return "defender_won";
        case GameOutcome::AttackerWon: return "attacker_won";
    }
    return "ongoing";
}

std::string to_string(RoundType rt) {
    return rt == RoundType::Special ? "special" : "regular";
}

namespace {

ordered_json state_json(const GameState& st) {
    return ordered_json{{"rounds_left", st.rounds_left},
                        {"wins_left", st.wins_left},
                        {"specials_left", st.specials_left},
                        {"defender_budget", st.defender_budget},
                        {"attacker_budget", st.attacker_budget}};
}

ordered_json params_json(const GameParams& p) {
    ordered_json j{{"total_rounds", p.total_rounds},
                   {"required_wins", p.required_wins},
                   {"special_factor", p.special_factor},
                   {"defender_budget", p.defender_budget},
                   {"attacker_budget", p.attacker_budget}};
    if (p.special_prob) j["special_prob"] = *p.special_prob;
    return j;
}

}  // namespace

std::string to_json_text(const GameTrace& trace, const std::string& unit) {
    ordered_json j;
    j["schema_version"] = 1;
    if (!unit.empty()) j["unit"] = unit;
    j["params"] = params_json(trace.params);
    j["schedule"] = trace.schedule.to_string();
    ordered_json rounds = ordered_json::array();
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const RoundResult& r = trace.rounds[i];
        rounds.push_back(ordered_json{{"round", i + 1},
                                      {"type", to_string(r.round_type)},
                                      {"defender_bid", r.defender_bid},
                                      {"attacker_bid", r.attacker_bid},
                                      {"winner", to_string(r.winner)},
                                      {"payment", r.payment}});
    }
    j["rounds"] = std::move(rounds);
    j["outcome"] = to_string(trace.outcome);
    j["final_state"] = state_json(trace.final_state);
    return j.dump(2) + "\n";
}

std::string to_json_text(const MonteCarloReport& report, const std::string& unit) {
    ordered_json j;
    j["schema_version"] = 1;
    if (!unit.empty()) j["unit"] = unit;
    j["trials"] = report.trials;
    j["defender_wins"] = report.defender_wins;
    j["win_rate"] = report.estimated_win_rate;
    j["seed"] = report.seed;
    if (report.hoeffding_floor) j["hoeffding_floor"] = *report.hoeffding_floor;
    return j.dump(2) + "\n";
}

std::string to_csv_text(const GameTrace& trace) {
    std::string out = "round,type,defender_bid,attacker_bid,winner,payment\n";
    for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
        const RoundResult& r = trace.rounds[i];
        out += std::to_string(i + 1);
        out += r.round_type == RoundType::Special ? ",S," : ",R,";
        out += format_number(r.defender_bid);
        out += ',';
        out += format_number(r.attacker_bid);
        out += ',';
        out += to_string(r.winner);
        out += ',';
        out += format_number(r.payment);
        out += '\n';
    }
    return out;
}

std::string to_csv_text(const MonteCarloReport& report) {
    std::string out = "trials,defender_wins,win_rate,seed,hoeffding_floor\n";
    out += std::to_string(report.trials);
    out += ',';
    out += std::to_string(report.defender_wins);
    out += ',';
    out += format_number(report.estimated_win_rate);
    out += ',';
    out += std::to_string(report.seed);
    out += ',';
    if (report.hoeffding_floor) out += format_number(*report.hoeffding_floor);
    out += '\n';
    return out;
}

void write_text(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace censorgames
