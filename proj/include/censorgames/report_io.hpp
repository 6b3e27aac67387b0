#pragma once

// JSON and CSV rendering for traces and Monte Carlo reports.
//
// Numbers are emitted in shortest round-trip form, so two runs with the
// same seed produce byte-identical files. CSV is comma-separated with a
// header row, '.' decimal point and LF line endings.

#include <string>

#include "censorgames/engine.hpp"

namespace censorgames {

// Shortest decimal string that parses back to exactly v.
std::string format_number(double v);

std::string to_string(Winner w);
std::string to_string(GameOutcome o);
std::string to_string(RoundType rt);

// unit is a free-form currency label copied into reports; empty omits it.
std::string to_json_text(const GameTrace& trace, const std::string& unit);
std::string to_json_text(const MonteCarloReport& report, const std::string& unit);

std::string to_csv_text(const GameTrace& trace);
std::string to_csv_text(const MonteCarloReport& report);

// Writes text to the file at path, or to stdout when path is empty.
void write_text(const std::string& text, const std::string& path);

}  // namespace censorgames
