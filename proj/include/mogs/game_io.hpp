#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mogs/game.hpp"
#include "mogs/solver.hpp"
#include "mogs/strategy.hpp"

namespace mogs {

// Game definition document (JSON). Unknown fields are rejected and validation
// errors name the offending player/term.
ContinuousGame parse_game(const std::string& text);
ContinuousGame load_game_file(const std::string& path);
std::string serialize_game(const ContinuousGame& game);

// Space descriptions for the metric command, e.g. "box:-1:1", "simplex:5",
// "circle" or "circle:chord".
StrategySpace parse_space(const std::string& text);

// Finitely supported measure written as "atom:weight;atom:weight" with
// comma-separated coordinates, e.g. "0.2,0.8:0.5;1,0:0.5".
MixedStrategy parse_measure(const std::string& text, const StrategySpace& space);

// Per-iteration trace rows as CSV with a fixed header, followed by summary
// comment lines (epsilon_certified, payoffs, supports).
void write_trace_csv(std::ostream& out, const SolveResult& result, int players);

nlohmann::json solve_summary_json(const ContinuousGame& game, const SolveConfig& config,
                                  const SolveResult& result);

}  // namespace mogs
