#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "esr/channel.hpp"

namespace esr {

class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Scenario documents:
//
//   {
//     "source": [0, 0], "ris": [100, 0], "dest": [90, 20],
//     "eves": [[18, -20], ...],          // or "eves_auto": {"count": 5}
//     "alpha": 3, "b": 3, "eta": 0.8,
//     "p_dbm": 20, "noise_dbm": -96, "n_elements": 100
//   }
//
// "eves_auto" expands to Eve k at (90k/K, -20); explicit "eves" win when both
// are present.

Scenario parse_scenario(std::string_view json_text);

/// Throws ScenarioError naming the path when the file is missing or invalid.
Scenario load_scenario(const std::filesystem::path &path);

std::string scenario_to_json(const Scenario &scenario);

} // namespace esr
