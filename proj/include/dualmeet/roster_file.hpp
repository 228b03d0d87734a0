#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "dualmeet/race_sim.hpp"

namespace dualmeet {

// Roster document:
//   {"runners": [{"team": "A", "id": "a1",
//                 "model": {"kind": "uniform", "lower": 960, "upper": 1010}}, ...]}
// Model parameters by kind: uniform {lower, upper}; beta {a, b, shift, scale}
// (a and b default to 1.5 and 3); point {t}. Unknown or missing fields throw
// InvalidInput naming the field.
Roster parse_roster(std::string_view text);
Roster load_roster(const std::filesystem::path& path);

std::string roster_to_json(const Roster& roster);

}  // namespace dualmeet
