#pragma once

#include <string>

#include <json.hpp>

#include "conerank/assess.hpp"
#include "conerank/data_io.hpp"
#include "conerank/efficiency.hpp"
#include "conerank/ranking.hpp"

namespace conerank {

/// JSON views of the result types. Non-finite numbers become null.
nlohmann::ordered_json to_json(const RhoD& rho);
nlohmann::ordered_json to_json(const AssessmentSpec& spec);
nlohmann::ordered_json to_json(const EfficiencyReport& report);
nlohmann::ordered_json to_json(const RankingResult& result);
nlohmann::ordered_json to_json(const RankingComparison& comparison);
nlohmann::ordered_json to_json(const ContourGrid& grid);
nlohmann::ordered_json to_json(const AlternativeSet& set);

/// Two-space indented, trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace conerank
