#pragma once

#include "sectorcast/attribute.hpp"
#include "sectorcast/diagnose.hpp"
#include "sectorcast/johnson.hpp"
#include "sectorcast/regress.hpp"
#include "sectorcast/select.hpp"
#include "sectorcast/validate.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>

namespace sectorcast::io {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const JohnsonSbParams& p);
JohnsonSbParams johnson_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FittedModel& model);
FittedModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EliminationTrace& trace);
nlohmann::json to_json(const ValidationReport& report);
nlohmann::json to_json(const DiagnosticsReport& report);
nlohmann::json to_json(const ContributionRanking& ranking);
nlohmann::json to_json(const VifReport& report);

void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

// 2-column CSV export for plot data (header + pairs).
void write_pairs_csv(const std::vector<std::pair<double, double>>& pairs,
                     const std::string& col_a, const std::string& col_b,
                     const std::string& path);

} // namespace sectorcast::io
