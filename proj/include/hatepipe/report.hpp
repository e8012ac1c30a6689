#pragma once

#include <string>

#include "json.hpp"

#include "hatepipe/evaluation.hpp"

namespace hatepipe {

// Weka-style text block: summary statistics, detailed accuracy by class and
// the confusion matrix. Percentages and bits use 4 decimals, per-class rates
// 3 decimals; undefined values print as "?".
std::string render_report(const EvaluationReport& report);

inline constexpr int kReportFormatVersion = 1;

nlohmann::json report_to_json(const EvaluationReport& report);
// Throws ValidationError on an unknown format or version.
EvaluationReport report_from_json(const nlohmann::json& doc);

}  // namespace hatepipe
