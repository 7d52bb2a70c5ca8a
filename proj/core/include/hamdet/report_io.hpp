#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "hamdet/evaluation.hpp"

namespace hamdet {

std::string tie_rule_name(TieRule tie);
TieRule tie_rule_from_name(const std::string& name);

/// Full report as JSON (schema "hamdet-report-v1"): the resolved
/// configuration, per-repeat valid/test metrics, per-repeat MAA bounds,
/// and the means. Key order is fixed, so equal reports serialize to
/// identical bytes.
nlohmann::ordered_json report_to_json(const EvaluationReport& report);

/// Summary table, one row per feature fraction: FR, then mean test
/// Acc/FPR/AUC per algorithm, then the MAA bounds as the last three
/// columns. Values are percentages with two decimals; FPR and AUC are
/// the closed-form fpr_paper / auc_paper variants.
std::string report_to_table_csv(const EvaluationReport& report);

/// Two columns, fpr,tpr; one row per threshold.
std::string roc_to_csv(const RocCurve& curve);

/// Writes via a temp file in the target directory followed by a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hamdet
