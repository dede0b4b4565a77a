#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opdyn/experiment.hpp"

namespace opdyn {

enum class ReportFormat { json, csv, dot };

/// "json", "csv" or "dot"; anything else throws std::invalid_argument.
ReportFormat parse_report_format(std::string_view text);

/// json: the full report (top-level "schema_version": 1).
/// csv: header "delta,classes,occurrences,min_mu2,modularity,problem1", one
///      row per distinct partition; undefined values are left empty.
/// dot: the network coloured by the modal partition, inter-class edges dashed.
std::string emit_report(const ExperimentReport& report, ReportFormat format);

/// Sweep output. json wraps the reports with a per-delta summary; csv
/// concatenates the per-partition rows under one header; dot emits one graph
/// per delta.
std::string emit_sweep(const std::vector<ExperimentReport>& reports, ReportFormat format);

/// "delta,modal_classes,modal_modularity,modal_occurrences" table.
std::string sweep_summary_csv(const std::vector<ExperimentReport>& reports);

}  // namespace opdyn
