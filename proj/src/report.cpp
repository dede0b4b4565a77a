#include "opdyn/report.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "opdyn/community.hpp"

namespace opdyn {

using Json = nlohmann::ordered_json;

ReportFormat parse_report_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "csv") return ReportFormat::csv;
  if (text == "dot") return ReportFormat::dot;
  throw std::invalid_argument("unknown report format '" + std::string(text) + "'");
}

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string fixed(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

// Largest class first, so the lists line up with "class_sizes".
Json class_members(const Graph& g, const Partition& p) {
  std::vector<std::vector<Vertex>> ordered = p.classes();
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  Json classes = Json::array();
  for (const auto& cls : ordered) {
    std::vector<std::string> labels;
    for (Vertex v : cls) labels.push_back(g.label(v));
    std::sort(labels.begin(), labels.end(), label_less);
    classes.push_back(std::move(labels));
  }
  return classes;
}

Json report_json(const ExperimentReport& r) {
  const Graph& g = r.network->graph;
  const ExperimentSpec& s = r.spec;
  Json j;
  j["schema_version"] = 1;
  j["graph"] = {{"name", r.network->name},
                {"vertices", g.vertex_count()},
                {"edges", g.edge_count()},
                {"preprocessing", r.network->preprocessing}};
  j["parameters"] = {{"delta", s.delta},     {"R", s.radius},
                     {"alpha", s.alpha},     {"rho", s.rho()},
                     {"runs", s.runs},       {"seed", s.seed},
                     {"weight_mode", std::string(to_string(s.weight_mode))},
                     {"stability_times", s.stability_times}};
  j["runs"] = s.runs;
  j["not_stabilized"] = r.not_stabilized;
  j["end_time"] = {{"min", r.min_end_time}, {"max", r.max_end_time}, {"mean", r.mean_end_time}};

  Json disagreements = Json::array();
  for (const auto& d : r.disagreements)
    disagreements.push_back(
        {{"run", d.run}, {"max_class_spread", d.max_class_spread}, {"min_class_gap", d.min_class_gap}});
  j["checks"] = {{"max_envelope_violation", r.max_envelope_violation},
                 {"max_mean_drift", r.max_mean_drift},
                 {"convergence_rate",
                  {{"agents_fitted", r.agents_fitted},
                   {"agents_exact", r.agents_exact},
                   {"agents_at_or_above_rho", r.agents_at_or_above_rho},
                   {"max_fitted_rate", optional_number(r.max_fitted_rate)}}},
                 {"route_disagreements", std::move(disagreements)}};

  Json parts = Json::array();
  for (const auto& p : r.partitions) {
    Json row;
    row["classes"] = p.class_count();
    row["class_sizes"] = p.class_sizes();
    row["occurrences"] = p.occurrences;
    row["agreement_rate"] = static_cast<double>(p.agreements) / static_cast<double>(p.occurrences);
    row["min_mu2"] = optional_number(p.min_mu2);
    row["modularity"] = optional_number(p.modularity);
    row["problem1_satisfied"] = p.problem1_satisfied;
    row["key"] = p.partition.canonical_key();
    row["members"] = class_members(g, p.partition);
    if (p.stability) row["stability"] = {{"times", p.stability->times}, {"values", p.stability->values}};
    parts.push_back(std::move(row));
  }
  j["partitions"] = std::move(parts);
  return j;
}

constexpr std::string_view kCsvHeader = "delta,classes,occurrences,min_mu2,modularity,problem1\n";

void csv_rows(std::ostringstream& out, const ExperimentReport& r) {
  for (const auto& p : r.partitions) {
    out << fixed(r.spec.delta) << ',' << p.class_count() << ',' << p.occurrences << ','
        << fixed(p.min_mu2) << ',' << fixed(p.modularity) << ','
        << (p.problem1_satisfied ? "true" : "false") << '\n';
  }
}

std::string report_dot(const ExperimentReport& r) {
  const std::string name = r.network->name + " delta=" + fixed(r.spec.delta);
  if (const PartitionSummary* modal = r.modal()) return to_dot(r.network->graph, modal->partition, name);
  return to_dot(r.network->graph, name);
}

}  // namespace

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: return report_json(report).dump(2) + "\n";
    case ReportFormat::csv: {
      std::ostringstream out;
      out << kCsvHeader;
      csv_rows(out, report);
      return out.str();
    }
    case ReportFormat::dot: return report_dot(report);
  }
  throw std::invalid_argument("unknown report format");
}

std::string emit_sweep(const std::vector<ExperimentReport>& reports, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      Json j;
      j["schema_version"] = 1;
      Json summary = Json::array();
      Json all = Json::array();
      for (const auto& r : reports) {
        const PartitionSummary* m = r.modal();
        summary.push_back({{"delta", r.spec.delta},
                           {"modal_classes", m ? Json(m->class_count()) : Json(nullptr)},
                           {"modal_modularity", m ? optional_number(m->modularity) : Json(nullptr)},
                           {"modal_occurrences", m ? m->occurrences : 0}});
        all.push_back(report_json(r));
      }
      j["summary"] = std::move(summary);
      j["reports"] = std::move(all);
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::ostringstream out;
      out << kCsvHeader;
      for (const auto& r : reports) csv_rows(out, r);
      return out.str();
    }
    case ReportFormat::dot: {
      std::string out;
      for (const auto& r : reports) out += report_dot(r);
      return out;
    }
  }
  throw std::invalid_argument("unknown report format");
}

std::string sweep_summary_csv(const std::vector<ExperimentReport>& reports) {
  std::ostringstream out;
  out << "delta,modal_classes,modal_modularity,modal_occurrences\n";
  for (const auto& r : reports) {
    const PartitionSummary* m = r.modal();
    out << fixed(r.spec.delta) << ',';
    if (m) out << m->class_count() << ',' << fixed(m->modularity) << ',' << m->occurrences;
    else out << ",,0";
    out << '\n';
  }
  return out.str();
}

}  // namespace opdyn
