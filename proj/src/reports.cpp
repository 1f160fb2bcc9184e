#include "multdet/reports.hpp"

#include <cmath>
#include <istream>

#include "multdet/error.hpp"
#include "multdet/text.hpp"

namespace multdet {

Json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json to_json(const Interval& v) { return Json::array({json_number(v.lo), json_number(v.hi)}); }

Json to_json(const MonotoneVerdict& v) {
  Json j;
  j["holds"] = v.holds;
  j["checked_to"] = v.limit;
  if (v.violation) j["violation"] = Json{{"k", v.violation->first}, {"n", v.violation->second}};
  else j["violation"] = nullptr;
  j["worst_margin"] = json_number(v.worst_margin);
  return j;
}

Json to_json(const InverseSum& v) {
  return Json{{"value", to_json(v.value)},
              {"truncation", v.truncation},
              {"heuristic", v.heuristic},
              {"divergent_looking", v.divergent_looking},
              {"method", v.method}};
}

Json to_json(const AlphaEstimate& v) {
  return Json{{"value", to_json(v.value)},
              {"truncation", v.truncation},
              {"terms", v.terms},
              {"tail_mass", to_json(v.tail_mass)}};
}

namespace {

Json trace_json(const std::vector<TracePoint>& trace) {
  Json out = Json::array();
  for (const auto& p : trace) out.push_back(Json{{"x", json_number(p.x)}, {"value", json_number(p.value)}});
  return out;
}

Json pair_trace(const std::vector<std::pair<std::size_t, double>>& trace) {
  Json out = Json::array();
  for (const auto& [n, v] : trace) out.push_back(Json{{"n", n}, {"value", json_number(v)}});
  return out;
}

}  // namespace

Json to_json(const MeanReport& v) {
  Json j;
  j["function"] = v.function;
  j["direction"] = v.direction == Direction::increasing ? "increasing" : "decreasing";
  j["checked_to"] = v.checked_to;
  Json alpha = Json::array();
  for (const auto& a : v.alpha_y) {
    Json row = to_json(a.estimate);
    row["y"] = json_number(a.y);
    alpha.push_back(row);
  }
  j["alpha_y"] = alpha;
  j["alpha_nondecreasing"] = v.alpha_nondecreasing;
  j["alpha_limit"] = to_json(v.alpha_limit);
  j["cesaro"] = trace_json(v.cesaro);
  j["logmean"] = trace_json(v.logmean);
  j["cesaro_decade"] = Json{{"min", json_number(v.cesaro_proxy.min)}, {"max", json_number(v.cesaro_proxy.max)}};
  j["logmean_decade"] = Json{{"min", json_number(v.logmean_proxy.min)}, {"max", json_number(v.logmean_proxy.max)}};
  return j;
}

Json to_json(const LogMeanReport& v) {
  return Json{{"n", v.n},
              {"ln_c1", json_number(v.ln_c1)},
              {"alpha_proxy", json_number(v.logmean)},
              {"root_proxy", json_number(v.root_proxy)},
              {"exp_alpha_proxy", json_number(std::exp(v.logmean))},
              {"exp_root_proxy", json_number(std::exp(v.root_proxy))},
              {"finite_bound", json_number(v.finite_bound)},
              {"bound_holds", v.bound_holds},
              {"logmean_trace", pair_trace(v.logmean_trace)},
              {"root_trace", pair_trace(v.root_trace)}};
}

Json to_json(const FactorizationReport& v) {
  return Json{{"n", v.n},
              {"factor", v.factor},
              {"complement", v.complement},
              {"orthogonality", Json{{"max_cross_entry", json_number(v.max_cross_entry)}}},
              {"block_identity", Json{{"max_log_error", json_number(v.block_identity_error)}, {"worst_n", v.worst_block_n}}},
              {"ratio_identity", Json{{"max_log_error", json_number(v.ratio_identity_error)}, {"worst_n", v.worst_ratio_n}}},
              {"tolerance", json_number(v.tolerance)},
              {"holds", v.holds}};
}

Json to_json(const CmLimit& v) {
  return Json{{"prime_cutoff", v.prime_cutoff},
              {"partial_sum", json_number(v.partial_sum)},
              {"tail_bound", json_number(v.tail_bound)},
              {"log_limit", to_json(v.log_limit)},
              {"limit", to_json(v.limit)},
              {"heuristic_tail", v.heuristic_tail},
              {"method", v.method}};
}

Json to_json(const SzegoReport& v) {
  Json j{{"samples", v.samples},
         {"sampled_min", json_number(v.sampled_min)},
         {"sampled_max", json_number(v.sampled_max)},
         {"limit_applicable", v.limit_applicable}};
  j["geometric_mean"] = v.geometric_mean ? json_number(*v.geometric_mean) : Json(nullptr);
  j["quadrature_error"] = json_number(v.quadrature_error);
  return j;
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error("cli", "no column '" + name + "'");
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.substr(1));
      continue;
    }
    auto fields = split(line, ',');
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size())
      throw Error("cli", "row '" + line + "' has " + std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(table.header.size()));
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw Error("cli", "table has no header row");
  return table;
}

}  // namespace multdet
