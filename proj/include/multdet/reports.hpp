#pragma once

// JSON forms of the analysis reports, and a plain CSV reader that accepts
// every table the command line writes.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "multdet/arith.hpp"
#include "multdet/direct_factors.hpp"
#include "multdet/log_means.hpp"
#include "multdet/toeplitz.hpp"

namespace multdet {

using Json = nlohmann::ordered_json;

/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
Json json_number(double v);
Json to_json(const Interval& v);
Json to_json(const MonotoneVerdict& v);
Json to_json(const InverseSum& v);
Json to_json(const AlphaEstimate& v);
Json to_json(const MeanReport& v);
Json to_json(const LogMeanReport& v);
Json to_json(const FactorizationReport& v);
Json to_json(const CmLimit& v);
Json to_json(const SzegoReport& v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Lines starting with '#', without the marker.
  std::vector<std::string> comments;

  std::size_t column(const std::string& name) const;
};

/// Header row plus data rows of the same width; '#' lines are comments.
CsvTable read_csv_table(std::istream& in);

}  // namespace multdet
