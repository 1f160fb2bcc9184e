#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace multdet {

std::vector<std::string> split(std::string_view text, char separator);
bool parse_u64(std::string_view text, std::uint64_t& out);
bool parse_double(std::string_view text, double& out);
/// Shortest decimal form that round-trips a double ("3", "0.5", "1e+06").
std::string format_real(double value);

}  // namespace multdet
