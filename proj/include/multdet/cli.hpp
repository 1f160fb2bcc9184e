#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <mpfr.h>

namespace multdet {

/// Validated command line. Fields not used by the subcommand keep their
/// defaults and are left out of `entries`.
struct CommandConfig {
  std::string subcommand;
  std::string set;
  std::string table;
  std::string function;
  std::string factor;
  std::string kernel;
  std::string coeffs;
  std::uint64_t n = 0;
  std::uint64_t prime_cutoff = 0;
  std::uint64_t truncation = 0;
  std::optional<double> tail;
  std::vector<double> ygrid;
  std::vector<double> xgrid;
  mpfr_prec_t precision = 128;
  std::string direction = "increasing";
  std::string format;
  std::string out;
  bool inverse = false;
  bool compare = true;
  std::size_t samples = 4096;

  /// Normalized key=value pairs in a fixed order, echoed in every output.
  std::vector<std::pair<std::string, std::string>> entries;
  std::string header() const;
};

struct ParseOutcome {
  /// 0 with a config to run, 0 without one after --help, 2 on usage errors.
  int status = 0;
  std::optional<CommandConfig> config;
  std::string message;
};

/// `args` excludes the program name.
ParseOutcome parse_args(const std::vector<std::string>& args);

/// Writes exactly one table or report to `out`; diagnostics go to `err`.
/// Returns 0 on success, 1 on runtime failure, 2 on usage errors found late.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

/// Help footer: the set, function and kernel grammars.
std::string grammar_help();

}  // namespace multdet
