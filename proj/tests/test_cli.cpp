#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "multdet/cli.hpp"
#include "multdet/reports.hpp"
#include "multdet/tabulated.hpp"
#include "multdet/text.hpp"

using namespace multdet;

namespace {

struct Result {
  int status = 0;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  Result r;
  const ParseOutcome p = parse_args(args);
  if (!p.config) {
    r.status = p.status;
    r.err = p.message;
    return r;
  }
  std::ostringstream out, err;
  r.status = run(*p.config, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string entry(const CommandConfig& c, const std::string& key) {
  for (const auto& [k, v] : c.entries)
    if (k == key) return v;
  return "";
}

// the executable's path comes from the test environment
int shell_status(const std::string& args, const std::string& stdout_path = "/dev/null") {
  const char* bin = std::getenv("MULTDET_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "MULTDET_CLI is not set");
  const int raw = std::system((std::string(bin) + " " + args + " >" + stdout_path + " 2>/dev/null").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

}  // namespace

TEST_CASE("parse examples") {
  auto p = parse_args({"det", "--kernel", "hilberdink:sigma=recip", "--n", "64", "--precision", "128"});
  REQUIRE(p.config);
  CHECK(p.config->subcommand == "det");
  CHECK(p.config->kernel == "hilberdink:sigma=recip");
  CHECK(p.config->n == 64);
  CHECK(p.config->precision == 128);
  CHECK(p.config->header().rfind("# config: subcommand=det", 0) == 0);

  p = parse_args({"det", "--kernel", "nope:"});
  CHECK(p.status == 2);
  CHECK_FALSE(p.config);
  CHECK(p.message.find("nope") != std::string::npos);

  p = parse_args({"alpha", "--set", "multiples:2,3", "--ygrid", "2,3,5"});
  REQUIRE(p.config);
  CHECK(p.config->ygrid == std::vector<double>{2, 3, 5});
  CHECK(entry(*p.config, "function") == "indicator:multiples:2,3");

  CHECK(parse_args({"det", "--kernel", "identity", "--precision", "40"}).status == 2);
  CHECK(parse_args({"det", "--kernel", "identity", "--n", "0"}).status == 2);
  CHECK(parse_args({"det", "--kernel", "identity", "--bogus", "1"}).status == 2);
  CHECK(parse_args({"frobnicate"}).status == 2);
  CHECK(parse_args({"density", "--A", "squares", "--xgrid", "1e4,x"}).status == 2);
  CHECK(parse_args({"det", "--kernel", "identity", "--format", "xml"}).status == 2);
  CHECK(parse_args({"derive", "--set", "cubes"}).status == 2);

  p = parse_args({"--help"});
  CHECK(p.status == 0);
  CHECK_FALSE(p.config);
  CHECK(p.message.find("hilberdink:sigma=recip") != std::string::npos);
  CHECK(p.message.find("multiples:a,b") != std::string::npos);
}

TEST_CASE("run examples") {
  auto r = invoke({"prop29", "--kernel", "identity", "--n", "100"});
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["alpha_proxy"].get<double>() == 0.0);
  CHECK(j["config"]["n"] == "100");

  r = invoke({"derive", "--set", "multiples:2,3", "--n", "10"});
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\n6,-1\n") != std::string::npos);

  r = invoke({"density", "--A", "squares", "--xgrid", "1e4,1e6"});
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  const CsvTable t = read_csv_table(in);
  REQUIRE(t.rows.size() == 2);
  double emp = 0, lo = 0, hi = 0;
  REQUIRE(parse_double(t.rows[1][t.column("empirical")], emp));
  REQUIRE(parse_double(t.rows[1][t.column("lambda_lo")], lo));
  REQUIRE(parse_double(t.rows[1][t.column("lambda_hi")], hi));
  CHECK(Interval{lo, hi}.distance(emp) < 1e-3);
  CHECK(t.comments.at(0).find("A=squares") != std::string::npos);
}

TEST_CASE("every subcommand runs and is deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"derive", "--set", "squarefree", "--n", "50", "--inverse"},
      {"monotone", "--set", "multiples:2,3", "--n", "200"},
      {"monotone", "--set", "list:2", "--n", "20", "--format", "csv"},
      {"density", "--A", "powers:2", "--xgrid", "1e3,1e4", "--format", "json"},
      {"alpha", "--function", "omega-min:2", "--ygrid", "2,3", "--xgrid", "1e3"},
      {"alpha", "--function", "const:1", "--A", "squares", "--xgrid", "1e4", "--format", "csv"},
      {"det", "--kernel", "hilberdink:sigma=cm,s=1.5", "--n", "20"},
      {"det", "--kernel", "additive:coeffs=2,0.5:0.25", "--n", "20", "--format", "json"},
      {"product", "--kernel", "hilberdink:sigma=recip", "--n", "32", "--P", "1000"},
      {"product", "--kernel", "hilberdink:sigma=sqfree,v=1/2", "--n", "16", "--no-compare", "--format", "json"},
      {"prop29", "--kernel", "dfactor:A=powers:2", "--n", "64", "--format", "csv"},
      {"prop30", "--A", "powers:2", "--kernel", "dfactor:A=powers:2,q=1/2", "--n", "32"},
      {"szego", "--coeffs", "2,0.5", "--n", "64"},
      {"szego", "--coeffs", "2,1", "--format", "csv"},
  };
  for (const auto& c : cmds) {
    CAPTURE(c[0]);
    CAPTURE(c[2]);
    const Result a = invoke(c);
    const Result b = invoke(c);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
    const bool json = !a.out.empty() && a.out[0] == '{';
    if (json) {
      CHECK(Json::parse(a.out).contains("config"));
    } else {
      CHECK(a.out.rfind("# config: subcommand=" + c[0], 0) == 0);
      std::istringstream in(a.out);
      const CsvTable t = read_csv_table(in);
      CHECK_FALSE(t.rows.empty());
    }
  }
}

TEST_CASE("CSV output is re-readable by the table readers") {
  const Result r = invoke({"derive", "--set", "multiples:2,3", "--n", "30"});
  std::istringstream in(r.out);
  const ExactFunction f = read_exact_csv(in);
  CHECK(f.limit() == 30);
  CHECK(f(6) == -1);

  const Result d = invoke({"det", "--kernel", "hilberdink:sigma=recip", "--n", "8"});
  std::istringstream din(d.out);
  const CsvTable t = read_csv_table(din);
  CHECK(t.header == std::vector<std::string>{"n", "ln_D", "r", "ln_r", "precision_bits"});
  double ln_d4 = 0;
  REQUIRE(parse_double(t.rows[3][1], ln_d4));
  CHECK(ln_d4 == doctest::Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("runtime failures and usage errors found late") {
  // sigma(p) = 1 is not positive-definite
  Result r = invoke({"det", "--kernel", "hilberdink:sigma=const,v=1", "--n", "8"});
  CHECK(r.status == 1);
  CHECK(r.err.find("toeplitz") != std::string::npos);
  r = invoke({"derive", "--table", "/nonexistent.csv"});
  CHECK(r.status == 1);
  r = invoke({"prop30", "--A", "squarefree", "--kernel", "identity", "--n", "8"});
  CHECK(r.status == 1);
}

TEST_CASE("--out writes the file and nothing to stdout") {
  const auto path = std::filesystem::temp_directory_path() / "multdet_cli_out.csv";
  const auto captured = std::filesystem::temp_directory_path() / "multdet_cli_stdout.txt";
  std::filesystem::remove(path);
  CHECK(shell_status("derive --set multiples:2,3 --n 10 --out " + path.string(), captured.string()) == 0);
  CHECK(std::filesystem::file_size(captured) == 0);
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str().find("\n6,-1\n") != std::string::npos);
  std::filesystem::remove(path);

  const auto fail = std::filesystem::temp_directory_path() / "multdet_cli_fail.csv";
  std::filesystem::remove(fail);
  CHECK(shell_status("det --kernel hilberdink:sigma=const,v=1 --out " + fail.string()) == 1);
  CHECK_FALSE(std::filesystem::exists(fail));
  std::filesystem::remove(captured);
}

TEST_CASE("exit codes of the executable") {
  CHECK(shell_status("derive --set multiples:2,3 --n 10") == 0);
  CHECK(shell_status("--help") == 0);
  CHECK(shell_status("det --kernel nope:") == 2);
  CHECK(shell_status("det --kernel identity --n abc") == 2);
  CHECK(shell_status("det --kernel hilberdink:sigma=const,v=1") == 1);
  CHECK(shell_status("") == 2);
}
