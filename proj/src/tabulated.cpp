#include "multdet/tabulated.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace multdet {

namespace {

template <class V, class Parse>
TabulatedFunction<V> read_csv(std::istream& in, std::string provenance, Parse&& parse) {
  std::vector<V> values;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "n,value") throw Error("arith", "expected CSV header 'n,value', got '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error("arith", "malformed CSV row at line " + std::to_string(line_no));
    const std::uint64_t n = std::stoull(line.substr(0, comma));
    if (n != values.size() + 1)
      throw Error("arith", "CSV rows must run n = 1, 2, ...; found n=" + std::to_string(n) + " at line " +
                               std::to_string(line_no));
    values.push_back(parse(line.substr(comma + 1)));
  }
  if (!header_seen) throw Error("arith", "CSV input has no header");
  if (values.empty()) throw Error("arith", "CSV input has no rows");
  return TabulatedFunction<V>(std::move(values), std::move(provenance));
}

}  // namespace

void write_csv(std::ostream& out, const ExactFunction& f) {
  out << "n,value\n";
  for (std::uint64_t n = 1; n <= f.limit(); ++n) out << n << ',' << format_rational(f(n)) << '\n';
}

void write_csv(std::ostream& out, const RealFunction& f) {
  out << "n,value\n";
  for (std::uint64_t n = 1; n <= f.limit(); ++n) {
    const Real& v = f(n);
    out << n << ',' << v.to_string(v.decimal_digits()) << '\n';
  }
}

ExactFunction read_exact_csv(std::istream& in, std::string provenance) {
  return read_csv<Rational>(in, std::move(provenance), [](const std::string& s) { return parse_rational(s); });
}

RealFunction read_real_csv(std::istream& in, mpfr_prec_t precision, std::string provenance) {
  return read_csv<Real>(in, std::move(provenance),
                        [precision](const std::string& s) { return Real(std::string_view(s), precision); });
}

}  // namespace multdet
