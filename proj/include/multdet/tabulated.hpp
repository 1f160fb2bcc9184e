#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "multdet/error.hpp"
#include "multdet/numeric.hpp"

namespace multdet {

enum class ValueMode { exact, floating };

namespace detail {

template <class V>
struct ValueTraits;

template <>
struct ValueTraits<Rational> {
  static constexpr ValueMode mode = ValueMode::exact;
  static Rational zero_like(const Rational&) { return Rational(0); }
  static long precision(const Rational&) { return 0; }
  // mpq_class(4, 2) is stored as given; comparisons assume lowest terms
  static void normalize(Rational& q) { q.canonicalize(); }
};

template <>
struct ValueTraits<Real> {
  static constexpr ValueMode mode = ValueMode::floating;
  static Real zero_like(const Real& x) { return Real(x.precision()); }
  static long precision(const Real& x) { return static_cast<long>(x.precision()); }
  static void normalize(Real&) {}
};

}  // namespace detail

/// Values of an arithmetic function on 1..N. Exact (rational) or floating
/// (MPFR reals at a fixed precision). Indexing is 1-based.
template <class V>
class TabulatedFunction {
 public:
  TabulatedFunction(std::vector<V> values, std::string provenance)
      : values_(std::move(values)), provenance_(std::move(provenance)) {
    if (values_.empty()) throw Error("arith", "tabulation must cover at least n = 1");
    for (V& v : values_) detail::ValueTraits<V>::normalize(v);
  }

  /// Tabulates n -> fn(n) on 1..limit.
  template <class Fn>
  static TabulatedFunction tabulate(std::uint64_t limit, Fn&& fn, std::string provenance) {
    if (limit == 0) throw Error("arith", "tabulation limit must be positive");
    std::vector<V> values;
    values.reserve(limit);
    for (std::uint64_t n = 1; n <= limit; ++n) values.push_back(fn(n));
    return TabulatedFunction(std::move(values), std::move(provenance));
  }

  std::uint64_t limit() const { return values_.size(); }
  ValueMode value_mode() const { return detail::ValueTraits<V>::mode; }
  /// Working precision in bits for floating tabulations, 0 when exact.
  long precision_bits() const { return detail::ValueTraits<V>::precision(values_.front()); }
  const std::string& provenance() const { return provenance_; }

  const V& operator()(std::uint64_t n) const { return values_[index(n)]; }
  V& operator()(std::uint64_t n) { return values_[index(n)]; }
  const std::vector<V>& values() const { return values_; }

  template <class Fn>
  TabulatedFunction map(Fn&& fn, std::string provenance) const {
    std::vector<V> out;
    out.reserve(values_.size());
    for (const V& v : values_) out.push_back(fn(v));
    return TabulatedFunction(std::move(out), std::move(provenance));
  }

 private:
  std::size_t index(std::uint64_t n) const {
    if (n == 0 || n > values_.size())
      throw Error("arith", "index " + std::to_string(n) + " outside tabulation 1.." + std::to_string(values_.size()));
    return static_cast<std::size_t>(n - 1);
  }

  std::vector<V> values_;
  std::string provenance_;
};

using ExactFunction = TabulatedFunction<Rational>;
using RealFunction = TabulatedFunction<Real>;

/// CSV with header `n,value`; exact values as `p/q`, reals in scientific
/// notation with enough digits to round-trip their precision.
void write_csv(std::ostream& out, const ExactFunction& f);
void write_csv(std::ostream& out, const RealFunction& f);

/// Reads the CSV format above. Lines starting with '#' are skipped; rows must
/// run n = 1, 2, ... without gaps.
ExactFunction read_exact_csv(std::istream& in, std::string provenance = "csv");
RealFunction read_real_csv(std::istream& in, mpfr_prec_t precision, std::string provenance = "csv");

}  // namespace multdet
