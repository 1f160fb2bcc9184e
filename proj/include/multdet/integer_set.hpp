#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "multdet/sieve.hpp"

namespace multdet {

/// A set of positive integers given by a membership predicate together with
/// an enumerator. Queries above `cap()` are errors, never silent truncation.
///
/// Textual forms (normalized by `describe()`):
///   all, powers:p, squares, squarefree, friable:y, sifted:y, window:y,z,
///   coprime:m, list:a,b,..., multiples:a,b,...
class IntegerSet {
 public:
  enum class Kind {
    all,
    powers,
    squares,
    squarefree,
    friable,
    sifted,
    window,
    coprime,
    list,
    multiples,
    members,
  };

  static IntegerSet parse(std::string_view spec, std::uint64_t cap);

  static IntegerSet all(std::uint64_t cap);
  static IntegerSet powers(std::uint64_t base, std::uint64_t cap);
  static IntegerSet squares(std::uint64_t cap);
  static IntegerSet squarefree(std::uint64_t cap);
  /// S(y): every prime factor <= y.
  static IntegerSet friable(double y, std::uint64_t cap);
  /// E(y): every prime factor > y (contains 1).
  static IntegerSet sifted(double y, std::uint64_t cap);
  /// S(y,z): every prime factor p with y < p <= z.
  static IntegerSet window(double y, double z, std::uint64_t cap);
  static IntegerSet coprime(std::uint64_t modulus, std::uint64_t cap);
  static IntegerSet list(std::vector<std::uint64_t> elements, std::uint64_t cap);
  /// M(A), the set of multiples of the listed generators.
  static IntegerSet multiples(std::vector<std::uint64_t> generators, std::uint64_t cap);
  /// Explicit membership bitmap over 1..cap (index 0 unused).
  static IntegerSet members(std::vector<bool> bitmap, std::string description);

  Kind kind() const { return kind_; }
  std::uint64_t cap() const { return cap_; }
  std::string describe() const;

  bool contains(std::uint64_t n) const;
  /// Members <= limit, ascending. limit must not exceed cap().
  std::vector<std::uint64_t> enumerate(std::uint64_t limit) const;

  /// Stable under multiplication (a, a' in A implies a*a' in A).
  bool multiplication_closed() const;

  /// Same set with a larger (or smaller) cap.
  IntegerSet with_cap(std::uint64_t cap) const;

  double y() const { return y_; }
  double z() const { return z_; }
  std::uint64_t parameter() const { return param_; }
  const std::vector<std::uint64_t>& elements() const { return elements_; }

 private:
  IntegerSet(Kind kind, std::uint64_t cap) : kind_(kind), cap_(cap) {}
  void require_within_cap(std::uint64_t n) const;
  void attach_sieve();

  Kind kind_;
  std::uint64_t cap_;
  double y_ = 0.0;
  double z_ = 0.0;
  std::uint64_t param_ = 0;
  std::vector<std::uint64_t> elements_;
  std::shared_ptr<const std::vector<bool>> bitmap_;
  std::string description_;
  std::shared_ptr<const Sieve> sieve_;
};

}  // namespace multdet
