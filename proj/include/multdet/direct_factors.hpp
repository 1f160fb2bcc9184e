#pragma once

// Direct factors of the positive integers: sets A, B with every n = a*b
// uniquely. The friable/sifted pair (S(y), E(y)) is the model case.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multdet/integer_set.hpp"
#include "multdet/interval.hpp"
#include "multdet/tabulated.hpp"

namespace multdet {

struct FriableSplit {
  std::uint64_t friable;  // a: prime factors <= y
  std::uint64_t sifted;   // b: prime factors > y
};

FriableSplit friable_split(std::uint64_t n, double y);

/// The split n = a*b for every n <= N at a fixed y.
class FriableIndex {
 public:
  FriableIndex(double y, std::uint64_t limit);

  double y() const { return y_; }
  std::uint64_t limit() const { return friable_.size() - 1; }
  FriableSplit operator()(std::uint64_t n) const;

 private:
  double y_;
  std::vector<std::uint64_t> friable_;
};

enum class FriableWindow { friable, sifted, window };

/// Members <= X of S(y), E(y) or S(y,z), ascending.
std::vector<std::uint64_t> enumerate_friable(double y, std::uint64_t limit, FriableWindow window, double z = 0.0);

/// Enclosure of sum over a in A of 1/a.
struct InverseSum {
  Interval value;
  std::uint64_t truncation = 0;
  /// Tail bound is an extrapolation, not a proof.
  bool heuristic = false;
  /// No finite upper bound, or the lower bound exceeded the divergence cap.
  bool divergent_looking = false;
  std::string method;
};

struct InverseSumOptions {
  /// Truncation point for sets without a closed form; 0 means the set's cap.
  std::uint64_t truncation = 0;
  /// Caller-proven bound on sum over a > truncation of 1/a.
  std::optional<double> proven_tail;
  double divergence_cap = 20.0;
};

InverseSum inverse_sum(const IntegerSet& set, const InverseSumOptions& options = {});

struct DirectFactorVerdict {
  bool holds = true;
  std::uint64_t limit = 0;
  std::optional<std::uint64_t> counterexample;
  std::uint64_t representations = 0;  // at the counterexample
};

DirectFactorVerdict verify_direct_factor(const IntegerSet& a, const IntegerSet& b, std::uint64_t limit);

/// Complementary factor of A up to `limit`: a named set when one is known
/// (friable <-> sifted, squares <-> squarefree, powers:p <-> coprime:p),
/// otherwise the unique candidate built greedily from A.
IntegerSet complement_of(const IntegerSet& a, std::uint64_t limit);

/// Verified pair of complementary direct factors with the A-part of every
/// n <= verified_to and the enclosure of sum 1/a.
class DirectFactorPair {
 public:
  static DirectFactorPair make(const IntegerSet& a, const IntegerSet& b, std::uint64_t verify_to,
                               const InverseSumOptions& options = {});
  static DirectFactorPair with_complement(const IntegerSet& a, std::uint64_t verify_to,
                                          const InverseSumOptions& options = {});

  const IntegerSet& a() const { return a_; }
  const IntegerSet& b() const { return b_; }
  std::uint64_t verified_to() const { return verified_to_; }
  const InverseSum& inv_sum_a() const { return inv_sum_; }
  /// lambda = (sum 1/a)^{-1}; lower end 0 in the divergent-looking case.
  Interval lambda() const;
  std::uint64_t a_part(std::uint64_t n) const;

 private:
  DirectFactorPair(IntegerSet a, IntegerSet b) : a_(std::move(a)), b_(std::move(b)) {}

  IntegerSet a_;
  IntegerSet b_;
  std::uint64_t verified_to_ = 0;
  InverseSum inv_sum_;
  std::vector<std::uint64_t> a_part_;
};

/// f(n; A) = f(a) where n = a*b.
template <class V>
TabulatedFunction<V> reduce_by_factor(const TabulatedFunction<V>& f, const DirectFactorPair& pair) {
  if (f.limit() > pair.verified_to())
    throw Error("direct-factors", "pair verified to " + std::to_string(pair.verified_to()) +
                                      " only; tabulation runs to " + std::to_string(f.limit()));
  return TabulatedFunction<V>::tabulate(
      f.limit(), [&](std::uint64_t n) { return f(pair.a_part(n)); },
      f.provenance() + ";" + pair.a().describe());
}

/// Friable reduction f(n; y) = f(y-friable part of n).
template <class V>
TabulatedFunction<V> friable_reduction(const TabulatedFunction<V>& f, double y) {
  const FriableIndex index(y, f.limit());
  return TabulatedFunction<V>::tabulate(
      f.limit(), [&](std::uint64_t n) { return f(index(n).friable); },
      f.provenance() + ";y=" + std::to_string(y));
}

struct DensityRow {
  double x = 0.0;
  double empirical = 0.0;
  Interval lambda;
  bool heuristic_tail = false;
};

/// Empirical density of B at each x against the predicted lambda.
std::vector<DensityRow> esv_density(const DirectFactorPair& pair, const std::vector<double>& x_grid);

std::vector<double> default_density_grid();

}  // namespace multdet
