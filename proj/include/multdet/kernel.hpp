#pragma once

// Kernels generating hermitian matrices: multiplicative ones c(i/j) on
// positive rationals and additive ones c0(i-j) on the integers.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multdet/integer_set.hpp"
#include "multdet/numeric.hpp"

namespace multdet {

/// |sigma(p)| <= constant * p^{-exponent} for every prime p.
struct DecayEnvelope {
  double constant = 1.0;
  double exponent = 0.0;
};

/// Multiplicative sigma with sigma(1) = 1, known on prime powers p^k with
/// p <= prime_limit() and k <= exponent_limit(). Completely multiplicative
/// sigmas are stored through sigma(p) only.
class MultiplicativeSigma {
 public:
  using PrimePowerRule = std::function<Complex(std::uint64_t p, unsigned k, mpfr_prec_t precision)>;
  using ExactRule = std::function<std::optional<GaussianRational>(std::uint64_t p, unsigned k)>;

  MultiplicativeSigma(std::string description, bool completely_multiplicative, bool real_valued, PrimePowerRule rule,
                      ExactRule exact = {}, std::optional<DecayEnvelope> envelope = std::nullopt,
                      std::uint64_t prime_limit = kUnbounded, unsigned exponent_limit = kUnboundedExponent);

  /// sigma(n) = 1/n.
  static MultiplicativeSigma reciprocal();
  /// sigma(n) = n^{-s}; s is parsed at working precision.
  static MultiplicativeSigma power(const std::string& s);
  /// Completely multiplicative with sigma(p) = v for every prime.
  static MultiplicativeSigma prime_constant(const Rational& v);
  /// sigma(p) = v, sigma(p^k) = 0 for k >= 2 (multiplicative, not complete).
  static MultiplicativeSigma squarefree_constant(const Rational& v);
  /// Values sigma(p^k) keyed by (p, k). Completely multiplicative when every
  /// key has k = 1 and `complete` is set.
  static MultiplicativeSigma table(std::map<std::pair<std::uint64_t, unsigned>, GaussianRational> values,
                                   bool complete, std::string description);
  /// Reads rows `p,k,re[,im]` after a header line.
  static MultiplicativeSigma read_table(const std::string& path);

  const std::string& describe() const { return description_; }
  bool completely_multiplicative() const { return completely_multiplicative_; }
  bool real_valued() const { return real_valued_; }
  std::uint64_t prime_limit() const { return prime_limit_; }
  unsigned exponent_limit() const { return exponent_limit_; }
  const std::optional<DecayEnvelope>& envelope() const { return envelope_; }

  /// sigma(p^k); an out-of-range request names the missing (p, k).
  Complex prime_power(std::uint64_t p, unsigned k, mpfr_prec_t precision) const;
  Complex operator()(std::uint64_t n, mpfr_prec_t precision) const;
  std::optional<GaussianRational> exact(std::uint64_t n) const;
  std::optional<GaussianRational> exact_prime_power(std::uint64_t p, unsigned k) const;

  static constexpr std::uint64_t kUnbounded = ~std::uint64_t{0};
  static constexpr unsigned kUnboundedExponent = ~0u;

 private:
  void check_range(std::uint64_t p, unsigned k) const;

  std::string description_;
  bool completely_multiplicative_;
  bool real_valued_;
  PrimePowerRule rule_;
  ExactRule exact_;
  std::optional<DecayEnvelope> envelope_;
  std::uint64_t prime_limit_;
  unsigned exponent_limit_;
};

/// The map c on positive rationals, queried on reduced pairs (num, den).
class FractionKernel {
 public:
  /// Evaluation at a fixed precision for fractions with num, den <= the bound
  /// passed to the binder; inputs are already reduced.
  using Evaluator = std::function<Complex(std::uint64_t num, std::uint64_t den)>;
  using Binder = std::function<Evaluator(std::uint64_t max_index, mpfr_prec_t precision)>;
  using ExactEvaluator = std::function<std::optional<GaussianRational>(std::uint64_t num, std::uint64_t den)>;

  enum class Family { identity, hilberdink, direct_factor, explicit_table };

  FractionKernel(Family family, std::string description, Binder binder, bool hermitian, bool real_valued,
                 ExactEvaluator exact = {});

  Family family() const { return family_; }
  const std::string& describe() const { return description_; }
  bool hermitian() const { return hermitian_; }
  bool real_valued() const { return real_valued_; }
  bool has_exact() const { return static_cast<bool>(exact_); }

  Evaluator bind(std::uint64_t max_index, mpfr_prec_t precision) const;
  /// c(num/den) with reduction of the fraction.
  Complex evaluate(std::uint64_t num, std::uint64_t den, mpfr_prec_t precision) const;
  std::optional<GaussianRational> exact(std::uint64_t num, std::uint64_t den) const;

  /// lambda * c for a rational lambda > 0.
  FractionKernel scaled(const Rational& lambda) const;

 private:
  Family family_;
  std::string description_;
  Binder binder_;
  bool hermitian_;
  bool real_valued_;
  ExactEvaluator exact_;
};

/// c(r) = 1 at r = 1, 0 elsewhere.
FractionKernel identity_kernel();
/// c(i/j) = sigma(i/(i,j)) * conj(sigma(j/(i,j))).
FractionKernel hilberdink_kernel(const MultiplicativeSigma& sigma);
/// Supported on ratios of elements of A: c(p/q) = q^{Omega(p)+Omega(q)}
/// when p, q are in A, 0 otherwise (Omega counts prime factors with
/// multiplicity). For A = powers of 2 this is c(2^m) = q^{|m|}.
FractionKernel direct_factor_kernel(const IntegerSet& a, const Rational& q);
/// Explicit values on reduced pairs; missing pairs are 0, and a pair given in
/// one orientation only is completed by conjugation.
FractionKernel table_kernel(std::map<std::pair<std::uint64_t, std::uint64_t>, GaussianRational> values,
                            std::string description);
/// Reads rows `num,den,re[,im]` after a header line.
FractionKernel read_table_kernel(const std::string& path);

/// Symbol c0 on the integers with c0(-m) = conj(c0(m)).
class AdditiveSymbol {
 public:
  using LagEvaluator = std::function<Complex(std::uint64_t lag)>;
  using Binder = std::function<LagEvaluator(std::uint64_t max_lag, mpfr_prec_t precision)>;

  AdditiveSymbol(std::string description, Binder binder, bool real_valued,
                 std::function<std::optional<GaussianRational>(std::uint64_t)> exact = {});

  /// c0(0), c0(1), ... with zeros beyond the list. c0(0) must be real.
  static AdditiveSymbol from_coefficients(std::vector<GaussianRational> coefficients);

  const std::string& describe() const { return description_; }
  bool real_valued() const { return real_valued_; }
  LagEvaluator bind(std::uint64_t max_lag, mpfr_prec_t precision) const { return binder_(max_lag, precision); }
  std::optional<GaussianRational> exact(std::uint64_t lag) const;
  bool has_exact() const { return static_cast<bool>(exact_); }

 private:
  std::string description_;
  Binder binder_;
  bool real_valued_;
  std::function<std::optional<GaussianRational>(std::uint64_t)> exact_;
};

/// Lower-triangle entry generator for a hermitian matrix, bound lazily at a
/// size and precision. Entries are requested for 1 <= j <= i <= n.
struct MatrixSource {
  using Entry = std::function<Complex(std::size_t i, std::size_t j)>;
  using ExactEntry = std::function<std::optional<GaussianRational>(std::size_t i, std::size_t j)>;

  std::string description;
  bool real_valued = true;
  std::function<Entry(std::size_t n, mpfr_prec_t precision)> bind;
  ExactEntry exact;
};

/// (c(i/j)); rejects non-hermitian kernels, and checks c(j/i) = conj c(i/j)
/// on every pair it evaluates.
MatrixSource multiplicative_source(const FractionKernel& kernel);
/// Gram matrix of e_{index_1}, e_{index_2}, ...: entries c(index_i/index_j).
MatrixSource indexed_source(const FractionKernel& kernel, std::vector<std::uint64_t> indices);
/// (c0(i-j)).
MatrixSource additive_source(const AdditiveSymbol& symbol);

}  // namespace multdet
