#pragma once

// Calculus of arithmetic functions tabulated on 1..N: Dirichlet convolution,
// the Bougaief derivative f*mu and its inverse, multiplicative monotonicity.
// Every divisor-pair traversal is the harmonic loop over (d, multiples of d),
// O(N log N) in total.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "multdet/integer_set.hpp"
#include "multdet/tabulated.hpp"

namespace multdet {

/// Moebius function; n = 0 is rejected.
int mobius(std::uint64_t n);

ExactFunction mobius_table(std::uint64_t limit);
ExactFunction constant_function(std::uint64_t limit, const Rational& value);
/// epsilon: 1 at n = 1, 0 elsewhere (unit of convolution).
ExactFunction unit_function(std::uint64_t limit);
ExactFunction identity_function(std::uint64_t limit);
ExactFunction divisor_count(std::uint64_t limit);
/// omega(n), number of distinct prime divisors.
ExactFunction distinct_prime_count(std::uint64_t limit);

template <class V>
TabulatedFunction<V> dirichlet_convolve(const TabulatedFunction<V>& f, const TabulatedFunction<V>& g) {
  if (f.limit() != g.limit())
    throw Error("arith", "convolution operands tabulated to different N (" + std::to_string(f.limit()) + " vs " +
                             std::to_string(g.limit()) + ")");
  const std::uint64_t limit = f.limit();
  std::vector<V> out(limit, detail::ValueTraits<V>::zero_like(f(1)));
  for (std::uint64_t d = 1; d <= limit; ++d) {
    const V& fd = f(d);
    for (std::uint64_t m = 1; d * m <= limit; ++m) out[d * m - 1] += fd * g(m);
  }
  return TabulatedFunction<V>(std::move(out), "(" + f.provenance() + ")*(" + g.provenance() + ")");
}

/// Df = f * mu.
ExactFunction bougaief_derivative(const ExactFunction& f);
RealFunction bougaief_derivative(const RealFunction& f);
/// n -> sum over d | n of g(d); inverse of bougaief_derivative.
ExactFunction bougaief_integral(const ExactFunction& g);

enum class Direction { increasing, decreasing };

/// Outcome of a divisor-pair monotonicity scan.
struct MonotoneVerdict {
  bool holds = true;
  /// Lexicographically smallest violating pair in (n, k) order, k | n.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;  // (k, n)
  /// Smallest signed slack over all proper pairs k | n: f(n) - f(k) for
  /// increasing, f(k) - f(n) for decreasing. Negative beyond tolerance means
  /// a violation; +inf when N = 1.
  double worst_margin = 0.0;
  std::uint64_t limit = 0;
};

/// Allowed excess as a function of f(k); a pair violates the direction only
/// when the excess is strictly larger.
using Tolerance = std::function<Real(const Real& value_at_divisor)>;

MonotoneVerdict is_mult_monotone(const ExactFunction& f, Direction direction);
/// Floating mode with tolerance 2^{-precision/2} * max(1, |f(k)|).
MonotoneVerdict is_mult_monotone(const RealFunction& f, Direction direction);
MonotoneVerdict is_mult_monotone(const RealFunction& f, Direction direction, const Tolerance& tolerance);

/// Smallest multiplicatively increasing majorant: g(n) = max over d | n of f(d).
template <class V>
TabulatedFunction<V> mult_increasing_envelope(const TabulatedFunction<V>& f) {
  std::vector<V> out = f.values();
  for (std::uint64_t d = 1; d <= f.limit(); ++d)
    for (std::uint64_t n = 2 * d; n <= f.limit(); n += d)
      if (out[n - 1] < f(d)) out[n - 1] = f(d);
  return TabulatedFunction<V>(std::move(out), "envelope(" + f.provenance() + ")");
}

/// 0/1 tabulation of M(A) on 1..N. A must be enumerable up to N.
ExactFunction set_of_multiples_indicator(const IntegerSet& generators, std::uint64_t limit);
/// 0/1 tabulation of membership in the set itself.
ExactFunction set_indicator(const IntegerSet& set, std::uint64_t limit);

/// Converts an exact tabulation to reals at `precision` bits.
RealFunction to_real(const ExactFunction& f, mpfr_prec_t precision);

}  // namespace multdet
