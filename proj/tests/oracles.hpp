#pragma once

// Test-side reference computations. Deliberately naive: trial division,
// explicit divisor sums, exact Gaussian elimination over Q(i).

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "multdet/kernel.hpp"
#include "multdet/numeric.hpp"

namespace oracle {

using multdet::GaussianRational;
using multdet::Rational;

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline GaussianRational mul(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline GaussianRational sub(const GaussianRational& a, const GaussianRational& b) { return {a.re - b.re, a.im - b.im}; }

inline GaussianRational div(const GaussianRational& a, const GaussianRational& b) {
  const Rational d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline bool is_zero(const GaussianRational& z) { return z.re == 0 && z.im == 0; }

/// det of an n x n Gaussian-rational matrix by Gaussian elimination with
/// row swaps, exact.
inline GaussianRational determinant(std::vector<std::vector<GaussianRational>> m) {
  const std::size_t n = m.size();
  GaussianRational det{Rational(1), Rational(0)};
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) return {Rational(0), Rational(0)};
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = {-det.re, -det.im};
    }
    det = mul(det, m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      const GaussianRational factor = div(m[r][c], m[c][c]);
      for (std::size_t k = c; k < n; ++k) m[r][k] = sub(m[r][k], mul(factor, m[c][k]));
    }
  }
  return det;
}

/// Leading principal minors D_1..D_n of the matrix with entries given by
/// `entry(i, j)` for all i, j (1-based).
template <class Entry>
std::vector<GaussianRational> leading_minors(std::size_t n, Entry entry) {
  std::vector<GaussianRational> out;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<GaussianRational>> m(k, std::vector<GaussianRational>(k));
    for (std::size_t i = 1; i <= k; ++i)
      for (std::size_t j = 1; j <= k; ++j) m[i - 1][j - 1] = entry(i, j);
    out.push_back(determinant(std::move(m)));
  }
  return out;
}

/// Minors of (c(i/j)) from the kernel's exact evaluator; c(j/i) is looked up
/// directly rather than conjugated.
inline std::vector<GaussianRational> multiplicative_minors(const multdet::FractionKernel& c, std::size_t n) {
  return leading_minors(n, [&](std::size_t i, std::size_t j) { return *c.exact(i, j); });
}

inline std::vector<GaussianRational> additive_minors(const std::vector<GaussianRational>& coeffs, std::size_t n) {
  return leading_minors(n, [&](std::size_t i, std::size_t j) {
    const std::size_t lag = i > j ? i - j : j - i;
    GaussianRational v = lag < coeffs.size() ? coeffs[lag] : GaussianRational{Rational(0), Rational(0)};
    return i >= j ? v : v.conj();
  });
}

/// Nonnegative trigonometric polynomial coefficients: autocorrelation of a
/// random vector (Fejer-Riesz) plus a positive floor on c0(0).
inline std::vector<GaussianRational> random_positive_symbol(std::mt19937_64& rng, std::size_t degree, bool complex) {
  std::uniform_int_distribution<int> digit(-9, 9);
  std::vector<GaussianRational> h;
  for (std::size_t k = 0; k <= degree; ++k)
    h.push_back({Rational(digit(rng), 10), complex ? Rational(digit(rng), 10) : Rational(0)});
  std::vector<GaussianRational> c(degree + 1, GaussianRational{Rational(0), Rational(0)});
  for (std::size_t lag = 0; lag <= degree; ++lag)
    for (std::size_t j = 0; j + lag <= degree; ++j) {
      // c(lag) = sum_j h_{j+lag} conj(h_j)
      const GaussianRational t = mul(h[j + lag], h[j].conj());
      c[lag] = {c[lag].re + t.re, c[lag].im + t.im};
    }
  c[0].re += Rational(1, 10);
  c[0].im = 0;
  return c;
}

}  // namespace oracle
