#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace multdet {

/// Prime power p^k appearing in a factorization.
struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Smallest-prime-factor table up to `limit`, built once by a linear sieve of
/// Eratosthenes and then shared read-only.
class Sieve {
 public:
  explicit Sieve(std::uint64_t limit);

  /// Shared instance covering at least `limit`. Grows (by rebuilding) when a
  /// larger limit is requested; previously returned instances stay valid.
  static std::shared_ptr<const Sieve> shared(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  bool is_prime(std::uint64_t n) const;
  /// Smallest prime factor; 1 for n = 1.
  std::uint64_t smallest_factor(std::uint64_t n) const;
  std::vector<PrimePower> factorize(std::uint64_t n) const;
  /// Primes p <= bound, ascending.
  std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) const;

 private:
  void check(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

/// Trial-division factorization, usable beyond any sieve limit.
std::vector<PrimePower> factorize_trial(std::uint64_t n);

/// Primes up to `bound` by a plain sieve (bounded by memory only).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

/// floor(y) for a real bound y > 1, the largest integer a prime p <= y can be.
std::uint64_t prime_bound(double y);

}  // namespace multdet
