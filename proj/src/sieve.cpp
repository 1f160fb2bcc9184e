#include "multdet/sieve.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "multdet/error.hpp"

namespace multdet {

Sieve::Sieve(std::uint64_t limit) : limit_(limit), spf_(limit + 1, 0) {
  if (limit > 0xFFFFFFFFULL) throw Error("sieve", "limit too large: " + std::to_string(limit));
  if (limit >= 1) spf_[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes_) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > spf_[i] || m > limit) break;
      spf_[m] = p;
    }
  }
}

std::shared_ptr<const Sieve> Sieve::shared(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const Sieve> current;
  std::lock_guard<std::mutex> lock(mutex);
  if (!current || current->limit() < limit) {
    std::uint64_t target = std::max<std::uint64_t>(limit, 1 << 16);
    if (current) target = std::max(target, std::min<std::uint64_t>(2 * current->limit(), 0xFFFFFFFFULL));
    current = std::make_shared<const Sieve>(std::max(target, limit));
  }
  return current;
}

void Sieve::check(std::uint64_t n) const {
  if (n == 0) throw Error("sieve", "0 is not a positive integer");
  if (n > limit_)
    throw Error("sieve", std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
}

bool Sieve::is_prime(std::uint64_t n) const {
  check(n);
  return n >= 2 && spf_[n] == n;
}

std::uint64_t Sieve::smallest_factor(std::uint64_t n) const {
  check(n);
  return spf_[n];
}

std::vector<PrimePower> Sieve::factorize(std::uint64_t n) const {
  check(n);
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint64_t p = spf_[n];
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  return out;
}

std::vector<std::uint64_t> Sieve::primes_up_to(std::uint64_t bound) const {
  if (bound > limit_)
    throw Error("sieve", "prime bound " + std::to_string(bound) + " exceeds sieve limit " + std::to_string(limit_));
  std::vector<std::uint64_t> out;
  for (std::uint32_t p : primes_) {
    if (p > bound) break;
    out.push_back(p);
  }
  return out;
}

std::vector<PrimePower> factorize_trial(std::uint64_t n) {
  if (n == 0) throw Error("sieve", "0 is not a positive integer");
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t m = i * i; m <= bound; m += i) composite[m] = true;
  }
  return out;
}

std::uint64_t prime_bound(double y) {
  if (!(y > 1.0) || !std::isfinite(y)) throw Error("sieve", "friability bound must be a finite real > 1");
  return static_cast<std::uint64_t>(std::floor(y));
}

}  // namespace multdet
