#include "multdet/direct_factors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "multdet/sieve.hpp"

namespace multdet {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Products of `primes` (with repetition) up to limit, unsorted.
void products_up_to(const std::vector<std::uint64_t>& primes, std::size_t from, std::uint64_t current,
                    std::uint64_t limit, std::vector<std::uint64_t>& out) {
  out.push_back(current);
  for (std::size_t i = from; i < primes.size(); ++i) {
    if (current > limit / primes[i]) break;  // primes ascend
    products_up_to(primes, i, current * primes[i], limit, out);
  }
}

Interval euler_product_inverse(const std::vector<std::uint64_t>& primes) {
  Rational product(1);
  for (std::uint64_t p : primes) product *= Rational(mpz_class(std::to_string(p)), mpz_class(std::to_string(p - 1)));
  return Interval::point(product.get_d()).outward();
}

struct Representations {
  std::vector<std::uint32_t> count;
  std::vector<std::uint64_t> a_part;
};

Representations count_representations(const IntegerSet& a, const IntegerSet& b, std::uint64_t limit) {
  Representations rep{std::vector<std::uint32_t>(limit + 1, 0), std::vector<std::uint64_t>(limit + 1, 0)};
  const std::vector<std::uint64_t> a_members = a.enumerate(limit);
  const std::vector<std::uint64_t> b_members = b.enumerate(limit);
  for (std::uint64_t x : a_members) {
    for (std::uint64_t y : b_members) {
      if (y > limit / x) break;
      const std::uint64_t n = x * y;
      if (rep.count[n]++ == 0) rep.a_part[n] = x;
    }
  }
  return rep;
}

}  // namespace

FriableSplit friable_split(std::uint64_t n, double y) {
  if (n == 0) throw Error("direct-factors", "friable_split needs n >= 1");
  const std::uint64_t bound = prime_bound(y);
  std::uint64_t rest = n;
  std::uint64_t friable = 1;
  for (std::uint64_t p = 2; p <= bound && rest > 1; ++p) {
    if (p * p > rest) {
      if (rest <= bound) {
        friable *= rest;
        rest = 1;
      }
      break;
    }
    while (rest % p == 0) {
      rest /= p;
      friable *= p;
    }
  }
  return {friable, n / friable};
}

FriableIndex::FriableIndex(double y, std::uint64_t limit) : y_(y), friable_(limit + 1, 1) {
  const std::uint64_t bound = prime_bound(y);
  const auto sieve = Sieve::shared(std::max<std::uint64_t>(limit, 2));
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = sieve->smallest_factor(n);
    friable_[n] = p <= bound ? p * friable_[n / p] : 1;
  }
}

FriableSplit FriableIndex::operator()(std::uint64_t n) const {
  if (n == 0 || n >= friable_.size())
    throw Error("direct-factors", "friable index covers 1.." + std::to_string(limit()) + ", asked " + std::to_string(n));
  return {friable_[n], n / friable_[n]};
}

std::vector<std::uint64_t> enumerate_friable(double y, std::uint64_t limit, FriableWindow window, double z) {
  if (limit == 0) throw Error("direct-factors", "enumeration limit must be >= 1");
  const std::uint64_t low = prime_bound(y);
  std::vector<std::uint64_t> out;
  switch (window) {
    case FriableWindow::friable: {
      products_up_to(primes_up_to(low), 0, 1, limit, out);
      break;
    }
    case FriableWindow::window: {
      if (z < y) throw Error("direct-factors", "window S(y,z) requires z >= y");
      std::vector<std::uint64_t> primes;
      for (std::uint64_t p : primes_up_to(prime_bound(z)))
        if (p > low) primes.push_back(p);
      products_up_to(primes, 0, 1, limit, out);
      break;
    }
    case FriableWindow::sifted: {
      const auto sieve = Sieve::shared(std::max<std::uint64_t>(limit, 2));
      for (std::uint64_t n = 1; n <= limit; ++n)
        if (n == 1 || sieve->smallest_factor(n) > low) out.push_back(n);
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

InverseSum inverse_sum(const IntegerSet& set, const InverseSumOptions& options) {
  InverseSum result;
  switch (set.kind()) {
    case IntegerSet::Kind::friable:
      result.value = euler_product_inverse(primes_up_to(prime_bound(set.y())));
      result.method = "euler-product";
      return result;
    case IntegerSet::Kind::window: {
      std::vector<std::uint64_t> primes;
      for (std::uint64_t p : primes_up_to(prime_bound(set.z())))
        if (p > prime_bound(set.y())) primes.push_back(p);
      result.value = euler_product_inverse(primes);
      result.method = "euler-product";
      return result;
    }
    case IntegerSet::Kind::powers: {
      const double p = static_cast<double>(set.parameter());
      result.value = Interval::point(p / (p - 1.0)).outward();
      result.method = "geometric";
      return result;
    }
    case IntegerSet::Kind::list: {
      Rational sum(0);
      for (std::uint64_t a : set.elements()) sum += Rational(1, static_cast<unsigned long>(a));
      result.value = Interval::point(sum.get_d()).outward();
      result.truncation = set.elements().empty() ? 0 : set.elements().back();
      result.method = "finite";
      return result;
    }
    case IntegerSet::Kind::squares: {
      // zeta(2): sum to M plus the integral tail 1/(M+1) <= tail <= 1/M.
      const std::uint64_t roots = options.truncation ? options.truncation : 1000000;
      long double sum = 0.0L;
      for (std::uint64_t r = roots; r >= 1; --r) sum += 1.0L / (static_cast<long double>(r) * r);
      const double slack = static_cast<double>(roots) * std::numeric_limits<long double>::epsilon() * 2.0;
      result.value = Interval{static_cast<double>(sum) + 1.0 / (static_cast<double>(roots) + 1.0) - slack,
                              static_cast<double>(sum) + 1.0 / static_cast<double>(roots) + slack}
                         .outward();
      result.truncation = roots * roots;
      result.method = "zeta2-integral-tail";
      return result;
    }
    default: break;
  }

  // Generic: truncated sum with a caller-proven or extrapolated tail.
  const std::uint64_t limit = options.truncation ? options.truncation : set.cap();
  const std::vector<std::uint64_t> members = set.enumerate(limit);
  long double sum = 0.0L;
  long double at_half = 0.0L;
  long double at_quarter = 0.0L;
  for (std::uint64_t a : members) {
    sum += 1.0L / static_cast<long double>(a);
    if (a <= limit / 2) at_half = sum;
    if (a <= limit / 4) at_quarter = sum;
  }
  const double slack = static_cast<double>(members.size() + 1) * std::numeric_limits<long double>::epsilon() * 4.0 *
                       static_cast<double>(sum);
  const double lo = static_cast<double>(sum) - slack;
  double hi = kInfinity;
  result.truncation = limit;
  if (options.proven_tail) {
    hi = static_cast<double>(sum) + *options.proven_tail + slack;
    result.method = "truncated+proven-tail";
  } else {
    // Dyadic increments shrinking by a ratio r < 1 are summed as a geometric
    // tail; r >= 1 means the truncation gives no finite bound.
    result.heuristic = true;
    result.method = "truncated+extrapolated-tail";
    const long double last = sum - at_half;
    const long double previous = at_half - at_quarter;
    if (previous > 0.0L && last < previous) {
      const long double ratio = last / previous;
      hi = static_cast<double>(sum + last * ratio / (1.0L - ratio)) + slack;
    }
  }
  result.value = Interval{lo, hi}.outward();
  result.divergent_looking = std::isinf(hi) || lo > options.divergence_cap;
  return result;
}

DirectFactorVerdict verify_direct_factor(const IntegerSet& a, const IntegerSet& b, std::uint64_t limit) {
  const Representations rep = count_representations(a, b, limit);
  DirectFactorVerdict verdict;
  verdict.limit = limit;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (rep.count[n] != 1) {
      verdict.holds = false;
      verdict.counterexample = n;
      verdict.representations = rep.count[n];
      break;
    }
  }
  return verdict;
}

IntegerSet complement_of(const IntegerSet& a, std::uint64_t limit) {
  using Kind = IntegerSet::Kind;
  switch (a.kind()) {
    case Kind::friable: return IntegerSet::sifted(a.y(), limit);
    case Kind::sifted: return IntegerSet::friable(a.y(), limit);
    case Kind::squares: return IntegerSet::squarefree(limit);
    case Kind::squarefree: return IntegerSet::squares(limit);
    case Kind::all: return IntegerSet::list({1}, limit);
    case Kind::powers:
      if (factorize_trial(a.parameter()).size() == 1 && factorize_trial(a.parameter()).front().exponent == 1)
        return IntegerSet::coprime(a.parameter(), limit);
      break;
    case Kind::coprime:
      if (factorize_trial(a.parameter()).size() == 1 && factorize_trial(a.parameter()).front().exponent == 1)
        return IntegerSet::powers(a.parameter(), limit);
      break;
    default: break;
  }
  if (a.kind() == Kind::list && a.elements() == std::vector<std::uint64_t>{1}) return IntegerSet::all(limit);

  const std::vector<std::uint64_t> a_members = a.enumerate(limit);
  if (a_members.empty() || a_members.front() != 1)
    throw Error("direct-factors", "set '" + a.describe() + "' does not contain 1, so it is not a direct factor");
  std::vector<std::uint32_t> covered(limit + 1, 0);
  std::vector<bool> bitmap(limit + 1, false);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (covered[n] != 0) continue;
    bitmap[n] = true;
    for (std::uint64_t x : a_members) {
      if (x > limit / n) break;
      ++covered[x * n];
    }
  }
  return IntegerSet::members(std::move(bitmap), "complement(" + a.describe() + ")");
}

DirectFactorPair DirectFactorPair::make(const IntegerSet& a, const IntegerSet& b, std::uint64_t verify_to,
                                        const InverseSumOptions& options) {
  DirectFactorPair pair(a.cap() < verify_to ? a.with_cap(verify_to) : a,
                        b.cap() < verify_to ? b.with_cap(verify_to) : b);
  Representations rep = count_representations(pair.a_, pair.b_, verify_to);
  for (std::uint64_t n = 1; n <= verify_to; ++n) {
    if (rep.count[n] != 1)
      throw Error("direct-factors", "(" + a.describe() + ", " + b.describe() + ") is not a direct-factor pair: n=" +
                                        std::to_string(n) + " has " + std::to_string(rep.count[n]) +
                                        " representations");
  }
  pair.verified_to_ = verify_to;
  pair.a_part_ = std::move(rep.a_part);
  pair.inv_sum_ = inverse_sum(pair.a_, options);
  return pair;
}

DirectFactorPair DirectFactorPair::with_complement(const IntegerSet& a, std::uint64_t verify_to,
                                                   const InverseSumOptions& options) {
  const IntegerSet widened = a.cap() < verify_to ? a.with_cap(verify_to) : a;
  return make(widened, complement_of(widened, verify_to), verify_to, options);
}

Interval DirectFactorPair::lambda() const {
  const Interval& s = inv_sum_.value;
  const double lo = s.upper_infinite() ? 0.0 : 1.0 / s.hi;
  return Interval{lo, 1.0 / s.lo}.outward();
}

std::uint64_t DirectFactorPair::a_part(std::uint64_t n) const {
  if (n == 0 || n > verified_to_)
    throw Error("direct-factors", "n=" + std::to_string(n) + " outside verified range 1.." + std::to_string(verified_to_));
  return a_part_[n];
}

std::vector<DensityRow> esv_density(const DirectFactorPair& pair, const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw Error("direct-factors", "empty x grid");
  double max_x = 0.0;
  for (double x : x_grid) {
    if (!(x >= 1.0)) throw Error("direct-factors", "density grid points must be >= 1");
    max_x = std::max(max_x, x);
  }
  const auto limit = static_cast<std::uint64_t>(std::floor(max_x));
  if (limit > pair.b().cap())
    throw Error("direct-factors", "x=" + std::to_string(limit) + " exceeds enumeration cap " +
                                      std::to_string(pair.b().cap()) + " of B");
  const std::vector<std::uint64_t> b_members = pair.b().enumerate(limit);
  const Interval lambda = pair.lambda();
  std::vector<DensityRow> rows;
  for (double x : x_grid) {
    const auto bound = static_cast<std::uint64_t>(std::floor(x));
    const auto count = std::upper_bound(b_members.begin(), b_members.end(), bound) - b_members.begin();
    rows.push_back({x, static_cast<double>(count) / x, lambda, pair.inv_sum_a().heuristic});
  }
  return rows;
}

std::vector<double> default_density_grid() { return {1e3, 1e4, 1e5, 1e6}; }

}  // namespace multdet
