#include "multdet/arith.hpp"

#include <limits>

namespace multdet {

int mobius(std::uint64_t n) {
  if (n == 0) throw Error("arith", "mobius is defined for n >= 1 only");
  int sign = 1;
  for (const PrimePower& pp : factorize_trial(n)) {
    if (pp.exponent > 1) return 0;
    sign = -sign;
  }
  return sign;
}

ExactFunction mobius_table(std::uint64_t limit) {
  if (limit == 0) throw Error("arith", "tabulation limit must be positive");
  // Linear sieve on mu directly.
  std::vector<int> mu(limit + 1, 0);
  std::vector<std::uint64_t> primes;
  std::vector<bool> composite(limit + 1, false);
  mu[1] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::uint64_t p : primes) {
      if (p * i > limit) break;
      composite[p * i] = true;
      if (i % p == 0) {
        mu[p * i] = 0;
        break;
      }
      mu[p * i] = -mu[i];
    }
  }
  return ExactFunction::tabulate(limit, [&](std::uint64_t n) { return Rational(mu[n]); }, "mu");
}

ExactFunction constant_function(std::uint64_t limit, const Rational& value) {
  return ExactFunction::tabulate(limit, [&](std::uint64_t) { return value; }, "const(" + format_rational(value) + ")");
}

ExactFunction unit_function(std::uint64_t limit) {
  return ExactFunction::tabulate(limit, [](std::uint64_t n) { return Rational(n == 1 ? 1 : 0); }, "epsilon");
}

ExactFunction identity_function(std::uint64_t limit) {
  return ExactFunction::tabulate(limit, [](std::uint64_t n) { return Rational(mpz_class(std::to_string(n))); }, "id");
}

ExactFunction divisor_count(std::uint64_t limit) {
  std::vector<std::uint64_t> d(limit + 1, 0);
  for (std::uint64_t k = 1; k <= limit; ++k)
    for (std::uint64_t n = k; n <= limit; n += k) ++d[n];
  return ExactFunction::tabulate(limit, [&](std::uint64_t n) { return Rational(static_cast<unsigned long>(d[n])); },
                                 "d");
}

ExactFunction distinct_prime_count(std::uint64_t limit) {
  std::vector<unsigned> w(limit + 1, 0);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (w[p] != 0) continue;  // composite: already hit by a smaller prime
    for (std::uint64_t n = p; n <= limit; n += p) ++w[n];
  }
  return ExactFunction::tabulate(limit, [&](std::uint64_t n) { return Rational(w[n]); }, "omega");
}

ExactFunction bougaief_derivative(const ExactFunction& f) {
  ExactFunction df = dirichlet_convolve(f, mobius_table(f.limit()));
  return ExactFunction(df.values(), "D(" + f.provenance() + ")");
}

RealFunction bougaief_derivative(const RealFunction& f) {
  const ExactFunction mu = mobius_table(f.limit());
  RealFunction mu_real = to_real(mu, f(1).precision());
  RealFunction df = dirichlet_convolve(f, mu_real);
  return RealFunction(df.values(), "D(" + f.provenance() + ")");
}

ExactFunction bougaief_integral(const ExactFunction& g) {
  ExactFunction f = dirichlet_convolve(g, constant_function(g.limit(), Rational(1)));
  return ExactFunction(f.values(), "I(" + g.provenance() + ")");
}

namespace {

// Shared scan: `excess(k, n)` returns how far the pair goes against the
// direction (positive = against) and whether that exceeds tolerance.
template <class Excess>
MonotoneVerdict scan_pairs(std::uint64_t limit, Excess&& excess) {
  MonotoneVerdict verdict;
  verdict.limit = limit;
  verdict.worst_margin = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 1; k <= limit; ++k) {
    for (std::uint64_t n = 2 * k; n <= limit; n += k) {
      const auto [against, violates] = excess(k, n);
      verdict.worst_margin = std::min(verdict.worst_margin, -against);
      if (!violates) continue;
      verdict.holds = false;
      // k ascends in the outer loop, so the first hit for a given n has the
      // smallest k; keep the smallest n overall.
      if (!verdict.violation || n < verdict.violation->second) verdict.violation = std::make_pair(k, n);
    }
  }
  return verdict;
}

}  // namespace

MonotoneVerdict is_mult_monotone(const ExactFunction& f, Direction direction) {
  return scan_pairs(f.limit(), [&](std::uint64_t k, std::uint64_t n) {
    const Rational against = direction == Direction::increasing ? Rational(f(k) - f(n)) : Rational(f(n) - f(k));
    return std::make_pair(against.get_d(), sgn(against) > 0);
  });
}

MonotoneVerdict is_mult_monotone(const RealFunction& f, Direction direction) {
  const mpfr_prec_t precision = f(1).precision();
  const Real scale = pow2(-static_cast<long>(precision / 2), precision);
  const Real one(1.0, precision);
  return is_mult_monotone(f, direction, [&](const Real& v) {
    const Real magnitude = abs(v);
    return scale * (magnitude > one ? magnitude : one);
  });
}

MonotoneVerdict is_mult_monotone(const RealFunction& f, Direction direction, const Tolerance& tolerance) {
  std::vector<Real> slack;
  slack.reserve(f.limit());
  for (std::uint64_t k = 1; k <= f.limit(); ++k) slack.push_back(tolerance(f(k)));
  return scan_pairs(f.limit(), [&](std::uint64_t k, std::uint64_t n) {
    const Real against = direction == Direction::increasing ? f(k) - f(n) : f(n) - f(k);
    return std::make_pair(against.to_double(), against > slack[k - 1]);
  });
}

ExactFunction set_of_multiples_indicator(const IntegerSet& generators, std::uint64_t limit) {
  std::vector<bool> marked(limit + 1, false);
  for (std::uint64_t a : generators.enumerate(limit))
    for (std::uint64_t n = a; n <= limit; n += a) marked[n] = true;
  return ExactFunction::tabulate(limit, [&](std::uint64_t n) { return Rational(marked[n] ? 1 : 0); },
                                 "1_M(" + generators.describe() + ")");
}

ExactFunction set_indicator(const IntegerSet& set, std::uint64_t limit) {
  std::vector<bool> marked(limit + 1, false);
  for (std::uint64_t a : set.enumerate(limit)) marked[a] = true;
  return ExactFunction::tabulate(limit, [&](std::uint64_t n) { return Rational(marked[n] ? 1 : 0); },
                                 "1_{" + set.describe() + "}");
}

RealFunction to_real(const ExactFunction& f, mpfr_prec_t precision) {
  std::vector<Real> values;
  values.reserve(f.limit());
  for (const Rational& v : f.values()) values.emplace_back(v, precision);
  return RealFunction(std::move(values), f.provenance());
}

}  // namespace multdet
