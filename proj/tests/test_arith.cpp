#include <doctest.h>

#include <cmath>
#include <random>

#include "multdet/arith.hpp"
#include "multdet/error.hpp"
#include "oracles.hpp"

using namespace multdet;

namespace {

ExactFunction random_integer_function(std::mt19937_64& rng, std::uint64_t n, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return ExactFunction::tabulate(n, [&](std::uint64_t) { return Rational(dist(rng)); }, "random");
}

// multiplicatively increasing, nonnegative: envelope of random values
ExactFunction random_increasing(std::mt19937_64& rng, std::uint64_t n) {
  return mult_increasing_envelope(random_integer_function(rng, n, 0, 5));
}

bool brute_monotone(const ExactFunction& f) {
  for (std::uint64_t n = 1; n <= f.limit(); ++n)
    for (std::uint64_t k : oracle::divisors(n))
      if (f(k) > f(n)) return false;
  return true;
}

}  // namespace

TEST_CASE("mobius examples and sieve agreement") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK_THROWS_AS(mobius(0), Error);
  const ExactFunction mu = mobius_table(2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) CHECK(mu(n) == oracle::mobius(n));
}

TEST_CASE("dirichlet convolution examples") {
  const auto one = constant_function(12, 1);
  const auto mu = mobius_table(12);
  CHECK(dirichlet_convolve(one, one)(6) == 4);
  CHECK(dirichlet_convolve(mu, one)(6) == 0);
  CHECK(dirichlet_convolve(mu, one)(1) == 1);
  CHECK_THROWS_AS(dirichlet_convolve(one, constant_function(10, 1)), Error);
}

TEST_CASE("dirichlet convolution agrees with the explicit divisor sum") {
  std::mt19937_64 rng(7);
  const auto f = random_integer_function(rng, 300, -5, 5);
  const auto g = random_integer_function(rng, 300, -5, 5);
  const auto h = dirichlet_convolve(f, g);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    Rational s = 0;
    for (std::uint64_t d : oracle::divisors(n)) s += f(d) * g(n / d);
    CHECK(h(n) == s);
  }
}

TEST_CASE("bougaief derivative examples") {
  const auto d1 = bougaief_derivative(constant_function(50, 1));
  CHECK(d1.values() == unit_function(50).values());
  const auto m23 = set_of_multiples_indicator(IntegerSet::list({2, 3}, 100), 100);
  CHECK(bougaief_derivative(m23)(6) == -1);
  CHECK(bougaief_derivative(identity_function(6))(6) == 2);
  // floating mode agrees
  CHECK(bougaief_derivative(to_real(m23, 64))(6).to_double() == -1.0);
}

TEST_CASE("bougaief integral examples") {
  CHECK(bougaief_integral(unit_function(20)).values() == constant_function(20, 1).values());
  CHECK(bougaief_integral(constant_function(12, 1))(12) == 6);
}

TEST_CASE("property: integral and derivative are inverse, both directions") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_integer_function(rng, 500, -50, 50);
    CHECK(bougaief_integral(bougaief_derivative(f)).values() == f.values());
    CHECK(bougaief_derivative(bougaief_integral(f)).values() == f.values());
  }
}

TEST_CASE("is_mult_monotone examples") {
  const auto ln = RealFunction::tabulate(200, [](std::uint64_t n) { return log(Real(static_cast<double>(n), 64)); }, "ln");
  CHECK(is_mult_monotone(ln, Direction::increasing).holds);

  const auto only2 = set_indicator(IntegerSet::list({2}, 10), 10);
  const auto v = is_mult_monotone(only2, Direction::increasing);
  CHECK_FALSE(v.holds);
  REQUIRE(v.violation);
  CHECK(v.violation->first == 2);
  CHECK(v.violation->second == 4);

  CHECK(is_mult_monotone(divisor_count(1000), Direction::increasing).holds);
  CHECK(is_mult_monotone(mobius_table(1), Direction::increasing).holds);
}

TEST_CASE("violation reported is the smallest in (n, k) order") {
  // f(2) = 4 first breaks at n = 8 (k = 2 and 4), f(3) = 5 at n = 9
  std::vector<Rational> vals(12, Rational(3));
  vals[0] = 0;
  vals[2] = 5;
  vals[1] = 4;
  vals[3] = 4;
  vals[5] = 5;
  vals[7] = 3;
  const ExactFunction f(vals, "hand");
  const auto v = is_mult_monotone(f, Direction::increasing);
  REQUIRE(v.violation);
  CHECK(v.violation->second == 8);
  CHECK(v.violation->first == 2);
}

TEST_CASE("decreasing direction and float tolerance") {
  const auto neg = identity_function(50).map([](const Rational& x) { return -x; }, "-n");
  CHECK(is_mult_monotone(neg, Direction::decreasing).holds);
  CHECK_FALSE(is_mult_monotone(neg, Direction::increasing).holds);

  // an excess below 2^{-prec/2} counts as equality
  std::vector<Real> vals{Real(1.0, 128), Real(1.0, 128) - pow2(-80, 128)};
  CHECK(is_mult_monotone(RealFunction(vals, "tiny"), Direction::increasing).holds);
  std::vector<Real> big{Real(1.0, 128), Real(1.0, 128) - pow2(-40, 128)};
  CHECK_FALSE(is_mult_monotone(RealFunction(big, "big"), Direction::increasing).holds);
}

TEST_CASE("envelope examples") {
  const auto f = set_indicator(IntegerSet::list({2, 3}, 60), 60);
  const auto g = mult_increasing_envelope(f);
  CHECK(g.values() == set_of_multiples_indicator(IntegerSet::list({2, 3}, 60), 60).values());
  CHECK(g(6) == 1);
  CHECK(mult_increasing_envelope(constant_function(30, 7)).values() == constant_function(30, 7).values());
  const auto negid = identity_function(30).map([](const Rational& x) { return -x; }, "-n");
  CHECK(mult_increasing_envelope(negid).values() == constant_function(30, -1).values());
}

TEST_CASE("set_of_multiples_indicator examples") {
  const auto m = set_of_multiples_indicator(IntegerSet::list({2, 3}, 10), 10);
  std::vector<Rational> expect{0, 1, 1, 1, 0, 1, 0, 1, 1, 1};
  CHECK(m.values() == expect);
  CHECK(set_of_multiples_indicator(IntegerSet::list({1}, 10), 10).values() == constant_function(10, 1).values());
  CHECK(set_of_multiples_indicator(IntegerSet::list({}, 10), 10).values() == constant_function(10, 0).values());
  CHECK(is_mult_monotone(m, Direction::increasing).holds);
}

TEST_CASE("property: envelope is increasing, dominates f, and is minimal") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_integer_function(rng, 200, -10, 10);
    const auto g = mult_increasing_envelope(f);
    CHECK(brute_monotone(g));
    for (std::uint64_t n = 1; n <= 200; ++n) CHECK(g(n) >= f(n));
    for (std::uint64_t n = 1; n <= 200; ++n) {
      Rational best = f(1);
      for (std::uint64_t d : oracle::divisors(n)) best = f(d) > best ? f(d) : best;
      CHECK(g(n) == best);
    }
    // an independent increasing majorant h of f lies above g
    const auto bump = random_increasing(rng, 200);
    Rational shift = 0;
    for (std::uint64_t n = 1; n <= 200; ++n) shift = f(n) - bump(n) > shift ? f(n) - bump(n) : shift;
    for (std::uint64_t n = 1; n <= 200; ++n) CHECK(bump(n) + shift >= g(n));
    const bool g_equals_f = g.values() == f.values();
    CHECK(g_equals_f == brute_monotone(f));
  }
}

TEST_CASE("property: monotone maps, cones and maxima preserve increase") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto f = random_increasing(rng, 300);
    const auto g = random_increasing(rng, 300);
    auto clamp = f.map([](const Rational& x) { return x > 3 ? Rational(3) : x; }, "clamp");
    auto step = f.map([](const Rational& x) { return Rational(x >= 2 ? 1 : 0); }, "step");
    auto ex = to_real(f, 64).map([](const Real& x) { return exp(x); }, "exp");
    CHECK(is_mult_monotone(clamp, Direction::increasing).holds);
    CHECK(is_mult_monotone(step, Direction::increasing).holds);
    CHECK(is_mult_monotone(ex, Direction::increasing).holds);

    std::uniform_int_distribution<int> w(0, 4);
    const Rational l(w(rng)), m(w(rng), 3);
    std::vector<Rational> cone, mx;
    for (std::uint64_t n = 1; n <= 300; ++n) {
      cone.push_back(l * f(n) + m * g(n));
      mx.push_back(f(n) > g(n) ? f(n) : g(n));
    }
    CHECK(is_mult_monotone(ExactFunction(cone, "cone"), Direction::increasing).holds);
    CHECK(is_mult_monotone(ExactFunction(mx, "max"), Direction::increasing).holds);
  }
}

TEST_CASE("property: convolution of nonnegative increasing functions is increasing") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_increasing(rng, 300);
    const auto g = random_increasing(rng, 300);
    CHECK(is_mult_monotone(dirichlet_convolve(f, g), Direction::increasing).holds);
  }
}

TEST_CASE("nonnegative derivative implies increasing; converse fails on M({2,3})") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_integer_function(rng, 300, 0, 4);
    CHECK(is_mult_monotone(bougaief_integral(g), Direction::increasing).holds);
  }
  const auto m23 = set_of_multiples_indicator(IntegerSet::list({2, 3}, 300), 300);
  CHECK(is_mult_monotone(m23, Direction::increasing).holds);
  CHECK(bougaief_derivative(m23)(6) < 0);
}

TEST_CASE("worst margin") {
  const auto v = is_mult_monotone(identity_function(10), Direction::increasing);
  CHECK(v.worst_margin == doctest::Approx(1.0));  // f(2) - f(1)
  CHECK(std::isinf(is_mult_monotone(constant_function(1, 0), Direction::increasing).worst_margin));
}
