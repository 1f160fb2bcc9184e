#include <doctest.h>

#include <cmath>
#include <random>

#include "multdet/arith.hpp"
#include "multdet/direct_factors.hpp"
#include "multdet/error.hpp"
#include "multdet/log_means.hpp"
#include "oracles.hpp"

using namespace multdet;

namespace {

// largest divisor of n whose prime factors are all <= y, by trial division
std::uint64_t friable_part(std::uint64_t n, double y) {
  std::uint64_t a = 1;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (static_cast<double>(p) > y) break;
    while (n % p == 0) {
      n /= p;
      a *= p;
    }
  }
  return a;
}

}  // namespace

TEST_CASE("friable_split examples") {
  auto s = friable_split(12, 2);
  CHECK(s.friable == 4);
  CHECK(s.sifted == 3);
  s = friable_split(35, 10);
  CHECK(s.friable == 35);
  CHECK(s.sifted == 1);
  s = friable_split(22, 3);
  CHECK(s.friable == 2);
  CHECK(s.sifted == 11);
  CHECK(friable_split(1, 2).friable == 1);
}

TEST_CASE("friable index agrees with trial division") {
  const FriableIndex idx(5.5, 5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const auto s = idx(n);
    CHECK(s.friable == friable_part(n, 5.5));
    CHECK(s.friable * s.sifted == n);
  }
  CHECK_THROWS_AS(idx(5001), Error);
}

TEST_CASE("property: friable part composes for z >= y") {
  for (auto [y, z] : {std::pair{2.0, 5.0}, std::pair{3.0, 10.0}}) {
    const FriableIndex iy(y, 10000), iz(z, 10000);
    for (std::uint64_t n = 1; n <= 10000; ++n) CHECK(iy(iz(n).friable).friable == iy(n).friable);
  }
}

TEST_CASE("enumerate_friable examples") {
  using V = std::vector<std::uint64_t>;
  CHECK(enumerate_friable(2, 20, FriableWindow::friable) == V{1, 2, 4, 8, 16});
  CHECK(enumerate_friable(2, 10, FriableWindow::sifted) == V{1, 3, 5, 7, 9});
  CHECK(enumerate_friable(2, 10, FriableWindow::window, 3) == V{1, 3, 9});
  CHECK_THROWS_AS(enumerate_friable(3, 10, FriableWindow::window, 2), Error);
}

TEST_CASE("verify_direct_factor examples") {
  CHECK(verify_direct_factor(IntegerSet::powers(2, 10000), IntegerSet::parse("coprime:2", 10000), 10000).holds);
  CHECK(verify_direct_factor(IntegerSet::squares(10000), IntegerSet::squarefree(10000), 10000).holds);
  const auto bad = verify_direct_factor(IntegerSet::list({1, 2}, 10), IntegerSet::all(10), 10);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.counterexample);
  CHECK(*bad.counterexample == 2);
  CHECK(bad.representations == 2);
  // nothing represents 2
  const auto miss = verify_direct_factor(IntegerSet::list({1}, 10), IntegerSet::list({1}, 10), 10);
  REQUIRE(miss.counterexample);
  CHECK(*miss.counterexample == 2);
  CHECK(miss.representations == 0);
}

TEST_CASE("friable and sifted sets are complementary direct factors") {
  for (double y : {2.0, 3.0, 5.0, 10.0})
    CHECK(verify_direct_factor(IntegerSet::friable(y, 10000), IntegerSet::sifted(y, 10000), 10000).holds);
}

TEST_CASE("complement_of names or builds the other factor") {
  CHECK(complement_of(IntegerSet::friable(3, 100), 100).describe() == "sifted:3");
  CHECK(complement_of(IntegerSet::squares(100), 100).describe() == "squarefree");
  CHECK(complement_of(IntegerSet::powers(2, 100), 100).describe() == "coprime:2");
  // greedy construction for a set without a named complement: {4^k}
  const auto a = IntegerSet::powers(4, 1000);
  const auto b = complement_of(a, 1000);
  CHECK(verify_direct_factor(a, b, 1000).holds);
  CHECK(b.contains(2));
  CHECK_FALSE(b.contains(4));
}

TEST_CASE("inverse sums") {
  const auto pw = inverse_sum(IntegerSet::powers(2, 1000000));
  CHECK(pw.value.contains(2.0));
  CHECK_FALSE(pw.heuristic);
  CHECK(pw.value.width() < 1e-12);
  const auto sq = inverse_sum(IntegerSet::squares(1000000));
  CHECK(sq.value.contains(M_PI * M_PI / 6));
  CHECK_FALSE(sq.heuristic);
  const auto fr = inverse_sum(IntegerSet::friable(3, 1000000));
  CHECK(fr.value.contains(3.0));
  // a generic set: heuristic unless a tail is given
  const auto li = inverse_sum(IntegerSet::multiples({2}, 100000));
  CHECK(li.divergent_looking);
  InverseSumOptions opts;
  opts.proven_tail = 0.0;
  const auto fin = inverse_sum(IntegerSet::list({1, 2, 5}, 100), opts);
  CHECK(fin.value.contains(1.7));
  CHECK_FALSE(fin.heuristic);
}

TEST_CASE("eulerian bound for sums over friable numbers, gap shrinking in X") {
  for (double y : {2.0, 3.0, 5.0, 7.0}) {
    const double total = 1.0 / mertens_product(y).get_d();
    double previous_gap = INFINITY;
    for (std::uint64_t x : {1000ull, 10000ull, 100000ull, 1000000ull}) {
      double s = 0.0;
      for (std::uint64_t a : enumerate_friable(y, x, FriableWindow::friable)) s += 1.0 / static_cast<double>(a);
      const double gap = total - s;
      CHECK(gap >= -1e-12);
      CHECK(gap <= previous_gap);
      previous_gap = gap;
    }
    CHECK(previous_gap < 0.05);
  }
}

TEST_CASE("reduce_by_factor examples and properties") {
  const auto pair = DirectFactorPair::with_complement(IntegerSet::friable(2, 1000), 1000);
  const auto id = identity_function(500);
  const auto r = reduce_by_factor(id, pair);
  CHECK(r(12) == 4);
  for (std::uint64_t a : pair.a().enumerate(500)) CHECK(r(a) == id(a));
  CHECK(reduce_by_factor(r, pair).values() == r.values());
  CHECK_THROWS_AS(reduce_by_factor(identity_function(2000), pair), Error);

  // reducing again at a larger y changes nothing
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dist(-9, 9);
  const auto f = ExactFunction::tabulate(500, [&](std::uint64_t) { return Rational(dist(rng)); }, "random");
  const auto g = friable_reduction(f, 3);
  CHECK(friable_reduction(g, 10).values() == g.values());
  const auto via_pair = reduce_by_factor(f, DirectFactorPair::with_complement(IntegerSet::friable(3, 500), 500));
  CHECK(via_pair.values() == g.values());
}

TEST_CASE("pair invariants") {
  const auto pair = DirectFactorPair::with_complement(IntegerSet::squares(5000), 5000);
  CHECK(pair.a().contains(1));
  CHECK(pair.b().contains(1));
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    const auto a = pair.a_part(n);
    CHECK(n % a == 0);
    CHECK(pair.a().contains(a));
    CHECK(pair.b().contains(n / a));
  }
  CHECK(pair.lambda().contains(6 / (M_PI * M_PI)));
  CHECK_THROWS_AS(DirectFactorPair::make(IntegerSet::list({1, 2}, 10), IntegerSet::all(10), 10), Error);
}

TEST_CASE("esv density examples") {
  const auto odd = esv_density(DirectFactorPair::with_complement(IntegerSet::powers(2, 100000), 100000), {1e5});
  CHECK(odd[0].empirical == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(odd[0].lambda.contains(0.5));

  const auto sq = esv_density(DirectFactorPair::with_complement(IntegerSet::squares(1000000), 1000000), {1e4, 1e6});
  // squarefree count by Moebius over squares
  long long count = 0;
  for (std::uint64_t d = 1; d * d <= 1000000; ++d) count += oracle::mobius(d) * static_cast<long long>(1000000 / (d * d));
  CHECK(sq[1].empirical == doctest::Approx(count / 1e6).epsilon(1e-12));
  CHECK(sq[1].lambda.distance(sq[1].empirical) < 1e-3);
  double zeta2 = 0.0;
  for (int n = 1; n <= 100000; ++n) zeta2 += 1.0 / (static_cast<double>(n) * n);
  CHECK(std::abs(1.0 / (zeta2 + 1.0 / 100000.5) - sq[1].lambda.midpoint()) < 1e-9);

  const auto f3 = esv_density(DirectFactorPair::with_complement(IntegerSet::friable(3, 100000), 100000), {1e5});
  CHECK(std::abs(f3[0].empirical - 1.0 / 3) < 1e-3);
  CHECK(f3[0].lambda.contains(1.0 / 3));
  CHECK_FALSE(f3[0].heuristic_tail);
}
