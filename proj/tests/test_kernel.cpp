#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "multdet/error.hpp"
#include "multdet/kernel.hpp"
#include "multdet/kernel_spec.hpp"
#include "oracles.hpp"

using namespace multdet;

namespace {

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("multdet_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

bool near(const Complex& z, double re, double im = 0.0) {
  return std::abs(z.re.to_double() - re) < 1e-15 && std::abs(z.im.to_double() - im) < 1e-15;
}

}  // namespace

TEST_CASE("sigma families") {
  const auto r = MultiplicativeSigma::reciprocal();
  CHECK(r.completely_multiplicative());
  CHECK(near(r(12, 128), 1.0 / 12));
  CHECK(*r.exact(12) == GaussianRational{Rational(1, 12), 0});
  REQUIRE(r.envelope());
  CHECK(r.envelope()->exponent == 1.0);

  const auto p = MultiplicativeSigma::power("0.5");
  CHECK(near(p(9, 128), 1.0 / 3));
  CHECK_FALSE(p.exact(9));

  const auto c = MultiplicativeSigma::prime_constant(Rational(1, 2));
  CHECK(*c.exact(12) == GaussianRational{Rational(1, 8), 0});
  const auto s = MultiplicativeSigma::squarefree_constant(Rational(1, 2));
  CHECK_FALSE(s.completely_multiplicative());
  CHECK(*s.exact(6) == GaussianRational{Rational(1, 4), 0});
  CHECK(s.exact(12)->re == 0);
  CHECK(*s.exact(1) == GaussianRational{Rational(1), 0});
}

TEST_CASE("sigma tables and range errors") {
  std::map<std::pair<std::uint64_t, unsigned>, GaussianRational> values{
      {{2, 1}, {Rational(1, 2), Rational(1, 4)}}, {{3, 1}, {Rational(1, 3), 0}}};
  const auto t = MultiplicativeSigma::table(values, true, "t");
  CHECK(t.completely_multiplicative());
  CHECK_FALSE(t.real_valued());
  // (1/2 + i/4)^2 * 1/3
  const auto v = *t.exact(12);
  CHECK(v.re == Rational(3, 16) / 3);
  CHECK(v.im == Rational(1, 4) / 3);
  CHECK_THROWS_WITH_AS(t.prime_power(5, 1, 64), doctest::Contains("(p,k)=(5,1)"), Error);

  const auto path = write_temp("sigma.csv", "p,k,re,im\n2,1,0.5,0\n2,2,0.1,0\n3,1,0.25,0\n");
  const auto f = MultiplicativeSigma::read_table(path);
  CHECK_FALSE(f.completely_multiplicative());
  CHECK(f.exact(4)->re == Rational(1, 10));
  CHECK(f.exact(12)->re == Rational(1, 40));
  CHECK_THROWS_WITH_AS(f(8, 64), doctest::Contains("(p,k)=(2,3)"), Error);
  CHECK_THROWS_AS(MultiplicativeSigma::read_table("/nonexistent/file.csv"), Error);
  std::filesystem::remove(path);
}

TEST_CASE("hilberdink kernel values") {
  const auto k = hilberdink_kernel(MultiplicativeSigma::reciprocal());
  CHECK(k.hermitian());
  CHECK(k.real_valued());
  // c(2/3) = sigma(2) sigma(3) = 1/6; c(4/6) reduces to the same
  CHECK(near(k.evaluate(2, 3, 128), 1.0 / 6));
  CHECK(near(k.evaluate(4, 6, 128), 1.0 / 6));
  CHECK(*k.exact(4, 6) == GaussianRational{Rational(1, 6), 0});
  const auto two = k.scaled(2);
  CHECK(near(two.evaluate(1, 1, 128), 2.0));

  std::map<std::pair<std::uint64_t, unsigned>, GaussianRational> values{{{2, 1}, {0, Rational(1, 2)}}};
  const auto ck = hilberdink_kernel(MultiplicativeSigma::table(values, true, "i/2"));
  CHECK_FALSE(ck.real_valued());
  // c(2) = i/2, c(1/2) = conj(i/2)
  CHECK(near(ck.evaluate(2, 1, 64), 0.0, 0.5));
  CHECK(near(ck.evaluate(1, 2, 64), 0.0, -0.5));
}

TEST_CASE("direct factor kernel") {
  const auto k = direct_factor_kernel(IntegerSet::powers(2, 1024), Rational(1, 2));
  CHECK(near(k.evaluate(8, 1, 64), 1.0 / 8));
  CHECK(near(k.evaluate(1, 4, 64), 1.0 / 4));
  CHECK(near(k.evaluate(3, 1, 64), 0.0));
  CHECK(near(k.evaluate(6, 3, 64), 0.5));  // reduces to 2/1
  CHECK_THROWS_AS(direct_factor_kernel(IntegerSet::powers(2, 16), Rational(1)), Error);
  const auto sq = direct_factor_kernel(IntegerSet::squares(1000), Rational(1, 3));
  CHECK(*sq.exact(4, 9) == GaussianRational{Rational(1, 81), 0});
}

TEST_CASE("table kernel completes by conjugation and flags mismatches") {
  std::map<std::pair<std::uint64_t, std::uint64_t>, GaussianRational> v{{{1, 1}, {1, 0}}, {{2, 1}, {0, Rational(1, 3)}}};
  const auto k = table_kernel(v, "t");
  CHECK(k.hermitian());
  CHECK(near(k.evaluate(1, 2, 64), 0.0, -1.0 / 3));
  CHECK(near(k.evaluate(3, 1, 64), 0.0));

  v[{1, 2}] = {0, Rational(1, 3)};  // not the conjugate
  const auto bad = table_kernel(v, "bad");
  CHECK_FALSE(bad.hermitian());
  CHECK_THROWS_AS(multiplicative_source(bad), Error);

  std::map<std::pair<std::uint64_t, std::uint64_t>, GaussianRational> unreduced{{{2, 4}, {1, 0}}};
  CHECK_THROWS_AS(table_kernel(unreduced, "u"), Error);

  const auto path = write_temp("kernel.csv", "num,den,re,im\n1,1,1,0\n2,1,0.25,0\n");
  const auto f = read_table_kernel(path);
  CHECK(near(f.evaluate(1, 2, 64), 0.25));
  std::filesystem::remove(path);
}

TEST_CASE("matrix sources") {
  const auto src = multiplicative_source(hilberdink_kernel(MultiplicativeSigma::reciprocal()));
  const auto e = src.bind(6, 128);
  CHECK(near(e(6, 4), 1.0 / 6));  // 6/4 = 3/2
  CHECK(*src.exact(6, 4) == GaussianRational{Rational(1, 6), 0});

  const auto idx = indexed_source(identity_kernel(), {3, 5, 9});
  const auto ie = idx.bind(3, 64);
  CHECK(near(ie(2, 1), 0.0));
  CHECK(near(ie(3, 3), 1.0));

  const auto sym = AdditiveSymbol::from_coefficients({{2, 0}, {Rational(1, 2), Rational(1, 4)}});
  const auto add = additive_source(sym);
  CHECK_FALSE(add.real_valued);
  const auto ae = add.bind(4, 64);
  CHECK(near(ae(2, 1), 0.5, 0.25));
  CHECK(near(ae(4, 1), 0.0));
  CHECK_THROWS_AS(AdditiveSymbol::from_coefficients({{1, 1}}), Error);
}

TEST_CASE("kernel grammar") {
  const auto h = parse_kernel_spec("hilberdink:sigma=recip");
  CHECK(h.family == KernelSpec::Family::hilberdink);
  CHECK(h.normalized() == "hilberdink:sigma=recip");
  CHECK(parse_kernel_spec("identity").family == KernelSpec::Family::identity);
  const auto cm = parse_kernel_spec("hilberdink:sigma=cm,s=1.0");
  CHECK(cm.params.at("s") == "1.0");
  const auto t = parse_kernel_spec("hilberdink:sigma=table,sig.csv");
  CHECK(t.params.at("sigma") == "table,sig.csv");
  const auto d = parse_kernel_spec("dfactor:A=multiples:2,3,q=1/4");
  CHECK(d.params.at("A") == "multiples:2,3");
  CHECK(d.params.at("q") == "1/4");
  const auto a = parse_kernel_spec("additive:coeffs=2,0.5");
  CHECK(a.additive());
  CHECK(additive_coefficients(a).size() == 2);

  CHECK_THROWS_WITH_AS(parse_kernel_spec("nope:"), doctest::Contains("nope"), UsageError);
  CHECK_THROWS_AS(parse_kernel_spec("hilberdink:sigma=cm"), UsageError);
  CHECK_THROWS_AS(parse_kernel_spec("hilberdink:foo=1"), UsageError);
  CHECK_THROWS_AS(parse_kernel_spec("hilberdink:sigma=what"), UsageError);
  CHECK_THROWS_AS(parse_kernel_spec("dfactor:q=1/2"), UsageError);

  const auto k = build_fraction_kernel(parse_kernel_spec("dfactor:A=powers:2"), 64);
  CHECK(near(k.evaluate(4, 1, 64), 0.25));
  const auto coeffs = parse_coefficients("1,0.5:-0.25");
  CHECK(coeffs[1].im == Rational(-1, 4));
  CHECK_THROWS_AS(parse_coefficients("1,x"), UsageError);
}

TEST_CASE("function grammar") {
  CHECK(parse_function_spec("indicator:multiples:2,3").normalized() == "indicator:multiples:2,3");
  CHECK(build_function(parse_function_spec("omega"), 100)(30) == 3.0);
  CHECK(build_function(parse_function_spec("omega-min:2"), 100)(30) == 2.0);
  CHECK(build_function(parse_function_spec("const:0.5"), 100)(7) == 0.5);
  CHECK(build_function(parse_function_spec("indicator:squares"), 100)(49) == 1.0);
  CHECK_THROWS_AS(parse_function_spec("bogus"), UsageError);
  CHECK_THROWS_AS(parse_set_or_usage("powers:x", 10), UsageError);
}
