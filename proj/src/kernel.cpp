#include "multdet/kernel.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>

#include "multdet/error.hpp"
#include "multdet/sieve.hpp"
#include "multdet/text.hpp"

namespace multdet {

namespace {

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factorize_trial(n);
  return f.size() == 1 && f[0].exponent == 1;
}

Rational rational_power(const Rational& base, unsigned k) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), k);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

GaussianRational gaussian_mul(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussianRational gaussian_power(const GaussianRational& z, unsigned k) {
  GaussianRational out{Rational(1), Rational(0)};
  for (unsigned i = 0; i < k; ++i) out = gaussian_mul(out, z);
  return out;
}

std::vector<std::string> data_rows(const std::string& path, const std::string& module) {
  std::ifstream in(path);
  if (!in) throw Error(module, "cannot open " + path);
  std::vector<std::string> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

GaussianRational parse_gaussian(const std::vector<std::string>& fields, std::size_t at, const std::string& where) {
  try {
    GaussianRational z{parse_rational(fields.at(at)), Rational(0)};
    if (fields.size() > at + 1) z.im = parse_rational(fields[at + 1]);
    return z;
  } catch (const std::out_of_range&) {
    throw Error("toeplitz", "missing value in " + where);
  }
}

std::string pair_text(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + "/" + std::to_string(b);
}

bool close(const Real& a, const Real& b, mpfr_prec_t precision) {
  Real diff = abs(a - b);
  Real scale = abs(a) + Real(1.0, precision);
  return diff <= pow2(-static_cast<long>(precision) + 8, precision) * scale;
}

}  // namespace

MultiplicativeSigma::MultiplicativeSigma(std::string description, bool completely_multiplicative, bool real_valued,
                                         PrimePowerRule rule, ExactRule exact,
                                         std::optional<DecayEnvelope> envelope, std::uint64_t prime_limit,
                                         unsigned exponent_limit)
    : description_(std::move(description)),
      completely_multiplicative_(completely_multiplicative),
      real_valued_(real_valued),
      rule_(std::move(rule)),
      exact_(std::move(exact)),
      envelope_(envelope),
      prime_limit_(prime_limit),
      exponent_limit_(exponent_limit) {}

MultiplicativeSigma MultiplicativeSigma::reciprocal() {
  return MultiplicativeSigma(
      "recip", true, true,
      [](std::uint64_t p, unsigned k, mpfr_prec_t prec) {
        Real v = Real(1.0, prec) / pow(Real(static_cast<double>(p), prec), Real(static_cast<double>(k), prec));
        return Complex(std::move(v), Real(prec));
      },
      [](std::uint64_t p, unsigned k) -> std::optional<GaussianRational> {
        return GaussianRational{rational_power(Rational(mpz_class(1), mpz_class(std::to_string(p))), k), Rational(0)};
      },
      DecayEnvelope{1.0, 1.0});
}

MultiplicativeSigma MultiplicativeSigma::power(const std::string& s) {
  double s_double = 0.0;
  if (!parse_double(s, s_double)) throw Error("toeplitz", "bad exponent s=" + s);
  return MultiplicativeSigma(
      "cm,s=" + s, true, true,
      [s](std::uint64_t p, unsigned k, mpfr_prec_t prec) {
        Real exponent = -(Real(s, prec) * Real(static_cast<double>(k), prec));
        return Complex(pow(Real(static_cast<double>(p), prec), exponent), Real(prec));
      },
      {}, DecayEnvelope{1.0, s_double});
}

MultiplicativeSigma MultiplicativeSigma::prime_constant(const Rational& v) {
  return MultiplicativeSigma(
      "const,v=" + format_rational(v), true, true,
      [v](std::uint64_t, unsigned k, mpfr_prec_t prec) {
        return Complex(Real(rational_power(v, k), prec), Real(prec));
      },
      [v](std::uint64_t, unsigned k) -> std::optional<GaussianRational> {
        return GaussianRational{rational_power(v, k), Rational(0)};
      },
      DecayEnvelope{std::abs(to_double(v)), 0.0});
}

MultiplicativeSigma MultiplicativeSigma::squarefree_constant(const Rational& v) {
  return MultiplicativeSigma(
      "sqfree,v=" + format_rational(v), false, true,
      [v](std::uint64_t, unsigned k, mpfr_prec_t prec) {
        return Complex(k == 1 ? Real(v, prec) : Real(0.0, prec), Real(prec));
      },
      [v](std::uint64_t, unsigned k) -> std::optional<GaussianRational> {
        return GaussianRational{k == 1 ? v : Rational(0), Rational(0)};
      },
      DecayEnvelope{std::abs(to_double(v)), 0.0});
}

MultiplicativeSigma MultiplicativeSigma::table(std::map<std::pair<std::uint64_t, unsigned>, GaussianRational> values,
                                               bool complete, std::string description) {
  if (values.empty()) throw Error("toeplitz", "empty sigma table");
  std::uint64_t prime_limit = 0;
  unsigned exponent_limit = 0;
  bool real = true;
  for (const auto& [key, z] : values) {
    if (!is_prime_trial(key.first)) throw Error("toeplitz", "sigma table key " + std::to_string(key.first) + " is not prime");
    if (key.second == 0) throw Error("toeplitz", "sigma table exponent must be >= 1");
    if (complete && key.second != 1) throw Error("toeplitz", "completely multiplicative table lists p^k with k > 1");
    prime_limit = std::max(prime_limit, key.first);
    exponent_limit = std::max(exponent_limit, key.second);
    real = real && z.is_real();
  }
  auto shared = std::make_shared<const std::map<std::pair<std::uint64_t, unsigned>, GaussianRational>>(std::move(values));
  auto lookup = [shared, complete](std::uint64_t p, unsigned k) -> GaussianRational {
    const unsigned key_k = complete ? 1 : k;
    auto it = shared->find({p, key_k});
    if (it == shared->end())
      throw Error("toeplitz", "sigma table has no value for (p,k)=(" + std::to_string(p) + "," +
                                  std::to_string(key_k) + ")");
    return complete ? gaussian_power(it->second, k) : it->second;
  };
  return MultiplicativeSigma(
      std::move(description), complete, real,
      [lookup](std::uint64_t p, unsigned k, mpfr_prec_t prec) { return lookup(p, k).to_complex(prec); },
      [lookup](std::uint64_t p, unsigned k) -> std::optional<GaussianRational> { return lookup(p, k); },
      std::nullopt, prime_limit, complete ? kUnboundedExponent : exponent_limit);
}

MultiplicativeSigma MultiplicativeSigma::read_table(const std::string& path) {
  std::map<std::pair<std::uint64_t, unsigned>, GaussianRational> values;
  bool complete = true;
  for (const std::string& row : data_rows(path, "toeplitz")) {
    const auto fields = split(row, ',');
    std::uint64_t p = 0, k = 0;
    if (fields.size() < 3 || !parse_u64(fields[0], p) || !parse_u64(fields[1], k))
      throw Error("toeplitz", "bad sigma table row '" + row + "' in " + path);
    values[{p, static_cast<unsigned>(k)}] = parse_gaussian(fields, 2, path);
    if (k != 1) complete = false;
  }
  return table(std::move(values), complete, "table," + path);
}

void MultiplicativeSigma::check_range(std::uint64_t p, unsigned k) const {
  if (p > prime_limit_ || k > exponent_limit_)
    throw Error("toeplitz", "sigma " + description_ + " is not defined at (p,k)=(" + std::to_string(p) + "," +
                                std::to_string(k) + ")");
}

Complex MultiplicativeSigma::prime_power(std::uint64_t p, unsigned k, mpfr_prec_t precision) const {
  if (k == 0) return Complex(Real(1.0, precision), Real(precision));
  check_range(p, k);
  return rule_(p, k, precision);
}

Complex MultiplicativeSigma::operator()(std::uint64_t n, mpfr_prec_t precision) const {
  if (n == 0) throw Error("toeplitz", "sigma(0) is undefined");
  Complex out(Real(1.0, precision), Real(precision));
  for (const PrimePower& pp : factorize_trial(n)) out *= prime_power(pp.prime, pp.exponent, precision);
  return out;
}

std::optional<GaussianRational> MultiplicativeSigma::exact_prime_power(std::uint64_t p, unsigned k) const {
  if (k == 0) return GaussianRational{Rational(1), Rational(0)};
  if (!exact_) return std::nullopt;
  check_range(p, k);
  return exact_(p, k);
}

std::optional<GaussianRational> MultiplicativeSigma::exact(std::uint64_t n) const {
  if (!exact_) return std::nullopt;
  GaussianRational out{Rational(1), Rational(0)};
  for (const PrimePower& pp : factorize_trial(n)) {
    auto v = exact_prime_power(pp.prime, pp.exponent);
    if (!v) return std::nullopt;
    out = gaussian_mul(out, *v);
  }
  return out;
}

FractionKernel::FractionKernel(Family family, std::string description, Binder binder, bool hermitian,
                               bool real_valued, ExactEvaluator exact)
    : family_(family),
      description_(std::move(description)),
      binder_(std::move(binder)),
      hermitian_(hermitian),
      real_valued_(real_valued),
      exact_(std::move(exact)) {}

FractionKernel::Evaluator FractionKernel::bind(std::uint64_t max_index, mpfr_prec_t precision) const {
  return binder_(max_index, precision);
}

Complex FractionKernel::evaluate(std::uint64_t num, std::uint64_t den, mpfr_prec_t precision) const {
  if (num == 0 || den == 0) throw Error("toeplitz", "kernel argument must be a positive rational");
  const std::uint64_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  return binder_(std::max(num, den), precision)(num, den);
}

std::optional<GaussianRational> FractionKernel::exact(std::uint64_t num, std::uint64_t den) const {
  if (!exact_) return std::nullopt;
  const std::uint64_t g = std::gcd(num, den);
  return exact_(num / g, den / g);
}

FractionKernel FractionKernel::scaled(const Rational& lambda) const {
  if (lambda <= 0) throw Error("toeplitz", "kernel scale must be positive");
  Binder binder = [inner = binder_, lambda](std::uint64_t max_index, mpfr_prec_t prec) -> Evaluator {
    auto ev = inner(max_index, prec);
    Real l(lambda, prec);
    return [ev, l](std::uint64_t a, std::uint64_t b) {
      Complex v = ev(a, b);
      v *= l;
      return v;
    };
  };
  ExactEvaluator exact;
  if (exact_)
    exact = [inner = exact_, lambda](std::uint64_t a, std::uint64_t b) -> std::optional<GaussianRational> {
      auto v = inner(a, b);
      if (!v) return std::nullopt;
      return GaussianRational{v->re * lambda, v->im * lambda};
    };
  return FractionKernel(family_, format_rational(lambda) + "*" + description_, std::move(binder), hermitian_,
                        real_valued_, std::move(exact));
}

FractionKernel identity_kernel() {
  return FractionKernel(
      FractionKernel::Family::identity, "identity",
      [](std::uint64_t, mpfr_prec_t prec) -> FractionKernel::Evaluator {
        return [prec](std::uint64_t a, std::uint64_t b) {
          return Complex(Real(a == b ? 1.0 : 0.0, prec), Real(prec));
        };
      },
      true, true,
      [](std::uint64_t a, std::uint64_t b) -> std::optional<GaussianRational> {
        return GaussianRational{Rational(a == b ? 1 : 0), Rational(0)};
      });
}

FractionKernel hilberdink_kernel(const MultiplicativeSigma& sigma) {
  auto binder = [sigma](std::uint64_t max_index, mpfr_prec_t prec) -> FractionKernel::Evaluator {
    auto table = std::make_shared<std::vector<Complex>>();
    table->reserve(max_index + 1);
    table->emplace_back(prec);
    for (std::uint64_t n = 1; n <= max_index; ++n) table->push_back(sigma(n, prec));
    return [table, sigma, prec](std::uint64_t a, std::uint64_t b) {
      const auto at = [&](std::uint64_t n) { return n < table->size() ? (*table)[n] : sigma(n, prec); };
      return at(a) * at(b).conj();
    };
  };
  FractionKernel::ExactEvaluator exact;
  if (sigma.exact(1))
    exact = [sigma](std::uint64_t a, std::uint64_t b) -> std::optional<GaussianRational> {
      auto x = sigma.exact(a);
      auto y = sigma.exact(b);
      if (!x || !y) return std::nullopt;
      return gaussian_mul(*x, y->conj());
    };
  return FractionKernel(FractionKernel::Family::hilberdink, "hilberdink:sigma=" + sigma.describe(),
                        std::move(binder), true, sigma.real_valued(), std::move(exact));
}

FractionKernel direct_factor_kernel(const IntegerSet& a, const Rational& q) {
  if (abs(q) >= 1) throw Error("toeplitz", "direct-factor kernel needs |q| < 1");
  auto omega = [](std::uint64_t n) {
    unsigned total = 0;
    for (const PrimePower& pp : factorize_trial(n)) total += pp.exponent;
    return total;
  };
  auto value = [a, q, omega](std::uint64_t num, std::uint64_t den) {
    if (num > a.cap() || den > a.cap() || !a.contains(num) || !a.contains(den)) return Rational(0);
    return rational_power(q, omega(num) + omega(den));
  };
  auto binder = [value](std::uint64_t, mpfr_prec_t prec) -> FractionKernel::Evaluator {
    return [value, prec](std::uint64_t num, std::uint64_t den) {
      return Complex(Real(value(num, den), prec), Real(prec));
    };
  };
  return FractionKernel(
      FractionKernel::Family::direct_factor, "dfactor:A=" + a.describe() + ",q=" + format_rational(q),
      std::move(binder), true, true,
      [value](std::uint64_t num, std::uint64_t den) -> std::optional<GaussianRational> {
        return GaussianRational{value(num, den), Rational(0)};
      });
}

FractionKernel table_kernel(std::map<std::pair<std::uint64_t, std::uint64_t>, GaussianRational> values,
                            std::string description) {
  bool hermitian = true;
  bool real = true;
  for (const auto& [key, z] : values) {
    if (key.first == 0 || key.second == 0 || std::gcd(key.first, key.second) != 1)
      throw Error("toeplitz", "kernel table key " + pair_text(key.first, key.second) + " is not a reduced fraction");
    real = real && z.is_real();
    auto mirror = values.find({key.second, key.first});
    if (mirror != values.end() && !(mirror->second == z.conj())) hermitian = false;
    if (key.first == key.second && !z.is_real()) hermitian = false;
  }
  auto shared = std::make_shared<const decltype(values)>(std::move(values));
  auto lookup = [shared](std::uint64_t num, std::uint64_t den) -> GaussianRational {
    auto it = shared->find({num, den});
    if (it != shared->end()) return it->second;
    it = shared->find({den, num});
    if (it != shared->end()) return it->second.conj();
    return {Rational(0), Rational(0)};
  };
  return FractionKernel(
      FractionKernel::Family::explicit_table, std::move(description),
      [lookup](std::uint64_t, mpfr_prec_t prec) -> FractionKernel::Evaluator {
        return [lookup, prec](std::uint64_t num, std::uint64_t den) { return lookup(num, den).to_complex(prec); };
      },
      hermitian, real,
      [lookup](std::uint64_t num, std::uint64_t den) -> std::optional<GaussianRational> {
        return lookup(num, den);
      });
}

FractionKernel read_table_kernel(const std::string& path) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, GaussianRational> values;
  for (const std::string& row : data_rows(path, "toeplitz")) {
    const auto fields = split(row, ',');
    std::uint64_t num = 0, den = 0;
    if (fields.size() < 3 || !parse_u64(fields[0], num) || !parse_u64(fields[1], den))
      throw Error("toeplitz", "bad kernel table row '" + row + "' in " + path);
    values[{num, den}] = parse_gaussian(fields, 2, path);
  }
  return table_kernel(std::move(values), "table:" + path);
}

AdditiveSymbol::AdditiveSymbol(std::string description, Binder binder, bool real_valued,
                               std::function<std::optional<GaussianRational>(std::uint64_t)> exact)
    : description_(std::move(description)),
      binder_(std::move(binder)),
      real_valued_(real_valued),
      exact_(std::move(exact)) {}

AdditiveSymbol AdditiveSymbol::from_coefficients(std::vector<GaussianRational> coefficients) {
  if (coefficients.empty()) throw Error("toeplitz", "additive symbol needs at least c0(0)");
  if (!coefficients[0].is_real()) throw Error("toeplitz", "c0(0) must be real for a hermitian symbol");
  bool real = true;
  std::string description = "additive:coeffs=";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    real = real && coefficients[i].is_real();
    if (i) description += ",";
    description += format_rational(coefficients[i].re);
    if (!coefficients[i].is_real()) description += (coefficients[i].im > 0 ? "+" : "") + format_rational(coefficients[i].im) + "i";
  }
  auto shared = std::make_shared<const std::vector<GaussianRational>>(std::move(coefficients));
  return AdditiveSymbol(
      description,
      [shared](std::uint64_t, mpfr_prec_t prec) -> LagEvaluator {
        auto values = std::make_shared<std::vector<Complex>>();
        for (const auto& z : *shared) values->push_back(z.to_complex(prec));
        return [values, prec](std::uint64_t lag) {
          return lag < values->size() ? (*values)[lag] : Complex(prec);
        };
      },
      real,
      [shared](std::uint64_t lag) -> std::optional<GaussianRational> {
        if (lag < shared->size()) return (*shared)[lag];
        return GaussianRational{Rational(0), Rational(0)};
      });
}

std::optional<GaussianRational> AdditiveSymbol::exact(std::uint64_t lag) const {
  if (!exact_) return std::nullopt;
  return exact_(lag);
}

MatrixSource multiplicative_source(const FractionKernel& kernel) {
  if (!kernel.hermitian()) throw Error("toeplitz", "kernel " + kernel.describe() + " is not hermitian");
  MatrixSource source;
  source.description = kernel.describe();
  source.real_valued = kernel.real_valued();
  source.bind = [kernel](std::size_t n, mpfr_prec_t prec) -> MatrixSource::Entry {
    auto ev = kernel.bind(n, prec);
    return [ev, prec](std::size_t i, std::size_t j) {
      const std::uint64_t g = std::gcd<std::uint64_t>(i, j);
      const std::uint64_t a = i / g, b = j / g;
      Complex v = ev(a, b);
      if (a == b) {
        if (!close(v.im, Real(prec), prec))
          throw Error("toeplitz", "kernel is not hermitian: c(1) is not real");
        return v;
      }
      Complex w = ev(b, a);
      if (!close(v.re, w.re, prec) || !close(v.im, -w.im, prec))
        throw Error("toeplitz", "kernel is not hermitian at " + pair_text(a, b));
      return v;
    };
  };
  if (kernel.has_exact())
    source.exact = [kernel](std::size_t i, std::size_t j) { return kernel.exact(i, j); };
  return source;
}

MatrixSource indexed_source(const FractionKernel& kernel, std::vector<std::uint64_t> indices) {
  if (!kernel.hermitian()) throw Error("toeplitz", "kernel " + kernel.describe() + " is not hermitian");
  MatrixSource source;
  source.description = kernel.describe() + " on " + std::to_string(indices.size()) + " indices";
  source.real_valued = kernel.real_valued();
  auto shared = std::make_shared<const std::vector<std::uint64_t>>(std::move(indices));
  source.bind = [kernel, shared](std::size_t n, mpfr_prec_t prec) -> MatrixSource::Entry {
    if (n > shared->size()) throw Error("toeplitz", "indexed matrix has only " + std::to_string(shared->size()) + " rows");
    std::uint64_t top = 1;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, (*shared)[i]);
    auto ev = kernel.bind(top, prec);
    return [ev, shared](std::size_t i, std::size_t j) {
      const std::uint64_t x = (*shared)[i - 1], y = (*shared)[j - 1];
      const std::uint64_t g = std::gcd(x, y);
      return ev(x / g, y / g);
    };
  };
  if (kernel.has_exact())
    source.exact = [kernel, shared](std::size_t i, std::size_t j) {
      return kernel.exact((*shared)[i - 1], (*shared)[j - 1]);
    };
  return source;
}

MatrixSource additive_source(const AdditiveSymbol& symbol) {
  MatrixSource source;
  source.description = symbol.describe();
  source.real_valued = symbol.real_valued();
  source.bind = [symbol](std::size_t n, mpfr_prec_t prec) -> MatrixSource::Entry {
    auto lag = symbol.bind(n, prec);
    return [lag](std::size_t i, std::size_t j) { return lag(i - j); };
  };
  if (symbol.has_exact())
    source.exact = [symbol](std::size_t i, std::size_t j) { return symbol.exact(i - j); };
  return source;
}

}  // namespace multdet
