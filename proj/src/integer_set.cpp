#include "multdet/integer_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "multdet/error.hpp"
#include "multdet/text.hpp"

namespace multdet {

namespace {

constexpr std::uint64_t kSieveCapLimit = std::uint64_t{1} << 27;

bool is_perfect_square(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

std::vector<std::uint64_t> parse_integer_list(std::string_view body, std::string_view spec) {
  std::vector<std::uint64_t> out;
  if (body.empty()) return out;
  for (const std::string& token : split(body, ',')) {
    std::uint64_t v = 0;
    if (!parse_u64(token, v) || v == 0)
      throw Error("direct-factors", "bad integer '" + token + "' in set spec '" + std::string(spec) + "'");
    out.push_back(v);
  }
  return out;
}

double parse_bound(std::string_view text, std::string_view spec) {
  double v = 0.0;
  if (!parse_double(text, v) || !(v > 1.0))
    throw Error("direct-factors", "bound must be a real > 1 in set spec '" + std::string(spec) + "'");
  return v;
}

// Divides out every prime <= bound; returns the cofactor.
std::uint64_t strip_primes_up_to(std::uint64_t n, std::uint64_t bound) {
  for (std::uint64_t p = 2; p <= bound && n > 1; ++p) {
    if (p * p > n) return n <= bound ? 1 : n;
    while (n % p == 0) n /= p;
  }
  return n;
}

// Smallest prime factor by trial division, 1 for n = 1.
std::uint64_t smallest_prime_factor(std::uint64_t n) {
  if (n == 1) return 1;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

}  // namespace

IntegerSet IntegerSet::parse(std::string_view spec, std::uint64_t cap) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_body = colon != std::string_view::npos;
  auto no_body = [&] {
    if (has_body) throw Error("direct-factors", "set '" + std::string(head) + "' takes no parameter");
  };

  if (head == "all") {
    no_body();
    return all(cap);
  }
  if (head == "squares") {
    no_body();
    return squares(cap);
  }
  if (head == "squarefree") {
    no_body();
    return squarefree(cap);
  }
  if (head == "powers" || head == "coprime") {
    std::uint64_t v = 0;
    if (!parse_u64(body, v) || v < 2)
      throw Error("direct-factors", "'" + std::string(head) + "' needs an integer >= 2 in '" + std::string(spec) + "'");
    return head == "powers" ? powers(v, cap) : coprime(v, cap);
  }
  if (head == "friable") return friable(parse_bound(body, spec), cap);
  if (head == "sifted") return sifted(parse_bound(body, spec), cap);
  if (head == "window") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) throw Error("direct-factors", "window needs 'window:y,z', got '" + std::string(spec) + "'");
    return window(parse_bound(parts[0], spec), parse_bound(parts[1], spec), cap);
  }
  if (head == "list") return list(parse_integer_list(body, spec), cap);
  if (head == "multiples") return multiples(parse_integer_list(body, spec), cap);
  throw Error("direct-factors", "unknown set kind '" + std::string(head) + "'");
}

IntegerSet IntegerSet::all(std::uint64_t cap) { return IntegerSet(Kind::all, cap); }

IntegerSet IntegerSet::powers(std::uint64_t base, std::uint64_t cap) {
  if (base < 2) throw Error("direct-factors", "powers base must be >= 2");
  IntegerSet s(Kind::powers, cap);
  s.param_ = base;
  return s;
}

IntegerSet IntegerSet::squares(std::uint64_t cap) { return IntegerSet(Kind::squares, cap); }

IntegerSet IntegerSet::squarefree(std::uint64_t cap) {
  IntegerSet s(Kind::squarefree, cap);
  s.attach_sieve();
  return s;
}

IntegerSet IntegerSet::friable(double y, std::uint64_t cap) {
  IntegerSet s(Kind::friable, cap);
  s.y_ = y;
  s.param_ = prime_bound(y);
  return s;
}

IntegerSet IntegerSet::sifted(double y, std::uint64_t cap) {
  IntegerSet s(Kind::sifted, cap);
  s.y_ = y;
  s.param_ = prime_bound(y);
  s.attach_sieve();
  return s;
}

IntegerSet IntegerSet::window(double y, double z, std::uint64_t cap) {
  prime_bound(y);
  if (z < y) throw Error("direct-factors", "window S(y,z) requires z >= y");
  IntegerSet s(Kind::window, cap);
  s.y_ = y;
  s.z_ = z;
  s.param_ = prime_bound(z);
  return s;
}

IntegerSet IntegerSet::coprime(std::uint64_t modulus, std::uint64_t cap) {
  if (modulus < 2) throw Error("direct-factors", "coprime modulus must be >= 2");
  IntegerSet s(Kind::coprime, cap);
  s.param_ = modulus;
  return s;
}

IntegerSet IntegerSet::list(std::vector<std::uint64_t> elements, std::uint64_t cap) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  IntegerSet s(Kind::list, cap);
  s.elements_ = std::move(elements);
  return s;
}

IntegerSet IntegerSet::multiples(std::vector<std::uint64_t> generators, std::uint64_t cap) {
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  IntegerSet s(Kind::multiples, cap);
  s.elements_ = std::move(generators);
  return s;
}

IntegerSet IntegerSet::members(std::vector<bool> bitmap, std::string description) {
  if (bitmap.size() < 2) throw Error("direct-factors", "membership bitmap must cover n = 1");
  IntegerSet s(Kind::members, bitmap.size() - 1);
  s.bitmap_ = std::make_shared<const std::vector<bool>>(std::move(bitmap));
  s.description_ = std::move(description);
  return s;
}

void IntegerSet::attach_sieve() {
  if (cap_ <= kSieveCapLimit) sieve_ = Sieve::shared(cap_);
}

IntegerSet IntegerSet::with_cap(std::uint64_t cap) const {
  if (kind_ == Kind::members && cap > cap_)
    throw Error("direct-factors", "explicit set '" + description_ + "' is only known up to " + std::to_string(cap_));
  IntegerSet s = *this;
  s.cap_ = cap;
  s.sieve_.reset();
  if (kind_ == Kind::squarefree || kind_ == Kind::sifted) s.attach_sieve();
  return s;
}

std::string IntegerSet::describe() const {
  auto join = [](const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
  };
  switch (kind_) {
    case Kind::all: return "all";
    case Kind::powers: return "powers:" + std::to_string(param_);
    case Kind::squares: return "squares";
    case Kind::squarefree: return "squarefree";
    case Kind::friable: return "friable:" + format_real(y_);
    case Kind::sifted: return "sifted:" + format_real(y_);
    case Kind::window: return "window:" + format_real(y_) + "," + format_real(z_);
    case Kind::coprime: return "coprime:" + std::to_string(param_);
    case Kind::list: return "list:" + join(elements_);
    case Kind::multiples: return "multiples:" + join(elements_);
    case Kind::members: return description_;
  }
  return "?";
}

void IntegerSet::require_within_cap(std::uint64_t n) const {
  if (n == 0) throw Error("direct-factors", "sets contain positive integers only");
  if (n > cap_)
    throw Error("direct-factors", "query " + std::to_string(n) + " exceeds enumeration cap " + std::to_string(cap_) +
                                      " of set '" + describe() + "'");
}

bool IntegerSet::contains(std::uint64_t n) const {
  require_within_cap(n);
  switch (kind_) {
    case Kind::all: return true;
    case Kind::powers:
      while (n % param_ == 0) n /= param_;
      return n == 1;
    case Kind::squares: return is_perfect_square(n);
    case Kind::squarefree: {
      const auto factors = sieve_ ? sieve_->factorize(n) : factorize_trial(n);
      return std::all_of(factors.begin(), factors.end(), [](const PrimePower& pp) { return pp.exponent == 1; });
    }
    case Kind::friable: return strip_primes_up_to(n, param_) == 1;
    case Kind::sifted: {
      const std::uint64_t p = sieve_ ? sieve_->smallest_factor(n) : smallest_prime_factor(n);
      return n == 1 || p > param_;
    }
    case Kind::window: {
      const std::uint64_t low = prime_bound(y_);
      for (std::uint64_t p = 2; p <= low; ++p)
        if (n % p == 0) return false;
      return strip_primes_up_to(n, param_) == 1;
    }
    case Kind::coprime: return std::gcd(n, param_) == 1;
    case Kind::list: return std::binary_search(elements_.begin(), elements_.end(), n);
    case Kind::multiples:
      return std::any_of(elements_.begin(), elements_.end(), [n](std::uint64_t a) { return n % a == 0; });
    case Kind::members: return (*bitmap_)[n];
  }
  return false;
}

std::vector<std::uint64_t> IntegerSet::enumerate(std::uint64_t limit) const {
  if (limit > cap_)
    throw Error("direct-factors", "enumeration limit " + std::to_string(limit) + " exceeds cap " +
                                      std::to_string(cap_) + " of set '" + describe() + "'");
  std::vector<std::uint64_t> out;
  if (limit == 0) return out;
  switch (kind_) {
    case Kind::powers:
      for (std::uint64_t v = 1;; v *= param_) {
        out.push_back(v);
        if (v > limit / param_) break;
      }
      return out;
    case Kind::squares:
      for (std::uint64_t r = 1; r * r <= limit; ++r) out.push_back(r * r);
      return out;
    case Kind::list:
      for (std::uint64_t a : elements_)
        if (a <= limit) out.push_back(a);
      return out;
    default:
      for (std::uint64_t n = 1; n <= limit; ++n)
        if (contains(n)) out.push_back(n);
      return out;
  }
}

bool IntegerSet::multiplication_closed() const {
  switch (kind_) {
    case Kind::all:
    case Kind::powers:
    case Kind::squares:
    case Kind::friable:
    case Kind::sifted:
    case Kind::window:
    case Kind::coprime:
    case Kind::multiples:
      return true;
    case Kind::squarefree: return false;
    case Kind::list:
      for (std::uint64_t a : elements_)
        for (std::uint64_t b : elements_)
          if (a * b <= cap_ && !contains(a * b)) return false;
      return true;
    case Kind::members:
      for (std::uint64_t a = 2; a <= cap_; ++a) {
        if (!contains(a)) continue;
        for (std::uint64_t b = a; a * b <= cap_; ++b)
          if (contains(b) && !contains(a * b)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace multdet
