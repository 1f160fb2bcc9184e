#include "multdet/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <vector>

#include "multdet/error.hpp"

namespace multdet {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error("numeric", "cannot parse number '" + std::string(text) + "'");
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_number(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw Error("numeric", "zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
      bad_number(text);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) bad_number(text);
    digits = std::string(s);
  }
  Rational q{mpz_class(digits, 10)};
  if (exponent > 0) q *= pow10(static_cast<unsigned long>(exponent));
  if (exponent < 0) q /= pow10(static_cast<unsigned long>(-exponent));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(Rational q) {
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Real::Real(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Real::Real(double value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(std::string_view decimal, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  std::string s(decimal);
  if (mpfr_set_str(value_, s.c_str(), 10, MPFR_RNDN) != 0) {
    // mpfr_set_str returns nonzero only on malformed input; fall back to the
    // exact parser so that "1/3" style input is accepted too.
    mpfr_set_q(value_, parse_rational(decimal).get_mpq_t(), MPFR_RNDN);
  }
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

int Real::decimal_digits() const {
  // ceil(p * log10 2) + 1 digits identify a p-bit binary value.
  return static_cast<int>(static_cast<double>(precision()) * 0.30102999566398120 + 0.999) + 1;
}

std::string Real::to_string(int digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() > 0 ? "inf" : "-inf";
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Re", digits - 1, value_);
  return std::string(buffer.data());
}

namespace {

void widen_to(mpfr_ptr target, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(target)) mpfr_prec_round(target, mpfr_get_prec(other), MPFR_RNDN);
}

}  // namespace

Real& Real::operator+=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(value_, rhs.value_);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real pow(const Real& base, const Real& exponent) {
  Real r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

Real pow2(long exponent, mpfr_prec_t precision) {
  Real r(precision);
  mpfr_set_ui_2exp(r.get(), 1, exponent, MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  Real new_re = re * rhs.re - im * rhs.im;
  Real new_im = re * rhs.im + im * rhs.re;
  re = std::move(new_re);
  im = std::move(new_im);
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

}  // namespace multdet
