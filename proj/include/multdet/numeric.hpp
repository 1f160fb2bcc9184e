#pragma once

// Scalar types shared by every module: exact rationals (GMP), reals at an
// explicit binary precision (MPFR) and complex pairs of such reals.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace multdet {

using Rational = mpq_class;

/// Parses "3", "-7/4", "0.125", "2.5e-3" into an exact rational.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string format_rational(Rational q);

double to_double(const Rational& q);

/// Real number carrying its own binary precision. Arithmetic rounds to
/// nearest at the larger precision of the operands.
class Real {
 public:
  explicit Real(mpfr_prec_t precision = 53);
  Real(double value, mpfr_prec_t precision);
  Real(const Rational& value, mpfr_prec_t precision);
  Real(std::string_view decimal, mpfr_prec_t precision);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  /// Decimal text with `digits` significant digits, in %.*Re style.
  std::string to_string(int digits) const;
  /// Significant decimal digits that round-trip this precision.
  int decimal_digits() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real operator-() const;

  friend Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.value_, b.value_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_); }

 private:
  mpfr_t value_;
};

Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
Real pow(const Real& base, const Real& exponent);
/// 2^e at the given precision.
Real pow2(long exponent, mpfr_prec_t precision);

/// Complex number as an explicit pair of reals at working precision.
struct Complex {
  Real re;
  Real im;

  explicit Complex(mpfr_prec_t precision = 53) : re(precision), im(precision) {}
  Complex(Real real_part, Real imag_part) : re(std::move(real_part)), im(std::move(imag_part)) {}

  mpfr_prec_t precision() const { return re.precision(); }
  bool is_real() const { return im.is_zero(); }

  Complex conj() const { return {re, -im}; }
  /// |z|^2
  Real norm() const { return re * re + im * im; }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
};

/// Complex number with exact rational components. Kernels whose values are
/// Gaussian rationals expose them so that tests can run rounding-free
/// determinant oracles.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational conj() const { return {re, -im}; }
  bool is_real() const { return im == 0; }
  Complex to_complex(mpfr_prec_t precision) const {
    return {Real(re, precision), Real(im, precision)};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

}  // namespace multdet
