#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "tsallis/rational.hpp"

namespace tsallis {

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Extended-precision binary float backed by MPFR. Every value carries its
/// own precision; binary operations produce the larger of the two operand
/// precisions, so nothing depends on MPFR's global default.
class Real {
 public:
  explicit Real(unsigned precision_bits = kDefaultPrecisionBits);
  Real(const Rational& value, unsigned precision_bits);
  Real(double value, unsigned precision_bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  unsigned precision() const { return static_cast<unsigned>(mpfr_get_prec(value_)); }
  /// Same value rounded to another precision.
  Real with_precision(unsigned precision_bits) const;

  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific-free decimal with `significant_digits` significant digits.
  std::string to_string(int significant_digits = 15) const;

  Real abs() const;
  Real log() const;
  Real log2() const;
  /// base^exponent for base >= 0; 0^x = 0 for x > 0.
  static Real pow(const Real& base, const Real& exponent);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace tsallis
