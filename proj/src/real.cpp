#include "tsallis/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace tsallis {

namespace {

mpfr_prec_t wider(const Real& a, const Real& b) {
  return static_cast<mpfr_prec_t>(std::max(a.precision(), b.precision()));
}

}  // namespace

Real::Real(unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_zero(value_, 1);
}

Real::Real(const Rational& value, unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_q(value_, value.mpq().get_mpq_t(), MPFR_RNDN);
}

Real::Real(double value, unsigned precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision_bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(unsigned precision_bits) const {
  Real out(precision_bits);
  mpfr_set(out.value_, value_, MPFR_RNDN);
  return out;
}

std::string Real::to_string(int significant_digits) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  // %.*Rg gives the shortest of fixed/scientific; fine for report diffing.
  std::vector<char> buffer(static_cast<std::size_t>(significant_digits) + 64);
  const int n = mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", significant_digits, value_);
  return std::string(buffer.data(), static_cast<std::size_t>(n));
}

Real Real::abs() const {
  Real out(precision());
  mpfr_abs(out.value_, value_, MPFR_RNDN);
  return out;
}

Real Real::log() const {
  Real out(precision());
  mpfr_log(out.value_, value_, MPFR_RNDN);
  return out;
}

Real Real::log2() const {
  Real out(precision());
  mpfr_log2(out.value_, value_, MPFR_RNDN);
  return out;
}

Real Real::pow(const Real& base, const Real& exponent) {
  Real out(static_cast<unsigned>(wider(base, exponent)));
  if (base.is_zero() && exponent.sign() > 0) return out;
  mpfr_pow(out.value_, base.value_, exponent.value_, MPFR_RNDN);
  return out;
}

Real operator+(const Real& a, const Real& b) {
  Real out(static_cast<unsigned>(wider(a, b)));
  mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a, const Real& b) {
  Real out(static_cast<unsigned>(wider(a, b)));
  mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator*(const Real& a, const Real& b) {
  Real out(static_cast<unsigned>(wider(a, b)));
  mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator/(const Real& a, const Real& b) {
  Real out(static_cast<unsigned>(wider(a, b)));
  mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
  return out;
}

Real operator-(const Real& a) {
  Real out(a.precision());
  mpfr_neg(out.value_, a.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

}  // namespace tsallis
