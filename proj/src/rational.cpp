#include "tsallis/rational.hpp"

#include <cctype>
#include <string>

#include "tsallis/errors.hpp"

namespace tsallis {

namespace {

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Accepts an optional sign followed by digits.
bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

mpz_class to_mpz(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator)
    : value_(mpz_class(numerator), mpz_class(denominator)) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator)
    : value_(numerator, denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw ParseError("empty rational literal");

  if (const auto slash = t.find('/'); slash != std::string_view::npos) {
    const auto num = trim(t.substr(0, slash));
    const auto den = trim(t.substr(slash + 1));
    if (!is_integer_literal(num) || !all_digits(den)) {
      throw ParseError("malformed rational literal '" + std::string(t) + "'");
    }
    const mpz_class d = to_mpz(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(t) + "'");
    return Rational(to_mpz(num), d);
  }

  if (const auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view whole = t.substr(0, dot);
    const std::string_view frac = t.substr(dot + 1);
    bool negative = false;
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
      negative = whole.front() == '-';
      whole.remove_prefix(1);
    }
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("malformed decimal literal '" + std::string(t) + "'");
    }
    mpz_class scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class num = (whole.empty() ? mpz_class(0) : to_mpz(whole)) * scale +
                    (frac.empty() ? mpz_class(0) : to_mpz(frac));
    if (negative) num = -num;
    return Rational(num, scale);
  }

  if (!is_integer_literal(t)) throw ParseError("malformed rational literal '" + std::string(t) + "'");
  return Rational(to_mpz(t), mpz_class(1));
}

Rational Rational::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  return Rational(value_.get_den(), value_.get_num());
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

}  // namespace tsallis
