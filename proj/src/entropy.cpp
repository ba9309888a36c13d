#include "tsallis/entropy.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "tsallis/errors.hpp"

namespace tsallis {

namespace {

constexpr unsigned kGuardBits = 32;

Real as_real(const EntropyValue& v, unsigned precision_bits) {
  if (v.exact()) return Real(*v.exact(), std::max(precision_bits, v.precision()));
  return v.approx();
}

unsigned wider(const EntropyValue& a, const EntropyValue& b) { return std::max(a.precision(), b.precision()); }

/// base^exponent for a nonnegative rational base. Exact when the exponent
/// is an exact integer (or the base is 0 or 1).
EntropyValue rational_power(const Rational& base, const std::optional<Rational>& exponent_exact,
                            const Real& exponent_approx, unsigned precision_bits) {
  if (base.sign() < 0) throw DomainError("negative base in power: " + base.to_string());
  if (base.is_zero()) {
    if (exponent_approx.sign() <= 0) throw DomainError("0 raised to a non-positive power");
    return EntropyValue(Rational(0), precision_bits);
  }
  if (base == Rational(1)) return EntropyValue(Rational(1), precision_bits);
  if (exponent_exact && exponent_exact->is_integer() && exponent_exact->numerator().fits_slong_p()) {
    return EntropyValue(base.pow(exponent_exact->numerator().get_si()), precision_bits);
  }
  const unsigned guarded = precision_bits + kGuardBits;
  const Real exponent = exponent_exact ? Real(*exponent_exact, guarded) : exponent_approx.with_precision(guarded);
  return EntropyValue(Real::pow(Real(base, guarded), exponent).with_precision(precision_bits));
}

EntropyValue sum_of_powers(const StochasticVector& v, const Alpha& alpha, unsigned precision_bits) {
  EntropyValue sum(Rational(0), precision_bits);
  for (const auto& p : v) sum = sum + pow_alpha(p, alpha, precision_bits);
  return sum;
}

// -p * log_base(p) for a component, 0 at p in {0, 1}.
EntropyValue neg_p_log(const Rational& p, bool base_two, unsigned precision_bits) {
  if (p.is_zero() || p == Rational(1)) return EntropyValue(Rational(0), precision_bits);
  const Real x(p, precision_bits + kGuardBits);
  const Real logx = base_two ? x.log2() : x.log();
  return EntropyValue((-(x * logx)).with_precision(precision_bits));
}

bool contains_any(std::string_view s, std::string_view chars) { return s.find_first_of(chars) != std::string_view::npos; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

EntropyValue parse_value(std::string_view text, unsigned precision_bits) {
  const auto t = trim(text);
  if (!contains_any(t, ".eE")) return EntropyValue(Rational::parse(t), precision_bits);
  Real value(precision_bits);
  const std::string s(t);
  char* end = nullptr;
  mpfr_strtofr(value.get(), s.c_str(), &end, 10, MPFR_RNDN);
  if (end == s.c_str() || *end != '\0' || !value.is_finite()) {
    throw ParseError("malformed decimal value '" + s + "'");
  }
  return EntropyValue(std::move(value));
}

}  // namespace

// --- Alpha -------------------------------------------------------------

Alpha::Alpha(Rational value, unsigned precision_bits) : exact_(std::move(value)), approx_(*exact_, precision_bits) {
  if (exact_->sign() <= 0) throw DomainError("alpha must be positive, got " + exact_->to_string());
}

Alpha::Alpha(Real value) : approx_(std::move(value)) {
  if (!approx_.is_finite() || approx_.sign() <= 0) throw DomainError("alpha must be positive and finite");
}

Alpha Alpha::parse(std::string_view text, unsigned precision_bits) {
  return Alpha(Rational::parse(text), precision_bits);
}

std::optional<long> Alpha::integer() const {
  if (!is_exact_integer() || !exact_->numerator().fits_slong_p()) return std::nullopt;
  return exact_->numerator().get_si();
}

std::string Alpha::to_string() const { return exact_ ? exact_->to_string() : "~" + approx_.to_string(); }

// --- EntropyValue ------------------------------------------------------

EntropyValue::EntropyValue(const Rational& exact, unsigned precision_bits)
    : exact_(exact), approx_(exact, precision_bits) {}

EntropyValue::EntropyValue(Real approx) : approx_(std::move(approx)) {}

EntropyValue EntropyValue::abs() const {
  if (exact_) return EntropyValue(exact_->abs(), precision());
  return EntropyValue(approx_.abs());
}

bool EntropyValue::is_zero_within(double absolute_tolerance) const {
  if (exact_) return exact_->is_zero();
  return approx_.is_finite() && approx_.abs() <= Real(absolute_tolerance, precision());
}

std::string EntropyValue::to_string() const { return exact_ ? exact_->to_string() : "~" + approx_.to_string(15); }

EntropyValue operator+(const EntropyValue& a, const EntropyValue& b) {
  if (a.exact_ && b.exact_) return EntropyValue(*a.exact_ + *b.exact_, wider(a, b));
  return EntropyValue(as_real(a, wider(a, b)) + as_real(b, wider(a, b)));
}

EntropyValue operator-(const EntropyValue& a, const EntropyValue& b) {
  if (a.exact_ && b.exact_) return EntropyValue(*a.exact_ - *b.exact_, wider(a, b));
  return EntropyValue(as_real(a, wider(a, b)) - as_real(b, wider(a, b)));
}

EntropyValue operator*(const EntropyValue& a, const EntropyValue& b) {
  if (a.exact_ && b.exact_) return EntropyValue(*a.exact_ * *b.exact_, wider(a, b));
  // An exact zero annihilates, so zero-mass terms stay exact.
  if ((a.exact_ && a.exact_->is_zero()) || (b.exact_ && b.exact_->is_zero())) {
    return EntropyValue(Rational(0), wider(a, b));
  }
  return EntropyValue(as_real(a, wider(a, b)) * as_real(b, wider(a, b)));
}

EntropyValue operator/(const EntropyValue& a, const EntropyValue& b) {
  if (b.exact_ && b.exact_->is_zero()) throw DomainError("entropy value divided by zero");
  if (a.exact_ && b.exact_) return EntropyValue(*a.exact_ / *b.exact_, wider(a, b));
  if (a.exact_ && a.exact_->is_zero()) return EntropyValue(Rational(0), wider(a, b));
  return EntropyValue(as_real(a, wider(a, b)) / as_real(b, wider(a, b)));
}

EntropyValue operator-(const EntropyValue& a) {
  if (a.exact_) return EntropyValue(-*a.exact_, a.precision());
  return EntropyValue(-a.approx_);
}

std::partial_ordering operator<=>(const EntropyValue& a, const EntropyValue& b) {
  if (a.exact_ && b.exact_) return *a.exact_ <=> *b.exact_;
  return as_real(a, wider(a, b)) <=> as_real(b, wider(a, b));
}

// --- EntropyFunctional -------------------------------------------------

EntropyFunctional::EntropyFunctional(std::string name, std::optional<Alpha> alpha, Evaluator evaluator)
    : name_(std::move(name)),
      alpha_(std::move(alpha)),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {}

// --- formulas ----------------------------------------------------------

EntropyValue pow_alpha(const Rational& p, const Alpha& alpha, unsigned precision_bits) {
  return rational_power(p, alpha.exact(), alpha.approx(), precision_bits);
}

EntropyValue pow_one_minus_alpha(const Rational& base, const Alpha& alpha, unsigned precision_bits) {
  std::optional<Rational> exponent_exact;
  if (alpha.exact()) exponent_exact = Rational(1) - *alpha.exact();
  const Real exponent_approx = Real(1.0, alpha.approx().precision()) - alpha.approx();
  return rational_power(base, exponent_exact, exponent_approx, precision_bits);
}

EntropyValue tsallis(const StochasticVector& v, const Alpha& alpha, unsigned precision_bits) {
  if (alpha.is_one() || alpha.approx() == Real(1.0, alpha.approx().precision())) throw AlphaIsOne();
  const EntropyValue one(Rational(1), precision_bits);
  const EntropyValue denominator =
      alpha.exact() ? EntropyValue(*alpha.exact() - Rational(1), precision_bits)
                    : EntropyValue(alpha.approx().with_precision(precision_bits) - Real(1.0, precision_bits));
  return (one - sum_of_powers(v, alpha, precision_bits)) / denominator;
}

EntropyValue shannon(const StochasticVector& v, unsigned precision_bits) {
  EntropyValue sum(Rational(0), precision_bits);
  for (const auto& p : v) sum = sum + neg_p_log(p, false, precision_bits);
  return sum;
}

EntropyValue closed_form(const StochasticVector& v, const Alpha& alpha, const EntropyValue& c,
                         unsigned precision_bits) {
  const EntropyValue one(Rational(1), precision_bits);
  if (alpha.is_one()) {
    EntropyValue sum(Rational(0), precision_bits);
    for (const auto& p : v) sum = sum + neg_p_log(p, true, precision_bits);
    return c * sum;
  }
  if (alpha.is_two()) {
    EntropyValue squares(Rational(0), precision_bits);
    for (const auto& p : v) squares = squares + EntropyValue(p * p, precision_bits);
    return EntropyValue(Rational(2), precision_bits) * c * (one - squares);
  }
  const EntropyValue two_power = pow_one_minus_alpha(Rational(2), alpha, precision_bits);
  return c * (one - sum_of_powers(v, alpha, precision_bits)) / (one - two_power);
}

EntropyValue default_normalization(const Alpha& alpha, unsigned precision_bits) {
  if (alpha.is_one()) return shannon(StochasticVector::uniform(2), precision_bits);
  return tsallis(StochasticVector::uniform(2), alpha, precision_bits);
}

EntropyFunctional tsallis_functional(const Alpha& alpha, unsigned precision_bits) {
  if (alpha.is_one()) throw AlphaIsOne();
  return EntropyFunctional("tsallis(alpha=" + alpha.to_string() + ")", alpha,
                           [alpha, precision_bits](const StochasticVector& v) {
                             return tsallis(v, alpha, precision_bits);
                           });
}

EntropyFunctional shannon_functional(unsigned precision_bits) {
  return EntropyFunctional("shannon", Alpha(Rational(1)),
                           [precision_bits](const StochasticVector& v) { return shannon(v, precision_bits); });
}

EntropyFunctional closed_form_functional(const Alpha& alpha, const EntropyValue& c, unsigned precision_bits) {
  return EntropyFunctional("closed-form(alpha=" + alpha.to_string() + ", c=" + c.to_string() + ")", alpha,
                           [alpha, c, precision_bits](const StochasticVector& v) {
                             return closed_form(v, alpha, c, precision_bits);
                           });
}

EntropyFunctional constant_functional(const EntropyValue& value) {
  return EntropyFunctional("constant(" + value.to_string() + ")", std::nullopt,
                           [value](const StochasticVector&) { return value; });
}

EntropyFunctional affine_functional(const EntropyFunctional& base, const EntropyValue& factor,
                                    const EntropyValue& offset) {
  return EntropyFunctional(factor.to_string() + "*" + base.name() + "+" + offset.to_string(), base.alpha(),
                           [base, factor, offset](const StochasticVector& v) { return factor * base(v) + offset; });
}

EntropyFunctional make_tabulated(EntropyTable table, EntropyFunctional fallback) {
  auto shared = std::make_shared<const EntropyTable>(std::move(table));
  return EntropyFunctional("table[" + std::to_string(shared->size()) + "]/" + fallback.name(), fallback.alpha(),
                           [shared, fallback](const StochasticVector& v) {
                             if (const auto it = shared->find(v); it != shared->end()) return it->second;
                             return fallback(v);
                           });
}

EntropyFunctional perturb(EntropyFunctional base, StochasticVector at, const Rational& delta) {
  std::string name = base.name() + "+perturb(" + at.to_string() + ", " + delta.to_string() + ")";
  auto alpha = base.alpha();
  return EntropyFunctional(std::move(name), std::move(alpha),
                           [base = std::move(base), at = std::move(at), delta](const StochasticVector& v) {
                             EntropyValue value = base(v);
                             if (v == at) value = value + EntropyValue(delta, value.precision());
                             return value;
                           });
}

EntropyTable parse_table(std::string_view text, unsigned precision_bits) {
  EntropyTable table;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    const auto line = trim(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto semi = line.find(';');
    if (semi == std::string_view::npos) {
      throw ParseError("table line " + std::to_string(line_no) + ": expected `vector ; value`");
    }
    try {
      auto v = StochasticVector::parse(line.substr(0, semi));
      table.insert_or_assign(std::move(v), parse_value(line.substr(semi + 1), precision_bits));
    } catch (const Error& e) {
      throw ParseError("table line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

EntropyTable load_table(const std::string& path, unsigned precision_bits) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_table(buffer.str(), precision_bits);
}

}  // namespace tsallis
