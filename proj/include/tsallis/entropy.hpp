#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "tsallis/rational.hpp"
#include "tsallis/real.hpp"
#include "tsallis/simplex.hpp"

namespace tsallis {

/// Entropy parameter, alpha > 0. Exact when given as a rational; the real
/// approximation is always available.
class Alpha {
 public:
  /// Throws DomainError unless value > 0.
  explicit Alpha(Rational value, unsigned precision_bits = kDefaultPrecisionBits);
  explicit Alpha(Real value);

  /// Accepts the Rational::parse forms; decimals are read exactly.
  static Alpha parse(std::string_view text, unsigned precision_bits = kDefaultPrecisionBits);

  const std::optional<Rational>& exact() const { return exact_; }
  const Real& approx() const { return approx_; }
  bool is_exact_integer() const { return exact_ && exact_->is_integer(); }
  /// The value as an integer when is_exact_integer().
  std::optional<long> integer() const;
  bool is_one() const { return exact_ && *exact_ == Rational(1); }
  bool is_two() const { return exact_ && *exact_ == Rational(2); }

  std::string to_string() const;

 private:
  std::optional<Rational> exact_;
  Real approx_;
};

/// An entropy value: exact rational when available, otherwise a real.
/// When exact, approx() is its rounding.
class EntropyValue {
 public:
  EntropyValue() : EntropyValue(Rational(0)) {}
  EntropyValue(const Rational& exact, unsigned precision_bits = kDefaultPrecisionBits);  // NOLINT
  explicit EntropyValue(Real approx);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  const Real& approx() const { return approx_; }
  unsigned precision() const { return approx_.precision(); }
  double to_double() const { return approx_.to_double(); }

  EntropyValue abs() const;
  int sign() const { return exact_ ? exact_->sign() : approx_.sign(); }
  bool is_finite() const { return exact_ || approx_.is_finite(); }

  /// Exactly zero when exact; |approx| <= absolute_tolerance otherwise.
  bool is_zero_within(double absolute_tolerance) const;

  /// `a/b` when exact, `~d.ddd` (15 significant digits) otherwise.
  std::string to_string() const;

  friend EntropyValue operator+(const EntropyValue& a, const EntropyValue& b);
  friend EntropyValue operator-(const EntropyValue& a, const EntropyValue& b);
  friend EntropyValue operator*(const EntropyValue& a, const EntropyValue& b);
  friend EntropyValue operator/(const EntropyValue& a, const EntropyValue& b);
  friend EntropyValue operator-(const EntropyValue& a);

  /// Exact comparison when both are exact, approximate otherwise.
  friend std::partial_ordering operator<=>(const EntropyValue& a, const EntropyValue& b);
  friend bool operator==(const EntropyValue& a, const EntropyValue& b) { return (a <=> b) == 0; }

 private:
  std::optional<Rational> exact_;
  Real approx_;
};

/// A candidate entropy H on the simplex. Copies share the (immutable)
/// evaluator.
class EntropyFunctional {
 public:
  using Evaluator = std::function<EntropyValue(const StochasticVector&)>;

  EntropyFunctional(std::string name, std::optional<Alpha> alpha, Evaluator evaluator);

  EntropyValue operator()(const StochasticVector& v) const { return (*evaluator_)(v); }
  const std::string& name() const { return name_; }
  const std::optional<Alpha>& alpha() const { return alpha_; }

 private:
  std::string name_;
  std::optional<Alpha> alpha_;
  std::shared_ptr<const Evaluator> evaluator_;
};

/// p^alpha with 0^alpha = 0. Exact for integer alpha or p in {0, 1};
/// otherwise correctly rounded to `precision_bits` from a guarded
/// computation.
EntropyValue pow_alpha(const Rational& p, const Alpha& alpha, unsigned precision_bits = kDefaultPrecisionBits);

/// base^(1-alpha) for base > 0; exact for integer alpha.
EntropyValue pow_one_minus_alpha(const Rational& base, const Alpha& alpha,
                                 unsigned precision_bits = kDefaultPrecisionBits);

/// (1 - sum p_i^alpha) / (alpha - 1). Throws AlphaIsOne.
EntropyValue tsallis(const StochasticVector& v, const Alpha& alpha,
                     unsigned precision_bits = kDefaultPrecisionBits);

/// -sum p_i ln p_i with 0 ln 0 = 0.
EntropyValue shannon(const StochasticVector& v, unsigned precision_bits = kDefaultPrecisionBits);

/// The closed forms normalized by c = H(1/2,1/2):
///   alpha = 1:  -c * sum p_i log2 p_i
///   alpha = 2:  2c (1 - sum p_i^2)
///   otherwise:  c (1 - sum p_i^alpha) / (1 - 2^(1-alpha))
EntropyValue closed_form(const StochasticVector& v, const Alpha& alpha, const EntropyValue& c,
                         unsigned precision_bits = kDefaultPrecisionBits);

/// Default normalization used when none is supplied: tsallis((1/2,1/2))
/// for alpha != 1, ln 2 for alpha = 1.
EntropyValue default_normalization(const Alpha& alpha, unsigned precision_bits = kDefaultPrecisionBits);

EntropyFunctional tsallis_functional(const Alpha& alpha, unsigned precision_bits = kDefaultPrecisionBits);
EntropyFunctional shannon_functional(unsigned precision_bits = kDefaultPrecisionBits);
EntropyFunctional closed_form_functional(const Alpha& alpha, const EntropyValue& c,
                                         unsigned precision_bits = kDefaultPrecisionBits);
EntropyFunctional constant_functional(const EntropyValue& value);
/// factor * base(v) + offset.
EntropyFunctional affine_functional(const EntropyFunctional& base, const EntropyValue& factor,
                                    const EntropyValue& offset);

using EntropyTable = std::map<StochasticVector, EntropyValue>;

/// Table lookup with fallback for missing vectors.
EntropyFunctional make_tabulated(EntropyTable table, EntropyFunctional fallback);

/// base, except that the value at `at` is shifted by delta.
EntropyFunctional perturb(EntropyFunctional base, StochasticVector at, const Rational& delta);

/// Reads `vector ; value` lines (blank lines and `#` comments skipped).
/// Values in `a/b` or integer form are exact; decimal literals are treated
/// as approximate readings. Throws ParseError with the line number.
EntropyTable parse_table(std::string_view text, unsigned precision_bits = kDefaultPrecisionBits);
EntropyTable load_table(const std::string& path, unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace tsallis
