#include "tsallis/characterization.hpp"

#include <sstream>

#include "tsallis/axioms.hpp"
#include "tsallis/errors.hpp"

namespace tsallis {

namespace {

const Rational kHalf(1, 2);
const Rational kTwoThirds(2, 3);
const Rational kOne(1);

StochasticVector pair(const Rational& p) { return StochasticVector::from_rationals({p, kOne - p}); }

void require_unit_interval(const Rational& p) {
  if (p.sign() < 0 || p > kOne) throw DomainError("p = " + p.to_string() + " is outside [0, 1]");
}

void require_upper_half(const Rational& p) {
  if (p < kHalf || p > kOne) throw DomainError("p = " + p.to_string() + " is outside [1/2, 1]");
}

bool in_closed_hitting_set(const Rational& x) { return x >= kHalf && x <= kTwoThirds; }
bool in_open_interval(const Rational& x) { return x > kHalf && x < kTwoThirds; }

std::size_t pick_merge(const StochasticVector& v, MergeStrategy strategy) {
  switch (strategy) {
    case MergeStrategy::leftmost_first:
      return 0;
    case MergeStrategy::rightmost_first:
      return v.size() - 2;
    case MergeStrategy::largest_mass_first: {
      std::size_t best = 0;
      Rational best_mass = v[0] + v[1];
      for (std::size_t j = 1; j + 1 < v.size(); ++j) {
        const Rational mass = v[j] + v[j + 1];
        if (mass > best_mass) {
          best = j;
          best_mass = mass;
        }
      }
      return best;
    }
  }
  return 0;
}

// H(U_k) = c * (1 - k^(1-alpha)) / (1 - 2^(1-alpha)); zero at k = 1.
EntropyValue uniform_entropy(const Alpha& alpha, long k, const EntropyValue& c, unsigned precision_bits) {
  if (k == 1) return EntropyValue(Rational(0), precision_bits);
  return c * rational_uniform_ratio(alpha, k, 2, precision_bits);
}

}  // namespace

EntropyValue lemma1_residual(const EntropyFunctional& f, const Alpha& alpha, const Rational& p) {
  require_unit_interval(p);
  const unsigned prec = alpha.approx().precision();
  const EntropyValue one(kOne, prec);
  const EntropyValue two_inv = pow_alpha(kHalf, alpha, prec);
  const EntropyValue lhs = (one - EntropyValue(Rational(3), prec) * two_inv) * f(pair(p)) + two_inv * f(pair(kOne - p));
  const EntropyValue rhs = f(pair(kHalf)) * (one - pow_alpha(p, alpha, prec) - pow_alpha(kOne - p, alpha, prec));
  return lhs - rhs;
}

EntropyValue alpha2_sum_residual(const EntropyFunctional& f, const Rational& p) {
  require_unit_interval(p);
  const Rational q = kOne - p;
  const EntropyValue lhs = f(pair(p)) + f(pair(q));
  const EntropyValue rhs = EntropyValue(Rational(4)) * f(pair(kHalf)) * EntropyValue(kOne - p * p - q * q);
  return lhs - rhs;
}

Rational f_map(const Rational& p) {
  require_upper_half(p);
  const Rational ratio = (kOne - p) / p;
  const Rational complement = kOne - ratio;
  return ratio > complement ? ratio : complement;
}

EntropyValue symmetry_defect(const EntropyFunctional& f, const Rational& p) {
  require_upper_half(p);
  return (f(pair(p)) - f(pair(kOne - p))).abs();
}

bool OrbitTrace::is_open_interval_exception() const {
  return start > kTwoThirds && start < kOne && !open_hit_index.has_value();
}

OrbitTrace orbit(const Rational& p, std::size_t max_steps) {
  require_upper_half(p);
  if (max_steps == 0) {
    const mpz_class d = p.denominator();
    max_steps = d.fits_ulong_p() ? d.get_ui() : static_cast<std::size_t>(-1);
  }
  OrbitTrace trace;
  trace.start = p;
  Rational current = p;
  std::size_t steps = 0;
  while (true) {
    const std::size_t index = trace.points.size();
    if (!trace.hit_index && in_closed_hitting_set(current)) trace.hit_index = index;
    if (!trace.open_hit_index && in_open_interval(current)) trace.open_hit_index = index;
    if (current == kTwoThirds) trace.passes_two_thirds = true;
    trace.points.push_back(current);
    trace.denominators.push_back(current.denominator());
    if (current == kOne) break;
    if (steps == max_steps) {
      throw StepLimitExceeded("orbit of " + p.to_string() + " did not reach 1 within " + std::to_string(max_steps) +
                              " steps");
    }
    current = f_map(current);
    ++steps;
  }
  trace.reached_one = true;
  return trace;
}

std::string orbit_to_csv(const OrbitTrace& trace) {
  std::ostringstream out;
  out << "step,value,denominator,in_closed_hitting_set,in_open_interval\n";
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    const Rational& x = trace.points[i];
    out << i << ',' << x.to_string() << ',' << trace.denominators[i].get_str() << ','
        << (in_closed_hitting_set(x) ? 1 : 0) << ',' << (in_open_interval(x) ? 1 : 0) << '\n';
  }
  return out.str();
}

Rational orbit_weight(const Rational& p, std::size_t n) {
  Rational product(1);
  Rational current = p;
  for (std::size_t k = 0; k < n; ++k) {
    product *= current;
    current = f_map(current);
  }
  return product;
}

EntropyValue defect_recursion_residual(const EntropyFunctional& f, const Rational& p, std::size_t n) {
  require_upper_half(p);
  if (n == 0) throw DomainError("defect recursion needs n >= 1");
  Rational image = p;
  for (std::size_t k = 0; k < n; ++k) image = f_map(image);
  const Rational weight = orbit_weight(p, n);
  return symmetry_defect(f, p) - EntropyValue(weight * weight) * symmetry_defect(f, image);
}

Delta2Restriction::Delta2Restriction(EntropyFunctional f) : f_(std::move(f)) {
  const EntropyValue at_one = f_(StochasticVector::uniform(1));
  if (!at_one.is_zero_within(1e-12)) {
    throw DomainError("base functional must vanish at (1), got " + at_one.to_string());
  }
}

EntropyValue Delta2Restriction::operator()(const StochasticVector& v) const {
  if (v.size() > 2) throw DomainError("Delta_2 restriction evaluated at length " + std::to_string(v.size()));
  return f_(v);
}

std::string to_string(MergeStrategy s) {
  switch (s) {
    case MergeStrategy::leftmost_first:
      return "leftmost-first";
    case MergeStrategy::rightmost_first:
      return "rightmost-first";
    case MergeStrategy::largest_mass_first:
      return "largest-mass-first";
  }
  return "unknown";
}

EntropyValue reconstruct_from_pairs(const Delta2Restriction& base, const Alpha& alpha, const StochasticVector& v,
                                    MergeStrategy strategy) {
  const unsigned prec = alpha.approx().precision();
  EntropyValue total(Rational(0), prec);
  StochasticVector current = v;
  while (current.size() > 2) {
    const std::size_t j = pick_merge(current, strategy);
    const Rational s = current[j] + current[j + 1];
    if (!s.is_zero()) total = total + pow_alpha(s, alpha, prec) * base(conditional_pair(current, j));
    current = merge_adjacent(current, j);
  }
  return total + base(current);
}

EntropyValue reconstruct_consistent(const Delta2Restriction& base, const Alpha& alpha, const StochasticVector& v) {
  const EntropyValue reference = reconstruct_from_pairs(base, alpha, v, kAllMergeStrategies[0]);
  for (std::size_t i = 1; i < std::size(kAllMergeStrategies); ++i) {
    const EntropyValue other = reconstruct_from_pairs(base, alpha, v, kAllMergeStrategies[i]);
    if (!(reference - other).is_zero_within(kFloatResidualTolerance)) {
      throw AmbiguousReconstruction("merge orders disagree at " + v.to_string() + ": " +
                                    to_string(kAllMergeStrategies[0]) + " gives " + reference.to_string() + ", " +
                                    to_string(kAllMergeStrategies[i]) + " gives " + other.to_string());
    }
  }
  return reference;
}

EntropyValue rational_uniform_ratio(const Alpha& alpha, long m, long n, unsigned precision_bits) {
  if (alpha.is_one()) throw AlphaIsOne();
  if (m < 2 || n < 2) throw DomainError("uniform ratio needs m, n >= 2");
  if (m == n) return EntropyValue(Rational(1), precision_bits);
  const EntropyValue one(Rational(1), precision_bits);
  return (one - pow_one_minus_alpha(Rational(m), alpha, precision_bits)) /
         (one - pow_one_minus_alpha(Rational(n), alpha, precision_bits));
}

EntropyValue rational_reconstruct(const Alpha& alpha, const StochasticVector& v, const EntropyValue& c,
                                  unsigned precision_bits) {
  if (alpha.is_one()) throw AlphaIsOne();
  mpz_class common = 1;
  for (const auto& p : v) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.denominator().get_mpz_t());
  if (!common.fits_slong_p()) throw DomainError("common denominator too large");
  const long b = common.get_si();
  const long n = static_cast<long>(v.size());

  // H(U_{bn}) refined two ways: by v then uniformly, and by U_n then U_b.
  EntropyValue value = uniform_entropy(alpha, n, c, precision_bits) +
                       pow_one_minus_alpha(Rational(n), alpha, precision_bits) * uniform_entropy(alpha, b, c, precision_bits);
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    const long a = (p * Rational(b)).numerator().get_si();
    value = value - pow_alpha(p, alpha, precision_bits) * uniform_entropy(alpha, a * n, c, precision_bits);
  }
  return value;
}

}  // namespace tsallis
