#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsallis/entropy.hpp"
#include "tsallis/simplex.hpp"

namespace tsallis {

/// (1 - 3*2^-alpha) F(p, 1-p) + 2^-alpha F(1-p, p) - F(1/2,1/2) (1 - p^alpha - (1-p)^alpha).
/// Zero for every F satisfying pairwise additivity. Throws DomainError
/// unless 0 <= p <= 1.
EntropyValue lemma1_residual(const EntropyFunctional& f, const Alpha& alpha, const Rational& p);

/// F(p, 1-p) + F(1-p, p) - 4 F(1/2,1/2) (1 - p^2 - (1-p)^2).
EntropyValue alpha2_sum_residual(const EntropyFunctional& f, const Rational& p);

/// f(p) = max{(1-p)/p, 1 - (1-p)/p} on [1/2, 1]. Throws DomainError.
Rational f_map(const Rational& p);

/// D(p) = |F(p, 1-p) - F(1-p, p)| for p in [1/2, 1].
EntropyValue symmetry_defect(const EntropyFunctional& f, const Rational& p);

struct OrbitTrace {
  Rational start;
  /// p, f(p), f(f(p)), ... ending at 1 when reached_one.
  std::vector<Rational> points;
  std::vector<mpz_class> denominators;
  /// First index whose point lies in the closed interval [1/2, 2/3].
  std::optional<std::size_t> hit_index;
  /// First index whose point lies in the open interval (1/2, 2/3).
  std::optional<std::size_t> open_hit_index;
  /// Some point equals 2/3 exactly.
  bool passes_two_thirds = false;
  bool reached_one = false;

  /// Points in (2/3, 1) whose orbit avoids the open interval (1/2, 2/3);
  /// the k/(k+1) family.
  bool is_open_interval_exception() const;
};

/// Iterates f from p until the value 1 is reached. Throws DomainError for
/// p outside [1/2, 1] and StepLimitExceeded if more than `max_steps`
/// applications of f would be needed. max_steps = 0 uses the denominator
/// of p, which always suffices.
OrbitTrace orbit(const Rational& p, std::size_t max_steps = 0);

/// step,value,denominator,in_closed_hitting_set,in_open_interval rows.
std::string orbit_to_csv(const OrbitTrace& trace);

/// D(p) - (prod_{k=0}^{n-1} f^k(p))^2 D(f^n(p)): n-fold unrolling of the
/// one-step relation D(p) = p^2 D(f(p)). Zero for pairwise-additive F at
/// alpha = 2.
EntropyValue defect_recursion_residual(const EntropyFunctional& f, const Rational& p, std::size_t n);

/// The product prod_{k=0}^{n-1} f^k(p).
Rational orbit_weight(const Rational& p, std::size_t n);

/// A functional restricted to Delta_1 and Delta_2 with value 0 at (1).
class Delta2Restriction {
 public:
  /// Throws DomainError if f((1)) is not zero (exact, or within 1e-12).
  explicit Delta2Restriction(EntropyFunctional f);

  /// Throws DomainError for vectors longer than 2.
  EntropyValue operator()(const StochasticVector& v) const;
  const EntropyFunctional& functional() const { return f_; }

 private:
  EntropyFunctional f_;
};

enum class MergeStrategy { leftmost_first, rightmost_first, largest_mass_first };

std::string to_string(MergeStrategy s);
inline constexpr MergeStrategy kAllMergeStrategies[] = {MergeStrategy::leftmost_first, MergeStrategy::rightmost_first,
                                                        MergeStrategy::largest_mass_first};

/// Rebuilds H(v) from its Delta_2 values by repeatedly merging adjacent
/// components: H(v) = H(merge(v, j)) + s^alpha base(pair(v, j)). A merge
/// with s = 0 contributes nothing. alpha = 1 is allowed.
EntropyValue reconstruct_from_pairs(const Delta2Restriction& base, const Alpha& alpha, const StochasticVector& v,
                                    MergeStrategy strategy);

/// Evaluates every strategy and returns the common value. Throws
/// AmbiguousReconstruction when two disagree (exactly, or beyond 1e-10
/// when inexact).
EntropyValue reconstruct_consistent(const Delta2Restriction& base, const Alpha& alpha, const StochasticVector& v);

/// (1 - m^(1-alpha)) / (1 - n^(1-alpha)), the ratio H(U_m)/H(U_n) for
/// uniform vectors. Requires m, n >= 2; throws AlphaIsOne.
EntropyValue rational_uniform_ratio(const Alpha& alpha, long m, long n, unsigned precision_bits = kDefaultPrecisionBits);

/// H(v) for rational v from c = H(1/2,1/2) through uniform refinements:
/// with common denominator b and v_i = a_i/b,
///   H(v) = H(U_n) + n^(1-alpha) H(U_b) - sum_i v_i^alpha H(U_{a_i n}),
/// each H(U_k) = c * ratio(k, 2). Never evaluates the closed form.
EntropyValue rational_reconstruct(const Alpha& alpha, const StochasticVector& v, const EntropyValue& c,
                                  unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace tsallis
