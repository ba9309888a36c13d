#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsallis/entropy.hpp"
#include "tsallis/simplex.hpp"

namespace tsallis {

/// Residual tolerance for inexact (float-mode) residuals. Exact residuals
/// must be exactly zero.
inline constexpr double kFloatResidualTolerance = 1e-10;

/// Which instances a check enumerates. Same spec, same instance set.
struct SampleSpec {
  /// Exhaustive grid: every vector with components in {0, 1/b, ..., 1}.
  long max_denominator = 6;
  std::size_t max_length = 4;
  /// Seeded random instances on top of the grid; their denominators are
  /// drawn from [1, 4 * max_denominator].
  std::size_t random_samples = 0;
  std::uint64_t seed = 0;
  /// Threshold constant C for the sampled continuity heuristic.
  double continuity_constant = 2.0;
};

enum class Verdict { pass, fail, heuristic_pass };

std::string to_string(Verdict v);

struct Witness {
  std::vector<StochasticVector> vectors;
  /// Merge position (1-based) when the instance has one.
  std::optional<std::size_t> index;
  EntropyValue lhs;
  EntropyValue rhs;
};

struct AxiomReport {
  std::string axiom;
  Verdict verdict = Verdict::pass;
  bool heuristic = false;
  std::size_t instances = 0;
  std::size_t violations = 0;
  EntropyValue max_residual;
  std::optional<Witness> witness;
  /// Enumeration bounds and any check-specific notes.
  std::string coverage;
};

/// {"decimal": 15 significant digits, "exact": "a/b" or null}.
nlohmann::ordered_json value_to_json(const EntropyValue& v);
nlohmann::ordered_json to_json(const AxiomReport& report);

/// All vectors of length 1..max_length with components k/b, graded
/// lexicographic order.
std::vector<StochasticVector> grid_vectors(long b, std::size_t max_length);
/// The Delta_2 vectors (x, 1-x) for every x = a/d in lowest terms, d <= b.
std::vector<StochasticVector> delta2_vectors(long b);

/// H(..., p_j, p_{j+1}, ...) = H(merged) + s^alpha H(p_j/s, p_{j+1}/s).
AxiomReport check_pairwise_additivity(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec);
/// H(flattened) = H(outer) + sum_i p_i^alpha H(conditional_i); zero-mass
/// blocks contribute 0. Grid instances group consecutive entries of every
/// grid vector in all possible ways, so F((1)) != 0 is always caught.
AxiomReport check_generalized_additivity(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec);
AxiomReport check_expansibility(const EntropyFunctional& f, const SampleSpec& spec);
AxiomReport check_maximality(const EntropyFunctional& f, const SampleSpec& spec);
/// Heuristic. Compares F at grid neighbours (one 1/b unit of mass moved)
/// against C / b^min(alpha, 1); fails only when a jump exceeds ten times
/// that threshold.
AxiomReport check_continuity_sampled(const EntropyFunctional& f, const SampleSpec& spec);
AxiomReport check_symmetry_delta2(const EntropyFunctional& f, const SampleSpec& spec);
AxiomReport check_sign_constancy(const EntropyFunctional& f, const SampleSpec& spec);
/// Heuristic. Reports max |F| on Delta_2; fails only if an evaluation is
/// undefined or not finite.
AxiomReport check_boundedness_estimate(const EntropyFunctional& f, const SampleSpec& spec);

std::vector<AxiomReport> full_report(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec);

/// True when no report failed.
bool all_passed(const std::vector<AxiomReport>& reports);

}  // namespace tsallis
