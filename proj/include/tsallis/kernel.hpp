#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tsallis/entropy.hpp"
#include "tsallis/simplex.hpp"

namespace tsallis {

inline constexpr std::size_t kDefaultGridCap = 250000;

/// Unknowns of the grid experiment: every vector of length <= L with
/// components in (1/b)Z, plus every Delta_2 vector with denominator <= b.
/// Ids follow graded lexicographic order.
class GridIndex {
 public:
  GridIndex(long b, std::size_t max_length, std::vector<StochasticVector> vectors);

  long denominator() const { return b_; }
  std::size_t max_length() const { return max_length_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<StochasticVector>& vectors() const { return vectors_; }
  const StochasticVector& vector(std::size_t id) const { return vectors_[id]; }
  std::optional<std::size_t> id(const StochasticVector& v) const;

 private:
  long b_;
  std::size_t max_length_;
  std::vector<StochasticVector> vectors_;
  std::map<StochasticVector, std::size_t> ids_;
};

/// Throws DomainError unless b >= 2 and L >= 2, SizeLimit when the grid
/// would exceed `cap` vectors.
GridIndex enumerate_grid(long b, std::size_t max_length, std::size_t cap = kDefaultGridCap);

/// Sparse vector over the unknowns, sorted by id, no explicit zeros.
using SparseVector = std::vector<std::pair<std::size_t, Rational>>;

struct ConstraintSystem {
  long b = 0;
  std::size_t max_length = 0;
  long alpha = 2;
  std::size_t unknowns = 0;
  /// Row for instance (v, j): +1 H(v) - 1 H(merged) - s^alpha H(pair),
  /// coefficients on coinciding unknowns combined.
  std::vector<SparseVector> rows;
  /// (vector id, 0-based merge index) that produced each row.
  std::vector<std::pair<std::size_t, std::size_t>> provenance;
  /// Instances whose merged vector or conditional pair has no unknown.
  std::size_t dropped_instances = 0;
};

/// One row per (v, j) with v in the grid and length >= 2. alpha must be a
/// positive integer >= 2 so every s^alpha is rational (DomainError).
ConstraintSystem build_constraints(const GridIndex& grid, const Alpha& alpha);

/// Exact dot product of every row with a dense assignment is zero.
bool satisfies_all(const ConstraintSystem& system, const std::vector<Rational>& assignment);

/// v -> (1 - sum p_i^alpha) / (alpha - 1), i.e. the closed form normalized
/// to Tsallis; for alpha = 2 this is 1 - sum p_i^2.
std::vector<Rational> closed_form_assignment(const GridIndex& grid, long alpha);

struct BasisSymmetry {
  std::size_t basis = 0;
  Rational max_defect;
  /// (p, D(p)) for grid pairs p in (1/2, 1] with nonzero defect.
  std::vector<std::pair<Rational, Rational>> asymmetric_pairs;
};

struct KernelReport {
  long b = 0;
  std::size_t max_length = 0;
  long alpha = 2;
  std::size_t unknowns = 0;
  std::size_t constraints = 0;
  std::size_t dropped_instances = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  std::vector<std::size_t> pivot_columns;
  std::vector<std::size_t> free_columns;
  /// One basis vector per free column: 1 at the free column, minus the
  /// reduced-row entries at the pivot columns.
  std::vector<SparseVector> basis;

  // Filled by analyze_solutions.
  std::optional<bool> closed_form_member;
  std::optional<bool> closed_form_family;
  std::vector<BasisSymmetry> symmetry;
  std::size_t orbit_pairs_checked = 0;
  std::size_t orbit_pairs_consistent = 0;
};

/// Exact sparse Gauss-Jordan elimination; pivot = first nonzero column.
KernelReport solve_kernel(const ConstraintSystem& system);

/// Closed-form membership (exact), per-basis Delta_2 symmetry defects, the
/// one-parameter-family flag, and the check D(p) = p^2 D(f(p)) for every
/// basis element on grid pairs whose three-component witness
/// (1-p, 2p-1, 1-p) is a grid vector.
KernelReport analyze_solutions(KernelReport report, const GridIndex& grid);

/// Dimension of the kernel of `grid` restricted to the unknowns of the
/// nested grid `coarse`. Every coarse constraint is also a fine one, so this
/// never exceeds the coarse kernel dimension. Throws DomainError when
/// `coarse` is not contained in `grid`.
std::size_t projected_dimension(const KernelReport& report, const GridIndex& grid, const GridIndex& coarse);

nlohmann::ordered_json to_json(const KernelReport& report, const GridIndex& grid);

}  // namespace tsallis
