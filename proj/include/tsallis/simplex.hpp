#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tsallis/rational.hpp"

namespace tsallis {

/// A point of the probability simplex: nonnegative exact rationals summing
/// to exactly one. Immutable once constructed.
class StochasticVector {
 public:
  /// Validates and takes ownership. Throws ParseError on an empty sequence,
  /// NegativeComponent, or NotNormalized (message carries the exact sum).
  static StochasticVector from_rationals(std::vector<Rational> values);

  /// Parses the textual form `a/b,c/d,...` (integers allowed, whitespace
  /// ignored) and validates it.
  static StochasticVector parse(std::string_view text);

  static StochasticVector uniform(std::size_t n);

  std::size_t size() const { return components_.size(); }
  const Rational& operator[](std::size_t i) const { return components_[i]; }
  std::span<const Rational> components() const { return components_; }
  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  /// `a/b,c/d,...` with no spaces; parse(to_string()) round-trips.
  std::string to_string() const;

  /// Graded lexicographic: by length, then componentwise.
  friend std::strong_ordering operator<=>(const StochasticVector& a, const StochasticVector& b);
  friend bool operator==(const StochasticVector& a, const StochasticVector& b) = default;

 private:
  explicit StochasticVector(std::vector<Rational> components) : components_(std::move(components)) {}
  std::vector<Rational> components_;
};

/// Grouped vector: outer component i is split into block i.
class NestedVector {
 public:
  /// Throws ArityMismatch when the block count differs from the outer length,
  /// InvalidConditional when a block has a negative entry, is empty, or does
  /// not sum to its outer component.
  NestedVector(StochasticVector outer, std::vector<std::vector<Rational>> blocks);

  const StochasticVector& outer() const { return outer_; }
  const std::vector<std::vector<Rational>>& blocks() const { return blocks_; }

  StochasticVector flatten() const;
  /// Block i divided by its mass; only meaningful for outer[i] > 0
  /// (throws ZeroMass otherwise).
  StochasticVector conditional(std::size_t i) const;

 private:
  StochasticVector outer_;
  std::vector<std::vector<Rational>> blocks_;
};

StochasticVector append_zero(const StochasticVector& v);

/// Replaces components j and j+1 (0-based) by their sum.
/// Throws IndexOutOfRange unless j + 1 < v.size().
StochasticVector merge_adjacent(const StochasticVector& v, std::size_t j);

/// (p_j/s, p_{j+1}/s) with s = p_j + p_{j+1}. Throws ZeroMass when s = 0.
StochasticVector conditional_pair(const StochasticVector& v, std::size_t j);

/// Builds the grouped vector whose block i is outer[i] * conditionals[i].
/// Zero outer components get the placeholder block {0}. `conditionals` holds
/// either one entry per outer component (entries at zero components are
/// ignored) or one entry per positive component, in order.
NestedVector compose(const StochasticVector& outer, std::span<const StochasticVector> conditionals);

/// Same, with unvalidated conditionals; a conditional that is not a
/// stochastic vector raises InvalidConditional.
NestedVector compose(const StochasticVector& outer, std::span<const std::vector<Rational>> conditionals);

/// result[i] = v[perm[i]], perm 0-based. Throws InvalidPermutation.
StochasticVector permute(const StochasticVector& v, std::span<const std::size_t> perm);

}  // namespace tsallis
