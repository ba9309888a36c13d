#include "tsallis/simplex.hpp"

#include <algorithm>
#include <string>

#include "tsallis/errors.hpp"

namespace tsallis {

StochasticVector StochasticVector::from_rationals(std::vector<Rational> values) {
  if (values.empty()) throw ParseError("stochastic vector must have at least one component");
  Rational sum;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].sign() < 0) {
      throw NegativeComponent("component " + std::to_string(i + 1) + " is negative (" +
                              values[i].to_string() + ")");
    }
    sum += values[i];
  }
  if (sum != Rational(1)) {
    throw NotNormalized("components sum to " + sum.to_string() + ", not 1");
  }
  return StochasticVector(std::move(values));
}

StochasticVector StochasticVector::parse(std::string_view text) {
  std::vector<Rational> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - start);
    values.push_back(Rational::parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return from_rationals(std::move(values));
}

StochasticVector StochasticVector::uniform(std::size_t n) {
  if (n == 0) throw DomainError("uniform vector needs n >= 1");
  return StochasticVector(std::vector<Rational>(n, Rational(1, static_cast<long>(n))));
}

std::string StochasticVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ',';
    out += components_[i].to_string();
  }
  return out;
}

std::strong_ordering operator<=>(const StochasticVector& a, const StochasticVector& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

NestedVector::NestedVector(StochasticVector outer, std::vector<std::vector<Rational>> blocks)
    : outer_(std::move(outer)), blocks_(std::move(blocks)) {
  if (blocks_.size() != outer_.size()) {
    throw ArityMismatch("expected " + std::to_string(outer_.size()) + " blocks, got " +
                        std::to_string(blocks_.size()));
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].empty()) throw InvalidConditional("block " + std::to_string(i + 1) + " is empty");
    Rational sum;
    for (const auto& x : blocks_[i]) {
      if (x.sign() < 0) throw InvalidConditional("block " + std::to_string(i + 1) + " has a negative entry");
      sum += x;
    }
    if (sum != outer_[i]) {
      throw InvalidConditional("block " + std::to_string(i + 1) + " sums to " + sum.to_string() +
                               ", outer component is " + outer_[i].to_string());
    }
  }
}

StochasticVector NestedVector::flatten() const {
  std::vector<Rational> flat;
  for (const auto& block : blocks_) flat.insert(flat.end(), block.begin(), block.end());
  return StochasticVector::from_rationals(std::move(flat));
}

StochasticVector NestedVector::conditional(std::size_t i) const {
  if (i >= blocks_.size()) throw IndexOutOfRange("block index out of range");
  const Rational& mass = outer_[i];
  if (mass.is_zero()) throw ZeroMass("block " + std::to_string(i + 1) + " has zero mass");
  std::vector<Rational> out;
  out.reserve(blocks_[i].size());
  for (const auto& x : blocks_[i]) out.push_back(x / mass);
  return StochasticVector::from_rationals(std::move(out));
}

StochasticVector append_zero(const StochasticVector& v) {
  std::vector<Rational> out(v.begin(), v.end());
  out.emplace_back(0);
  return StochasticVector::from_rationals(std::move(out));
}

StochasticVector merge_adjacent(const StochasticVector& v, std::size_t j) {
  if (j + 1 >= v.size()) {
    throw IndexOutOfRange("merge index " + std::to_string(j + 1) + " invalid for length " +
                          std::to_string(v.size()));
  }
  std::vector<Rational> out;
  out.reserve(v.size() - 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i == j) {
      out.push_back(v[j] + v[j + 1]);
      ++i;
    } else {
      out.push_back(v[i]);
    }
  }
  return StochasticVector::from_rationals(std::move(out));
}

StochasticVector conditional_pair(const StochasticVector& v, std::size_t j) {
  if (j + 1 >= v.size()) {
    throw IndexOutOfRange("pair index " + std::to_string(j + 1) + " invalid for length " +
                          std::to_string(v.size()));
  }
  const Rational s = v[j] + v[j + 1];
  if (s.is_zero()) throw ZeroMass("p_j + p_{j+1} = 0 at index " + std::to_string(j + 1));
  return StochasticVector::from_rationals({v[j] / s, v[j + 1] / s});
}

NestedVector compose(const StochasticVector& outer, std::span<const std::vector<Rational>> conditionals) {
  const auto positive = static_cast<std::size_t>(
      std::count_if(outer.begin(), outer.end(), [](const Rational& p) { return !p.is_zero(); }));
  const bool one_per_component = conditionals.size() == outer.size();
  if (!one_per_component && conditionals.size() != positive) {
    throw ArityMismatch("expected " + std::to_string(outer.size()) + " or " + std::to_string(positive) +
                        " conditionals, got " + std::to_string(conditionals.size()));
  }
  std::vector<std::vector<Rational>> blocks;
  blocks.reserve(outer.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < outer.size(); ++i) {
    const Rational& p = outer[i];
    if (p.is_zero()) {
      blocks.push_back({Rational(0)});
      if (one_per_component) ++next;
      continue;
    }
    const auto& cond = conditionals[next++];
    try {
      (void)StochasticVector::from_rationals(cond);
    } catch (const Error& e) {
      throw InvalidConditional("conditional " + std::to_string(i + 1) + ": " + e.what());
    }
    std::vector<Rational> block;
    block.reserve(cond.size());
    for (const auto& x : cond) block.push_back(p * x);
    blocks.push_back(std::move(block));
  }
  return NestedVector(outer, std::move(blocks));
}

NestedVector compose(const StochasticVector& outer, std::span<const StochasticVector> conditionals) {
  std::vector<std::vector<Rational>> raw;
  raw.reserve(conditionals.size());
  for (const auto& c : conditionals) raw.emplace_back(c.begin(), c.end());
  return compose(outer, std::span<const std::vector<Rational>>(raw));
}

StochasticVector permute(const StochasticVector& v, std::span<const std::size_t> perm) {
  if (perm.size() != v.size()) throw InvalidPermutation("permutation length differs from vector length");
  std::vector<bool> seen(perm.size(), false);
  std::vector<Rational> out;
  out.reserve(v.size());
  for (std::size_t target : perm) {
    if (target >= v.size() || seen[target]) throw InvalidPermutation("not a bijection on the index set");
    seen[target] = true;
    out.push_back(v[target]);
  }
  return StochasticVector::from_rationals(std::move(out));
}

}  // namespace tsallis
