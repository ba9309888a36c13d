#include "tsallis/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "tsallis/errors.hpp"

namespace tsallis {

namespace {

using json = nlohmann::ordered_json;

bool violates(const EntropyValue& residual) { return !residual.is_zero_within(kFloatResidualTolerance); }

// Deterministic across standard libraries: raw engine output, no
// distribution objects.
class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t stream) : engine_(seed * 0x9E3779B97F4A7C15ULL + stream) {}

  long between(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }

  StochasticVector vector(std::size_t min_length, std::size_t max_length, long max_denominator) {
    const auto n = static_cast<std::size_t>(between(static_cast<long>(min_length), static_cast<long>(max_length)));
    const long d = between(1, max_denominator);
    std::vector<long> cuts;
    for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(between(0, d));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> parts;
    long previous = 0;
    for (long c : cuts) {
      parts.emplace_back(c - previous, d);
      previous = c;
    }
    parts.emplace_back(d - previous, d);
    return StochasticVector::from_rationals(std::move(parts));
  }

 private:
  std::mt19937_64 engine_;
};

struct InstanceKey {
  std::vector<StochasticVector> vectors;
  std::optional<std::size_t> index;

  friend auto operator<=>(const InstanceKey&, const InstanceKey&) = default;
};

// Reduces instance residuals in enumeration order. Ties on the maximal
// residual go to the lexicographically smallest instance.
class Tracker {
 public:
  explicit Tracker(std::string axiom) : axiom_(std::move(axiom)) {}

  void record(const EntropyValue& residual, const EntropyValue& lhs, const EntropyValue& rhs,
              std::vector<StochasticVector> vectors, std::optional<std::size_t> index = std::nullopt,
              std::optional<bool> violated = std::nullopt) {
    ++instances_;
    if (violated.value_or(violates(residual))) ++violations_;
    const EntropyValue magnitude = residual.abs();
    InstanceKey key{std::move(vectors), index};
    bool replace = !max_;
    if (!replace) {
      const auto c = magnitude <=> *max_;
      replace = c > 0 || (c == 0 && key < key_);
    }
    if (replace) {
      max_ = magnitude;
      key_ = std::move(key);
      witness_ = Witness{key_.vectors, key_.index, lhs, rhs};
    }
  }

  AxiomReport finish(std::string coverage) const {
    AxiomReport r;
    r.axiom = axiom_;
    r.instances = instances_;
    r.violations = violations_;
    r.verdict = violations_ ? Verdict::fail : Verdict::pass;
    if (max_) r.max_residual = *max_;
    r.witness = witness_;
    r.coverage = std::move(coverage);
    return r;
  }

  const std::optional<EntropyValue>& max() const { return max_; }

 private:
  std::string axiom_;
  std::size_t instances_ = 0;
  std::size_t violations_ = 0;
  std::optional<EntropyValue> max_;
  InstanceKey key_;
  std::optional<Witness> witness_;
};

std::string grid_coverage(const SampleSpec& spec) {
  return "exhaustive grid b=" + std::to_string(spec.max_denominator) + ", n<=" + std::to_string(spec.max_length) +
         "; " + std::to_string(spec.random_samples) + " random instances (seed " + std::to_string(spec.seed) +
         ", denominators <= " + std::to_string(4 * spec.max_denominator) + ")";
}

long random_denominator_cap(const SampleSpec& spec) { return std::max<long>(1, 4 * spec.max_denominator); }

void validate(const SampleSpec& spec) {
  if (spec.max_denominator < 1) throw DomainError("max denominator must be >= 1");
  if (spec.max_length < 1) throw DomainError("max length must be >= 1");
}

void record_pairwise(Tracker& t, const EntropyFunctional& f, const Alpha& alpha, const StochasticVector& v,
                     std::size_t j) {
  const EntropyValue lhs = f(v);
  StochasticVector merged = merge_adjacent(v, j);
  EntropyValue rhs = f(merged);
  std::vector<StochasticVector> vectors{v, merged};
  const Rational s = v[j] + v[j + 1];
  if (!s.is_zero()) {
    StochasticVector pair = conditional_pair(v, j);
    rhs = rhs + pow_alpha(s, alpha, lhs.precision()) * f(pair);
    vectors.push_back(std::move(pair));
  }
  t.record(lhs - rhs, lhs, rhs, std::move(vectors), j + 1);
}

void record_nested(Tracker& t, const EntropyFunctional& f, const Alpha& alpha, const NestedVector& nested) {
  const StochasticVector flat = nested.flatten();
  const EntropyValue lhs = f(flat);
  EntropyValue rhs = f(nested.outer());
  std::vector<StochasticVector> vectors{flat, nested.outer()};
  for (std::size_t i = 0; i < nested.outer().size(); ++i) {
    const Rational& p = nested.outer()[i];
    if (p.is_zero()) continue;
    StochasticVector cond = nested.conditional(i);
    rhs = rhs + pow_alpha(p, alpha, lhs.precision()) * f(cond);
    vectors.push_back(std::move(cond));
  }
  t.record(lhs - rhs, lhs, rhs, std::move(vectors));
}

void compositions(long remaining, std::size_t slots, std::vector<long>& prefix, std::vector<std::vector<long>>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (long k = 0; k <= remaining; ++k) {
    prefix.push_back(k);
    compositions(remaining - k, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

std::vector<StochasticVector> delta2_sample(const SampleSpec& spec, std::uint64_t stream) {
  std::vector<StochasticVector> sample = delta2_vectors(spec.max_denominator);
  Draw draw(spec.seed, stream);
  for (std::size_t i = 0; i < spec.random_samples; ++i) sample.push_back(draw.vector(2, 2, random_denominator_cap(spec)));
  return sample;
}

std::string delta2_coverage(const SampleSpec& spec) {
  return "Delta_2 pairs with denominator <= " + std::to_string(spec.max_denominator) + "; " +
         std::to_string(spec.random_samples) + " random pairs (seed " + std::to_string(spec.seed) + ")";
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::heuristic_pass:
      return "heuristic-pass";
  }
  return "unknown";
}

std::vector<StochasticVector> grid_vectors(long b, std::size_t max_length) {
  if (b < 1) throw DomainError("grid denominator must be >= 1");
  std::vector<StochasticVector> out;
  for (std::size_t n = 1; n <= max_length; ++n) {
    std::vector<std::vector<long>> parts;
    std::vector<long> prefix;
    compositions(b, n, prefix, parts);
    for (const auto& numerators : parts) {
      std::vector<Rational> comps;
      comps.reserve(n);
      for (long a : numerators) comps.emplace_back(a, b);
      out.push_back(StochasticVector::from_rationals(std::move(comps)));
    }
  }
  return out;
}

std::vector<StochasticVector> delta2_vectors(long b) {
  std::set<Rational> xs;
  for (long d = 1; d <= b; ++d) {
    for (long a = 0; a <= d; ++a) xs.insert(Rational(a, d));
  }
  std::vector<StochasticVector> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(StochasticVector::from_rationals({x, Rational(1) - x}));
  return out;
}

AxiomReport check_pairwise_additivity(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec) {
  validate(spec);
  Tracker t("pairwise_additivity");
  for (const auto& v : grid_vectors(spec.max_denominator, spec.max_length)) {
    for (std::size_t j = 0; j + 1 < v.size(); ++j) record_pairwise(t, f, alpha, v, j);
  }
  if (spec.max_length >= 2) {
    Draw draw(spec.seed, 1);
    for (std::size_t i = 0; i < spec.random_samples; ++i) {
      const auto v = draw.vector(2, spec.max_length, random_denominator_cap(spec));
      const auto j = static_cast<std::size_t>(draw.between(0, static_cast<long>(v.size()) - 2));
      record_pairwise(t, f, alpha, v, j);
    }
  }
  return t.finish(grid_coverage(spec));
}

AxiomReport check_generalized_additivity(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec) {
  validate(spec);
  Tracker t("generalized_additivity");
  for (const auto& w : grid_vectors(spec.max_denominator, spec.max_length)) {
    const std::size_t m = w.size();
    // Bit g of `cuts` set: a block boundary after entry g.
    for (unsigned long cuts = 0; cuts < (1UL << (m - 1)); ++cuts) {
      std::vector<std::vector<Rational>> blocks(1);
      std::vector<Rational> masses;
      for (std::size_t g = 0; g < m; ++g) {
        blocks.back().push_back(w[g]);
        if (g + 1 < m && ((cuts >> g) & 1UL)) blocks.emplace_back();
      }
      for (const auto& block : blocks) {
        Rational mass;
        for (const auto& x : block) mass += x;
        masses.push_back(mass);
      }
      record_nested(t, f, alpha, NestedVector(StochasticVector::from_rationals(std::move(masses)), std::move(blocks)));
    }
  }
  Draw draw(spec.seed, 2);
  for (std::size_t i = 0; i < spec.random_samples; ++i) {
    const auto outer = draw.vector(1, spec.max_length, random_denominator_cap(spec));
    std::vector<StochasticVector> conditionals;
    for (std::size_t k = 0; k < outer.size(); ++k) {
      conditionals.push_back(draw.vector(1, spec.max_length, random_denominator_cap(spec)));
    }
    record_nested(t, f, alpha, compose(outer, conditionals));
  }
  return t.finish(grid_coverage(spec) + "; grid instances use every grouping into consecutive blocks");
}

AxiomReport check_expansibility(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  Tracker t("expansibility");
  auto record = [&](const StochasticVector& v) {
    StochasticVector extended = append_zero(v);
    const EntropyValue lhs = f(extended);
    const EntropyValue rhs = f(v);
    t.record(lhs - rhs, lhs, rhs, {std::move(extended), v});
  };
  for (const auto& v : grid_vectors(spec.max_denominator, spec.max_length)) record(v);
  Draw draw(spec.seed, 3);
  for (std::size_t i = 0; i < spec.random_samples; ++i) record(draw.vector(1, spec.max_length, random_denominator_cap(spec)));
  return t.finish(grid_coverage(spec));
}

AxiomReport check_maximality(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  Tracker t("maximality");
  std::vector<std::optional<EntropyValue>> uniform_values(spec.max_length + 1);
  auto record = [&](const StochasticVector& v) {
    auto& at_uniform = uniform_values[v.size()];
    if (!at_uniform) at_uniform = f(StochasticVector::uniform(v.size()));
    const EntropyValue lhs = f(v);
    const EntropyValue excess = lhs - *at_uniform;
    const EntropyValue residual = excess.sign() > 0 ? excess : EntropyValue(Rational(0), excess.precision());
    t.record(residual, lhs, *at_uniform, {v, StochasticVector::uniform(v.size())});
  };
  for (const auto& v : grid_vectors(spec.max_denominator, spec.max_length)) record(v);
  Draw draw(spec.seed, 4);
  for (std::size_t i = 0; i < spec.random_samples; ++i) record(draw.vector(1, spec.max_length, random_denominator_cap(spec)));
  return t.finish(grid_coverage(spec));
}

AxiomReport check_continuity_sampled(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  const double alpha = f.alpha() ? f.alpha()->approx().to_double() : 1.0;
  const double b = static_cast<double>(spec.max_denominator);
  const double threshold = spec.continuity_constant / std::pow(b, std::min(alpha, 1.0));
  const Rational step(1, spec.max_denominator);

  Tracker t("continuity_sampled");
  for (const auto& v : grid_vectors(spec.max_denominator, spec.max_length)) {
    const EntropyValue fv = f(v);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < step) continue;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k == i) continue;
        std::vector<Rational> moved(v.begin(), v.end());
        moved[i] -= step;
        moved[k] += step;
        auto neighbour = StochasticVector::from_rationals(std::move(moved));
        const EntropyValue fn = f(neighbour);
        const EntropyValue jump = fv - fn;
        const bool broken = jump.abs().to_double() > 10.0 * threshold;
        t.record(jump, fv, fn, {v, std::move(neighbour)}, std::nullopt, broken);
      }
    }
  }
  AxiomReport r = t.finish("heuristic: neighbours at max-norm distance 1/" + std::to_string(spec.max_denominator) +
                           " on the grid, n<=" + std::to_string(spec.max_length) +
                           "; threshold C/b^min(alpha,1) = " + std::to_string(threshold) + " (C=" +
                           std::to_string(spec.continuity_constant) + "), fail above 10x threshold");
  r.heuristic = true;
  if (r.verdict != Verdict::fail) {
    r.verdict = Verdict::heuristic_pass;
    if (r.max_residual.to_double() > threshold) r.coverage += "; max jump above threshold, inconclusive";
  }
  return r;
}

AxiomReport check_symmetry_delta2(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  Tracker t("symmetry_delta2");
  for (const auto& v : delta2_sample(spec, 5)) {
    if (v[0] < Rational(1, 2)) continue;
    auto swapped = StochasticVector::from_rationals({v[1], v[0]});
    const EntropyValue lhs = f(v);
    const EntropyValue rhs = f(swapped);
    t.record(lhs - rhs, lhs, rhs, {v, std::move(swapped)});
  }
  return t.finish(delta2_coverage(spec) + "; pairs with p >= 1/2");
}

AxiomReport check_sign_constancy(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  std::optional<std::pair<EntropyValue, StochasticVector>> most_positive;
  std::optional<std::pair<EntropyValue, StochasticVector>> most_negative;
  std::size_t count = 0;
  for (const auto& v : delta2_sample(spec, 6)) {
    ++count;
    const EntropyValue value = f(v);
    if (value.sign() > 0 && (!most_positive || value > most_positive->first)) most_positive.emplace(value, v);
    if (value.sign() < 0 && (!most_negative || value < most_negative->first)) most_negative.emplace(value, v);
  }
  AxiomReport r;
  r.axiom = "sign_constancy";
  r.instances = count;
  r.coverage = delta2_coverage(spec) + "; residual = min(max F, max -F)";
  if (most_positive && most_negative) {
    const EntropyValue pos = most_positive->first;
    const EntropyValue neg = -most_negative->first;
    r.max_residual = pos < neg ? pos : neg;
    r.witness = Witness{{most_positive->second, most_negative->second}, std::nullopt, most_positive->first,
                        most_negative->first};
    if (violates(pos) && violates(neg)) {
      r.verdict = Verdict::fail;
      r.violations = 1;
    }
  }
  return r;
}

AxiomReport check_boundedness_estimate(const EntropyFunctional& f, const SampleSpec& spec) {
  validate(spec);
  Tracker t("boundedness_estimate");
  AxiomReport r;
  for (const auto& v : delta2_sample(spec, 7)) {
    std::optional<EntropyValue> value;
    try {
      value = f(v);
    } catch (const std::exception&) {
    }
    if (!value || !value->is_finite()) {
      r = t.finish(delta2_coverage(spec));
      r.verdict = Verdict::fail;
      r.violations = 1;
      r.witness = Witness{{v}, std::nullopt, value.value_or(EntropyValue()), EntropyValue()};
      r.coverage += "; evaluation undefined at " + v.to_string();
      r.heuristic = true;
      return r;
    }
    const EntropyValue zero(Rational(0), value->precision());
    t.record(*value, *value, zero, {v}, std::nullopt, false);
  }
  r = t.finish(delta2_coverage(spec) + "; max |F| reported, finiteness only");
  r.heuristic = true;
  r.verdict = Verdict::heuristic_pass;
  return r;
}

std::vector<AxiomReport> full_report(const EntropyFunctional& f, const Alpha& alpha, const SampleSpec& spec) {
  return {
      check_pairwise_additivity(f, alpha, spec), check_generalized_additivity(f, alpha, spec),
      check_expansibility(f, spec),              check_maximality(f, spec),
      check_continuity_sampled(f, spec),         check_symmetry_delta2(f, spec),
      check_sign_constancy(f, spec),             check_boundedness_estimate(f, spec),
  };
}

bool all_passed(const std::vector<AxiomReport>& reports) {
  return std::none_of(reports.begin(), reports.end(), [](const AxiomReport& r) { return r.verdict == Verdict::fail; });
}

json value_to_json(const EntropyValue& v) {
  json out;
  out["decimal"] = v.approx().to_string(15);
  out["exact"] = v.exact() ? json(v.exact()->to_string()) : json(nullptr);
  return out;
}

json to_json(const AxiomReport& report) {
  json out;
  out["axiom"] = report.axiom;
  out["verdict"] = to_string(report.verdict);
  out["heuristic"] = report.heuristic;
  out["instances"] = report.instances;
  out["violations"] = report.violations;
  out["max_residual"] = value_to_json(report.max_residual);
  if (report.witness) {
    json w;
    json vectors = json::array();
    for (const auto& v : report.witness->vectors) vectors.push_back(v.to_string());
    w["vectors"] = std::move(vectors);
    w["index"] = report.witness->index ? json(*report.witness->index) : json(nullptr);
    w["lhs"] = value_to_json(report.witness->lhs);
    w["rhs"] = value_to_json(report.witness->rhs);
    out["witness"] = std::move(w);
  } else {
    out["witness"] = nullptr;
  }
  out["coverage"] = report.coverage;
  return out;
}

}  // namespace tsallis
