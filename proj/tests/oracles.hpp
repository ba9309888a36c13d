#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths; they use plain integer/rational loops or long double.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "tsallis/rational.hpp"
#include "tsallis/simplex.hpp"

namespace oracle {

using tsallis::Rational;
using tsallis::StochasticVector;

inline Rational power_by_multiplication(const Rational& p, long k) {
  Rational out(1);
  for (long i = 0; i < k; ++i) out *= p;
  return out;
}

/// (1 - sum p^k)/(k - 1), by repeated multiplication.
inline Rational tsallis_integer(const StochasticVector& v, long k) {
  Rational sum;
  for (const auto& p : v) sum += power_by_multiplication(p, k);
  return (Rational(1) - sum) / Rational(k - 1);
}

inline long double tsallis_ld(const StochasticVector& v, long double alpha) {
  long double sum = 0;
  for (const auto& p : v) {
    const long double x = static_cast<long double>(p.to_double());
    if (x > 0) sum += std::pow(x, alpha);
  }
  return (1.0L - sum) / (alpha - 1.0L);
}

inline long double shannon_ld(const StochasticVector& v) {
  long double sum = 0;
  for (const auto& p : v) {
    const long double x = static_cast<long double>(p.to_double());
    if (x > 0) sum -= x * std::log(x);
  }
  return sum;
}

/// f on [1/2, 1] with p = a/b as machine integers.
inline std::pair<long, long> f_map_integers(long a, long b) {
  long num = 3 * a > 2 * b ? 2 * a - b : b - a;
  long den = a;
  const long g = std::gcd(num, den);
  return {num / g, den / g};
}

/// Every value reachable by merging adjacent pairs in any order, using the
/// supplied two-point values and weight function.
inline void all_merge_orders(const std::vector<Rational>& v,
                             const std::function<Rational(const Rational&, const Rational&)>& pair_value,
                             const std::function<Rational(const Rational&)>& weight, Rational acc,
                             std::vector<Rational>& out) {
  if (v.size() <= 2) {
    out.push_back(acc + (v.size() == 2 ? pair_value(v[0], v[1]) : Rational(0)));
    return;
  }
  for (std::size_t j = 0; j + 1 < v.size(); ++j) {
    const Rational s = v[j] + v[j + 1];
    Rational next = acc;
    if (!s.is_zero()) next += weight(s) * pair_value(v[j] / s, v[j + 1] / s);
    std::vector<Rational> merged(v.begin(), v.begin() + static_cast<long>(j));
    merged.push_back(s);
    merged.insert(merged.end(), v.begin() + static_cast<long>(j) + 2, v.end());
    all_merge_orders(merged, pair_value, weight, next, out);
  }
}

/// Rank of a dense rational matrix, textbook elimination.
inline std::size_t dense_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      const Rational factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Seeded rational vectors for property tests (xorshift, reproducible).
class VectorSource {
 public:
  explicit VectorSource(unsigned long long seed) : state_(seed * 2654435761ULL + 1) {}

  long below(long n) {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return static_cast<long>(state_ % static_cast<unsigned long long>(n));
  }

  StochasticVector next(std::size_t max_length, long max_denominator) {
    const std::size_t n = 1 + static_cast<std::size_t>(below(static_cast<long>(max_length)));
    const long d = 1 + below(max_denominator);
    std::vector<long> cuts;
    for (std::size_t i = 0; i + 1 < n; ++i) cuts.push_back(below(d + 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> parts;
    long prev = 0;
    for (long c : cuts) {
      parts.emplace_back(c - prev, d);
      prev = c;
    }
    parts.emplace_back(d - prev, d);
    return StochasticVector::from_rationals(std::move(parts));
  }

 private:
  unsigned long long state_;
};

/// All vectors of length <= max_length whose components have denominators
/// dividing some d <= max_denominator (deduplicated by reduction).
inline std::vector<StochasticVector> all_rational_vectors(long max_denominator, std::size_t max_length) {
  std::vector<StochasticVector> out;
  std::function<void(long, long, std::size_t, std::vector<Rational>&)> rec = [&](long d, long left, std::size_t slots,
                                                                              std::vector<Rational>& prefix) {
    if (slots == 1) {
      prefix.emplace_back(left, d);
      out.push_back(StochasticVector::from_rationals(prefix));
      prefix.pop_back();
      return;
    }
    for (long k = 0; k <= left; ++k) {
      prefix.emplace_back(k, d);
      rec(d, left - k, slots - 1, prefix);
      prefix.pop_back();
    }
  };
  for (long d = 1; d <= max_denominator; ++d) {
    for (std::size_t n = 1; n <= max_length; ++n) {
      std::vector<Rational> prefix;
      rec(d, d, n, prefix);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace oracle
