#include "tsallis/kernel.hpp"

#include <algorithm>
#include <set>

#include "tsallis/axioms.hpp"
#include "tsallis/characterization.hpp"
#include "tsallis/errors.hpp"

namespace tsallis {

namespace {

using json = nlohmann::ordered_json;

// y += factor * x
void axpy(SparseVector& y, const Rational& factor, const SparseVector& x) {
  SparseVector out;
  out.reserve(y.size() + x.size());
  auto a = y.begin();
  auto b = x.begin();
  while (a != y.end() || b != x.end()) {
    if (b == x.end() || (a != y.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == y.end() || b->first < a->first) {
      out.emplace_back(b->first, factor * b->second);
      ++b;
    } else {
      Rational sum = a->second + factor * b->second;
      if (!sum.is_zero()) out.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  y = std::move(out);
}

const Rational* find(const SparseVector& v, std::size_t column) {
  const auto it = std::lower_bound(v.begin(), v.end(), column,
                                   [](const auto& entry, std::size_t c) { return entry.first < c; });
  return it != v.end() && it->first == column ? &it->second : nullptr;
}

double binomial(long n, long k) {
  double r = 1.0;
  for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

Rational value_at(const std::vector<Rational>& x, const GridIndex& grid, const StochasticVector& v) {
  return x[*grid.id(v)];
}

std::vector<Rational> densify(const SparseVector& v, std::size_t n) {
  std::vector<Rational> out(n);
  for (const auto& [id, c] : v) out[id] = c;
  return out;
}

struct Echelon {
  std::vector<SparseVector> rows;
  std::map<std::size_t, std::size_t> pivot_row;  // column -> index into rows
};

// Gauss-Jordan in input order; the pivot of each new row is its first
// nonzero column.
Echelon eliminate(const std::vector<SparseVector>& input_rows) {
  Echelon e;
  for (const auto& input : input_rows) {
    SparseVector row = input;
    // Pivot rows are fully reduced, so one pass clears every pivot column.
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [col, c] : row) {
      if (e.pivot_row.count(col)) hits.emplace_back(col, c);
    }
    for (const auto& [col, c] : hits) axpy(row, -c, e.rows[e.pivot_row[col]]);
    if (row.empty()) continue;

    const std::size_t pivot = row.front().first;
    const Rational scale = row.front().second.inverse();
    for (auto& entry : row) entry.second *= scale;
    for (auto& other : e.rows) {
      if (const Rational* c = find(other, pivot)) {
        const Rational factor = -*c;
        axpy(other, factor, row);
      }
    }
    e.pivot_row.emplace(pivot, e.rows.size());
    e.rows.push_back(std::move(row));
  }
  return e;
}

}  // namespace

GridIndex::GridIndex(long b, std::size_t max_length, std::vector<StochasticVector> vectors)
    : b_(b), max_length_(max_length), vectors_(std::move(vectors)) {
  std::sort(vectors_.begin(), vectors_.end());
  vectors_.erase(std::unique(vectors_.begin(), vectors_.end()), vectors_.end());
  for (std::size_t i = 0; i < vectors_.size(); ++i) ids_.emplace(vectors_[i], i);
}

std::optional<std::size_t> GridIndex::id(const StochasticVector& v) const {
  if (const auto it = ids_.find(v); it != ids_.end()) return it->second;
  return std::nullopt;
}

GridIndex enumerate_grid(long b, std::size_t max_length, std::size_t cap) {
  if (b < 2 || max_length < 2) throw DomainError("grid needs b >= 2 and L >= 2");
  double expected = 0;
  for (std::size_t n = 1; n <= max_length; ++n) expected += binomial(b + static_cast<long>(n) - 1, static_cast<long>(n) - 1);
  if (expected > static_cast<double>(cap)) {
    throw SizeLimit("grid b=" + std::to_string(b) + ", L=" + std::to_string(max_length) + " has ~" +
                    std::to_string(static_cast<long long>(expected)) + " vectors, cap is " + std::to_string(cap));
  }
  auto vectors = grid_vectors(b, max_length);
  auto extras = delta2_vectors(b);
  vectors.insert(vectors.end(), extras.begin(), extras.end());
  return GridIndex(b, max_length, std::move(vectors));
}

ConstraintSystem build_constraints(const GridIndex& grid, const Alpha& alpha) {
  const auto exponent = alpha.integer();
  if (!exponent || *exponent < 2) throw DomainError("kernel search needs an integer alpha >= 2");
  ConstraintSystem system;
  system.b = grid.denominator();
  system.max_length = grid.max_length();
  system.alpha = *exponent;
  system.unknowns = grid.size();

  for (std::size_t id = 0; id < grid.size(); ++id) {
    const StochasticVector& v = grid.vector(id);
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
      std::map<std::size_t, Rational> row;
      row[id] += Rational(1);
      const auto merged = grid.id(merge_adjacent(v, j));
      if (!merged) {
        ++system.dropped_instances;
        continue;
      }
      row[*merged] -= Rational(1);
      const Rational s = v[j] + v[j + 1];
      if (!s.is_zero()) {
        const auto pair = grid.id(conditional_pair(v, j));
        if (!pair) {
          ++system.dropped_instances;
          continue;
        }
        row[*pair] -= s.pow(*exponent);
      }
      SparseVector sparse;
      for (auto& [col, c] : row) {
        if (!c.is_zero()) sparse.emplace_back(col, std::move(c));
      }
      system.rows.push_back(std::move(sparse));
      system.provenance.emplace_back(id, j);
    }
  }
  return system;
}

bool satisfies_all(const ConstraintSystem& system, const std::vector<Rational>& assignment) {
  return std::all_of(system.rows.begin(), system.rows.end(), [&](const SparseVector& row) {
    Rational dot;
    for (const auto& [col, c] : row) dot += c * assignment.at(col);
    return dot.is_zero();
  });
}

std::vector<Rational> closed_form_assignment(const GridIndex& grid, long alpha) {
  if (alpha < 2) throw DomainError("closed-form assignment needs an integer alpha >= 2");
  std::vector<Rational> out;
  out.reserve(grid.size());
  for (const auto& v : grid.vectors()) {
    Rational sum;
    for (const auto& p : v) sum += p.pow(alpha);
    out.push_back((Rational(1) - sum) / Rational(alpha - 1));
  }
  return out;
}

KernelReport solve_kernel(const ConstraintSystem& system) {
  const Echelon echelon = eliminate(system.rows);
  const auto& reduced = echelon.rows;
  const auto& pivot_row = echelon.pivot_row;

  KernelReport report;
  report.b = system.b;
  report.max_length = system.max_length;
  report.alpha = system.alpha;
  report.unknowns = system.unknowns;
  report.constraints = system.rows.size();
  report.dropped_instances = system.dropped_instances;
  report.rank = reduced.size();
  report.dimension = system.unknowns - reduced.size();
  for (const auto& [col, row] : pivot_row) report.pivot_columns.push_back(col);

  for (std::size_t col = 0; col < system.unknowns; ++col) {
    if (pivot_row.count(col)) continue;
    report.free_columns.push_back(col);
    SparseVector basis{{col, Rational(1)}};
    for (const auto& [pcol, r] : pivot_row) {
      if (const Rational* c = find(reduced[r], col)) basis.emplace_back(pcol, -*c);
    }
    std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    report.basis.push_back(std::move(basis));
  }
  return report;
}

KernelReport analyze_solutions(KernelReport report, const GridIndex& grid) {
  const std::size_t n = grid.size();
  const auto closed = closed_form_assignment(grid, report.alpha);

  // x lies in the kernel iff it equals its own expansion over the basis.
  std::vector<Rational> expansion(n);
  for (std::size_t k = 0; k < report.basis.size(); ++k) {
    const Rational& weight = closed[report.free_columns[k]];
    if (weight.is_zero()) continue;
    for (const auto& [id, c] : report.basis[k]) expansion[id] += weight * c;
  }
  report.closed_form_member = expansion == closed;
  report.closed_form_family = *report.closed_form_member && report.dimension == 1;

  const Rational half(1, 2);
  const Rational one(1);
  std::vector<Rational> pairs;
  for (const auto& v : grid.vectors()) {
    if (v.size() == 2 && v[0] > half) pairs.push_back(v[0]);
  }

  report.symmetry.clear();
  report.orbit_pairs_checked = 0;
  report.orbit_pairs_consistent = 0;
  for (std::size_t k = 0; k < report.basis.size(); ++k) {
    const auto x = densify(report.basis[k], n);
    auto defect = [&](const Rational& p) {
      const auto forward = StochasticVector::from_rationals({p, one - p});
      const auto backward = StochasticVector::from_rationals({one - p, p});
      return (value_at(x, grid, forward) - value_at(x, grid, backward)).abs();
    };
    BasisSymmetry sym;
    sym.basis = k;
    for (const auto& p : pairs) {
      const Rational d = defect(p);
      if (d.is_zero()) continue;
      if (d > sym.max_defect) sym.max_defect = d;
      sym.asymmetric_pairs.emplace_back(p, d);
    }
    report.symmetry.push_back(std::move(sym));

    for (const auto& p : pairs) {
      if (p == one) continue;
      const auto witness = StochasticVector::from_rationals({one - p, p + p - one, one - p});
      if (!grid.id(witness)) continue;
      ++report.orbit_pairs_checked;
      if (defect(p) == p * p * defect(f_map(p))) ++report.orbit_pairs_consistent;
    }
  }
  return report;
}

std::size_t projected_dimension(const KernelReport& report, const GridIndex& grid, const GridIndex& coarse) {
  std::map<std::size_t, std::size_t> to_coarse;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const auto id = grid.id(coarse.vector(i));
    if (!id) throw DomainError("vector " + coarse.vector(i).to_string() + " is not in the finer grid");
    to_coarse.emplace(*id, i);
  }
  std::vector<SparseVector> rows;
  for (const auto& basis : report.basis) {
    SparseVector row;
    for (const auto& [id, c] : basis) {
      if (const auto it = to_coarse.find(id); it != to_coarse.end()) row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows.push_back(std::move(row));
  }
  return eliminate(rows).rows.size();
}

json to_json(const KernelReport& report, const GridIndex& grid) {
  json out;
  out["b"] = report.b;
  out["L"] = report.max_length;
  out["alpha"] = report.alpha;
  out["unknowns"] = report.unknowns;
  out["constraints"] = report.constraints;
  out["dropped_instances"] = report.dropped_instances;
  out["rank"] = report.rank;
  out["kernel_dimension"] = report.dimension;
  json basis = json::array();
  for (const auto& element : report.basis) {
    json entries = json::array();
    for (const auto& [id, c] : element) entries.push_back(json::array({id, c.to_string()}));
    basis.push_back(std::move(entries));
  }
  out["basis"] = std::move(basis);
  out["closed_form_member"] = report.closed_form_member ? json(*report.closed_form_member) : json(nullptr);
  out["closed_form_family"] = report.closed_form_family ? json(*report.closed_form_family) : json(nullptr);
  json defects = json::array();
  for (const auto& sym : report.symmetry) {
    json pairs = json::array();
    for (const auto& [p, d] : sym.asymmetric_pairs) pairs.push_back(json::array({p.to_string(), d.to_string()}));
    defects.push_back({{"basis", sym.basis}, {"max_defect", sym.max_defect.to_string()}, {"asymmetric_pairs", pairs}});
  }
  out["basis_symmetry_defects"] = std::move(defects);
  out["orbit_consistency"] = {{"checked", report.orbit_pairs_checked}, {"consistent", report.orbit_pairs_consistent}};
  json unknowns = json::array();
  for (const auto& v : grid.vectors()) unknowns.push_back(v.to_string());
  out["unknown_vectors"] = std::move(unknowns);
  out["interpretation"] =
      "finite-grid evidence only; a kernel of dimension 1 means pairwise additivity pins H on this grid up to scale, "
      "larger kernels list candidate non-closed-form assignments; bounded grids cannot settle the unrestricted question";
  return out;
}

}  // namespace tsallis
