#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tsallis/axioms.hpp"
#include "tsallis/characterization.hpp"
#include "tsallis/errors.hpp"
#include "tsallis/kernel.hpp"

namespace py = pybind11;
using namespace tsallis;

namespace {

// (exact "a/b" or None, approximate float); the Python layer turns this
// into a Fraction or a float.
using Value = std::tuple<std::optional<std::string>, double>;

Value wrap(const EntropyValue& v) {
  std::optional<std::string> exact;
  if (v.exact()) exact = v.exact()->to_string();
  return {exact, v.to_double()};
}

Alpha make_alpha(const std::string& text, unsigned precision) { return Alpha::parse(text, precision); }

EntropyFunctional make_functional(const std::string& name, const Alpha& alpha, unsigned precision) {
  if (name == "tsallis") return alpha.is_one() ? shannon_functional(precision) : tsallis_functional(alpha, precision);
  if (name == "shannon") return shannon_functional(precision);
  if (name == "zero") return constant_functional(Rational(0));
  if (name == "closed-form") return closed_form_functional(alpha, default_normalization(alpha, precision), precision);
  throw ParseError("unknown functional '" + name + "' (tsallis, shannon, zero, closed-form)");
}

SampleSpec make_spec(long max_denominator, std::size_t max_length, std::size_t samples, std::uint64_t seed) {
  SampleSpec spec;
  spec.max_denominator = max_denominator;
  spec.max_length = max_length;
  spec.random_samples = samples;
  spec.seed = seed;
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact-arithmetic Tsallis entropy laboratory (C++ core)";
  m.attr("__version__") = TSALLIS_VERSION;
  m.attr("DEFAULT_PRECISION") = kDefaultPrecisionBits;

  auto base = py::register_exception<Error>(m, "LabError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimitError", base.ptr());

  m.def("normalize_vector", [](const std::string& v) { return StochasticVector::parse(v).to_string(); },
        py::arg("vector"), "Parse and validate a stochastic vector, returning its canonical text.");

  m.def(
      "tsallis",
      [](const std::string& v, const std::string& alpha, unsigned precision) {
        return wrap(tsallis::tsallis(StochasticVector::parse(v), make_alpha(alpha, precision), precision));
      },
      py::arg("vector"), py::arg("alpha"), py::arg("precision") = kDefaultPrecisionBits);

  m.def(
      "shannon", [](const std::string& v, unsigned precision) { return wrap(shannon(StochasticVector::parse(v), precision)); },
      py::arg("vector"), py::arg("precision") = kDefaultPrecisionBits);

  m.def(
      "closed_form",
      [](const std::string& v, const std::string& alpha, const std::optional<std::string>& c, unsigned precision) {
        const Alpha a = make_alpha(alpha, precision);
        const EntropyValue norm = c ? EntropyValue(Rational::parse(*c), precision) : default_normalization(a, precision);
        return wrap(closed_form(StochasticVector::parse(v), a, norm, precision));
      },
      py::arg("vector"), py::arg("alpha"), py::arg("c") = py::none(), py::arg("precision") = kDefaultPrecisionBits);

  m.def(
      "axioms_report",
      [](const std::string& functional, const std::string& alpha, long max_denominator, std::size_t max_length,
         std::size_t samples, std::uint64_t seed, unsigned precision) {
        const Alpha a = make_alpha(alpha, precision);
        const auto reports =
            full_report(make_functional(functional, a, precision), a, make_spec(max_denominator, max_length, samples, seed));
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& r : reports) out.push_back(to_json(r));
        return std::make_tuple(all_passed(reports), out.dump());
      },
      py::arg("functional") = "tsallis", py::arg("alpha") = "2", py::arg("max_denominator") = 6,
      py::arg("max_length") = 4, py::arg("samples") = 0, py::arg("seed") = 0,
      py::arg("precision") = kDefaultPrecisionBits,
      "Run every axiom check; returns (all_passed, JSON array of reports).");

  m.def(
      "lemma1_residual",
      [](const std::string& p, const std::string& alpha, const std::string& functional, unsigned precision) {
        const Alpha a = make_alpha(alpha, precision);
        return wrap(lemma1_residual(make_functional(functional, a, precision), a, Rational::parse(p)));
      },
      py::arg("p"), py::arg("alpha"), py::arg("functional") = "tsallis", py::arg("precision") = kDefaultPrecisionBits);

  m.def(
      "f_map", [](const std::string& p) { return f_map(Rational::parse(p)).to_string(); }, py::arg("p"));

  m.def(
      "orbit",
      [](const std::string& p, std::size_t max_steps) {
        const auto t = orbit(Rational::parse(p), max_steps);
        std::vector<std::string> points;
        for (const auto& x : t.points) points.push_back(x.to_string());
        py::dict out;
        out["points"] = points;
        out["hit_index"] = t.hit_index;
        out["open_hit_index"] = t.open_hit_index;
        out["passes_two_thirds"] = t.passes_two_thirds;
        out["reached_one"] = t.reached_one;
        out["csv"] = orbit_to_csv(t);
        return out;
      },
      py::arg("p"), py::arg("max_steps") = 0);

  m.def(
      "reconstruct",
      [](const std::string& v, const std::string& alpha, const std::string& functional, unsigned precision) {
        const Alpha a = make_alpha(alpha, precision);
        const Delta2Restriction base(make_functional(functional, a, precision));
        return wrap(reconstruct_consistent(base, a, StochasticVector::parse(v)));
      },
      py::arg("vector"), py::arg("alpha"), py::arg("functional") = "tsallis",
      py::arg("precision") = kDefaultPrecisionBits,
      "H(v) rebuilt from two-point values; raises LabError if merge orders disagree.");

  m.def(
      "rational_reconstruct",
      [](const std::string& v, const std::string& alpha, const std::optional<std::string>& c, unsigned precision) {
        const Alpha a = make_alpha(alpha, precision);
        const EntropyValue norm = c ? EntropyValue(Rational::parse(*c), precision) : default_normalization(a, precision);
        return wrap(rational_reconstruct(a, StochasticVector::parse(v), norm, precision));
      },
      py::arg("vector"), py::arg("alpha"), py::arg("c") = py::none(), py::arg("precision") = kDefaultPrecisionBits);

  m.def(
      "kernel",
      [](long b, std::size_t L, long alpha, std::size_t cap) {
        const auto grid = enumerate_grid(b, L, cap);
        const auto report = analyze_solutions(solve_kernel(build_constraints(grid, Alpha(Rational(alpha)))), grid);
        return to_json(report, grid).dump();
      },
      py::arg("b"), py::arg("L"), py::arg("alpha") = 2, py::arg("cap") = kDefaultGridCap,
      "Grid experiment; returns the JSON report.");
}
