#include "lab_cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tsallis/axioms.hpp"
#include "tsallis/characterization.hpp"
#include "tsallis/entropy.hpp"
#include "tsallis/errors.hpp"
#include "tsallis/kernel.hpp"

namespace tsallis::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolName = "tsallis-lab";

struct Outcome {
  int status = kExitPass;
  std::string text;
};

json header(const RunConfig& config) {
  json out;
  out["tool"] = kToolName;
  out["version"] = TSALLIS_VERSION;
  out["config"] = to_json(config);
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_or(const RunConfig& config, const char* fallback) {
  return config.format.empty() ? fallback : config.format;
}

EntropyFunctional named_functional(const std::string& name, const Alpha& alpha, const RunConfig& config) {
  const unsigned prec = config.precision;
  if (name == "tsallis") return alpha.is_one() ? shannon_functional(prec) : tsallis_functional(alpha, prec);
  if (name == "shannon") return shannon_functional(prec);
  if (name == "zero") return constant_functional(EntropyValue(Rational(0), prec));
  if (name == "closed-form") {
    const EntropyValue c = config.c.empty() ? default_normalization(alpha, prec) : EntropyValue(Rational::parse(config.c), prec);
    return closed_form_functional(alpha, c, prec);
  }
  if (name.rfind("table:", 0) == 0) {
    if (config.fallback.rfind("table:", 0) == 0) throw ParseError("table fallback cannot itself be a table");
    return make_tabulated(load_table(name.substr(6), prec), named_functional(config.fallback, alpha, config));
  }
  throw ParseError("unknown functional '" + name + "'");
}

EntropyFunctional make_functional(const RunConfig& config, const Alpha& alpha) {
  EntropyFunctional f = named_functional(config.functional, alpha, config);
  if (config.perturb_at.empty() != config.perturb_delta.empty()) {
    throw ParseError("--perturb-at and --perturb-delta go together");
  }
  if (!config.perturb_at.empty()) {
    f = perturb(std::move(f), StochasticVector::parse(config.perturb_at), Rational::parse(config.perturb_delta));
  }
  return f;
}

Alpha parse_alpha(const RunConfig& config) { return Alpha::parse(config.alpha, config.precision); }

SampleSpec sample_spec(const RunConfig& config) {
  SampleSpec spec;
  spec.max_denominator = config.max_denominator;
  spec.max_length = config.max_length;
  spec.random_samples = config.samples;
  spec.seed = config.seed;
  spec.continuity_constant = config.continuity_constant;
  return spec;
}

Outcome run_entropy(const RunConfig& config) {
  const Alpha alpha = parse_alpha(config);
  const auto f = make_functional(config, alpha);
  const auto v = StochasticVector::parse(config.vector);
  const EntropyValue value = f(v);
  if (format_or(config, "plain") == "plain") return {kExitPass, value.to_string() + "\n"};
  json out = header(config);
  out["functional"] = f.name();
  out["vector"] = v.to_string();
  out["value"] = value_to_json(value);
  return {kExitPass, dump(out)};
}

Outcome run_axioms(const RunConfig& config) {
  const Alpha alpha = parse_alpha(config);
  const auto f = make_functional(config, alpha);
  const auto reports = full_report(f, alpha, sample_spec(config));
  const int status = all_passed(reports) ? kExitPass : kExitViolation;
  if (format_or(config, "json") == "plain") {
    std::ostringstream out;
    for (const auto& r : reports) {
      out << r.axiom << ' ' << to_string(r.verdict) << " instances=" << r.instances
          << " max_residual=" << r.max_residual.to_string() << '\n';
    }
    return {status, out.str()};
  }
  json out = header(config);
  out["functional"] = f.name();
  json list = json::array();
  for (const auto& r : reports) list.push_back(to_json(r));
  out["reports"] = std::move(list);
  out["all_passed"] = status == kExitPass;
  return {status, dump(out)};
}

// Residual sweep over every p = a/d, d <= max_denominator.
template <typename Residual>
Outcome run_sweep(const RunConfig& config, const std::string& name, Residual residual) {
  std::set<Rational> ps;
  for (long d = 1; d <= config.max_denominator; ++d) {
    for (long a = 0; a <= d; ++a) ps.insert(Rational(a, d));
  }
  std::size_t violations = 0;
  std::optional<EntropyValue> worst;
  Rational worst_p;
  for (const auto& p : ps) {
    const EntropyValue r = residual(p);
    if (!r.is_zero_within(kFloatResidualTolerance)) ++violations;
    if (!worst || r.abs() > *worst) {
      worst = r.abs();
      worst_p = p;
    }
  }
  const int status = violations ? kExitViolation : kExitPass;
  if (format_or(config, "json") == "plain") {
    return {status, name + " instances=" + std::to_string(ps.size()) + " violations=" + std::to_string(violations) +
                        " max_residual=" + worst->to_string() + " at p=" + worst_p.to_string() + "\n"};
  }
  json out = header(config);
  out["sweep"] = name;
  out["instances"] = ps.size();
  out["violations"] = violations;
  out["max_residual"] = value_to_json(*worst);
  out["witness_p"] = worst_p.to_string();
  out["verdict"] = violations ? "fail" : "pass";
  return {status, dump(out)};
}

Outcome run_orbit(const RunConfig& config) {
  const auto trace = orbit(Rational::parse(config.p), config.max_steps);
  if (format_or(config, "csv") == "csv") {
    return {kExitPass, "# " + header(config).dump() + "\n" + orbit_to_csv(trace)};
  }
  json out = header(config);
  json points = json::array();
  for (const auto& x : trace.points) points.push_back(x.to_string());
  out["points"] = std::move(points);
  out["steps"] = trace.points.size() - 1;
  out["hit_index"] = trace.hit_index ? json(*trace.hit_index) : json(nullptr);
  out["open_hit_index"] = trace.open_hit_index ? json(*trace.open_hit_index) : json(nullptr);
  out["passes_two_thirds"] = trace.passes_two_thirds;
  out["open_interval_exception"] = trace.is_open_interval_exception();
  out["reached_one"] = trace.reached_one;
  return {kExitPass, dump(out)};
}

Outcome run_reconstruct(const RunConfig& config) {
  const Alpha alpha = parse_alpha(config);
  const Delta2Restriction base(make_functional(config, alpha));
  const auto v = StochasticVector::parse(config.vector);
  json strategies;
  std::optional<EntropyValue> first;
  bool consistent = true;
  for (const auto s : kAllMergeStrategies) {
    const EntropyValue value = reconstruct_from_pairs(base, alpha, v, s);
    if (!first) first = value;
    consistent = consistent && (value - *first).is_zero_within(kFloatResidualTolerance);
    strategies[to_string(s)] = value_to_json(value);
  }
  const EntropyValue c = base(StochasticVector::uniform(2));
  const EntropyValue reference = closed_form(v, alpha, c, config.precision);
  const int status = consistent ? kExitPass : kExitViolation;
  if (format_or(config, "json") == "plain") return {status, first->to_string() + "\n"};
  json out = header(config);
  out["base"] = base.functional().name();
  out["vector"] = v.to_string();
  out["strategies"] = std::move(strategies);
  out["consistent"] = consistent;
  out["closed_form"] = value_to_json(reference);
  out["matches_closed_form"] = (*first - reference).is_zero_within(kFloatResidualTolerance);
  return {status, dump(out)};
}

Outcome run_rational(const RunConfig& config) {
  const Alpha alpha = parse_alpha(config);
  const auto v = StochasticVector::parse(config.vector);
  const EntropyValue c = config.c.empty() ? default_normalization(alpha, config.precision)
                                          : EntropyValue(Rational::parse(config.c), config.precision);
  const EntropyValue route = rational_reconstruct(alpha, v, c, config.precision);
  const EntropyValue direct = closed_form(v, alpha, c, config.precision);
  const bool match = (route - direct).is_zero_within(kFloatResidualTolerance);
  const int status = match ? kExitPass : kExitViolation;
  if (format_or(config, "json") == "plain") {
    return {status, route.to_string() + " " + direct.to_string() + (match ? " match\n" : " MISMATCH\n")};
  }
  json out = header(config);
  out["vector"] = v.to_string();
  out["proof_route"] = value_to_json(route);
  out["closed_form"] = value_to_json(direct);
  out["match"] = match;
  return {status, dump(out)};
}

Outcome run_kernel(const RunConfig& config) {
  const Alpha alpha = parse_alpha(config);
  const GridIndex grid = enumerate_grid(config.b, config.L, config.grid_cap);
  const ConstraintSystem system = build_constraints(grid, alpha);
  const KernelReport report = analyze_solutions(solve_kernel(system), grid);
  const bool rows_ok = satisfies_all(system, closed_form_assignment(grid, system.alpha));
  const int status = rows_ok && report.closed_form_member.value_or(false) ? kExitPass : kExitViolation;
  if (format_or(config, "json") == "plain") {
    std::ostringstream out;
    out << "unknowns=" << report.unknowns << " constraints=" << report.constraints << " rank=" << report.rank
        << " kernel_dimension=" << report.dimension << " closed_form_member=" << (rows_ok ? "true" : "false") << '\n';
    return {status, out.str()};
  }
  json out = header(config);
  const json body = to_json(report, grid);
  for (const auto& [key, value] : body.items()) out[key] = value;
  out["closed_form_satisfies_rows"] = rows_ok;
  return {status, dump(out)};
}

Outcome execute(const RunConfig& config) {
  const auto& cmd = config.command;
  if (cmd == "entropy") return run_entropy(config);
  if (cmd == "axioms") return run_axioms(config);
  if (cmd == "lemma1") {
    const Alpha alpha = parse_alpha(config);
    const auto f = make_functional(config, alpha);
    return run_sweep(config, "lemma1", [&](const Rational& p) { return lemma1_residual(f, alpha, p); });
  }
  if (cmd == "alpha2sum") {
    const Alpha alpha = parse_alpha(config);
    const auto f = make_functional(config, alpha);
    return run_sweep(config, "alpha2sum", [&](const Rational& p) { return alpha2_sum_residual(f, p); });
  }
  if (cmd == "orbit") return run_orbit(config);
  if (cmd == "reconstruct") return run_reconstruct(config);
  if (cmd == "rational") return run_rational(config);
  if (cmd == "kernel") return run_kernel(config);
  throw ParseError("unknown command '" + cmd + "'");
}

void add_common(CLI::App* sub, RunConfig& c, std::optional<unsigned>& precision) {
  sub->add_option("--alpha", c.alpha, "entropy parameter (a/b, integer or decimal)");
  sub->add_option("--precision", precision, "MPFR precision in bits (env " + std::string(kPrecisionEnv) + ")");
  sub->add_option("--format", c.format, "json | csv | plain")->check(CLI::IsMember({"json", "csv", "plain"}));
  sub->add_option("--output,-o", c.output, "write the report here instead of stdout");
}

void add_functional(CLI::App* sub, RunConfig& c) {
  sub->add_option("--functional", c.functional, "tsallis | shannon | closed-form | zero | table:<path>");
  sub->add_option("--fallback", c.fallback, "functional used for vectors missing from a table");
  sub->add_option("--c", c.c, "normalization H(1/2,1/2) for closed forms");
  sub->add_option("--perturb-at", c.perturb_at, "vector whose value is shifted");
  sub->add_option("--perturb-delta", c.perturb_delta, "rational shift");
}

void add_sampling(CLI::App* sub, RunConfig& c) {
  sub->add_option("--max-denominator", c.max_denominator, "grid denominator b");
  sub->add_option("--max-length", c.max_length, "maximal vector length");
  sub->add_option("--samples", c.samples, "seeded random instances per check");
  sub->add_option("--seed", c.seed, "random seed");
  sub->add_option("--continuity-constant", c.continuity_constant, "C in the continuity threshold C/b^min(alpha,1)");
}

unsigned resolve_precision(const std::optional<unsigned>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kPrecisionEnv); env && *env) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw ParseError(std::string(kPrecisionEnv) + " is not a number: " + env);
    }
  }
  return kDefaultPrecisionBits;
}

}  // namespace

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["alpha"] = c.alpha;
  j["vector"] = c.vector;
  j["p"] = c.p;
  j["max_steps"] = c.max_steps;
  j["functional"] = c.functional;
  j["fallback"] = c.fallback;
  j["c"] = c.c;
  j["perturb_at"] = c.perturb_at;
  j["perturb_delta"] = c.perturb_delta;
  j["max_denominator"] = c.max_denominator;
  j["max_length"] = c.max_length;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["continuity_constant"] = c.continuity_constant;
  j["b"] = c.b;
  j["L"] = c.L;
  j["grid_cap"] = c.grid_cap;
  j["precision"] = c.precision;
  j["format"] = c.format;
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.alpha = j.value("alpha", c.alpha);
  c.vector = j.value("vector", c.vector);
  c.p = j.value("p", c.p);
  c.max_steps = j.value("max_steps", c.max_steps);
  c.functional = j.value("functional", c.functional);
  c.fallback = j.value("fallback", c.fallback);
  c.c = j.value("c", c.c);
  c.perturb_at = j.value("perturb_at", c.perturb_at);
  c.perturb_delta = j.value("perturb_delta", c.perturb_delta);
  c.max_denominator = j.value("max_denominator", c.max_denominator);
  c.max_length = j.value("max_length", c.max_length);
  c.samples = j.value("samples", c.samples);
  c.seed = j.value("seed", c.seed);
  c.continuity_constant = j.value("continuity_constant", c.continuity_constant);
  c.b = j.value("b", c.b);
  c.L = j.value("L", c.L);
  c.grid_cap = j.value("grid_cap", c.grid_cap);
  c.precision = j.value("precision", c.precision);
  c.format = j.value("format", c.format);
  return c;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  try {
    outcome = execute(config);
  } catch (const ResourceLimit& e) {
    err << kToolName << ": resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitUsage;
  }
  if (config.output.empty()) {
    out << outcome.text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << kToolName << ": cannot write " << config.output << '\n';
      return kExitUsage;
    }
    file << outcome.text;
  }
  return outcome.status;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic laboratory for Tsallis entropy and its additivity axioms", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + TSALLIS_VERSION);
  app.require_subcommand(1);

  RunConfig c;
  std::optional<unsigned> precision;
  std::string replay_path;

  auto* entropy = app.add_subcommand("entropy", "evaluate a functional at a vector");
  add_common(entropy, c, precision);
  add_functional(entropy, c);
  entropy->add_option("--vector", c.vector, "e.g. 1/2,1/4,1/4")->required();

  auto* axioms = app.add_subcommand("axioms", "run every axiom check on a functional");
  add_common(axioms, c, precision);
  add_functional(axioms, c);
  add_sampling(axioms, c);

  auto* lemma1 = app.add_subcommand("lemma1", "sweep the two-point identity residual over p = a/d");
  add_common(lemma1, c, precision);
  add_functional(lemma1, c);
  lemma1->add_option("--max-denominator", c.max_denominator, "largest denominator d of p");

  auto* alpha2sum = app.add_subcommand("alpha2sum", "sweep the alpha=2 sum identity residual");
  add_common(alpha2sum, c, precision);
  add_functional(alpha2sum, c);
  alpha2sum->add_option("--max-denominator", c.max_denominator, "largest denominator d of p");

  auto* orbit_cmd = app.add_subcommand("orbit", "iterate the interval map from p");
  add_common(orbit_cmd, c, precision);
  orbit_cmd->add_option("--p", c.p, "starting point in [1/2, 1]")->required();
  orbit_cmd->add_option("--max-steps", c.max_steps, "iteration budget (0: denominator of p)");

  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild H(v) from Delta_2 values, all merge orders");
  add_common(reconstruct, c, precision);
  add_functional(reconstruct, c);
  reconstruct->add_option("--vector", c.vector, "target vector")->required();

  auto* rational = app.add_subcommand("rational", "uniform-refinement value vs closed form on a rational vector");
  add_common(rational, c, precision);
  rational->add_option("--vector", c.vector, "target vector")->required();
  rational->add_option("--c", c.c, "H(1/2,1/2)");

  auto* kernel = app.add_subcommand("kernel", "solve the pairwise-additivity system on a rational grid");
  add_common(kernel, c, precision);
  kernel->add_option("--b", c.b, "grid denominator");
  kernel->add_option("--L", c.L, "maximal vector length");
  kernel->add_option("--grid-cap", c.grid_cap, "refuse grids with more vectors (exit 3)");

  auto* replay = app.add_subcommand("replay", "re-run the config embedded in a JSON report");
  replay->add_option("report", replay_path, "report file")->required()->check(CLI::ExistingFile);
  replay->add_option("--output,-o", c.output, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (replay->parsed()) {
    std::ifstream in(replay_path);
    try {
      json report = json::parse(in);
      RunConfig replayed = config_from_json(report.at("config"));
      replayed.output = c.output;
      return dispatch(replayed, out, err);
    } catch (const nlohmann::json::exception& e) {
      err << kToolName << ": " << replay_path << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    c.precision = resolve_precision(precision);
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << '\n';
    return kExitUsage;
  }
  if (c.precision < 16) {
    err << kToolName << ": precision must be at least 16 bits\n";
    return kExitUsage;
  }
  return dispatch(c, out, err);
}

}  // namespace tsallis::cli
