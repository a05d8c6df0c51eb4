// Command-line front end: exact-identity verification, single-quantity
// computations from JSON inputs, and the equivalence-band experiment suite
// with CSV/JSON reports.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dysob/capacity.hpp"
#include "dysob/carleson.hpp"
#include "dysob/io.hpp"
#include "dysob/norms.hpp"
#include "dysob/operators.hpp"
#include "dysob/parallel.hpp"
#include "dysob/spectral.hpp"
#include "dysob/suites.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitNoConvergence = 3;

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << content;
}

std::string summary_path_for(const std::string& csv_path) {
  const auto dot = csv_path.find_last_of('.');
  return (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".json";
}

/// Optional JSON config file; keys named after long flags fill in any value
/// the command line leaves at its default.
struct ConfigMerge {
  const CLI::App* cmd;
  dysob::json cfg;

  template <typename T>
  void maybe(const std::string& flag, const char* key, T& var) const {
    const CLI::Option* opt = cmd->get_option_no_throw(flag);
    if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
  }
};

std::vector<double> parse_s_or_throw(const std::vector<double>& raw) {
  if (raw.empty()) throw std::invalid_argument("at least one value of s is required");
  for (double s : raw) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("s must lie in (0,1)");
  }
  return raw;
}

void check_depth(int depth) {
  if (depth < 0 || depth > 14) throw std::invalid_argument("depth must lie in [0,14]");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace dysob;

  CLI::App app{"dyadic-sobolev: fractional Sobolev analysis of step functions on [0,1]"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON file with defaults, merged under explicit flags")
      ->expected(1);

  // Shared option storage; each subcommand binds the ones it uses.
  std::vector<double> s_values{0.5};
  int depth = 8;
  int solve_depth = 12;
  std::uint64_t seed = 42;
  long trials = 200;
  long max_iters = 0;
  double tol = 1e-9;
  double alpha = 0.0;
  int jobs = 0;
  int cutoff = 0;
  bool allow_depth_4 = false;
  std::string mode = "exact";
  std::string input_path;
  std::string output_path;
  std::string format = "csv";
  std::string set_json;
  std::string op_name = "shift";

  auto add_common = [&](CLI::App* cmd) {
    cmd->fallthrough();  // top-level --config may follow the subcommand
    cmd->add_option("--output", output_path, "output file (default: stdout)");
    cmd->add_option("--jobs", jobs, "worker threads (DYADIC_SOBOLEV_JOBS overrides; 0 = auto)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run every exact-identity suite");
  verify->add_option("--depth", depth, "function depth")->capture_default_str();
  verify->add_option("--seed", seed, "base seed")->capture_default_str();
  verify->add_option("--trials", trials, "samples per identity")->capture_default_str();
  add_common(verify);

  CLI::App* norm = app.add_subcommand("norm", "norm report of a step function (JSON on stdin)");
  norm->add_option("--s", s_values, "regularity values in (0,1)")->capture_default_str();
  norm->add_option("--input", input_path, "step function JSON file (default: stdin)");
  add_common(norm);

  CLI::App* cap = app.add_subcommand("capacity", "restricted capacity of a dyadic set");
  cap->add_option("--set", set_json, "dyadic set JSON {\"depth\":..,\"leaves\":[..]}");
  cap->add_option("--input", input_path, "dyadic set JSON file (default: stdin)");
  cap->add_option("--s", s_values, "regularity values")->capture_default_str();
  cap->add_option("--solve-depth", solve_depth, "minimization depth")->capture_default_str();
  cap->add_option("--tol", tol, "KKT residual tolerance")->capture_default_str();
  cap->add_option("--max-iters", max_iters, "iteration cap (0 = automatic)")->capture_default_str();
  add_common(cap);

  CLI::App* bmos = app.add_subcommand("bmos", "fractional BMO functional of a symbol");
  bmos->add_option("--input", input_path, "symbol JSON file (default: stdin)");
  bmos->add_option("--s", s_values, "regularity values")->capture_default_str();
  bmos->add_option("--mode", mode, "exact|heuristic")->capture_default_str();
  bmos->add_option("--solve-depth", solve_depth, "capacity solve depth")->capture_default_str();
  bmos->add_flag("--allow-depth-4", allow_depth_4, "permit exact enumeration at depth 4");
  add_common(bmos);

  CLI::App* embed = app.add_subcommand("embed", "best embedding constant of a weight sequence");
  embed->add_option("--input", input_path, "carleson sequence JSON file (default: stdin)");
  embed->add_option("--s", s_values, "regularity values")->capture_default_str();
  embed->add_option("--depth", depth, "function depth")->capture_default_str();
  add_common(embed);

  CLI::App* opnorm = app.add_subcommand("opnorm", "operator norm on the Sobolev space");
  opnorm->add_option("--op", op_name, "identity|shift|paraproduct|adjoint-paraproduct|commutator")
      ->capture_default_str();
  opnorm->add_option("--input", input_path, "symbol JSON file for the symbol-dependent operators");
  opnorm->add_option("--s", s_values, "regularity values")->capture_default_str();
  opnorm->add_option("--depth", depth, "input depth")->capture_default_str();
  add_common(opnorm);

  CLI::App* suite = app.add_subcommand(
      "suite",
      "equivalence-band experiments; writes CSV rows with columns "
      "suite,s,depth,seed,statistic,value plus a JSON summary beside the CSV");
  suite->add_option("--s", s_values, "regularity values")->capture_default_str();
  suite->add_option("--depth", depth, "deep-symbol depth")->capture_default_str();
  suite->add_option("--trials", trials, "samples per experiment")->capture_default_str();
  suite->add_option("--seed", seed, "base seed")->capture_default_str();
  suite->add_option("--alpha", alpha, "coefficient damping of random symbols")->capture_default_str();
  suite->add_option("--format", format, "csv|json (stdout format when no --output)")
      ->capture_default_str();
  add_common(suite);

  CLI::App* cmo = app.add_subcommand("cmo", "tail functional of a symbol at a cutoff");
  cmo->add_option("--input", input_path, "symbol JSON file (default: stdin)");
  cmo->add_option("--s", s_values, "regularity values")->capture_default_str();
  cmo->add_option("--cutoff", cutoff, "tail cutoff level")->capture_default_str();
  cmo->add_option("--mode", mode, "exact|heuristic")->capture_default_str();
  cmo->add_option("--solve-depth", solve_depth, "capacity solve depth")->capture_default_str();
  cmo->add_flag("--allow-depth-4", allow_depth_4, "permit exact enumeration at depth 4");
  add_common(cmo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParseError;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    if (!config_path.empty()) {
      ConfigMerge merge{active, json::parse(read_input(config_path))};
      merge.maybe("--s", "s", s_values);
      merge.maybe("--depth", "depth", depth);
      merge.maybe("--solve-depth", "solve_depth", solve_depth);
      merge.maybe("--seed", "seed", seed);
      merge.maybe("--trials", "trials", trials);
      merge.maybe("--max-iters", "max_iters", max_iters);
      merge.maybe("--tol", "tol", tol);
      merge.maybe("--alpha", "alpha", alpha);
      merge.maybe("--jobs", "jobs", jobs);
      merge.maybe("--cutoff", "cutoff", cutoff);
      merge.maybe("--mode", "mode", mode);
      merge.maybe("--format", "format", format);
      merge.maybe("--output", "output", output_path);
    }
    const std::vector<double> s_list = parse_s_or_throw(s_values);
    check_depth(depth);
    const int workers = resolve_jobs(jobs);
    if (mode != "exact" && mode != "heuristic") {
      throw std::invalid_argument("mode must be 'exact' or 'heuristic'");
    }
    const CarlesonMode cmode = mode == "exact" ? CarlesonMode::exact : CarlesonMode::heuristic;

    auto emit_per_s = [&](const std::function<json(FracParameter)>& compute) {
      json out;
      if (s_list.size() == 1) {
        out = compute(FracParameter(s_list[0]));
      } else {
        out = json::array();
        for (double s : s_list) out.push_back(compute(FracParameter(s)));
      }
      write_output(output_path, out.dump(2) + "\n");
    };

    if (active == verify) {
      const auto reports = run_identity_suites(depth, seed, trials, workers);
      bool all_pass = true;
      std::ostringstream os;
      os << "identity suites: depth " << depth << ", seed " << seed << ", " << trials
         << " samples each\n";
      for (const auto& r : reports) {
        all_pass &= r.pass;
        char line[160];
        std::snprintf(line, sizeof line, "  %-22s max residual %.3e  (tolerance %.0e)  %s\n",
                      r.name.c_str(), r.max_residual, r.tolerance, r.pass ? "ok" : "FAIL");
        os << line;
      }
      write_output(output_path, os.str());
      return all_pass ? kExitSuccess : kExitIdentityFailure;
    }

    if (active == norm) {
      const StepFunction f = step_function_from_json(json::parse(read_input(input_path)));
      emit_per_s([&](FracParameter s) { return to_json(norm_report(f, s)); });
      return kExitSuccess;
    }

    if (active == cap) {
      const std::string payload = !set_json.empty() ? set_json : read_input(input_path);
      const DyadicSet E = dyadic_set_from_json(json::parse(payload));
      if (solve_depth < E.depth()) throw std::invalid_argument("--solve-depth must be >= set depth");
      check_depth(solve_depth);
      bool ok = true;
      emit_per_s([&](FracParameter s) {
        const CapacityEstimate est = capacity(E, s, solve_depth, tol, max_iters);
        ok &= est.converged;
        return to_json(est);
      });
      return ok ? kExitSuccess : kExitNoConvergence;
    }

    if (active == bmos) {
      const StepFunction b = step_function_from_json(json::parse(read_input(input_path)));
      emit_per_s([&](FracParameter s) {
        const CollectionValue v = bmo_s_norm(b, s, cmode, solve_depth, allow_depth_4);
        json j = to_json(v);
        j["bmo_s"] = std::sqrt(v.ratio);
        return j;
      });
      return kExitSuccess;
    }

    if (active == cmo) {
      const StepFunction b = step_function_from_json(json::parse(read_input(input_path)));
      emit_per_s([&](FracParameter s) {
        return json{{"cutoff", cutoff},
                    {"theta", cmo_tail(b, s, cutoff, cmode, solve_depth, allow_depth_4)}};
      });
      return kExitSuccess;
    }

    if (active == embed) {
      const CarlesonSequence mu = carleson_sequence_from_json(json::parse(read_input(input_path)));
      if (depth < mu.depth()) throw std::invalid_argument("--depth must cover the sequence depth");
      bool ok = true;
      emit_per_s([&](FracParameter s) {
        const SpectralEstimate est = embedding_constant(mu, s, depth);
        ok &= est.converged;
        return to_json(est);
      });
      return ok ? kExitSuccess : kExitNoConvergence;
    }

    if (active == opnorm) {
      std::optional<StepFunction> b;
      if (op_name == "paraproduct" || op_name == "adjoint-paraproduct" || op_name == "commutator") {
        b = step_function_from_json(json::parse(read_input(input_path)));
      }
      std::function<StepFunction(const StepFunction&)> op;
      if (op_name == "identity") {
        op = [](const StepFunction& f) { return f; };
      } else if (op_name == "shift") {
        op = [](const StepFunction& f) { return haar_shift(f); };
      } else if (op_name == "paraproduct") {
        op = [&b](const StepFunction& f) { return paraproduct(*b, f); };
      } else if (op_name == "adjoint-paraproduct") {
        op = [&b](const StepFunction& f) { return adjoint_paraproduct(*b, f); };
      } else if (op_name == "commutator") {
        op = [&b](const StepFunction& f) { return commutator_shift(*b, f); };
      } else {
        throw std::invalid_argument("unknown operator: " + op_name);
      }
      bool ok = true;
      emit_per_s([&](FracParameter s) {
        const SpectralEstimate est = operator_norm_hs(op, s, depth);
        ok &= est.converged;
        return to_json(est);
      });
      return ok ? kExitSuccess : kExitNoConvergence;
    }

    if (active == suite) {
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.s_values = s_list;
      cfg.depth = depth;
      cfg.trials = trials;
      cfg.jobs = workers;
      cfg.alpha = alpha;
      const std::vector<SuiteRow> rows = theorem_suites(cfg);
      std::ostringstream csv;
      write_suite_csv(csv, rows);
      const json summary = json{{"config", json{{"seed", seed},
                                                {"s", s_list},
                                                {"depth", depth},
                                                {"trials", trials},
                                                {"alpha", alpha}}},
                                {"rows", suite_rows_json(rows)}};
      if (!output_path.empty() && output_path != "-") {
        write_output(output_path, csv.str());
        write_output(summary_path_for(output_path), summary.dump(2) + "\n");
      } else if (format == "json") {
        std::cout << summary.dump(2) << "\n";
      } else {
        std::cout << csv.str();
      }
      return kExitSuccess;
    }

    throw std::invalid_argument("no command selected");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  }
}
