// sstl: command-line front end for monitoring, simulation and statistical
// model checking.
//
// Exit codes: 0 success, 1 I/O, parse or usage error, 2 evaluation error,
// 3 integration blow-up, 4 failed internal check (--oracle).

#include "sstl/errors.hpp"
#include "sstl/monitor_bool.hpp"
#include "sstl/monitor_quant.hpp"
#include "sstl/parser.hpp"
#include "sstl/smc.hpp"
#include "sstl/space.hpp"
#include "sstl/trace.hpp"
#include "sstl/turing.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace {

using namespace sstl;

constexpr const char* grammar_help = R"(Formula language:
  script   := ( name ':=' formula )*        one definition per line, '#' comments
  formula  := or ( '->' formula )?
  or       := and ( '|' and )*
  and      := binary ( '&' binary )*
  binary   := unary ( ( 'U' tbounds | 'S' dbounds ) unary )*
  unary    := '!' unary | 'F' tbounds unary | 'G' tbounds unary
            | 'somewhere' dbounds unary | 'everywhere' dbounds unary | primary
  primary  := '(' formula ')' | 'true' | 'false' | atom | name
  atom     := expr ( '>=' | '>' | '<=' | '<' | '==' ) expr
  expr     := term ( ('+'|'-') term )*
  term     := factor ( ('*'|'/') factor )*
  factor   := number | variable | '-' factor | '(' expr ')'
  tbounds  := '[' number ',' number ']'               time, 0 <= lo <= hi
  dbounds  := '[' number ',' ( number | 'inf' ) ']'   distance, 0 <= lo <= hi
U is until, S is surround. Binary U and S bind tighter than '&' and '|'.
'==' atoms are Boolean only.
Example:
  phi_spot := (xA <= 0.5) S[1,6] (xA > 0.5)
  phi_spotFormation := F[19,20] G[0,30] phi_spot

Exit codes: 0 ok, 1 I/O/parse/usage error, 2 evaluation error,
3 integration blow-up, 4 oracle mismatch.)";

/// Writes to a file, or to stdout for "" and "-".
class Output {
public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw FormatError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

struct MonitorArgs {
  std::string graph;
  std::string trace;
  std::string formulas;
  std::string name;
  std::string formula;
  std::string mode = "both";
  std::string location = "all";
  std::string at_time = "0";
  std::string out;
  std::string dump;
  std::string strategy = "restricted";
  unsigned jobs = 0;
  bool oracle = false;
};

Formula load_formula(const std::string& scripts, const std::string& name, const std::string& text) {
  FormulaScript script;
  if (!scripts.empty()) script = read_script(scripts);
  if (!text.empty()) return parse_formula(text, &script);
  if (name.empty()) throw std::invalid_argument("give --formula or --name");
  if (!script.contains(name)) {
    throw std::invalid_argument("no formula named '" + name + "' in " + scripts);
  }
  return script.get(name);
}

std::vector<LocationIndex> select_locations(const SpaceModel& space, const std::string& location) {
  std::vector<LocationIndex> out;
  if (location == "all") {
    for (LocationIndex l = 0; l < space.size(); ++l) out.push_back(l);
  } else {
    const auto l = space.find(location);
    if (!l) throw std::invalid_argument("unknown location '" + location + "'");
    out.push_back(*l);
  }
  return out;
}

int cmd_monitor(const MonitorArgs& a) {
  const auto space = read_graph(std::filesystem::path(a.graph));
  const auto trace = read_trace(std::filesystem::path(a.trace), space);
  const auto formula = load_formula(a.formulas, a.name, a.formula);
  const auto locations = select_locations(space, a.location);
  const Time t = parse_time(a.at_time);
  if (t < Time(0) || (t / trace.step()).denominator() != 1) {
    throw std::invalid_argument("--at-time must be a multiple of the trace step " +
                                to_string(trace.step()));
  }
  const auto k = static_cast<std::size_t>((t / trace.step()).numerator());

  MonitorOptions options;
  options.jobs = a.jobs;
  options.oracle = a.oracle;
  options.surround = a.strategy == "full" ? SurroundStrategy::Full : SurroundStrategy::Restricted;
  const bool boolean = a.mode != "quant";
  const bool quant = a.mode != "boolean";

  std::optional<BoolResult> b;
  std::optional<QuantResult> q;
  if (boolean) b = monitor_bool(formula, trace, space, options);
  if (quant) {
    q = monitor_quant(formula, trace, space, options);
    for (const auto& w : q->warnings) std::cerr << "warning: " << w << '\n';
    if (k >= q->signals.front().size()) {
      throw HorizonError("robustness is defined up to t = " +
                         to_string(trace.step() * Time(static_cast<std::int64_t>(
                                                      q->signals.front().size() - 1))) +
                         ", asked for " + to_string(t));
    }
  }
  if (boolean && t >= b->signals.front().horizon()) {
    throw HorizonError("--at-time " + to_string(t) + " is past the trace");
  }

  Output out(a.out);
  auto& os = out.stream();
  os << "location";
  if (boolean) os << ",bool";
  if (quant) os << ",rob";
  os << '\n';
  for (const auto l : locations) {
    os << space.id(l);
    if (boolean) os << ',' << (b->signals[l].value_at(t) ? 1 : 0);
    if (quant) os << ',' << to_string(q->signals[l][k]);
    os << '\n';
  }
  if (!a.dump.empty()) {
    Output dump(a.dump);
    if (quant) {
      write_robustness_dump(*q, space, dump.stream());
    } else {
      dump.stream() << "location,begin,end\n";
      for (LocationIndex l = 0; l < space.size(); ++l) {
        for (const auto& iv : b->signals[l].positive()) {
          dump.stream() << space.id(l) << ',' << to_string(iv.begin) << ',' << to_string(iv.end)
                        << '\n';
        }
      }
    }
  }
  return 0;
}

/// Model flags as raw strings, applied over an optional config file.
struct ModelArgs {
  std::string config;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "key = value parameter file (flags override it)")
        ->check(CLI::ExistingFile);
    const std::vector<std::pair<std::string, std::string>> keys = {
        {"K", "grid size (default 32)"},
        {"R1", "reaction rate (default 1)"},
        {"R2", "reaction rate (default -12)"},
        {"R3", "reaction rate (default -1)"},
        {"R4", "reaction rate (default 16)"},
        {"D1", "diffusion of A (default 5.6)"},
        {"D2", "diffusion of B (default 25.5)"},
        {"dt", "integration step (default 0.01)"},
        {"T", "end time (default 50)"},
        {"h", "sampling step (default 0.5)"},
        {"init_low", "lower bound of the initial draw (default 0)"},
        {"init_high", "upper bound of the initial draw (default 16)"},
        {"epsilon", "noise intensity (default 0)"},
        {"clamp", "floor concentrations at 0: true|false (default true)"},
    };
    for (const auto& [key, help] : keys) {
      std::string flag = key == "h" ? "--step" : "--" + key;
      for (auto& c : flag) c = c == '_' ? '-' : c;
      options[key] = app->add_option(flag, values[key], help);
    }
  }

  TuringParams params(std::uint64_t seed) const {
    TuringParams p = config.empty() ? TuringParams{} : read_turing_config(config);
    for (const auto& [key, option] : options) {
      if (option->count() > 0) set_turing_param(p, key, values.at(key));
    }
    p.seed = seed;
    validate(p);
    return p;
  }
};

int cmd_simulate(const ModelArgs& m, std::uint64_t seed, const std::string& out_path,
                 const std::string& graph_out) {
  const auto params = m.params(seed);
  const auto trace = simulate_turing(params);
  const auto space = turing_space(params);
  Output out(out_path);
  write_trace(trace, space, out.stream());
  if (!graph_out.empty()) {
    Output g(graph_out);
    write_graph(space, g.stream());
  }
  return 0;
}

struct SmcArgs {
  std::string formulas;
  std::string name;
  std::string formula;
  std::string location;
  std::size_t runs = 100;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::string eps = "0:0.9:0.1";
  std::string out;
  std::string json;
  std::string runs_out;
};

EstimateConfig smc_config(const SmcArgs& a, const SpaceModel& space) {
  EstimateConfig c;
  c.formula = load_formula(a.formulas, a.name, a.formula);
  c.location = a.location.empty() ? 0 : space.index_of(a.location);
  c.runs = a.runs;
  c.alpha = a.alpha;
  c.seed = a.seed;
  c.jobs = a.jobs;
  return c;
}

TraceGenerator turing_generator(TuringParams base) {
  return [base](std::uint64_t seed) {
    TuringParams p = base;
    p.seed = seed;
    return simulate_turing(p);
  };
}

int cmd_smc_estimate(const SmcArgs& a, const ModelArgs& m) {
  const auto base = m.params(0);
  const auto space = turing_space(base);
  const auto config = smc_config(a, space);
  std::vector<RunRecord> records;
  const auto e = estimate(turing_generator(base), space, config, &records);
  Output out(a.out);
  out.stream() << estimate_json(e) << '\n';
  if (!a.runs_out.empty()) {
    Output r(a.runs_out);
    write_runs_csv(records, r.stream());
  }
  return 0;
}

int cmd_smc_sweep(const SmcArgs& a, const ModelArgs& m) {
  const auto base = m.params(0);
  const auto space = turing_space(base);
  const auto config = smc_config(a, space);
  const auto grid = parse_grid(a.eps);
  std::vector<std::vector<RunRecord>> records;
  const auto result = sweep(
      [&](double eps) {
        TuringParams p = base;
        p.epsilon = eps;
        validate(p);
        return turing_generator(p);
      },
      grid, space, config, &records);
  Output out(a.out);
  write_sweep_csv(result, out.stream());
  if (!result.pearson_r) std::cerr << "warning: correlation undefined (constant or non-finite series)\n";
  if (!a.json.empty()) {
    nlohmann::ordered_json j;
    j["pearson_r"] = result.pearson_r ? nlohmann::json(*result.pearson_r) : nlohmann::json(nullptr);
    j["points"] = nlohmann::json::array();
    for (const auto& p : result.points) {
      auto e = nlohmann::ordered_json::parse(estimate_json(p.estimate));
      e["epsilon"] = p.parameter;
      j["points"].push_back(e);
    }
    Output js(a.json);
    js.stream() << j.dump(2) << '\n';
  }
  if (!a.runs_out.empty()) {
    Output r(a.runs_out);
    r.stream() << "epsilon,run,seed,verdict,robustness\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
      std::ostringstream block;
      write_runs_csv(records[i], block);
      std::string line;
      std::istringstream lines(block.str());
      std::getline(lines, line);
      while (std::getline(lines, line)) {
        r.stream() << to_string(ExtReal(grid[i])) << ',' << line << '\n';
      }
    }
  }
  return 0;
}

int cmd_graph_grid(std::size_t k, double delta, const std::string& out_path) {
  Output out(out_path);
  write_graph(regular_grid(k, delta), out.stream());
  return 0;
}

void add_formula_options(CLI::App* app, std::string& formulas, std::string& name,
                         std::string& formula) {
  app->add_option("--formulas,-f", formulas, "formula script (name := formula per line)")
      ->check(CLI::ExistingFile);
  app->add_option("--name,-n", name, "formula of the script to evaluate");
  app->add_option("--formula", formula, "formula text (may refer to script names)");
}

int run(int argc, char** argv) {
  CLI::App app{"Offline monitoring of spatio-temporal logic over graphs"};
  app.footer(grammar_help);
  app.require_subcommand(1);

  MonitorArgs mon;
  auto* monitor = app.add_subcommand("monitor", "evaluate a formula on a trace");
  monitor->add_option("--graph,-g", mon.graph, "graph TSV")->required()->check(CLI::ExistingFile);
  monitor->add_option("--trace,-t", mon.trace, "trace CSV")->required()->check(CLI::ExistingFile);
  add_formula_options(monitor, mon.formulas, mon.name, mon.formula);
  monitor->add_option("--mode,-m", mon.mode, "boolean | quant | both")
      ->check(CLI::IsMember({"boolean", "quant", "both"}));
  monitor->add_option("--location,-l", mon.location, "location id or 'all'");
  monitor->add_option("--at-time", mon.at_time, "grid time to report (default 0)");
  monitor->add_option("--out,-o", mon.out, "result CSV (default stdout)");
  monitor->add_option("--dump", mon.dump, "full signals CSV");
  monitor->add_option("--surround-strategy", mon.strategy, "full | restricted")
      ->check(CLI::IsMember({"full", "restricted"}));
  monitor->add_option("--jobs,-j", mon.jobs, "worker threads (0 = all cores)");
  monitor->add_flag("--oracle", mon.oracle, "cross-check surround by subset enumeration");

  auto* simulate = app.add_subcommand("simulate", "generate traces");
  simulate->require_subcommand(1);
  auto* turing = simulate->add_subcommand("turing", "reaction-diffusion grid model");
  ModelArgs sim_model;
  sim_model.add_to(turing);
  std::uint64_t sim_seed = 0;
  std::string sim_out, sim_graph;
  turing->add_option("--seed,-s", sim_seed, "RNG seed");
  turing->add_option("--out,-o", sim_out, "trace CSV (default stdout)");
  turing->add_option("--graph-out", sim_graph, "also write the grid as graph TSV");

  auto* smc = app.add_subcommand("smc", "statistical model checking");
  smc->require_subcommand(1);
  SmcArgs est_args, sweep_args;
  ModelArgs est_model, sweep_model;
  auto* est = smc->add_subcommand("estimate", "satisfaction probability of one configuration");
  auto* swp = smc->add_subcommand("sweep", "estimates over a noise grid");
  for (auto [cmd, a, m] : {std::tuple{est, &est_args, &est_model}, std::tuple{swp, &sweep_args, &sweep_model}}) {
    add_formula_options(cmd, a->formulas, a->name, a->formula);
    cmd->add_option("--location,-l", a->location, "probe location id (default first)");
    cmd->add_option("--runs,-r", a->runs, "runs per estimate")->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", a->alpha, "significance level of the interval")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed,-s", a->seed, "master seed");
    cmd->add_option("--jobs,-j", a->jobs, "worker threads (0 = all cores)");
    cmd->add_option("--runs-out", a->runs_out, "per-run CSV");
    m->add_to(cmd);
  }
  est->add_option("--out,-o", est_args.out, "estimate JSON (default stdout)");
  swp->add_option("--eps", sweep_args.eps, "noise grid lo:hi:step or comma list");
  swp->add_option("--out,-o", sweep_args.out, "sweep CSV (default stdout)");
  swp->add_option("--json", sweep_args.json, "sweep JSON with all estimates");

  auto* graph = app.add_subcommand("graph", "generate graphs");
  graph->require_subcommand(1);
  auto* grid = graph->add_subcommand("grid", "K x K four-neighbour grid");
  std::size_t grid_k = 2;
  double grid_delta = 1.0;
  std::string grid_out;
  grid->add_option("--K", grid_k, "grid size")->required();
  grid->add_option("--delta", grid_delta, "edge weight");
  grid->add_option("--out,-o", grid_out, "graph TSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*monitor) return cmd_monitor(mon);
  if (*turing) return cmd_simulate(sim_model, sim_seed, sim_out, sim_graph);
  if (*est) return cmd_smc_estimate(est_args, est_model);
  if (*swp) return cmd_smc_sweep(sweep_args, sweep_model);
  if (*grid) return cmd_graph_grid(grid_k, grid_delta, grid_out);
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const sstl::IntegrationError& e) {
    std::cerr << "error: integration failed: " << e.what() << '\n';
    return 3;
  } catch (const sstl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const sstl::FormatError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ')';
    std::cerr << '\n';
    return 1;
  } catch (const sstl::EvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sstl::SignalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sstl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal check failed: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
