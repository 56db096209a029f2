// Command-line front end: exact evaluation, theta sweeps, cubic-graph
// optimization, Monte Carlo replay and shot-table handling.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rendezvous/classical.hpp"
#include "rendezvous/error.hpp"
#include "rendezvous/game_rules.hpp"
#include "rendezvous/graph.hpp"
#include "rendezvous/montecarlo.hpp"
#include "rendezvous/optimizer.hpp"
#include "rendezvous/sampling.hpp"
#include "rendezvous/serialization.hpp"
#include "rendezvous/strategies.hpp"

namespace fs = std::filesystem;
using namespace rendezvous;

namespace {

constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kUsage = 1, kValidation = 2, kMismatch = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kBuiltinStrategies = {
    "go-to-lowest", "go-to-highest",  "uniform-random",    "k3-optimal",
    "cycle-ansatz:<theta>", "cycle-ramp:<theta>", "table3-k4", "shared-randomness"};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

/// Radians by default, degrees with a "deg" suffix.
double parse_angle(const std::string& text) {
  std::string t = text;
  bool deg = false;
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "deg") == 0) {
    deg = true;
    t.resize(t.size() - 3);
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::logic_error&) {
    throw UsageError("bad angle '" + text + "'");
  }
  if (used != t.size()) throw UsageError("bad angle '" + text + "'");
  return deg ? v * std::numbers::pi / 180.0 : v;
}

/// Accepts plain integers, "2^k" and "1e6".
long long parse_count(const std::string& text) {
  try {
    if (auto caret = text.find('^'); caret != std::string::npos) {
      const long long base = std::stoll(text.substr(0, caret));
      const int exp = std::stoi(text.substr(caret + 1));
      return static_cast<long long>(std::llround(std::pow(double(base), exp)));
    }
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<long long>(std::llround(v));
  } catch (const std::logic_error&) {
    throw UsageError("bad count '" + text + "'");
  }
}

struct Common {
  std::string graph = "C3";
  std::string graph_file;
  int e = 0;
  int s = 1;
  std::string variant = "later";
  std::string out;
  std::optional<double> check;
  double check_tol = 1e-6;
  int threads = 1;
};

void add_common(CLI::App* app, Common& c, bool with_graph = true) {
  if (with_graph) {
    app->add_option("--graph", c.graph, "C<n>, K3, Y3, K4, 2K4, cubic6 or Q3")
        ->capture_default_str();
    app->add_option("--graph-file", c.graph_file,
                    "adjacency list file, one 'label: n1 n2 ...' line per vertex");
  }
  app->add_option("--e", c.e, "1 lets players meet by swapping along an edge")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  app->add_option("--s", c.s, "1 allows both players to start on one vertex")
      ->check(CLI::IsMember({0, 1}))
      ->capture_default_str();
  app->add_option("--variant", c.variant, "shared-start rule: first or later")
      ->check(CLI::IsMember({"first", "later"}))
      ->capture_default_str();
  app->add_option("--out", c.out, "write the JSON/CSV result here (plus a manifest)");
  app->add_option("--check", c.check, "expected value; exit 3 on mismatch");
  app->add_option("--check-tol", c.check_tol, "tolerance for --check")->capture_default_str();
  app->add_option("--threads", c.threads, "worker cap")->capture_default_str();
}

GameConfig config_of(const Common& c) {
  GameConfig cfg;
  cfg.meet_on_edges = c.e == 1;
  cfg.same_start_allowed = c.s == 1;
  cfg.variant = c.variant == "first" ? SameStartVariant::CheckFirst
                                     : SameStartVariant::CheckLater;
  return cfg;
}

Graph load_graph(const Common& c) {
  if (!c.graph_file.empty()) {
    std::ifstream in(c.graph_file);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + c.graph_file);
    return parse_adjacency(in, fs::path(c.graph_file).stem().string());
  }
  try {
    return graph_by_name(c.graph);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Lookup) throw UsageError(e.what());
    throw;
  }
}

Strategy load_strategy(const std::string& spec, const Graph& g) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::Arity, spec + " needs " + what);
  };
  if (spec == "go-to-lowest") return go_to_lowest(g);
  if (spec == "go-to-highest") return go_to_highest(g);
  if (spec == "uniform-random") return uniform_random(g);
  if (spec == "k3-optimal") {
    need(g.size() == 3 && g.degree() == 2, "the 3-cycle");
    return k3_optimal_strategy();
  }
  if (spec.rfind("cycle-ansatz:", 0) == 0 || spec.rfind("cycle-ramp:", 0) == 0) {
    need(g.degree() == 2, "a cycle graph");
    const bool offsets = spec.rfind("cycle-ansatz:", 0) == 0;
    const double theta = parse_angle(spec.substr(spec.find(':') + 1));
    return cycle_ansatz(g.size(), theta, offsets);
  }
  if (spec == "table3-k4") {
    need(g.size() == 4 && g.degree() == 3, "K4");
    return table3_k4_strategy();
  }
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Parse, spec + ": " + e.what());
    }
    if (j.contains("strategy") && j.at("strategy").is_object()) j = j.at("strategy");
    return strategy_from_json(j, g.degree());
  }
  throw UsageError("unknown strategy '" + spec + "'; builtins: " +
                   join(kBuiltinStrategies, ", ") + ", or a JSON file");
}

struct Output {
  std::vector<std::string> paths;

  void write(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Validation, "cannot write " + path);
    f << text;
    paths.push_back(path);
  }
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_manifest(const std::string& command, const Json& resolved,
                    std::uint64_t seed, const Output& out,
                    std::chrono::steady_clock::time_point started) {
  if (out.paths.empty()) return;
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  Json m{{"command", command},
         {"config", resolved},
         {"seed", seed},
         {"tool_version", kVersion},
         {"outputs", out.paths},
         {"wall_clock_seconds", secs}};
  std::ofstream f(out.paths.front() + ".manifest.json", std::ios::binary);
  f << dump(m);
}

int check_value(const Common& c, double value, bool at_least = false) {
  if (!c.check) return kOk;
  const bool ok = at_least ? value >= *c.check - c.check_tol
                           : std::abs(value - *c.check) <= c.check_tol;
  if (!ok) {
    std::fprintf(stderr, "check failed: got %.10g, expected %s%.10g (tol %.3g)\n", value,
                 at_least ? ">= " : "", *c.check, c.check_tol);
    return kMismatch;
  }
  return kOk;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  const auto started = std::chrono::steady_clock::now();
  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Exact, optimized and simulated one-step rendezvous games"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // exact
  Common ex;
  std::string ex_strategy = "go-to-lowest";
  auto* exact = app.add_subcommand("exact", "exact win probability of a strategy");
  add_common(exact, ex);
  exact->add_option("--strategy", ex_strategy, "builtin name or strategy JSON file")
      ->capture_default_str();

  // sweep
  Common sw;
  int sw_n = 5;
  std::string sw_min = "0", sw_max = "3.141592653589793", sw_step = "0.001";
  auto* sweep = app.add_subcommand("sweep", "closed-form P(theta) on C_n as CSV");
  add_common(sweep, sw, false);
  sweep->add_option("--n", sw_n, "cycle length")->capture_default_str();
  sweep->add_option("--theta-min", sw_min, "radians, or degrees with 'deg'")->capture_default_str();
  sweep->add_option("--theta-max", sw_max)->capture_default_str();
  sweep->add_option("--step", sw_step)->capture_default_str();

  // optimize
  Common op;
  OptimizerConfig oc;
  std::string op_tie = "auto";
  auto* optimize_cmd = app.add_subcommand("optimize", "maximize over qutrit Euler angles");
  add_common(optimize_cmd, op);
  optimize_cmd->add_option("--restarts", oc.restarts)->capture_default_str();
  optimize_cmd->add_option("--seed", oc.seed)->capture_default_str();
  optimize_cmd->add_option("--max-evals", oc.max_evals, "per restart")->capture_default_str();
  optimize_cmd->add_option("--tol", oc.tolerance)->capture_default_str();
  optimize_cmd->add_option("--tie-components", op_tie)
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();

  // simulate
  Common sm;
  std::string sm_strategy = "go-to-lowest", sm_trials = "2^20", sm_source = "analytic";
  std::string sm_table, sm_probing = "sequential", sm_mitigation = "none";
  std::string sm_fallback = "go-to-lowest", sm_convergence;
  std::uint64_t sm_seed = 1;
  bool sm_recycle = false;
  std::optional<double> sm_p_gate;
  int sm_gates = 235;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo play");
  add_common(simulate_cmd, sm);
  simulate_cmd->add_option("--strategy", sm_strategy)->capture_default_str();
  simulate_cmd->add_option("--trials", sm_trials, "count, 2^k or 1e6")->capture_default_str();
  simulate_cmd->add_option("--seed", sm_seed)->capture_default_str();
  simulate_cmd->add_option("--source", sm_source)
      ->check(CLI::IsMember({"analytic", "table"}))
      ->capture_default_str();
  simulate_cmd->add_option("--table", sm_table, "shot table CSV for --source table");
  simulate_cmd->add_option("--probing", sm_probing)
      ->check(CLI::IsMember({"sequential", "random"}))
      ->capture_default_str();
  simulate_cmd->add_flag("--recycle", sm_recycle, "wrap around exhausted shot lists");
  simulate_cmd->add_option("--mitigation", sm_mitigation, "none or fallback")
      ->check(CLI::IsMember({"none", "fallback"}))
      ->capture_default_str();
  simulate_cmd->add_option("--fallback", sm_fallback, "classical strategy used on 11")
      ->capture_default_str();
  simulate_cmd->add_option("--p-gate", sm_p_gate, "analytic four-qubit noise per gate");
  simulate_cmd->add_option("--gates", sm_gates, "gate count for --p-gate")->capture_default_str();
  simulate_cmd->add_option("--convergence", sm_convergence, "write log2_trials,win_fraction CSV");

  // table
  auto* table = app.add_subcommand("table", "shot tables");
  table->require_subcommand(1);
  Common tb;
  std::string tb_strategy = "k3-optimal", tb_sampler = "ideal";
  TableBuildOptions tbo;
  tbo.noise.n_gates = 235;
  std::optional<double> tb_p_gate;
  bool tb_calibrate = false;
  auto* build = table->add_subcommand("build", "sample a shot table");
  add_common(build, tb);
  build->add_option("--strategy", tb_strategy)->capture_default_str();
  build->add_option("--shots", tbo.shots_per_pair, "shots per ordered start pair")
      ->capture_default_str();
  build->add_option("--seed", tbo.seed)->capture_default_str();
  build->add_option("--sampler", tb_sampler)
      ->check(CLI::IsMember({"ideal", "noisy"}))
      ->capture_default_str();
  build->add_option("--p-gate", tb_p_gate, "per-gate error rate");
  build->add_option("--gates", tbo.noise.n_gates, "gate count")->capture_default_str();
  build->add_flag("--calibrate", tb_calibrate,
                  "pick p-gate so 220..249 gates fail 22.5%..25.5% of the time");

  std::string ti_in, te_in, te_out;
  auto* imp = table->add_subcommand("import", "read a shot table and report statistics");
  imp->add_option("path", ti_in)->required();
  auto* exp = table->add_subcommand("export", "re-emit a shot table in canonical order");
  exp->add_option("path", te_in)->required();
  exp->add_option("--out", te_out);

  // nst
  int nst_min = 3, nst_max = 9;
  auto* nst = app.add_subcommand("nst", "non-signalling bounds on cycles");
  nst->add_option("--n-min", nst_min)->capture_default_str();
  nst->add_option("--n-max", nst_max)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    Output out;
    if (*exact) {
      const Graph g = load_graph(ex);
      const GameConfig cfg = config_of(ex);
      double p = 0.0;
      Json strategy_json;
      if (ex_strategy == "shared-randomness") {
        p = exact_win_probability(g, cfg, role_split_joint(g));
        strategy_json = {{"kind", "shared-randomness"}};
      } else {
        const Strategy s = load_strategy(ex_strategy, g);
        check_fits(g, s);
        p = exact_win_probability(g, cfg, joint_provider(s));
        strategy_json = to_json(s);
      }
      const Json result{{"graph", g.name()},
                        {"config", to_json(cfg)},
                        {"strategy_spec", ex_strategy},
                        {"strategy", strategy_json},
                        {"probability", p}};
      std::cout << fmt("%.6f", p) << "\n";
      if (!ex.out.empty()) {
        out.write(ex.out, dump(result));
        write_manifest(command_line, result, 0, out, started);
      }
      return check_value(ex, p);
    }

    if (*sweep) {
      const double lo = parse_angle(sw_min), hi = parse_angle(sw_max), step = parse_angle(sw_step);
      if (!(step > 0.0) || hi < lo) throw UsageError("empty theta grid");
      const bool e = sw.e == 1;
      std::ostringstream csv;
      csv << "theta,p\n" << std::setprecision(17);
      double best_t = lo, best_p = -1.0;
      const long long count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (long long i = 0; i < count; ++i) {
        const double t = lo + i * step;
        const double p = cycle_win_prob_closed(sw_n, t, e);
        csv << t << ',' << p << '\n';
        if (p > best_p) {
          best_p = p;
          best_t = t;
        }
      }
      std::cerr << "max " << fmt("%.6f", best_p) << " at " << fmt("%.6f", best_t) << " rad ("
                << fmt("%.4f", best_t * 180.0 / std::numbers::pi) << " deg)\n";
      if (sw.out.empty()) {
        std::cout << csv.str();
      } else {
        out.write(sw.out, csv.str());
        write_manifest(command_line,
                       Json{{"n", sw_n}, {"e", sw.e}, {"theta_min", lo}, {"theta_max", hi},
                            {"step", step}},
                       0, out, started);
      }
      return check_value(sw, best_p);
    }

    if (*optimize_cmd) {
      const Graph g = load_graph(op);
      const GameConfig cfg = config_of(op);
      oc.tie = op_tie == "on" ? TieMode::On : op_tie == "off" ? TieMode::Off : TieMode::Auto;
      oc.threads = op.threads;
      const auto r = optimize(g, cfg, oc);
      const Json result = to_json(r, g, cfg, oc);
      std::cerr << "objective " << fmt("%.6f", r.best_objective) << " (" << g.name() << ", "
                << to_record(cfg) << ", " << r.total_evals << " evaluations)\n";
      std::cerr << "site   alpha    beta     gamma\n";
      for (Vertex v = 1; v <= g.size(); ++v) {
        const auto& t = r.best.at(v);
        std::cerr << std::setw(4) << v << "  " << fmt("%.4f", t.alpha) << "  "
                  << fmt("%.4f", t.beta) << "  " << fmt("%.4f", t.gamma) << "\n";
      }
      if (op.out.empty()) {
        std::cout << dump(result);
      } else {
        out.write(op.out, dump(result));
        write_manifest(command_line, result, oc.seed, out, started);
      }
      return check_value(op, r.best_objective, true);
    }

    if (*simulate_cmd) {
      const Graph g = load_graph(sm);
      const GameConfig cfg = config_of(sm);
      const Strategy s = load_strategy(sm_strategy, g);
      SimOptions so;
      so.trials = parse_count(sm_trials);
      so.seed = sm_seed;
      so.threads = sm.threads;
      so.recycle = sm_recycle;
      so.probing = sm_probing == "random" ? Probing::RandomWithReplacement : Probing::Sequential;
      QuantumTable tab;
      if (sm_source == "table") {
        if (sm_table.empty()) throw UsageError("--source table needs --table");
        tab = import_table(fs::path(sm_table));
        so.source = OutcomeSource::Table;
        so.table = &tab;
      }
      if (sm_p_gate) so.noise = NoiseParams{*sm_p_gate, sm_gates};
      if (sm_mitigation == "fallback") {
        const Strategy fb = load_strategy(sm_fallback, g);
        if (!std::holds_alternative<ClassicalStrategy>(fb)) {
          throw UsageError("--fallback must be a classical strategy");
        }
        so.fallback = std::get<ClassicalStrategy>(fb);
      }
      const SimResult r = simulate(g, cfg, s, so);
      Json result = to_json(r);
      result["graph"] = g.name();
      result["config"] = to_json(cfg);
      result["strategy_spec"] = sm_strategy;
      result["source"] = sm_source;
      result["mitigation"] = sm_mitigation;
      std::cerr << "win fraction " << fmt("%.6f", r.win_fraction) << " over " << r.trials
                << " trials";
      if (r.invalid_shots > 0) {
        std::cerr << ", 11 readouts in " << fmt("%.4f", double(r.invalid_shots) / r.trials)
                  << " of rounds, fallback used " << r.discarded_shots << " times";
      }
      std::cerr << "\n";
      if (sm.out.empty()) {
        std::cout << dump(result);
      } else {
        out.write(sm.out, dump(result));
      }
      if (!sm_convergence.empty()) {
        std::ostringstream csv;
        write_convergence_csv(csv, r);
        out.write(sm_convergence, csv.str());
      }
      write_manifest(command_line, result, sm_seed, out, started);
      return check_value(sm, r.win_fraction);
    }

    if (*build) {
      const Graph g = load_graph(tb);
      const Strategy s = load_strategy(tb_strategy, g);
      if (tb_sampler == "noisy") {
        tbo.sampler = TableSampler::Noisy;
        if (tb_calibrate) {
          tbo.noise.p_gate = calibrate_gate_error(220, 249, 0.225, 0.255);
        } else if (tb_p_gate) {
          tbo.noise.p_gate = *tb_p_gate;
        } else {
          throw UsageError("--sampler noisy needs --p-gate or --calibrate");
        }
      }
      const QuantumTable t = build_table(g, s, off_diagonal_pairs(g), tbo);
      std::ostringstream csv;
      export_table(csv, t);
      const Json summary{{"graph", g.name()},
                         {"strategy_spec", tb_strategy},
                         {"pairs", t.entries().size()},
                         {"shots", t.total_shots()},
                         {"sampler", tb_sampler},
                         {"noise", to_json(tbo.noise)},
                         {"invalid_rate", t.invalid_rate()}};
      std::cerr << t.total_shots() << " shots over " << t.entries().size()
                << " start pairs, 11 rate " << fmt("%.4f", t.invalid_rate()) << "\n";
      if (tb.out.empty()) {
        std::cout << csv.str();
      } else {
        out.write(tb.out, csv.str());
        write_manifest(command_line, summary, tbo.seed, out, started);
      }
      return kOk;
    }

    if (*imp) {
      const QuantumTable t = import_table(fs::path(ti_in));
      const Json summary{
          {"path", ti_in},
          {"format", t.format() == QuantumTable::Format::FourQubit ? "four-qubit" : "qubit"},
          {"pairs", t.entries().size()},
          {"shots", t.total_shots()},
          {"invalid_shots", t.invalid_shots()},
          {"invalid_rate", t.invalid_rate()}};
      std::cout << dump(summary);
      std::cerr << "11 rate " << fmt("%.3f", 100.0 * t.invalid_rate()) << "%\n";
      return kOk;
    }

    if (*exp) {
      const QuantumTable t = import_table(fs::path(te_in));
      std::ostringstream csv;
      export_table(csv, t);
      if (te_out.empty()) {
        std::cout << csv.str();
      } else {
        out.write(te_out, csv.str());
      }
      return kOk;
    }

    if (*nst) {
      if (nst_min < 3 || nst_max < nst_min) throw UsageError("need 3 <= n-min <= n-max");
      std::cout << "n,bound_e0,bound_e1,attainable,nu,mu,theta_max\n" << std::setprecision(6)
                << std::fixed;
      for (int n = nst_min; n <= nst_max; ++n) {
        const auto w = nst_attainable(n);
        std::cout << n << ',' << nst_bound(n, false) << ',' << nst_bound(n, true) << ','
                  << (w ? 1 : 0) << ',';
        if (w) {
          std::cout << w->nu << ',' << w->mu << ',' << w->theta_max;
        } else {
          std::cout << ",,";
        }
        std::cout << '\n';
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << " error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Lookup ? kUsage : kValidation;
  }
  return kOk;
}
