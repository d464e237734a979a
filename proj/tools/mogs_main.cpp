// Command-line harness: solve games from files or the built-in catalog, expose
// the mixed-strategy metrics, and rerun the experiment suites.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mogs/catalog.hpp"
#include "mogs/game_io.hpp"
#include "mogs/metrics.hpp"
#include "mogs/solver.hpp"

namespace {

using nlohmann::json;

struct SolveOptions {
  std::string game_path;
  int example = 0;
  double epsilon = 1e-3;
  int max_iter = 100;
  std::uint64_t seed = 0;
  std::string master = "auto";
  std::string oracle = "auto";
  int starts = 16;
  std::string trace_path;
  bool wasserstein = false;
  bool json_output = false;
};

mogs::MasterMode parse_master(const std::string& name) {
  if (name == "auto") return mogs::MasterMode::Auto;
  if (name == "lp") return mogs::MasterMode::BimatrixLp;
  if (name == "polymatrix-lp") return mogs::MasterMode::PolymatrixLp;
  if (name == "regret") return mogs::MasterMode::Regret;
  throw CLI::ValidationError("--master must be auto, lp, polymatrix-lp or regret");
}

mogs::OracleConfig::Mode parse_oracle(const std::string& name) {
  if (name == "auto") return mogs::OracleConfig::Mode::Auto;
  if (name == "poly-exact") return mogs::OracleConfig::Mode::PolyExact;
  if (name == "multistart") return mogs::OracleConfig::Mode::Multistart;
  throw CLI::ValidationError("--oracle must be auto, poly-exact or multistart");
}

void print_profile(std::ostream& out, const mogs::Profile& profile) {
  for (int i = 0; i < profile.players(); ++i) {
    const mogs::MixedStrategy& s = profile.strategies[i];
    out << "  player " << i << ":";
    for (int a = 0; a < s.support_size(); ++a) {
      out << "  (";
      for (std::size_t d = 0; d < s.atoms[a].size(); ++d) {
        if (d) out << ", ";
        out << s.atoms[a][d];
      }
      out << ") @ " << s.weights[a];
    }
    out << '\n';
  }
}

int run_solve(const SolveOptions& opt) {
  mogs::ContinuousGame game =
      opt.example > 0 ? mogs::example_game(opt.example) : mogs::load_game_file(opt.game_path);

  mogs::SolveConfig config;
  config.epsilon = opt.epsilon;
  config.max_iterations = opt.max_iter;
  config.seed = opt.seed;
  config.master = parse_master(opt.master);
  config.oracle.mode = parse_oracle(opt.oracle);
  config.oracle.starts = opt.starts;
  config.record_wasserstein = opt.wasserstein;

  mogs::SolveResult result = mogs::solve(game, config);

  if (!opt.trace_path.empty()) {
    std::ofstream trace(opt.trace_path);
    if (!trace) throw std::runtime_error("cannot write trace file: " + opt.trace_path);
    mogs::write_trace_csv(trace, result, game.players);
  }

  if (opt.json_output) {
    std::cout << mogs::solve_summary_json(game, config, result).dump(2) << '\n';
  } else {
    std::cout << (result.terminated == mogs::Termination::Converged ? "converged"
                                                                    : "max iterations reached")
              << " after " << result.iterations << " iterations\n";
    std::cout << "epsilon_certified: " << result.epsilon_certified << '\n';
    std::cout << "payoffs:";
    for (double v : result.payoffs) std::cout << ' ' << v;
    std::cout << '\n';
    print_profile(std::cout, result.profile);
  }
  return result.terminated == mogs::Termination::Converged ? 0 : 2;
}

int run_metric(const std::string& space_text, const std::string& p_text,
               const std::string& q_text, bool show_plan) {
  mogs::StrategySpace space = mogs::parse_space(space_text);
  mogs::MixedStrategy p = mogs::parse_measure(p_text, space);
  mogs::MixedStrategy q = mogs::parse_measure(q_text, space);

  mogs::MetricReport report = mogs::metric_report(p, q, space);
  std::cout << "wasserstein: " << report.wasserstein << '\n';
  std::cout << "total_variation: " << report.total_variation << '\n';
  std::cout << "lower_bound: " << report.lower_bound
            << (report.dmin_defined ? "" : " (d_min undefined: single support point)") << '\n';
  std::cout << "upper_bound: " << report.upper_bound << '\n';
  if (show_plan) {
    for (int i = 0; i < report.plan.rows; ++i) {
      for (int j = 0; j < report.plan.cols; ++j) {
        double mass = report.plan(i, j);
        if (mass > 1e-15) {
          std::cout << "plan " << i << " -> " << j << ": " << mass << '\n';
        }
      }
    }
  }
  return 0;
}

struct RunRecord {
  std::string label;
  bool converged = false;
  int iterations = 0;
  double certified = 0.0;
  double ms = 0.0;
};

RunRecord run_one(const std::string& label, const mogs::ContinuousGame& game,
                  mogs::SolveConfig config) {
  auto start = std::chrono::steady_clock::now();
  mogs::SolveResult result = mogs::solve(game, config);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  double certified = mogs::certify_epsilon(game, result.profile);
  return {label, result.terminated == mogs::Termination::Converged, result.iterations, certified,
          ms};
}

int run_reproduce(const std::string& suite, int samples, std::uint64_t seed, bool json_output) {
  std::vector<RunRecord> records;

  if (suite == "examples") {
    for (int id = 1; id <= 5; ++id) {
      mogs::SolveConfig config;
      config.epsilon = 1e-3;
      config.seed = seed;
      config.max_iterations = 200;
      if (id == 4) {
        config.oracle.starts = 32;  // non-polynomial objective over the simplex
        config.epsilon = 2e-3;
      }
      records.push_back(run_one("example" + std::to_string(id), mogs::example_game(id), config));
    }
  } else if (suite == "polymatrix") {
    for (int s = 0; s < samples; ++s) {
      mogs::Rng rng(seed + static_cast<std::uint64_t>(s));
      mogs::ContinuousGame game = mogs::random_finite_polymatrix(3, 20, {}, rng);
      mogs::SolveConfig config;
      config.epsilon = 0.01;
      config.seed = seed + static_cast<std::uint64_t>(s);
      config.max_iterations = 200;
      records.push_back(run_one("polymatrix_" + std::to_string(s), game, config));
    }
  } else if (suite == "polynomial") {
    for (int s = 0; s < samples; ++s) {
      mogs::Rng rng(seed + static_cast<std::uint64_t>(s));
      int players = 2 + s % 4;
      mogs::ContinuousGame game = mogs::random_polynomial_game(players, 1, 4, 8, rng);
      mogs::SolveConfig config;
      config.epsilon = 1e-3;
      config.seed = seed + static_cast<std::uint64_t>(s);
      config.max_iterations = 200;
      records.push_back(run_one("polynomial_" + std::to_string(s), game, config));
    }
  } else {
    throw CLI::ValidationError("--suite must be examples, polymatrix or polynomial");
  }

  double mean_iters = 0.0, mean_ms = 0.0;
  int converged = 0;
  for (const RunRecord& r : records) {
    mean_iters += r.iterations;
    mean_ms += r.ms;
    converged += r.converged ? 1 : 0;
  }
  mean_iters /= static_cast<double>(records.size());
  mean_ms /= static_cast<double>(records.size());

  if (json_output) {
    json rows = json::array();
    for (const RunRecord& r : records) {
      rows.push_back({{"label", r.label},
                      {"converged", r.converged},
                      {"iterations", r.iterations},
                      {"epsilon_certified", r.certified},
                      {"ms", r.ms}});
    }
    json doc{{"suite", suite},
             {"runs", rows},
             {"mean_iterations", mean_iters},
             {"mean_ms", mean_ms},
             {"converged", converged},
             {"total", static_cast<int>(records.size())}};
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << "label\tstatus\titerations\tepsilon_certified\tms\n";
    for (const RunRecord& r : records) {
      std::cout << r.label << '\t' << (r.converged ? "converged" : "max-iter") << '\t'
                << r.iterations << '\t' << r.certified << '\t' << r.ms << '\n';
    }
    std::cout << "mean iterations: " << mean_iters << ", mean ms: " << mean_ms << ", converged "
              << converged << "/" << records.size() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple-oracle solver for continuous games"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run the solver on a game");
  auto* game_opt = solve_cmd->add_option("--game", solve_opt.game_path, "Game definition file");
  auto* example_opt =
      solve_cmd->add_option("--example", solve_opt.example, "Built-in example id (1-5)")
          ->check(CLI::Range(1, 5));
  game_opt->excludes(example_opt);
  solve_cmd->add_option("--epsilon", solve_opt.epsilon, "Stopping threshold");
  solve_cmd->add_option("--max-iter", solve_opt.max_iter, "Iteration cap");
  solve_cmd->add_option("--seed", solve_opt.seed, "Random seed");
  solve_cmd->add_option("--master", solve_opt.master, "auto|lp|polymatrix-lp|regret");
  solve_cmd->add_option("--oracle", solve_opt.oracle, "auto|poly-exact|multistart");
  solve_cmd->add_option("--starts", solve_opt.starts, "Multistart count");
  solve_cmd->add_option("--trace", solve_opt.trace_path, "Write per-iteration CSV trace");
  solve_cmd->add_flag("--wasserstein", solve_opt.wasserstein,
                      "Record Wasserstein steps between iterates");
  solve_cmd->add_flag("--json", solve_opt.json_output, "Print the summary as JSON");

  std::string metric_space, metric_p, metric_q;
  bool metric_plan = false;
  CLI::App* metric_cmd = app.add_subcommand("metric", "Distances between two measures");
  metric_cmd->add_option("--space", metric_space, "box:<lo>:<hi> | simplex:<dim> | circle[:chord]")
      ->required();
  metric_cmd->add_option("--p", metric_p, "First measure, e.g. 0.2:1 or 0:0.6;1:0.4")->required();
  metric_cmd->add_option("--q", metric_q, "Second measure")->required();
  metric_cmd->add_flag("--plan", metric_plan, "Print the optimal transport plan");

  std::string suite = "examples";
  int samples = 20;
  std::uint64_t rep_seed = 0;
  bool rep_json = false;
  CLI::App* rep_cmd = app.add_subcommand("reproduce", "Rerun an experiment suite");
  rep_cmd->add_option("--suite", suite, "examples|polymatrix|polynomial");
  rep_cmd->add_option("--samples", samples, "Sample count for randomized suites");
  rep_cmd->add_option("--seed", rep_seed, "Base seed");
  rep_cmd->add_flag("--json", rep_json, "Machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      if (solve_opt.example == 0 && solve_opt.game_path.empty()) {
        std::cerr << "error: solve needs --game or --example\n";
        return 1;
      }
      return run_solve(solve_opt);
    }
    if (metric_cmd->parsed()) return run_metric(metric_space, metric_p, metric_q, metric_plan);
    if (rep_cmd->parsed()) return run_reproduce(suite, samples, rep_seed, rep_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
