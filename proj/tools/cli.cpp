#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "gsmooth/errors.hpp"
#include "gsmooth/estimators.hpp"
#include "gsmooth/optimizer.hpp"
#include "gsmooth/problems.hpp"
#include "gsmooth/records.hpp"
#include "gsmooth/samplers.hpp"
#include "gsmooth/theory.hpp"

namespace gsmooth::cli {
namespace {

// Flags shared by the experiment commands.
struct RunFlags {
  std::size_t d = 100;
  std::size_t L = 2;
  std::size_t N = 5;
  std::string algo = "gs";
  std::string estimator = "fd";
  double c = 0.01;
  double lr = 0.001;
  std::size_t rounds = 100;
  std::size_t iters = 10;
  std::size_t seeds = 1;
  std::uint64_t seed_base = 0;
  bool standardize = false;
  std::size_t mc_samples = 1000;
  std::size_t test_size = 1000;
  std::string obj;
  double noise_level = 0.1;
  std::string out;
  std::string json;
  std::string save_config;
};

std::vector<std::string> names_of_samplers() {
  return {"gs", "bes", "gs-shrinkage", "bes-shrinkage", "orthogonal", "guided"};
}

void add_common(CLI::App* sub, RunFlags& f) {
  sub->add_option("--d", f.d, "Dimension")->check(CLI::PositiveNumber);
  sub->add_option("--L", f.L, "Directions per estimate")->check(CLI::PositiveNumber);
  sub->add_option("--N", f.N, "Data points per estimate")->check(CLI::PositiveNumber);
  sub->add_option("--algo", f.algo, "Direction distribution")->check(CLI::IsMember(names_of_samplers()));
  sub->add_option("--estimator", f.estimator, "Gradient estimator")->check(CLI::IsMember({"fd", "at"}));
  sub->add_option("--c", f.c, "Smoothing spacing")->check(CLI::PositiveNumber);
  sub->add_flag("--standardize", f.standardize, "Divide reward differences by their pooled std");
  sub->add_option("--out", f.out, "CSV output path (stdout if empty)");
  sub->add_option("--json", f.json, "Optional JSON summary path");
  sub->add_option("--save-config", f.save_config, "Write the effective flags to this file")
      ->configurable(false);
  // Expanded into flags before parsing; see expand_config.
  sub->add_option("--config", "Read flags from a key=value file")->configurable(false);
}

void add_run(CLI::App* sub, RunFlags& f) {
  add_common(sub, f);
  sub->add_option("--lr", f.lr, "Learning rate")->check(CLI::NonNegativeNumber);
  sub->add_option("--rounds", f.rounds, "Test rounds")->check(CLI::PositiveNumber);
  sub->add_option("--iters", f.iters, "SGD steps per round");
  sub->add_option("--seeds", f.seeds, "Number of evaluation seeds")->check(CLI::PositiveNumber);
  sub->add_option("--seed-base", f.seed_base, "First evaluation seed");
}

void add_linreg_model(CLI::App* sub, RunFlags& f) {
  sub->add_option("--mc-samples", f.mc_samples, "Monte Carlo samples for E[Q gamma]")
      ->check(CLI::PositiveNumber);
  sub->add_option("--test-size", f.test_size, "Held-out points")->check(CLI::PositiveNumber);
}

void add_dfo_model(CLI::App* sub, RunFlags& f) {
  sub->add_option("--obj", f.obj, "sphere, rosenbrock, cigar or hm");
  sub->add_option("--noise-level", f.noise_level, "Std of additive evaluation noise")
      ->check(CLI::NonNegativeNumber);
}

RunConfig to_run_config(const RunFlags& f, bool dfo) {
  RunConfig cfg;
  if (dfo) {
    const auto fn = parse_dfo_function(f.obj);
    if (!fn) throw ParameterError("--obj: unknown objective '" + f.obj + "'");
    cfg.problem = DfoSetup{DfoObjective{*fn, f.d, f.noise_level}};
  } else {
    cfg.problem = LinRegSetup{f.d, f.mc_samples, f.test_size, PointSampling::RotationFree};
  }
  cfg.sampler = *parse_sampler_kind(f.algo);
  cfg.estimator.kind = *parse_estimator_kind(f.estimator);
  cfg.estimator.c = f.c;
  cfg.estimator.L = f.L;
  cfg.estimator.N = f.N;
  cfg.estimator.standardize_rewards = f.standardize;
  cfg.learning_rate = f.lr;
  cfg.rounds = f.rounds;
  cfg.iters_per_round = f.iters;
  if (cfg.sampler == SamplerKind::BeSShrinkage && f.L + f.d <= 5) {
    throw PreconditionError("--algo bes-shrinkage requires --L + --d > 5");
  }
  cfg.validate();
  return cfg;
}

// Runs job(i) for i in [0, n) on the worker pool; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& job) {
  std::vector<std::optional<T>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(worker_count(), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw ParameterError("--out: cannot open '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("--json: cannot open '" + path + "'");
  f << j.dump(2) << '\n';
}

void save_config(const CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("--save-config: cannot open '" + path + "'");
  f << sub->config_to_str(true, false);
}

nlohmann::json run_summary(const RunConfig& cfg, const RunRecord& rec) {
  nlohmann::json j;
  j["seed"] = cfg.seed;
  j["rounds_completed"] = rec.rounds.size();
  j["evaluations"] = rec.evaluations_total;
  j["diverged"] = rec.diverged;
  if (!rec.rounds.empty()) {
    const double v = rec.rounds.back().test_metric;
    if (std::isfinite(v)) j["final_metric"] = v;
  }
  if (rec.diverged) {
    j["diverged_round"] = rec.diverged_round;
    j["diverged_iteration"] = rec.diverged_iteration;
  }
  return j;
}

std::vector<std::uint64_t> evaluation_seeds(const RunFlags& f) {
  std::vector<std::uint64_t> seeds(f.seeds);
  for (std::size_t i = 0; i < f.seeds; ++i) seeds[i] = f.seed_base + i;
  return seeds;
}

struct SeedRun {
  RunConfig config;
  RunRecord record;
};

std::vector<SeedRun> run_seeds(const RunConfig& base, const std::vector<std::uint64_t>& seeds) {
  return parallel_map<SeedRun>(seeds.size(), [&](std::size_t i) {
    RunConfig cfg = base;
    cfg.seed = seeds[i];
    return SeedRun{cfg, run(cfg)};
  });
}

int cmd_experiment(const std::string& command, const CLI::App* sub, const RunFlags& f, bool dfo,
                   std::ostream& out) {
  const RunConfig base = to_run_config(f, dfo);
  save_config(sub, f.save_config);
  const auto runs = run_seeds(base, evaluation_seeds(f));

  std::vector<CsvRow> rows;
  nlohmann::json summary;
  summary["command"] = command;
  summary["runs"] = nlohmann::json::array();
  for (const auto& r : runs) {
    const auto part = record_rows(command, r.config, r.record);
    rows.insert(rows.end(), part.begin(), part.end());
    summary["runs"].push_back(run_summary(r.config, r.record));
  }
  Output o(f.out, out);
  write_csv(o.get(), rows);
  write_json(f.json, summary);
  return 0;
}

// Grid search on selection seeds, then the selected cell on the evaluation
// seeds. Cell rows carry metric "final" (one per selection seed) and
// "mean_final" (seed column 0); the chosen cell also gets "selected" = 1.
struct GridFlags {
  std::string problem = "linreg";
  std::vector<double> c_grid;
  std::vector<double> lr_grid;
  std::vector<std::uint64_t> selection_seeds{1000, 1001, 1002};
};

int cmd_gridsearch(const CLI::App* sub, const RunFlags& f, const GridFlags& g, std::ostream& out) {
  const bool dfo = g.problem == "dfo";
  RunConfig base = to_run_config(f, dfo);
  save_config(sub, f.save_config);
  std::vector<double> c_grid = g.c_grid;
  std::vector<double> lr_grid = g.lr_grid;
  if (c_grid.empty()) c_grid = dfo ? std::vector<double>{0.1} : std::vector<double>{0.01, 0.1};
  if (lr_grid.empty()) {
    lr_grid = dfo ? std::vector<double>{1e-6, 1e-5, 1e-4, 1e-3, 1e-2}
                  : std::vector<double>{0.001, 0.01, 0.1};
  }
  const auto eval_seeds = evaluation_seeds(f);
  require_disjoint_seeds(g.selection_seeds, eval_seeds);

  struct Cell {
    double c;
    double lr;
  };
  std::vector<Cell> cells;
  for (double c : c_grid) {
    for (double lr : lr_grid) cells.push_back({c, lr});
  }
  // Cells fan out to the pool as one-cell searches; ranking happens after.
  const auto results = parallel_map<GridCell>(cells.size(), [&](std::size_t i) {
    RunConfig cfg = base;
    const double cs[] = {cells[i].c};
    const double ls[] = {cells[i].lr};
    try {
      return grid_search(cfg, cs, ls, g.selection_seeds).cells.front();
    } catch (const GridSearchError& e) {
      return e.cells().front();
    }
  });

  const auto best_index = select_cell(results, base.direction);
  const GridCell* best = best_index ? &results[*best_index] : nullptr;
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "every grid cell diverged:";
    for (const auto& cell : results) {
      msg << " (c=" << format_double(cell.c) << ", lr=" << format_double(cell.learning_rate)
          << ": diverged)";
    }
    throw GridSearchError(msg.str(), results);
  }

  std::vector<CsvRow> rows;
  CsvRow proto;
  proto.command = "gridsearch";
  proto.algo = to_string(base.sampler);
  proto.estimator = to_string(base.estimator.kind);
  proto.L = base.estimator.L;
  proto.N = base.estimator.N;
  proto.d = dimension(base.problem);
  proto.round = base.rounds;
  nlohmann::json summary;
  summary["command"] = "gridsearch";
  summary["cells"] = nlohmann::json::array();
  for (const auto& cell : results) {
    CsvRow r = proto;
    r.c = cell.c;
    r.lr = cell.learning_rate;
    for (std::size_t s = 0; s < g.selection_seeds.size(); ++s) {
      r.seed = g.selection_seeds[s];
      r.metric = "final";
      r.value = cell.final_metrics[s];
      rows.push_back(r);
    }
    r.seed = 0;
    r.metric = "mean_final";
    r.value = cell.mean_final_metric;
    rows.push_back(r);
    if (&cell == best) {
      r.metric = "selected";
      r.value = 1.0;
      rows.push_back(r);
    }
    nlohmann::json jc;
    jc["c"] = cell.c;
    jc["lr"] = cell.learning_rate;
    jc["diverged"] = cell.diverged;
    if (!cell.diverged) jc["mean_final"] = cell.mean_final_metric;
    summary["cells"].push_back(jc);
  }
  summary["selected"] = {{"c", best->c}, {"lr", best->learning_rate}};

  base.estimator.c = best->c;
  base.learning_rate = best->learning_rate;
  summary["runs"] = nlohmann::json::array();
  for (const auto& r : run_seeds(base, eval_seeds)) {
    const auto part = record_rows("gridsearch", r.config, r.record);
    rows.insert(rows.end(), part.begin(), part.end());
    summary["runs"].push_back(run_summary(r.config, r.record));
  }
  Output o(f.out, out);
  write_csv(o.get(), rows);
  write_json(f.json, summary);
  return 0;
}

struct MseFlags {
  std::size_t replications = 100000;
  std::size_t noise_samples = 100000;
  std::uint64_t seed = 0;
};

int cmd_mse_validate(const CLI::App* sub, const RunFlags& f, const MseFlags& m, std::ostream& out) {
  const SamplerKind kind = *parse_sampler_kind(f.algo);
  if (!has_iid_entries(kind)) {
    throw UnsupportedError("--algo " + f.algo +
                           ": the closed form needs IID direction entries; use gs, bes, "
                           "gs-shrinkage or bes-shrinkage");
  }
  if (kind == SamplerKind::BeSShrinkage && f.L + f.d <= 5) {
    throw PreconditionError("--algo bes-shrinkage requires --L + --d > 5");
  }
  if (m.replications < 2) throw ParameterError("--replications must be at least 2");
  if (m.noise_samples < 2) throw ParameterError("--noise-samples must be at least 2");
  save_config(sub, f.save_config);

  EstimatorConfig ec;
  ec.kind = *parse_estimator_kind(f.estimator);
  ec.c = f.c;
  ec.L = f.L;
  ec.N = f.N;
  ec.standardize_rewards = f.standardize;
  ec.validate();

  const RngStream root(m.seed);
  const LinRegModel model(f.d, root.derive(0), f.mc_samples);
  RngStream init = root.derive(2);
  const std::vector<double> theta = standard_normal(init, f.d);
  const SamplerSpec spec = make_sampler_spec(kind, f.L, f.d);

  const MseDecomposition emp = empirical_mse(model, theta, ec, spec, m.replications, root.derive(3));
  const auto grad = linreg_analytic_gradient(model, theta);
  double grad_sq = 0.0;
  for (double v : grad) grad_sq += v * v;
  RngStream ns = root.derive(4);
  const double noise = linreg_noise_trace(model, theta, m.noise_samples, ns);
  const MseDecomposition cf = theory::fd_mse_closed_form(theory::distribution_moments(spec), f.L,
                                                         f.N, f.d, {grad_sq, noise});
  const double rel = std::abs(emp.total - cf.total) / cf.total;

  CsvRow r;
  r.command = "mse-validate";
  r.algo = f.algo;
  r.estimator = f.estimator;
  r.L = f.L;
  r.N = f.N;
  r.d = f.d;
  r.c = f.c;
  r.lr = 0.0;
  r.seed = m.seed;
  r.round = 0;
  std::vector<CsvRow> rows;
  auto push = [&](const char* metric, double v) {
    r.metric = metric;
    r.value = v;
    rows.push_back(r);
  };
  push("empirical_mse", emp.total);
  push("closed_form_mse", cf.total);
  push("relative_error", rel);
  push("empirical_squared_bias", emp.squared_bias);
  push("empirical_trace_variance", emp.trace_variance);
  push("closed_form_squared_bias", cf.squared_bias);
  push("grad_norm_sq", grad_sq);
  push("noise_trace", noise);
  Output o(f.out, out);
  write_csv(o.get(), rows);

  nlohmann::json j;
  j["command"] = "mse-validate";
  j["empirical_mse"] = emp.total;
  j["closed_form_mse"] = cf.total;
  j["relative_error"] = rel;
  write_json(f.json, j);
  return 0;
}

// theory subqueries print "name = value" lines.
struct TheoryFlags {
  std::string algo = "gs";
  std::size_t L = 0;
  std::size_t N = 0;
  std::size_t d = 0;
  double grad = 0.0;
  double noise = 0.0;
  double M = 0.0;
  double B = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  std::size_t T = 0;
};

void print_value(std::ostream& out, const std::string& name, double v) {
  out << name << " = " << std::setprecision(6) << v << '\n';
}

// Replaces "--config PATH" after the subcommand name with the file's
// key=value pairs as "--key=value" tokens, placed ahead of the remaining
// flags so explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 == args.size()) throw ParameterError("--config needs a path");
      paths.push_back(args[++i]);
    } else if (a.rfind("--config=", 0) == 0) {
      paths.push_back(a.substr(9));
    } else {
      rest.push_back(a);
    }
  }
  if (paths.empty() || rest.empty()) return args;
  std::vector<std::string> out{rest.front()};
  CLI::ConfigTOML format;
  for (const auto& path : paths) {
    std::vector<CLI::ConfigItem> items;
    try {
      items = format.from_file(path);
    } catch (const CLI::FileError& e) {
      throw ParameterError(std::string("--config: ") + e.what());
    }
    for (const auto& item : items) {
      if (item.name == "++" || item.name == "--" || item.inputs.empty()) continue;
      std::string joined;
      for (std::size_t k = 0; k < item.inputs.size(); ++k) {
        if (k > 0) joined += ',';
        joined += item.inputs[k];
      }
      // Empty strings and empty lists mean "keep the default".
      if (joined.empty() || joined == "{}") continue;
      out.push_back("--" + item.name + "=" + joined);
    }
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

}  // namespace

unsigned worker_count() {
  if (const char* env = std::getenv("GSMOOTH_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random search with generalized smoothing"};
  app.name("gsmooth");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  RunFlags lin;
  auto* linreg = app.add_subcommand("linreg", "Linear-regression SGD experiment");
  add_run(linreg, lin);
  add_linreg_model(linreg, lin);

  RunFlags dfo;
  dfo.d = 10;
  dfo.L = 1;
  dfo.N = 1;
  dfo.c = 0.1;
  auto* dfo_cmd = app.add_subcommand("dfo", "Derivative-free benchmark experiment");
  add_run(dfo_cmd, dfo);
  add_dfo_model(dfo_cmd, dfo);
  dfo_cmd->get_option("--obj")->required();

  RunFlags mse;
  mse.c = 1e-4;
  MseFlags mflags;
  auto* mse_cmd = app.add_subcommand("mse-validate", "Empirical vs closed-form estimator MSE");
  add_common(mse_cmd, mse);
  add_linreg_model(mse_cmd, mse);
  mse_cmd->add_option("--replications", mflags.replications, "Independent estimates");
  mse_cmd->add_option("--noise-samples", mflags.noise_samples, "Samples for the noise trace");
  mse_cmd->add_option("--seed", mflags.seed, "Seed");

  RunFlags grid;
  GridFlags gflags;
  auto* grid_cmd = app.add_subcommand("gridsearch", "Select (c, lr) on selection seeds, then evaluate");
  add_run(grid_cmd, grid);
  add_linreg_model(grid_cmd, grid);
  add_dfo_model(grid_cmd, grid);
  grid_cmd->add_option("--problem", gflags.problem, "linreg or dfo")->check(CLI::IsMember({"linreg", "dfo"}));
  grid_cmd->add_option("--c-grid", gflags.c_grid, "Spacing grid")->delimiter(',');
  grid_cmd->add_option("--lr-grid", gflags.lr_grid, "Learning-rate grid")->delimiter(',');
  grid_cmd->add_option("--selection-seeds", gflags.selection_seeds, "Seeds for selection")->delimiter(',');

  TheoryFlags th;
  auto* theory_cmd = app.add_subcommand("theory", "Closed-form values");
  theory_cmd->require_subcommand(1);
  auto* moments = theory_cmd->add_subcommand("moments", "Entry variance and kurtosis");
  moments->add_option("--algo", th.algo)->check(CLI::IsMember(names_of_samplers()));
  moments->add_option("--L", th.L)->required();
  moments->add_option("--d", th.d)->required();
  auto* mse_q = theory_cmd->add_subcommand("mse", "Forward-difference MSE decomposition");
  mse_q->add_option("--algo", th.algo)->check(CLI::IsMember(names_of_samplers()));
  mse_q->add_option("--L", th.L)->required();
  mse_q->add_option("--N", th.N)->required();
  mse_q->add_option("--d", th.d)->required();
  mse_q->add_option("--grad", th.grad, "|grad F|^2")->required();
  mse_q->add_option("--noise", th.noise, "Noise trace")->required();
  auto* shrink = theory_cmd->add_subcommand("shrinkage", "Optimal shrinkage parameters");
  shrink->add_option("--L", th.L)->required();
  shrink->add_option("--d", th.d)->required();
  auto* gap = theory_cmd->add_subcommand("gap", "MSE(GS-shrinkage) - MSE(BeS-shrinkage)");
  gap->add_option("--L", th.L)->required();
  gap->add_option("--N", th.N)->required();
  gap->add_option("--d", th.d)->required();
  gap->add_option("--grad", th.grad, "|grad F|^2")->required();
  gap->add_option("--noise", th.noise, "Noise trace")->required();
  auto* bound = theory_cmd->add_subcommand("bound", "Convergence bound");
  bound->add_option("--M", th.M)->required();
  bound->add_option("--B", th.B)->required();
  bound->add_option("--delta", th.delta)->required();
  bound->add_option("--mu", th.mu)->required();
  bound->add_option("--T", th.T)->required();

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  // gridsearch shares one flag set between problems; unset sizes take the dfo
  // defaults when --problem dfo, so saved configs record them too.
  if (grid_cmd->parsed() && gflags.problem == "dfo") {
    for (const char* name : {"--d", "--L", "--N"}) {
      auto* opt = grid_cmd->get_option(name);
      if (opt->count() == 0) opt->default_val(name == std::string("--d") ? 10 : 1);
    }
  }

  try {
    if (linreg->parsed()) return cmd_experiment("linreg", linreg, lin, false, out);
    if (dfo_cmd->parsed()) return cmd_experiment("dfo", dfo_cmd, dfo, true, out);
    if (mse_cmd->parsed()) return cmd_mse_validate(mse_cmd, mse, mflags, out);
    if (grid_cmd->parsed()) return cmd_gridsearch(grid_cmd, grid, gflags, out);
    if (moments->parsed()) {
      const auto spec = make_sampler_spec(*parse_sampler_kind(th.algo), th.L, th.d);
      const auto mo = theory::distribution_moments(spec);
      print_value(out, "variance", mo.variance);
      print_value(out, "kurtosis", mo.kurtosis);
    } else if (mse_q->parsed()) {
      const auto spec = make_sampler_spec(*parse_sampler_kind(th.algo), th.L, th.d);
      const auto cf = theory::fd_mse_closed_form(theory::distribution_moments(spec), th.L, th.N,
                                                 th.d, {th.grad, th.noise});
      print_value(out, "squared_bias", cf.squared_bias);
      print_value(out, "trace_variance", cf.trace_variance);
      print_value(out, "gradient_term", cf.gradient_term);
      print_value(out, "noise_term", cf.noise_term);
      print_value(out, "total", cf.total);
    } else if (shrink->parsed()) {
      print_value(out, "gs_shrinkage_variance", gs_shrinkage_variance(th.L, th.d));
      print_value(out, "bes_shrinkage_scale", bes_shrinkage_scale(th.L, th.d));
    } else if (gap->parsed()) {
      print_value(out, "gap", theory::mse_gap_gss_vs_bess(th.L, th.N, th.d, {th.grad, th.noise}));
    } else if (bound->parsed()) {
      print_value(out, "bound", theory::convergence_bound(th.M, th.B, th.delta, th.mu, th.T));
    }
    return 0;
  } catch (const HypothesisError& e) {
    err << "hypothesis error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gsmooth::cli
