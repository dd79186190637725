// Copyright 2026 The vhl Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "vhl_cli/cli.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "CLI11.hpp"
#include "vhl/csv.hpp"
#include "vhl/harness.hpp"
#include "vhl/io.hpp"
#include "vhl/model.hpp"
#include "vhl/operators.hpp"
#include "vhl/postprocess.hpp"
#include "vhl/solver.hpp"

namespace vhl::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kVersion = "vhl 0.1.0";

struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Index parse_index(std::string_view text, std::string_view whole) {
  Index value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || value < 0)
    throw std::invalid_argument("bad range '" + std::string(whole) +
                                "': expected a..b[:step]");
  return value;
}

std::string range_text(const IntRange& r) {
  std::string out = std::to_string(r.first);
  if (r.last != r.first) out += ".." + std::to_string(r.last);
  if (r.step != 1) out += ":" + std::to_string(r.step);
  return out;
}

std::string list_text(const std::vector<Index>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k)
    out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

// Solver flags shared by solve, music and the experiment commands.
struct SolverFlags {
  int max_iters = 5000;
  double tol = 1e-5;
  double eps = 1.0 / 3.0;
  std::optional<double> mu;
  std::optional<double> step;
  double growth = 2.0;
  double max_scale = 16.0;
  std::uint64_t svd_seed = 0;

  void attach(CLI::App* app) {
    app->add_option("--max-iters", max_iters, "Iteration cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--tol", tol, "Residual stopping threshold")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_option("--eps", eps, "sigma = sigma_1(init) / (1 - eps)")
        ->check(CLI::Range(1e-12, 1.0 / 3.0))
        ->capture_default_str();
    app->add_option("--mu", mu,
                    "Incoherence bound of the feasible set (default: from the "
                    "initialization)")
        ->check(CLI::PositiveNumber);
    app->add_option("--step", step,
                    "Fixed step size (default: backtracking line search)")
        ->check(CLI::PositiveNumber);
    app->add_option("--step-growth", growth,
                    "Backtracking: growth factor after an unhalved step")
        ->check(CLI::Range(1.0, 1e6))
        ->capture_default_str();
    app->add_option("--max-step-scale", max_scale,
                    "Backtracking: cap on the step as a multiple of 1/(8 sigma)")
        ->check(CLI::Range(1.0, 1e12))
        ->capture_default_str();
    app->add_option("--svd-seed", svd_seed,
                    "Seed of the randomized SVD sketch")
        ->capture_default_str();
  }

  SolverConfig config() const {
    SolverConfig c;
    c.max_iters = max_iters;
    c.tol_residual = tol;
    c.eps = eps;
    c.mu_override = mu;
    if (step) {
      c.step_policy = StepPolicy::kFixed;
      c.step_size = *step;
    }
    c.step_growth = growth;
    c.max_step_scale = max_scale;
    c.seed = svd_seed;
    return c;
  }

  void echo(ConfigEcho& e) const {
    e.emplace_back("max_iters", std::to_string(max_iters));
    e.emplace_back("tol_residual", format_number(tol));
    e.emplace_back("eps", format_number(eps));
    e.emplace_back("mu", mu ? format_number(*mu) : "auto");
    e.emplace_back("step", step ? format_number(*step) : "backtracking");
    if (!step) {
      e.emplace_back("step_initial", "1/(8*sigma)");
      e.emplace_back("step_growth", format_number(growth));
      e.emplace_back("max_step_scale", format_number(max_scale));
      e.emplace_back("armijo", format_number(SolverConfig{}.armijo));
    }
    e.emplace_back("svd_seed", std::to_string(svd_seed));
  }
};

// Master seed: --seed, else VHL_SEED, else 0.
struct SeedFlag {
  std::optional<std::uint64_t> value;

  void attach(CLI::App* app) {
    app->add_option("--seed", value,
                    "Master seed (falls back to $VHL_SEED, then 0)");
  }

  std::uint64_t resolve() const {
    if (value) return *value;
    const char* env = std::getenv("VHL_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t seed = 0;
    const std::string_view text(env);
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw UsageFailure("VHL_SEED must be an unsigned integer, got '" +
                         std::string(text) + "'");
    return seed;
  }
};

ConfigEcho base_echo(const std::string& command) {
  return {{"tool", kVersion}, {"command", command}};
}

void refuse_existing_file(const fs::path& path, bool force) {
  if (!force && fs::exists(path))
    throw UsageFailure("refusing to overwrite " + path.string() +
                       " (pass --force)");
}

void prepare_out_dir(const fs::path& dir, bool force) {
  std::error_code ec;
  if (fs::exists(dir, ec)) {
    if (!fs::is_directory(dir, ec))
      throw UsageFailure(dir.string() + " exists and is not a directory");
    if (!force && !fs::is_empty(dir, ec))
      throw UsageFailure("refusing to write into non-empty " + dir.string() +
                         " (pass --force)");
  }
  fs::create_directories(dir, ec);
  if (ec)
    throw UsageFailure("cannot create " + dir.string() + ": " + ec.message());
}

void write_output(const std::string& path, const std::string& content,
                  std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  try {
    write_text_file(path, content);
  } catch (const std::runtime_error& e) {
    throw UsageFailure(e.what());
  }
}

ProblemInstance load_instance(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw DataFailure(e.what());
  }
  try {
    return instance_from_json(text);
  } catch (const ParseError& e) {
    throw DataFailure(path + ": " + e.what());
  }
}

Index resolve_rank(std::optional<Index> flag, const ProblemInstance& inst,
                   const HankelShape& shape) {
  const Index r = flag ? *flag : inst.r;
  if (r < 1 || r > shape.max_rank())
    throw UsageFailure("rank " + std::to_string(r) + " outside [1, " +
                       std::to_string(shape.max_rank()) + "]");
  return r;
}

unsigned default_jobs() {
  return std::max(1u, std::thread::hardware_concurrency());
}

const std::map<std::string, SubspaceKind> kSubspaceNames{
    {"iid_dft_rows", SubspaceKind::kIidDftRows},
    {"dft_columns", SubspaceKind::kDftColumns}};

void add_subspace_option(CLI::App* app, SubspaceKind& kind) {
  app->add_option("--subspace", kind,
                  "Subspace design: iid_dft_rows or dft_columns")
      ->transform(CLI::CheckedTransformer(kSubspaceNames, CLI::ignore_case))
      ->default_str("iid_dft_rows");
}

void add_range_option(CLI::App* app, const std::string& name,
                      IntRange& target, const std::string& help) {
  app->add_option_function<std::string>(
         name,
         [&target, name](const std::string& text) {
           try {
             target = parse_range(text);
           } catch (const std::invalid_argument& e) {
             throw CLI::ValidationError(name, e.what());
           }
         },
         help + " (a..b[:step], inclusive)")
      ->default_str(range_text(target));
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  Index n = 0, s = 0, r = 0;
  bool separated = true;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
  SeedFlag seed;
  std::string out = "-";
  bool force = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const std::uint64_t seed = a.seed.resolve();
  if (a.s > a.n)
    throw UsageFailure("s = " + std::to_string(a.s) + " exceeds n = " +
                       std::to_string(a.n));
  if (a.out != "-") refuse_existing_file(a.out, a.force);
  ProblemInstance inst;
  try {
    inst = make_instance(a.n, a.s, a.r, a.separated, seed, a.subspace);
  } catch (const std::invalid_argument& e) {
    throw UsageFailure(e.what());
  } catch (const GenerationError& e) {
    throw UsageFailure(e.what());
  }
  ConfigEcho echo = base_echo("gen");
  echo.emplace_back("n", std::to_string(a.n));
  echo.emplace_back("s", std::to_string(a.s));
  echo.emplace_back("r", std::to_string(a.r));
  echo.emplace_back("separated", a.separated ? "true" : "false");
  echo.emplace_back("subspace", to_string(a.subspace));
  echo.emplace_back("seed", std::to_string(seed));
  write_output(a.out, instance_to_json(inst, echo), out);
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string instance;
  std::optional<Index> r;
  SolverFlags solver;
  std::string out = "-";
  bool force = false;
  bool factors = false;
};

double relative_error(const CMatrix& estimate, const CMatrix& truth) {
  const double denom = truth.norm();
  return denom > 0.0 ? (estimate - truth).norm() / denom
                     : estimate.norm();
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.out != "-") refuse_existing_file(a.out, a.force);
  const ProblemInstance inst = load_instance(a.instance);
  const HankelShape shape = HankelShape::balanced(inst.n, inst.s);
  const Index r = resolve_rank(a.r, inst, shape);
  SolverConfig cfg = a.solver.config();
  const SolverReport report = solve(inst, shape, r, cfg);

  ReportExtras extras;
  extras.include_factors = a.factors;
  if (inst.truth)
    extras.rel_error = relative_error(recover_signal(report.factors, shape),
                                      inst.truth->signal);

  ConfigEcho echo = base_echo("solve");
  echo.emplace_back("instance", a.instance);
  echo.emplace_back("r", std::to_string(r));
  a.solver.echo(echo);
  write_output(a.out, report_to_json(report, echo, extras), out);

  std::ostream& log = a.out == "-" ? err : out;
  log << "stop=" << to_string(report.stop)
      << " iterations=" << report.iterations
      << " residual=" << format_number(report.residuals.back());
  if (extras.rel_error) log << " rel_error=" << format_number(*extras.rel_error);
  log << "\n";
  return report.stop == StopReason::kConverged ? kExitOk : kExitNotConverged;
}

// ---------------------------------------------------------------- music

struct MusicArgs {
  std::string instance;
  std::string mode = "recovered";
  std::optional<Index> r;
  Index grid = kDefaultMusicGrid;
  SolverFlags solver;
  std::string out_dir;
  bool force = false;
};

int cmd_music(const MusicArgs& a, std::ostream& out) {
  const ProblemInstance inst = load_instance(a.instance);
  const HankelShape shape = HankelShape::balanced(inst.n, inst.s);
  const Index r = resolve_rank(a.r, inst, shape);
  if (r > shape.n2() - 1)
    throw UsageFailure("MUSIC needs r <= n2 - 1 = " +
                       std::to_string(shape.n2() - 1));

  ConfigEcho echo = base_echo("music");
  echo.emplace_back("instance", a.instance);
  echo.emplace_back("mode", a.mode);
  echo.emplace_back("r", std::to_string(r));
  echo.emplace_back("grid", std::to_string(a.grid));

  int status = kExitOk;
  CMatrix X;
  if (a.mode == "truth") {
    if (!inst.truth)
      throw DataFailure(a.instance + ": truth mode needs a truth block");
    X = inst.truth->signal;
  } else {
    const SolverReport report = solve(inst, shape, r, a.solver.config());
    a.solver.echo(echo);
    echo.emplace_back("stop_reason", to_string(report.stop));
    X = recover_signal(report.factors, shape);
    if (report.stop != StopReason::kConverged) status = kExitNotConverged;
  }
  if (X.norm() == 0.0) throw DataFailure("signal is zero; nothing to scan");
  prepare_out_dir(a.out_dir, a.force);

  const MusicSpectrum spectrum = music_locations(X, r, shape, a.grid);
  std::optional<WeightEstimate> weights;
  std::vector<double> locations;
  for (const MusicPeak& p : spectrum.peaks) locations.push_back(p.location);
  std::string weight_problem;
  if (!spectrum.degraded && inst.n >= inst.s * r) {
    try {
      weights = recover_weights(inst.B, inst.y, locations);
    } catch (const NumericalError& e) {
      weight_problem = e.what();
    }
  }
  ConfigEcho peak_echo = echo;
  if (weights)
    peak_echo.emplace_back("weight_residual", format_number(weights->residual));
  if (!weight_problem.empty())
    peak_echo.emplace_back("weights", "unavailable: " + weight_problem);

  const fs::path dir(a.out_dir);
  write_output((dir / "spectrum.csv").string(), spectrum_csv(spectrum, echo),
               out);
  write_output((dir / "peaks.csv").string(),
               peaks_csv(spectrum, weights ? &*weights : nullptr, peak_echo),
               out);

  for (std::size_t k = 0; k < spectrum.peaks.size(); ++k)
    out << "tau[" << k << "]=" << format_number(spectrum.peaks[k].location)
        << "\n";
  if (spectrum.degraded) {
    out << "degraded: " << spectrum.peaks.size() << " of " << r
        << " peaks found\n";
    return kExitNotConverged;
  }
  if (!weight_problem.empty()) {
    out << "weights: " << weight_problem << "\n";
    return kExitData;
  }
  return status;
}

// ---------------------------------------------------------------- grids

struct GridArgs {
  int trials = 20;
  bool separated = true;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
  SeedFlag seed;
  unsigned jobs = 0;
  SolverFlags solver;
  std::string out_dir;
  bool force = false;
  bool timing = false;

  void attach(CLI::App* app) {
    app->add_option("--trials", trials, "Trials per cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app->add_flag("--separated,!--no-separated", separated,
                  "Require spike separation of at least 1/n")
        ->capture_default_str();
    add_subspace_option(app, subspace);
    seed.attach(app);
    app->add_option("--jobs", jobs, "Worker threads (default: logical cores)");
    solver.attach(app);
    app->add_option("--out-dir", out_dir, "Output directory")->required();
    app->add_flag("--force", force, "Write into a non-empty output directory");
    app->add_flag("--timing", timing,
                  "Record wall time per trial (breaks byte-identical reruns)");
  }

  HarnessOptions options(std::uint64_t master) const {
    HarnessOptions o;
    o.trials = trials;
    o.master_seed = master;
    o.jobs = jobs > 0 ? jobs : default_jobs();
    o.separated = separated;
    o.subspace = subspace;
    o.solver = solver.config();
    o.solver.track_truth = false;
    return o;
  }

  void echo(ConfigEcho& e, std::uint64_t master) const {
    e.emplace_back("trials", std::to_string(trials));
    e.emplace_back("separated", separated ? "true" : "false");
    e.emplace_back("subspace", to_string(subspace));
    e.emplace_back("master_seed", std::to_string(master));
    e.emplace_back("success_threshold", format_number(kSuccessThreshold));
    solver.echo(e);
  }
};

void write_grid(const PhaseGrid& grid, const GridArgs& a,
                const ConfigEcho& echo, const std::string& stem,
                std::ostream& out) {
  const fs::path dir(a.out_dir);
  write_output((dir / (stem + ".csv")).string(), phase_grid_csv(grid, echo),
               out);
  write_output((dir / "trials.csv").string(),
               trials_csv(grid.trials, echo, a.timing), out);
  write_output((dir / (stem + ".gp")).string(),
               phase_plot_script(grid, stem + ".csv", echo), out);
  int ok = 0;
  for (const TrialOutcome& t : grid.trials) ok += t.success ? 1 : 0;
  out << grid.cells.size() << " cells, " << ok << "/" << grid.trials.size()
      << " trials succeeded\n";
}

struct PhaseArgs {
  Index n = 64;
  IntRange s{1, 8, 1};
  IntRange r{1, 8, 1};
  GridArgs grid;
};

int cmd_phase(const PhaseArgs& a, std::ostream& out) {
  const std::uint64_t master = a.grid.seed.resolve();
  prepare_out_dir(a.grid.out_dir, a.grid.force);
  ConfigEcho echo = base_echo("phase");
  echo.emplace_back("n", std::to_string(a.n));
  echo.emplace_back("s", range_text(a.s));
  echo.emplace_back("r", range_text(a.r));
  a.grid.echo(echo, master);
  const PhaseGrid grid =
      phase_transition_sr(a.n, a.s, a.r, a.grid.options(master));
  write_grid(grid, a.grid, echo, "phase", out);
  return kExitOk;
}

struct PhaseNArgs {
  std::string fixed = "r";
  Index value = 4;
  IntRange vary{1, 8, 1};
  IntRange n{8, 64, 8};
  GridArgs grid;
};

int cmd_phase_n(const PhaseNArgs& a, std::ostream& out) {
  const std::uint64_t master = a.grid.seed.resolve();
  prepare_out_dir(a.grid.out_dir, a.grid.force);
  ConfigEcho echo = base_echo("phase-n");
  echo.emplace_back("fixed", a.fixed + "=" + std::to_string(a.value));
  echo.emplace_back("vary", (a.fixed == "r" ? "s=" : "r=") + range_text(a.vary));
  echo.emplace_back("n", range_text(a.n));
  a.grid.echo(echo, master);
  const FixedAxis axis = a.fixed == "r" ? FixedAxis::kRank : FixedAxis::kSubspace;
  const PhaseGrid grid = phase_transition_n(axis, a.value, a.vary, a.n,
                                            a.grid.options(master));
  write_grid(grid, a.grid, echo, "phase_n", out);
  return kExitOk;
}

// ---------------------------------------------------------------- convergence

struct ConvergenceArgs {
  std::vector<Index> n{128, 256};
  Index s = 4, r = 4;
  SubspaceKind subspace = SubspaceKind::kIidDftRows;
  SeedFlag seed;
  unsigned jobs = 0;
  SolverFlags solver;
  std::string out_dir;
  bool force = false;
};

int cmd_convergence(const ConvergenceArgs& a, std::ostream& out) {
  const std::uint64_t master = a.seed.resolve();
  for (Index n : a.n) {
    if (a.s > n)
      throw UsageFailure("s = " + std::to_string(a.s) + " exceeds n = " +
                         std::to_string(n));
    if (a.r > HankelShape::balanced(n, a.s).max_rank())
      throw UsageFailure("r = " + std::to_string(a.r) +
                         " exceeds the lift rank at n = " + std::to_string(n));
  }
  prepare_out_dir(a.out_dir, a.force);
  ConfigEcho echo = base_echo("convergence");
  echo.emplace_back("n", list_text(a.n));
  echo.emplace_back("s", std::to_string(a.s));
  echo.emplace_back("r", std::to_string(a.r));
  echo.emplace_back("separated", "true");
  echo.emplace_back("subspace", to_string(a.subspace));
  echo.emplace_back("master_seed", std::to_string(master));
  a.solver.echo(echo);

  HarnessOptions o;
  o.master_seed = master;
  o.jobs = a.jobs > 0 ? a.jobs : default_jobs();
  o.subspace = a.subspace;
  o.solver = a.solver.config();
  std::vector<ConvergenceTrace> traces;
  try {
    traces = convergence_study(a.n, a.s, a.r, o);
  } catch (const GenerationError& e) {
    throw UsageFailure(e.what());
  }

  const fs::path dir(a.out_dir);
  write_output((dir / "convergence.csv").string(),
               convergence_csv(traces, echo), out);
  write_output((dir / "convergence.gp").string(),
               convergence_plot_script(traces, "convergence.csv", echo), out);
  bool all = true;
  for (const ConvergenceTrace& tr : traces) {
    out << "n=" << tr.n << " stop=" << to_string(tr.stop)
        << " iterations=" << tr.log10_rel_error.size() - 1
        << " log10_rel_error=" << format_number(tr.log10_rel_error.back())
        << "\n";
    all = all && tr.stop == StopReason::kConverged;
  }
  return all ? kExitOk : kExitNotConverged;
}

}  // namespace

IntRange parse_range(std::string_view text) {
  IntRange r;
  std::string_view body = text;
  if (const auto colon = body.find(':'); colon != std::string_view::npos) {
    r.step = parse_index(body.substr(colon + 1), text);
    body = body.substr(0, colon);
    if (body.find("..") == std::string_view::npos)
      throw std::invalid_argument("bad range '" + std::string(text) +
                                  "': a step needs a..b");
  }
  if (const auto dots = body.find(".."); dots != std::string_view::npos) {
    r.first = parse_index(body.substr(0, dots), text);
    r.last = parse_index(body.substr(dots + 2), text);
  } else {
    r.first = r.last = parse_index(body, text);
  }
  if (r.step < 1)
    throw std::invalid_argument("bad range '" + std::string(text) +
                                "': step must be positive");
  if (r.last < r.first)
    throw std::invalid_argument("bad range '" + std::string(text) +
                                "': end before start");
  return r;
}

std::vector<Index> parse_list(std::string_view text) {
  std::vector<Index> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start);
    for (Index v : parse_range(item).values()) out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Blind super-resolution by projected gradient descent on "
               "vectorized Hankel factors.\n"
               "Ranges are written a..b[:step] (inclusive). The master seed "
               "falls back to $VHL_SEED.\n"
               "Exit status: 0 success, 2 not converged, 64 usage error, "
               "65 data or parse error.",
               "vhl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a random problem instance");
  gen_cmd->add_option("--n", gen.n, "Signal length")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--s", gen.s, "Subspace dimension")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--r", gen.r, "Number of spikes")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_flag("--separated,!--no-separated", gen.separated,
                    "Require spike separation of at least 1/n")
      ->capture_default_str();
  add_subspace_option(gen_cmd, gen.subspace);
  gen.seed.attach(gen_cmd);
  gen_cmd->add_option("--out,-o", gen.out, "Instance JSON path ('-' = stdout)")
      ->capture_default_str();
  gen_cmd->add_flag("--force", gen.force, "Overwrite an existing file");

  SolveArgs sol;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Recover the signal of an instance");
  solve_cmd->add_option("--instance,-i", sol.instance, "Instance JSON")->required();
  solve_cmd->add_option("--r", sol.r, "Rank (default: the instance's r)");
  sol.solver.attach(solve_cmd);
  solve_cmd->add_option("--out,-o", sol.out, "Report JSON path ('-' = stdout)")
      ->capture_default_str();
  solve_cmd->add_flag("--force", sol.force, "Overwrite an existing file");
  solve_cmd->add_flag("--factors", sol.factors, "Include the final factors");

  MusicArgs mus;
  CLI::App* music_cmd = app.add_subcommand("music", "Estimate locations and weights");
  music_cmd->add_option("--instance,-i", mus.instance, "Instance JSON")->required();
  music_cmd->add_option("--mode", mus.mode,
                        "Scan the recovered signal or the stored truth")
      ->check(CLI::IsMember({"recovered", "truth"}))
      ->capture_default_str();
  music_cmd->add_option("--r", mus.r, "Rank (default: the instance's r)");
  music_cmd->add_option("--grid", mus.grid, "Pseudospectrum grid size")
      ->check(CLI::Range(Index{2}, Index{1} << 24))
      ->capture_default_str();
  mus.solver.attach(music_cmd);
  music_cmd->add_option("--out-dir", mus.out_dir, "Output directory")->required();
  music_cmd->add_flag("--force", mus.force, "Write into a non-empty output directory");

  PhaseArgs ph;
  CLI::App* phase_cmd = app.add_subcommand("phase", "Success grid over (s, r) at fixed n");
  phase_cmd->add_option("--n", ph.n, "Signal length")->check(CLI::PositiveNumber)->capture_default_str();
  add_range_option(phase_cmd, "--s", ph.s, "Subspace dimensions");
  add_range_option(phase_cmd, "--r", ph.r, "Spike counts");
  ph.grid.attach(phase_cmd);

  PhaseNArgs pn;
  CLI::App* phase_n_cmd = app.add_subcommand("phase-n", "Success grid over n and one of s, r");
  phase_n_cmd->add_option("--fixed", pn.fixed, "Parameter held fixed")
      ->check(CLI::IsMember({"r", "s"}))
      ->capture_default_str();
  phase_n_cmd->add_option("--value", pn.value, "Value of the fixed parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_range_option(phase_n_cmd, "--vary", pn.vary, "Values of the other parameter");
  add_range_option(phase_n_cmd, "--n", pn.n, "Signal lengths");
  pn.grid.attach(phase_n_cmd);

  ConvergenceArgs cv;
  CLI::App* conv_cmd = app.add_subcommand("convergence", "Error traces for one instance per n");
  conv_cmd->add_option_function<std::string>(
              "--n",
              [&cv](const std::string& text) {
                try {
                  cv.n = parse_list(text);
                } catch (const std::invalid_argument& e) {
                  throw CLI::ValidationError("--n", e.what());
                }
              },
              "Signal lengths, comma-separated ranges")
      ->default_str("128,256");
  conv_cmd->add_option("--s", cv.s, "Subspace dimension")->check(CLI::PositiveNumber)->capture_default_str();
  conv_cmd->add_option("--r", cv.r, "Number of spikes")->check(CLI::PositiveNumber)->capture_default_str();
  add_subspace_option(conv_cmd, cv.subspace);
  cv.seed.attach(conv_cmd);
  conv_cmd->add_option("--jobs", cv.jobs, "Worker threads (default: logical cores)");
  cv.solver.attach(conv_cmd);
  conv_cmd->add_option("--out-dir", cv.out_dir, "Output directory")->required();
  conv_cmd->add_flag("--force", cv.force, "Write into a non-empty output directory");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("vhl");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (solve_cmd->parsed()) return cmd_solve(sol, out, err);
    if (music_cmd->parsed()) return cmd_music(mus, out);
    if (phase_cmd->parsed()) return cmd_phase(ph, out);
    if (phase_n_cmd->parsed()) return cmd_phase_n(pn, out);
    if (conv_cmd->parsed()) return cmd_convergence(cv, out);
  } catch (const UsageFailure& e) {
    err << "vhl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataFailure& e) {
    err << "vhl: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "vhl: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "vhl: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "vhl: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}

}  // namespace vhl::cli
