#include "annealsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "annealsim/aqa.hpp"
#include "annealsim/bench.hpp"
#include "annealsim/exact_cover.hpp"
#include "annealsim/output.hpp"
#include "annealsim/parallel.hpp"
#include "annealsim/qaoa.hpp"

namespace annealsim::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const std::set<std::string> kSubcommands = {"gen",         "solve",   "qaoa-scan", "qaoa-opt", "aqa",
                                            "tdse-check", "scaling", "bench",     "plot"};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string RunConfig::to_json() const {
  ordered_json j;
  j["subcommand"] = subcommand;
  j["input"] = input;
  j["output"] = output;
  j["out"] = out;
  j["gen_n"] = gen_n;
  j["gen_f"] = gen_f;
  j["density"] = density;
  j["schedule"] = schedule;
  j["units"] = units;
  j["two_pi"] = two_pi;
  j["p"] = p;
  j["n"] = n;
  j["tau"] = tau;
  j["optimizer"] = optimizer;
  j["max_calls"] = max_calls;
  j["seed"] = seed;
  j["threads"] = threads;
  j["grid_beta"] = grid_beta;
  j["grid_gamma"] = grid_gamma;
  j["form"] = form;
  j["sampling"] = sampling;
  j["t_anneal"] = t_anneal;
  j["taus"] = taus;
  j["sizes"] = sizes;
  j["per_size"] = per_size;
  j["clause_ratio"] = clause_ratio;
  j["bench_n"] = bench_n;
  j["bench_m"] = bench_m;
  j["reps"] = reps;
  j["reference_n"] = reference_n;
  return j.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  RunConfig c;
  // Missing keys keep their defaults so older echoes still load.
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) j.at(key).get_to(field);
  };
  get("subcommand", c.subcommand);
  get("input", c.input);
  get("output", c.output);
  get("out", c.out);
  get("gen_n", c.gen_n);
  get("gen_f", c.gen_f);
  get("density", c.density);
  get("schedule", c.schedule);
  get("units", c.units);
  get("two_pi", c.two_pi);
  get("p", c.p);
  get("n", c.n);
  get("tau", c.tau);
  get("optimizer", c.optimizer);
  get("max_calls", c.max_calls);
  get("seed", c.seed);
  get("threads", c.threads);
  get("grid_beta", c.grid_beta);
  get("grid_gamma", c.grid_gamma);
  get("form", c.form);
  get("sampling", c.sampling);
  get("t_anneal", c.t_anneal);
  get("taus", c.taus);
  get("sizes", c.sizes);
  get("per_size", c.per_size);
  get("clause_ratio", c.clause_ratio);
  get("bench_n", c.bench_n);
  get("bench_m", c.bench_m);
  get("reps", c.reps);
  get("reference_n", c.reference_n);
  return c;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
  };
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  require(kSubcommands.contains(subcommand), "unknown subcommand '" + subcommand + "'");
  require(threads >= 1, "--threads must be >= 1");
  require(!out.empty(), "--out must not be empty");
  require(gen_n >= 1 && gen_n <= 63, "--n for gen must be in [1, 63]");
  require(gen_f >= 1, "--f must be >= 1");
  require(density > 0.0 && density < 1.0, "--density must be in (0, 1)");
  require(!schedule.empty(), "--schedule must not be empty");
  if (!units.empty()) parse_units(units);
  require(p >= 1, "--p must be >= 1");
  require(n >= 1, "--n must be >= 1");
  require(positive(tau), "--tau must be positive");
  parse_optimizer(optimizer);
  require(max_calls >= 1, "--max-calls must be >= 1");
  require(grid_beta >= 1 && grid_gamma >= 1, "--grid resolutions must be >= 1");
  parse_form(form);
  parse_sampling(sampling);
  require(positive(t_anneal), "--t-anneal must be positive");
  require(!taus.empty() && std::all_of(taus.begin(), taus.end(), positive), "--taus must be positive");
  require(per_size >= 1, "--per-size must be >= 1");
  require(positive(clause_ratio), "--clause-ratio must be positive");
  if (subcommand == "scaling") {
    require(std::set<unsigned>(sizes.begin(), sizes.end()).size() >= 3, "--sizes needs at least three distinct N");
    require(std::all_of(sizes.begin(), sizes.end(), [](unsigned s) { return s >= 1 && s <= 24; }),
            "--sizes must lie in [1, 24]");
  }
  require(bench_n >= 1 && bench_n <= kMaxQubits, "--qubits must be in [1, 30]");
  require(bench_m >= 1 && bench_m <= bench_n, "--local must be in [1, --qubits]");
  require(reps >= 1 && reference_n >= 1, "--reps and --reference must be >= 1");
  const bool needs_input = subcommand != "gen" && subcommand != "scaling" && subcommand != "bench";
  require(!needs_input || !input.empty(), subcommand + " needs an input path");
}

namespace {

struct Problem {
  std::string label;
  IsingProblem ising;
};

Problem load_problem(const RunConfig& cfg) {
  const fs::path path = cfg.input;
  if (path.extension() == ".json") return {path.stem().string(), ising_from_json(read_file(path))};
  const ExactCoverInstance instance = parse_instance(path);
  return {instance.label.empty() ? path.stem().string() : instance.label, to_ising(instance)};
}

AnnealingSchedule load_schedule(const RunConfig& cfg) {
  const auto override_units = cfg.units.empty() ? std::nullopt : std::optional(parse_units(cfg.units));
  auto with_units = [&](const AnnealingSchedule& s) {
    if (!override_units || *override_units == s.units()) return s;
    return AnnealingSchedule({s.knots().begin(), s.knots().end()}, *override_units);
  };
  if (cfg.schedule == "default") return with_units(AnnealingSchedule::default_schedule());
  if (cfg.schedule == "linear") return with_units(AnnealingSchedule::linear());
  return AnnealingSchedule::from_csv(cfg.schedule, override_units.value_or(ScheduleUnits::kGigahertz));
}

fs::path output_path(const RunConfig& cfg, const std::string& fallback) {
  return cfg.output.empty() ? fs::path(cfg.out) / fallback : fs::path(cfg.output);
}

std::string time_suffix(const AnnealingSchedule& schedule) {
  return schedule.units() == ScheduleUnits::kGigahertz ? " ns" : "";
}

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : "n/a"; }

AqaConfig aqa_config(const RunConfig& cfg, const AnnealingSchedule& schedule) {
  AqaConfig config;
  config.n = cfg.n;
  config.tau = cfg.tau;
  config.schedule = schedule;
  config.form = parse_form(cfg.form);
  config.sampling = parse_sampling(cfg.sampling);
  config.convention.two_pi_for_ghz = cfg.two_pi;
  return config;
}

void cmd_gen(const RunConfig& cfg, std::ostream& out) {
  const ExactCoverInstance instance = generate_instance(cfg.gen_n, cfg.gen_f, cfg.density, cfg.seed);
  const fs::path path = output_path(cfg, instance.label + ".txt");
  write_instance(instance, path);
  out << "wrote " << path.string() << " (" << instance.label << ")\n";
}

void cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Problem problem = load_problem(cfg);
  const BruteForceResult result = brute_force(problem.ising);
  const unsigned n = problem.ising.num_qubits();
  const double energy = result.min_energy + problem.ising.constant();
  ordered_json j;
  j["instance"] = problem.label;
  j["energy"] = energy;
  j["minimizers"] = ordered_json::array();
  for (BasisLabel z : result.minimizers) j["minimizers"].push_back(bit_string(z, n));
  out << (result.minimizers.size() == 1 ? "unique minimizer" : "minimizers") << ":";
  for (BasisLabel z : result.minimizers) out << " x = " << bit_string(z, n);
  out << "\nenergy = " << format_double(energy) << "\n";
  if (fs::path(cfg.input).extension() != ".json") {
    const ExactCoverInstance instance = parse_instance(cfg.input);
    const std::int64_t value = objective(instance, result.minimizers.front());
    out << "objective = " << value << "\n";
    j["objective"] = value;
  }
  write_file_atomic(fs::path(cfg.out) / "solve.json", j.dump(2) + "\n");
}

void cmd_qaoa_scan(const RunConfig& cfg, std::ostream& out) {
  const Problem problem = load_problem(cfg);
  const LandscapeGrid grid = grid_scan(problem.ising, cfg.grid_beta, cfg.grid_gamma);
  const fs::path path = output_path(cfg, "scan.csv");
  write_file_atomic(path, grid.to_csv());
  const auto best = std::min_element(grid.energy.begin(), grid.energy.end()) - grid.energy.begin();
  const auto i = static_cast<std::size_t>(best) / grid.gamma_resolution;
  const auto k = static_cast<std::size_t>(best) % grid.gamma_resolution;
  out << fmt::format("wrote {} ({}x{} grid); lowest energy (with constant) {} at beta={} gamma={}\n", path.string(), cfg.grid_beta,
                     cfg.grid_gamma, format_double(grid.energy[static_cast<std::size_t>(best)] + problem.ising.constant()),
                     format_double(grid.beta(i)), format_double(grid.gamma(k)));
}

void cmd_qaoa_opt(const RunConfig& cfg, std::ostream& out) {
  const Problem problem = load_problem(cfg);
  const AnnealingSchedule schedule = load_schedule(cfg);
  const RescaleResult scaled = rescale(problem.ising);
  const VariationalParams init = qaoa_init(schedule, cfg.p, cfg.tau, PhaseConvention{cfg.two_pi});
  const OptTrace trace =
      optimize(scaled.problem, init, parse_optimizer(cfg.optimizer), cfg.max_calls, scaled.divisor);
  write_file_atomic(output_path(cfg, "trace.jsonl"), trace.to_json_lines());
  const TraceEntry& best = trace.best_energy();
  ordered_json j;
  j["instance"] = problem.label;
  j["divisor"] = scaled.divisor;
  j["calls"] = trace.entries.size();
  j["converged"] = trace.converged;
  const double c = problem.ising.constant();
  j["initial_energy"] = trace.entries.front().energy_unscaled + c;
  j["best_energy_call"] = best.call;
  j["best_energy"] = best.energy_unscaled + c;
  if (trace.best_success_index) {
    const TraceEntry& s = trace.entries[*trace.best_success_index];
    j["best_success_call"] = s.call;
    j["best_success"] = *s.success_probability;
  }
  write_file_atomic(fs::path(cfg.out) / "qaoa-opt.json", j.dump(2) + "\n");
  out << fmt::format("calls = {} (budget {}), best energy = {} at call {}\n", trace.entries.size(), cfg.max_calls,
                     format_double(best.energy_unscaled + c), best.call);
  out << "success at best energy = " << optional_number(best.success_probability) << "\n";
}

void cmd_aqa(const RunConfig& cfg, std::ostream& out) {
  const Problem problem = load_problem(cfg);
  const AnnealingSchedule schedule = load_schedule(cfg);
  const RescaleResult scaled = rescale(problem.ising);
  AqaConfig config = aqa_config(cfg, schedule);
  config.record_observables = true;
  const AqaResult result = aqa_run(scaled.problem, config);
  write_file_atomic(output_path(cfg, "trajectory.csv"),
                    trajectory_csv(result.trajectory, scaled.problem.num_qubits()));
  ordered_json j;
  j["instance"] = problem.label;
  j["n"] = cfg.n;
  j["tau"] = cfg.tau;
  j["t_anneal"] = config.t_anneal();
  const double energy = result.energy * scaled.divisor + problem.ising.constant();
  j["energy"] = energy;
  j["success"] = result.success_probability ? ordered_json(*result.success_probability) : ordered_json(nullptr);
  write_file_atomic(fs::path(cfg.out) / "aqa.json", j.dump(2) + "\n");
  // (n+1) tau is not exact in binary64; 12 significant digits prints the intended decimal.
  out << fmt::format("t_anneal = {:.12g}{}\n", config.t_anneal(), time_suffix(schedule));
  out << "energy = " << format_double(energy) << "\n";
  out << "success = " << optional_number(result.success_probability) << "\n";
}

void cmd_tdse_check(const RunConfig& cfg, std::ostream& out) {
  const Problem problem = load_problem(cfg);
  const AnnealingSchedule schedule = load_schedule(cfg);
  const RescaleResult scaled = rescale(problem.ising);
  const TrotterTable table =
      trotter_order_check(scaled.problem, schedule, cfg.t_anneal, cfg.taus, parse_sampling(cfg.sampling),
                          PhaseConvention{cfg.two_pi});
  const fs::path path = output_path(cfg, "trotter.csv");
  write_file_atomic(path, table.to_csv());
  out << "reference steps = " << table.reference_steps << "\n" << table.to_csv();
}

void cmd_scaling(const RunConfig& cfg, std::ostream& out) {
  const AnnealingSchedule schedule = load_schedule(cfg);
  std::vector<LabeledProblem> instances;
  for (unsigned size : cfg.sizes) {
    const auto clauses = static_cast<unsigned>(std::ceil(cfg.clause_ratio * size));
    for (unsigned k = 0; k < cfg.per_size; ++k) {
      const std::uint64_t seed = cfg.seed + 1000ULL * size + k;
      const ExactCoverInstance instance = generate_instance(size, clauses, cfg.density, seed);
      instances.push_back({instance.label, rescale(to_ising(instance)).problem});
    }
  }
  const ScalingStudy study = scaling_study(instances, aqa_config(cfg, schedule));
  write_file_atomic(output_path(cfg, "scaling.csv"), study.to_csv());
  write_file_atomic(fs::path(cfg.out) / "fit.json", study.fit.to_json() + "\n");
  for (const auto& w : study.fit.warnings) out << "warning: " << w << "\n";
  out << fmt::format("alpha = {}, intercept = {}, residual = {}\n", format_double(study.fit.alpha),
                     format_double(study.fit.intercept), format_double(study.fit.residual));
}

void cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const BenchReport report = run_bench(cfg.bench_n, cfg.bench_m, cfg.reps, cfg.threads, cfg.reference_n);
  write_file_atomic(fs::path(cfg.out) / "bench.json", report.to_json() + "\n");
  write_file_atomic(output_path(cfg, "bench.csv"), BenchReport::csv_header() + "\n" + report.csv_row() + "\n");
  out << BenchReport::csv_header() << "\n" << report.csv_row() << "\n";
  out << "transferred = " << report.transferred << " complex numbers\n";
}

void cmd_plot(const RunConfig& cfg, std::ostream& out) {
  for (const auto& path : emit_plots(cfg.input)) out << "wrote " << path.string() << "\n";
}

void dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.subcommand == "gen") return cmd_gen(cfg, out);
  if (cfg.subcommand == "solve") return cmd_solve(cfg, out);
  if (cfg.subcommand == "qaoa-scan") return cmd_qaoa_scan(cfg, out);
  if (cfg.subcommand == "qaoa-opt") return cmd_qaoa_opt(cfg, out);
  if (cfg.subcommand == "aqa") return cmd_aqa(cfg, out);
  if (cfg.subcommand == "tdse-check") return cmd_tdse_check(cfg, out);
  if (cfg.subcommand == "scaling") return cmd_scaling(cfg, out);
  if (cfg.subcommand == "bench") return cmd_bench(cfg, out);
  return cmd_plot(cfg, out);
}

// ---- plot emission ----

using Table = std::vector<std::vector<std::string>>;

Table read_csv(const fs::path& path) {
  std::istringstream in(read_file(path));
  Table rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream fields(line);
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(std::move(cells));
  }
  if (rows.size() < 2) throw std::runtime_error(path.string() + ": no data rows");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw std::runtime_error(fmt::format("{}: row {} has {} fields, header has {}", path.string(), r + 1,
                                           rows[r].size(), rows[0].size()));
    }
  }
  return rows;
}

double number(const std::string& text, const fs::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw std::runtime_error(path.string() + ": '" + text + "' is not a number");
}

std::vector<std::pair<std::string, std::string>> plot_scan(const fs::path& path) {
  const Table rows = read_csv(path);
  const std::size_t cells = rows.size() - 1;
  std::size_t gamma_res = 0;
  while (gamma_res < cells && rows[1 + gamma_res][0] == rows[1][0]) ++gamma_res;
  if (cells % gamma_res != 0) throw std::runtime_error(path.string() + ": not a rectangular grid");
  const std::size_t beta_res = cells / gamma_res;
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& [column, name] : {std::pair{2, std::string("energy")}, std::pair{3, std::string("success")}}) {
    Heatmap map;
    map.title = "p = 1 QAOA " + name;
    map.x_label = "gamma";
    map.y_label = "beta";
    map.x_max = 2 * std::numbers::pi;
    map.y_max = std::numbers::pi;
    map.values.assign(beta_res, std::vector<double>(gamma_res));
    bool finite = false;
    for (std::size_t c = 0; c < cells; ++c) {
      const double v = number(rows[1 + c][static_cast<std::size_t>(column)], path);
      finite = finite || std::isfinite(v);
      map.values[c / gamma_res][c % gamma_res] = v;
    }
    if (finite) files.emplace_back("landscape_" + name + ".svg", render_svg(map));
  }
  return files;
}

std::string plot_trajectory(const fs::path& path) {
  const Table rows = read_csv(path);
  LineChart chart;
  chart.title = "AQA spin trajectory";
  chart.x_label = "s";
  chart.y_label = "<sigma^z>";
  for (std::size_t col = 2; col < rows[0].size(); ++col) {
    LineSeries series;
    series.name = rows[0][col];
    for (std::size_t r = 1; r < rows.size(); ++r) {
      series.x.push_back(number(rows[r][1], path));
      series.y.push_back(number(rows[r][col], path));
    }
    chart.series.push_back(std::move(series));
  }
  return render_svg(chart);
}

std::string plot_scaling(const fs::path& path, const fs::path& fit_path) {
  const Table rows = read_csv(path);
  LineChart chart;
  chart.title = "AQA success vs problem size";
  chart.x_label = "N";
  chart.y_label = "success";
  chart.log2_y = true;
  LineSeries points{"success", {}, {}};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double p = number(rows[r][2], path);
    if (!(p > 0.0)) continue;
    points.x.push_back(number(rows[r][0], path));
    points.y.push_back(p);
  }
  if (fs::exists(fit_path)) {
    const auto fit = nlohmann::json::parse(read_file(fit_path));
    const double alpha = fit.at("alpha").get<double>();
    const double intercept = fit.at("intercept").get<double>();
    LineSeries line{"fit", {}, {}};
    for (double x : points.x) {
      line.x.push_back(x);
      line.y.push_back(std::exp2(intercept - alpha * x));
    }
    chart.series.push_back(std::move(line));
  }
  chart.series.insert(chart.series.begin(), std::move(points));
  return render_svg(chart);
}

std::string plot_trotter(const fs::path& path) {
  const Table rows = read_csv(path);
  LineChart chart;
  chart.title = "Trotter error vs time step";
  chart.x_label = "tau";
  chart.y_label = "max amplitude error";
  chart.log2_y = true;
  for (std::size_t col = 2; col <= 4; ++col) {
    LineSeries series{rows[0][col], {}, {}};
    for (std::size_t r = 1; r < rows.size(); ++r) {
      series.x.push_back(number(rows[r][0], path));
      series.y.push_back(number(rows[r][col], path));
    }
    chart.series.push_back(std::move(series));
  }
  return render_svg(chart);
}

}  // namespace

std::vector<fs::path> emit_plots(const fs::path& results) {
  if (!fs::is_directory(results)) throw std::runtime_error("results directory " + results.string() + " does not exist");
  std::vector<std::pair<std::string, std::string>> files;
  if (fs::exists(results / "scan.csv")) {
    for (auto& f : plot_scan(results / "scan.csv")) files.push_back(std::move(f));
  }
  if (fs::exists(results / "trajectory.csv")) files.emplace_back("trajectory.svg", plot_trajectory(results / "trajectory.csv"));
  if (fs::exists(results / "scaling.csv")) {
    files.emplace_back("scaling.svg", plot_scaling(results / "scaling.csv", results / "fit.json"));
  }
  if (fs::exists(results / "trotter.csv")) files.emplace_back("trotter.svg", plot_trotter(results / "trotter.csv"));
  if (files.empty()) {
    throw std::runtime_error("no plottable results (scan.csv, trajectory.csv, scaling.csv, trotter.csv) in " +
                             results.string());
  }
  // Everything is rendered before the first write.
  std::vector<fs::path> written;
  for (const auto& [name, svg] : files) {
    written.push_back(results / name);
    write_file_atomic(written.back(), svg);
  }
  return written;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"State-vector QAOA / AQA experiments on exact cover instances", "annealsim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", cfg.threads, "Worker threads");
  app.add_option("--seed", cfg.seed, "Seed for all randomness");
  app.add_option("--units", cfg.units, "Schedule units: ghz or dimensionless");
  app.add_option("--out", cfg.out, "Results directory");
  bool no_two_pi = false;
  app.add_flag("--no-two-pi", no_two_pi, "GHz schedules: use angle = f tau instead of 2 pi f tau");

  auto add_input = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", cfg.input, what)->required();
  };
  auto add_schedule = [&](CLI::App* sub) {
    sub->add_option("--schedule", cfg.schedule, "default, linear, or a CSV file with header s,A,B");
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", cfg.output, "Output file"); };

  auto* gen = app.add_subcommand("gen", "Generate an exact cover instance with a unique planted cover");
  gen->add_option("--n", cfg.gen_n, "Variables");
  gen->add_option("--f", cfg.gen_f, "Clauses");
  gen->add_option("--density", cfg.density, "Fill probability of non-cover rows");
  add_output(gen);

  auto* solve = app.add_subcommand("solve", "Brute-force the ground state");
  add_input(solve, "Instance file");

  std::string grid;
  auto* scan = app.add_subcommand("qaoa-scan", "p = 1 landscape over beta in [0, pi), gamma in [0, 2 pi)");
  add_input(scan, "Instance file");
  scan->add_option("--grid", grid, "Resolution BxG, e.g. 64x64");
  add_output(scan);

  auto* opt = app.add_subcommand("qaoa-opt", "Optimize QAOA angles from the annealing-inspired start");
  add_input(opt, "Instance file");
  add_schedule(opt);
  opt->add_option("--p", cfg.p, "Layers");
  opt->add_option("--tau", cfg.tau, "Time step of the initial parameters");
  opt->add_option("--optimizer", cfg.optimizer, "nelder-mead or fd-cg");
  opt->add_option("--max-calls", cfg.max_calls, "Circuit evaluation budget");
  add_output(opt);

  auto* aqa = app.add_subcommand("aqa", "Approximate quantum annealing run");
  add_input(aqa, "Instance file");
  add_schedule(aqa);
  aqa->add_option("--n", cfg.n, "Steps (n + 1 layers)");
  aqa->add_option("--tau", cfg.tau, "Time step");
  aqa->add_option("--form", cfg.form, "combined or split");
  aqa->add_option("--sampling", cfg.sampling, "left or midpoint");
  add_output(aqa);

  auto* tdse = app.add_subcommand("tdse-check", "Trotter error table against a converged reference");
  add_input(tdse, "Instance file (N <= 10)");
  add_schedule(tdse);
  tdse->add_option("--t-anneal", cfg.t_anneal, "Total annealing time");
  tdse->add_option("--taus", cfg.taus, "Time steps, comma separated")->delimiter(',');
  tdse->add_option("--sampling", cfg.sampling, "left or midpoint (default midpoint)");
  add_output(tdse);

  auto* scaling = app.add_subcommand("scaling", "AQA success probability vs N with exponential fit");
  add_schedule(scaling);
  scaling->add_option("--sizes", cfg.sizes, "Problem sizes, comma separated")->delimiter(',');
  scaling->add_option("--per-size", cfg.per_size, "Instances per size");
  scaling->add_option("--clause-ratio", cfg.clause_ratio, "Clauses per variable");
  scaling->add_option("--density", cfg.density, "Generator fill probability");
  scaling->add_option("--n", cfg.n, "AQA steps");
  scaling->add_option("--tau", cfg.tau, "AQA time step");
  scaling->add_option("--form", cfg.form, "combined or split");
  scaling->add_option("--sampling", cfg.sampling, "left or midpoint");
  add_output(scaling);

  auto* bench = app.add_subcommand("bench", "Hadamard benchmark on a sharded state");
  bench->add_option("--qubits", cfg.bench_n, "Qubits");
  bench->add_option("--local", cfg.bench_m, "Local qubits per shard");
  bench->add_option("--reps", cfg.reps, "Circuit repetitions");
  bench->add_option("--reference", cfg.reference_n, "Reference qubit count for normalization");
  add_output(bench);

  auto* plot = app.add_subcommand("plot", "Render SVG figures from a results directory");
  add_input(plot, "Results directory");

  try {
    app.parse(argc, argv);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.two_pi = !no_two_pi;
    if (cfg.subcommand == "tdse-check" && tdse->count("--sampling") == 0) cfg.sampling = "midpoint";
    if (cfg.subcommand == "plot" && app.count("--out") == 0) cfg.out = cfg.input;
    if (!grid.empty()) {
      unsigned b = 0, g = 0;
      char x = 0, extra = 0;
      std::istringstream in(grid);
      if (!(in >> b >> x >> g) || x != 'x' || (in >> extra)) throw DomainError("--grid must look like 64x64");
      cfg.grid_beta = b;
      cfg.grid_gamma = g;
    }
    cfg.validate();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    parallel::set_num_threads(cfg.threads);
    if (cfg.subcommand != "plot") fs::create_directories(cfg.out);
    dispatch(cfg, out);
    write_file_atomic(fs::path(cfg.out) / (cfg.subcommand + ".config.json"), cfg.to_json());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace annealsim::cli
