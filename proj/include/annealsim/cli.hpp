#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace annealsim::cli {

/// Every knob a run can take. Validated before any compute and echoed as JSON
/// next to the results.
struct RunConfig {
  std::string subcommand;
  /// Instance file (.txt exact cover or .json Ising) or, for plot, the results directory.
  std::string input;
  /// Single output file given with -o; empty means a default name under `out`.
  std::string output;
  std::string out = "results";

  // generator
  unsigned gen_n = 12;
  unsigned gen_f = 20;
  double density = 0.3;

  std::string schedule = "default";
  /// "" keeps the schedule's own units.
  std::string units;
  /// GHz schedules use angle = 2 pi f tau unless cleared.
  bool two_pi = true;
  unsigned p = 5;
  unsigned n = 50;
  double tau = 0.4;
  std::string optimizer = "nelder-mead";
  unsigned max_calls = 200;
  std::uint64_t seed = 0;
  int threads = 1;

  unsigned grid_beta = 64;
  unsigned grid_gamma = 64;
  std::string form = "combined";
  std::string sampling = "left";

  double t_anneal = 4.0;
  std::vector<double> taus = {0.4, 0.2, 0.1, 0.05};

  std::vector<unsigned> sizes = {10, 12, 14, 16};
  unsigned per_size = 3;
  double clause_ratio = 1.5;

  unsigned bench_n = 20;
  unsigned bench_m = 20;
  unsigned reps = 11;
  unsigned reference_n = 32;

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
  /// Throws DomainError on the first invalid field.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Full command line; returns the process exit code (0 ok, 2 usage, 1 runtime).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Renders SVG figures for whatever known artifacts are in `results`.
/// Writes nothing if any artifact fails to parse; throws if none are found.
std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& results);

}  // namespace annealsim::cli
