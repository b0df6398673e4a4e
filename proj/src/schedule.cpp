#include "annealsim/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "annealsim/output.hpp"
#include "annealsim/types.hpp"

namespace annealsim {

std::string to_string(ScheduleUnits units) {
  return units == ScheduleUnits::kGigahertz ? "ghz" : "dimensionless";
}

ScheduleUnits parse_units(const std::string& text) {
  if (text == "ghz" || text == "GHz") return ScheduleUnits::kGigahertz;
  if (text == "dimensionless") return ScheduleUnits::kDimensionless;
  throw DomainError("unknown schedule units '" + text + "' (expected ghz or dimensionless)");
}

AnnealingSchedule::AnnealingSchedule(std::vector<ScheduleKnot> knots, ScheduleUnits units)
    : knots_(std::move(knots)), units_(units) {
  if (knots_.size() < 2) throw DomainError("schedule needs at least two knots");
  if (knots_.front().s != 0.0 || knots_.back().s != 1.0) throw DomainError("schedule must start at s=0 and end at s=1");
  for (std::size_t k = 0; k < knots_.size(); ++k) {
    const auto& knot = knots_[k];
    if (!std::isfinite(knot.a) || !std::isfinite(knot.b) || knot.a < 0 || knot.b < 0) {
      throw DomainError("schedule values must be finite and non-negative");
    }
    if (k > 0 && !(knot.s > knots_[k - 1].s)) throw DomainError("schedule s values must be strictly increasing");
  }
  if (!(knots_.front().a > knots_.front().b)) throw DomainError("schedule must satisfy A(0) > B(0)");
  if (!(knots_.back().a < knots_.back().b)) throw DomainError("schedule must satisfy A(1) < B(1)");
}

std::pair<double, double> AnnealingSchedule::eval(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("schedule argument outside [0, 1]");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), s, [](double v, const ScheduleKnot& k) { return v < k.s; });
  if (it == knots_.end()) return {knots_.back().a, knots_.back().b};
  const auto& right = *it;
  const auto& left = *(it - 1);
  if (s == left.s) return {left.a, left.b};
  const double t = (s - left.s) / (right.s - left.s);
  return {left.a + t * (right.a - left.a), left.b + t * (right.b - left.b)};
}

AnnealingSchedule AnnealingSchedule::default_schedule() {
  // Eyeballed from the published DW_2000Q_6 curves; not the vendor table.
  return AnnealingSchedule(
      {
          {0.0, 5.60, 0.10},
          {0.1, 4.20, 0.60},
          {0.2, 3.00, 1.30},
          {0.3, 2.00, 2.20},
          {0.4, 1.20, 3.30},
          {0.5, 0.65, 4.60},
          {0.6, 0.30, 6.00},
          {0.7, 0.12, 7.50},
          {0.8, 0.04, 9.00},
          {0.9, 0.01, 10.50},
          {1.0, 0.00, 12.00},
      },
      ScheduleUnits::kGigahertz);
}

AnnealingSchedule AnnealingSchedule::linear() {
  return AnnealingSchedule({{0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}}, ScheduleUnits::kDimensionless);
}

AnnealingSchedule AnnealingSchedule::from_csv_text(const std::string& text, ScheduleUnits units) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<ScheduleKnot> knots;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r' || c == '\t'; }),
               line.end());
    if (line.empty()) continue;
    if (!header) {
      if (line != "s,A,B") throw ParseError("schedule CSV header must be \"s,A,B\"", line_no);
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    double values[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(row, cell, ',')) throw ParseError("schedule row needs three columns", line_no);
      try {
        std::size_t used = 0;
        values[c] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("not a number: '" + cell + "'", line_no);
      }
    }
    if (std::getline(row, cell, ',')) throw ParseError("schedule row has extra columns", line_no);
    knots.push_back({values[0], values[1], values[2]});
  }
  if (!header) throw ParseError("empty schedule file", line_no + 1);
  return AnnealingSchedule(std::move(knots), units);
}

AnnealingSchedule AnnealingSchedule::from_csv(const std::filesystem::path& path, ScheduleUnits units) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schedule file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_csv_text(buffer.str(), units);
}

std::string AnnealingSchedule::to_csv() const {
  std::string out = "s,A,B\n";
  for (const auto& k : knots_) out += format_double(k.s) + "," + format_double(k.a) + "," + format_double(k.b) + "\n";
  return out;
}

double PhaseConvention::angular_factor(const AnnealingSchedule& schedule) const {
  return schedule.units() == ScheduleUnits::kGigahertz && two_pi_for_ghz ? 2.0 * std::numbers::pi : 1.0;
}

std::vector<double> VariationalParams::flatten() const {
  std::vector<double> x(beta);
  x.insert(x.end(), gamma.begin(), gamma.end());
  return x;
}

VariationalParams VariationalParams::unflatten(std::span<const double> x, double tau) {
  if (x.size() % 2 != 0) throw DomainError("parameter vector must hold beta and gamma of equal length");
  const std::size_t p = x.size() / 2;
  VariationalParams out;
  out.beta.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(p));
  out.gamma.assign(x.begin() + static_cast<std::ptrdiff_t>(p), x.end());
  out.tau = tau;
  return out;
}

VariationalParams params_on_grid(const AnnealingSchedule& schedule, std::span<const double> grid, double tau,
                                 const PhaseConvention& convention) {
  if (grid.empty()) throw DomainError("parameter grid is empty");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("time step must be positive");
  const double w = convention.angular_factor(schedule) * tau;
  const std::size_t p = grid.size();
  VariationalParams out;
  out.tau = tau;
  out.beta.resize(p);
  out.gamma.resize(p);
  for (std::size_t k = 0; k < p; ++k) {
    const auto [a_k, b_k] = schedule.eval(grid[k]);
    out.gamma[k] = w * b_k;
    out.beta[k] = k + 1 < p ? -w * (schedule.a(grid[k + 1]) + a_k) / 2.0 : -w * a_k / 2.0;
  }
  return out;
}

std::vector<double> qaoa_grid(unsigned p) {
  if (p == 0) throw DomainError("p must be >= 1");
  std::vector<double> grid(p, 0.0);
  for (unsigned k = 1; k < p; ++k) grid[k] = static_cast<double>(k) / static_cast<double>(p - 1);
  return grid;
}

std::vector<double> aqa_grid(unsigned n) {
  if (n == 0) throw DomainError("n must be >= 1");
  std::vector<double> grid(n + 1);
  for (unsigned k = 0; k <= n; ++k) grid[k] = static_cast<double>(k) / static_cast<double>(n);
  return grid;
}

std::vector<double> midpoint_grid(unsigned steps) {
  if (steps == 0) throw DomainError("steps must be >= 1");
  std::vector<double> grid(steps);
  for (unsigned l = 0; l < steps; ++l) grid[l] = (l + 0.5) / static_cast<double>(steps);
  return grid;
}

VariationalParams qaoa_init(const AnnealingSchedule& schedule, unsigned p, double tau,
                            const PhaseConvention& convention) {
  return params_on_grid(schedule, qaoa_grid(p), tau, convention);
}

VariationalParams aqa_params(const AnnealingSchedule& schedule, unsigned n, double tau,
                             const PhaseConvention& convention) {
  return params_on_grid(schedule, aqa_grid(n), tau, convention);
}

}  // namespace annealsim
