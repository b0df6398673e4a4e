#include "annealsim/exact_cover.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "annealsim/output.hpp"
#include "annealsim/spin.hpp"

namespace annealsim {

ExactCoverInstance::ExactCoverInstance(unsigned n, unsigned f, std::vector<std::uint8_t> entries, std::string name)
    : num_variables(n), num_clauses(f), a(std::move(entries)), label(std::move(name)) {
  if (n == 0 || f == 0) throw DomainError("exact cover instance needs N >= 1 and F >= 1");
  if (n > 63) throw CapacityError("exact cover instance: N > 63 variables is not representable");
  if (a.size() != static_cast<std::size_t>(n) * f) throw DomainError("exact cover matrix has wrong size");
  for (std::uint8_t v : a) {
    if (v > 1) throw DomainError("exact cover matrix entries must be 0 or 1");
  }
}

std::int64_t objective(const ExactCoverInstance& instance, BasisLabel x) {
  std::int64_t total = 0;
  for (unsigned f = 0; f < instance.num_clauses; ++f) {
    std::int64_t covered = -1;
    for (unsigned i = 0; i < instance.num_variables; ++i) {
      if (instance(i, f) && ((x >> i) & 1U)) ++covered;
    }
    total += covered * covered;
  }
  return total;
}

IsingProblem to_ising(const ExactCoverInstance& instance) {
  const unsigned n = instance.num_variables;
  const unsigned f = instance.num_clauses;
  // overlap(i, j) = (a a^T)_ij; (a b)_i is the row weight, equal to overlap(i, i).
  std::vector<std::int64_t> overlap(static_cast<std::size_t>(n) * n, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = i; j < n; ++j) {
      std::int64_t dot = 0;
      for (unsigned c = 0; c < f; ++c) dot += instance(i, c) * instance(j, c);
      overlap[i * n + j] = overlap[j * n + i] = dot;
    }
  }
  std::vector<double> h(n, 0.0);
  std::vector<Coupler> couplers;
  std::int64_t pair_sum = 0;
  std::int64_t diag_term = 0;
  for (unsigned i = 0; i < n; ++i) {
    const std::int64_t row_weight = overlap[i * n + i];
    std::int64_t row_sum = 0;
    for (unsigned j = 0; j < n; ++j) row_sum += overlap[i * n + j];
    h[i] = 0.5 * static_cast<double>(row_sum) - static_cast<double>(row_weight);
    for (unsigned j = i + 1; j < n; ++j) {
      if (overlap[i * n + j] != 0) {
        couplers.push_back({i, j, 0.5 * static_cast<double>(overlap[i * n + j])});
        pair_sum += overlap[i * n + j];
      }
    }
    diag_term += overlap[i * n + i] - 2 * row_weight;
  }
  const double constant = static_cast<double>(f) + 0.5 * static_cast<double>(pair_sum) +
                          0.5 * static_cast<double>(diag_term);
  return IsingProblem(n, std::move(h), std::move(couplers), constant, instance.planted);
}

RescaleResult rescale(const IsingProblem& problem) {
  constexpr double kFieldMax = 2.0, kFieldMin = -2.0, kCouplingMax = 1.0, kCouplingMin = -1.0;
  const auto h = problem.fields();
  const auto couplers = problem.couplers();
  double r = 0.0;
  if (!h.empty()) {
    const auto [lo, hi] = std::minmax_element(h.begin(), h.end());
    r = std::max({r, *hi / kFieldMax, *lo / kFieldMin});
  }
  if (!couplers.empty()) {
    auto by_value = [](const Coupler& a, const Coupler& b) { return a.value < b.value; };
    const auto [lo, hi] = std::minmax_element(couplers.begin(), couplers.end(), by_value);
    r = std::max({r, hi->value / kCouplingMax, lo->value / kCouplingMin});
  }
  if (r <= 1e-12) return {problem, 1.0};
  std::vector<double> scaled_h(h.begin(), h.end());
  for (double& v : scaled_h) v /= r;
  std::vector<Coupler> scaled_j(couplers.begin(), couplers.end());
  for (Coupler& c : scaled_j) c.value /= r;
  return {IsingProblem(problem.num_qubits(), std::move(scaled_h), std::move(scaled_j), problem.constant() / r,
                       problem.known_solution()),
          r};
}

BruteForceResult brute_force(const IsingProblem& problem) {
  const unsigned n = problem.num_qubits();
  if (n > kBruteForceLimit) {
    throw CapacityError("brute force limited to " + std::to_string(kBruteForceLimit) + " qubits");
  }
  const std::size_t size = dimension(n);
  const std::size_t block = std::min<std::size_t>(size, std::size_t{1} << 16);
  const std::size_t blocks = size / block;
  auto tie_tolerance = [](double e) { return 1e-9 * (1.0 + std::abs(e)); };

  struct Partial {
    double min = 0.0;
    std::vector<BasisLabel> labels;
  };
  std::vector<Partial> partials(blocks);
#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    thread_local std::vector<double> energies;
    energies.resize(block);
    const BasisLabel begin = static_cast<BasisLabel>(b) * block;
    fill_energies(problem, begin, block, energies.data());
    Partial& part = partials[static_cast<std::size_t>(b)];
    part.min = *std::min_element(energies.begin(), energies.end());
    const double tol = tie_tolerance(part.min);
    for (std::size_t k = 0; k < block; ++k) {
      if (energies[k] <= part.min + tol) part.labels.push_back(begin + k);
    }
  }
  double global_min = partials.front().min;
  for (const Partial& p : partials) global_min = std::min(global_min, p.min);
  const double tol = tie_tolerance(global_min);
  BruteForceResult result;
  for (const Partial& p : partials) {
    if (p.min > global_min + tol) continue;
    for (BasisLabel z : p.labels) {
      if (problem.energy(z) <= global_min + tol) result.minimizers.push_back(z);
    }
  }
  result.min_energy = problem.energy(result.minimizers.front());
  for (BasisLabel z : result.minimizers) result.min_energy = std::min(result.min_energy, problem.energy(z));
  return result;
}

ExactCoverInstance generate_instance(unsigned n, unsigned f, double density, std::uint64_t seed,
                                     const GeneratorOptions& options) {
  if (n == 0 || n > 63) throw DomainError("generate_instance: N must be in [1, 63]");
  if (f == 0) throw DomainError("generate_instance: F must be >= 1");
  if (!(density > 0.0 && density < 1.0)) throw DomainError("generate_instance: density must be in (0, 1)");

  for (unsigned attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::mt19937_64 rng(seed + attempt);
    const unsigned max_cover = std::min(n, f);
    const unsigned lo = std::min(max_cover, std::max(1U, n / 4));
    const unsigned hi = std::min(max_cover, std::max(lo, n / 2));
    const unsigned cover_size = std::uniform_int_distribution<unsigned>(lo, hi)(rng);

    std::vector<unsigned> rows(n);
    std::iota(rows.begin(), rows.end(), 0U);
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(cover_size);
    std::sort(rows.begin(), rows.end());

    std::vector<std::uint8_t> a(static_cast<std::size_t>(n) * f, 0);
    std::vector<unsigned> columns(f);
    std::iota(columns.begin(), columns.end(), 0U);
    std::shuffle(columns.begin(), columns.end(), rng);
    std::uniform_int_distribution<unsigned> pick_row(0, cover_size - 1);
    for (unsigned k = 0; k < f; ++k) {
      const unsigned owner = k < cover_size ? rows[k] : rows[pick_row(rng)];
      a[static_cast<std::size_t>(owner) * f + columns[k]] = 1;
    }

    BasisLabel planted = 0;
    for (unsigned r : rows) planted |= BasisLabel{1} << r;

    std::bernoulli_distribution coin(density);
    std::uniform_int_distribution<unsigned> pick_col(0, f - 1);
    for (unsigned i = 0; i < n; ++i) {
      if ((planted >> i) & 1U) continue;
      bool any = false;
      for (unsigned c = 0; c < f; ++c) {
        const bool one = coin(rng);
        a[static_cast<std::size_t>(i) * f + c] = one ? 1 : 0;
        any = any || one;
      }
      if (!any) a[static_cast<std::size_t>(i) * f + pick_col(rng)] = 1;
    }

    ExactCoverInstance instance(n, f, std::move(a),
                                "ec-n" + std::to_string(n) + "-f" + std::to_string(f) + "-s" + std::to_string(seed + attempt));
    instance.planted = planted;
    if (n <= options.verify_limit) {
      const BruteForceResult ground = brute_force(to_ising(instance));
      if (ground.minimizers.size() != 1 || ground.minimizers.front() != planted) continue;
    }
    return instance;
  }
  throw GenerationError("generate_instance: no instance with a unique cover after " +
                        std::to_string(options.max_attempts) + " attempts");
}

std::string bit_string(BasisLabel z, unsigned num_qubits) {
  std::string bits(num_qubits, '0');
  for (unsigned i = 0; i < num_qubits; ++i) bits[i] = ((z >> i) & 1U) ? '1' : '0';
  return bits;
}

BasisLabel parse_bit_string(const std::string& bits) {
  if (bits.empty() || bits.size() > 63) throw DomainError("bit string length out of range");
  BasisLabel z = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      z |= BasisLabel{1} << i;
    } else if (bits[i] != '0') {
      throw DomainError("bit string may only contain 0 and 1");
    }
  }
  return z;
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

ExactCoverInstance parse_instance_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++line_no;
    out = trim(out);
    return true;
  };

  if (!next_line(line)) throw ParseError("missing header \"N F\"", 1);
  long long n = 0, f = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> f) || (header >> extra)) throw ParseError("malformed header, expected \"N F\"", line_no);
  }
  if (n < 1 || n > 63 || f < 1) throw ParseError("header values out of range", line_no);

  std::vector<std::uint8_t> a;
  a.reserve(static_cast<std::size_t>(n * f));
  for (long long row = 0; row < n; ++row) {
    if (!next_line(line)) throw ParseError("missing row " + std::to_string(row), line_no + 1);
    if (line.size() != static_cast<std::size_t>(f)) {
      throw ParseError("row " + std::to_string(row) + " has " + std::to_string(line.size()) + " entries, expected " +
                           std::to_string(f),
                       line_no);
    }
    for (char ch : line) {
      if (ch != '0' && ch != '1') throw ParseError("row " + std::to_string(row) + " contains '" + ch + "'", line_no);
      a.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
  }

  ExactCoverInstance instance(static_cast<unsigned>(n), static_cast<unsigned>(f), std::move(a));
  while (next_line(line)) {
    if (line.empty()) continue;
    if (line.front() != '#') throw ParseError("unexpected content after the matrix", line_no);
    std::istringstream comment(line.substr(1));
    std::string key, value;
    comment >> key;
    std::getline(comment, value);
    value = trim(value);
    if (key == "label") {
      instance.label = value;
    } else if (key == "planted") {
      if (value.size() != static_cast<std::size_t>(n)) throw ParseError("planted solution has wrong length", line_no);
      try {
        instance.planted = parse_bit_string(value);
      } catch (const DomainError& e) {
        throw ParseError(e.what(), line_no);
      }
    }
  }
  return instance;
}

ExactCoverInstance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

std::string format_instance(const ExactCoverInstance& instance) {
  std::string out = std::to_string(instance.num_variables) + " " + std::to_string(instance.num_clauses) + "\n";
  for (unsigned i = 0; i < instance.num_variables; ++i) {
    for (unsigned c = 0; c < instance.num_clauses; ++c) out += instance(i, c) ? '1' : '0';
    out += '\n';
  }
  if (!instance.label.empty()) out += "# label " + instance.label + "\n";
  if (instance.planted) out += "# planted " + bit_string(*instance.planted, instance.num_variables) + "\n";
  return out;
}

void write_instance(const ExactCoverInstance& instance, const std::filesystem::path& path) {
  write_file_atomic(path, format_instance(instance));
}

std::string ising_to_json(const IsingProblem& problem) {
  nlohmann::ordered_json j;
  j["n"] = problem.num_qubits();
  j["h"] = std::vector<double>(problem.fields().begin(), problem.fields().end());
  auto couplers = nlohmann::ordered_json::array();
  for (const Coupler& c : problem.couplers()) couplers.push_back({c.i, c.j, c.value});
  j["j"] = std::move(couplers);
  j["c"] = problem.constant();
  if (problem.known_solution()) j["solution"] = bit_string(*problem.known_solution(), problem.num_qubits());
  return j.dump(2);
}

IsingProblem ising_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto n = j.at("n").get<unsigned>();
  auto h = j.at("h").get<std::vector<double>>();
  std::vector<Coupler> couplers;
  for (const auto& entry : j.at("j")) {
    couplers.push_back({entry.at(0).get<unsigned>(), entry.at(1).get<unsigned>(), entry.at(2).get<double>()});
  }
  std::optional<BasisLabel> solution;
  if (j.contains("solution")) solution = parse_bit_string(j.at("solution").get<std::string>());
  return IsingProblem(n, std::move(h), std::move(couplers), j.value("c", 0.0), solution);
}

}  // namespace annealsim
