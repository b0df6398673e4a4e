#include "annealsim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <json.hpp>

#include "annealsim/output.hpp"
#include "annealsim/parallel.hpp"

namespace annealsim {

std::vector<BenchGate> hadamard_circuit(unsigned num_qubits, unsigned reps) {
  if (num_qubits < 1) throw DomainError("hadamard_circuit needs at least one qubit");
  std::vector<BenchGate> gates;
  gates.reserve(hadamard_gate_count(num_qubits, reps));
  const SingleQubitGate h = SingleQubitGate::hadamard();
  for (unsigned r = 0; r < reps; ++r) {
    for (unsigned q = 0; q < num_qubits; ++q) gates.push_back({q, h});
  }
  return gates;
}

double normalize_time(std::uint64_t gates_ref, std::uint64_t gates, double elapsed) {
  if (gates_ref == 0 || gates == 0) throw DomainError("normalize_time: gate counts must be positive");
  return elapsed * static_cast<double>(gates_ref) / static_cast<double>(gates);
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = num_qubits;
  j["M"] = local_qubits;
  j["reps"] = reps;
  j["threads"] = threads;
  j["gate_count"] = gate_count;
  j["elapsed_total"] = elapsed_total;
  j["elapsed_compute"] = elapsed_compute;
  j["elapsed_exchange"] = elapsed_exchange;
  j["normalized_elapsed"] = normalized_elapsed;
  j["reference_N"] = reference_num_qubits;
  j["transferred"] = transferred;
  j["uniformity_error"] = uniformity_error;
  return j.dump(2);
}

std::string BenchReport::csv_header() {
  return "N,M,reps,threads,elapsed_total,elapsed_compute,elapsed_exchange,normalized";
}

std::string BenchReport::csv_row() const {
  return std::to_string(num_qubits) + "," + std::to_string(local_qubits) + "," + std::to_string(reps) + "," +
         std::to_string(threads) + "," + format_double(elapsed_total) + "," + format_double(elapsed_compute) + "," +
         format_double(elapsed_exchange) + "," + format_double(normalized_elapsed);
}

BenchReport run_bench(unsigned num_qubits, unsigned local_qubits, unsigned reps, int threads,
                      unsigned reference_num_qubits) {
  if (num_qubits > kMaxQubits) throw CapacityError("benchmark register exceeds the state-vector budget");
  if (reps < 1 || threads < 1 || reference_num_qubits < 1) throw DomainError("run_bench: reps, threads, reference N must be positive");
  const int previous = parallel::num_threads();
  parallel::set_num_threads(threads);

  const auto circuit = hadamard_circuit(num_qubits, reps);
  ShardedState sharded = ShardedState::shard(StateVector::basis_state(num_qubits, 0), local_qubits);
  TransferLedger ledger;

  const auto start = std::chrono::steady_clock::now();
  for (const auto& g : circuit) sharded.apply_single_qubit(g.qubit, g.gate, ledger);
  const auto stop = std::chrono::steady_clock::now();
  parallel::set_num_threads(previous);

  using Seconds = std::chrono::duration<double>;
  BenchReport report;
  report.num_qubits = num_qubits;
  report.local_qubits = local_qubits;
  report.reps = reps;
  report.threads = threads;
  report.gate_count = circuit.size();
  report.elapsed_total = Seconds(stop - start).count();
  report.elapsed_compute = Seconds(sharded.compute_time()).count();
  report.elapsed_exchange = Seconds(sharded.channel().elapsed()).count();
  // Clock reads bracket the parts, so total can only exceed their sum; clamp the rounding edge.
  report.elapsed_total = std::max(report.elapsed_total, report.elapsed_compute);
  report.reference_num_qubits = reference_num_qubits;
  report.normalized_elapsed =
      normalize_time(hadamard_gate_count(reference_num_qubits, reps), report.gate_count, report.elapsed_total);
  report.transferred = ledger.total_transferred();

  const double expected = std::ldexp(1.0, -static_cast<int>(num_qubits));
  double worst = 0.0;
  for (std::size_t r = 0; r < sharded.shard_count(); ++r) {
    for (const Complex& a : sharded.shard_data(r)) worst = std::max(worst, std::abs(std::norm(a) - expected));
  }
  report.uniformity_error = worst;
  return report;
}

}  // namespace annealsim
