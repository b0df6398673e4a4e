#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "annealsim/aqa.hpp"
#include "annealsim/exact_cover.hpp"
#include "helpers.hpp"

using namespace annealsim;
using testing_support::random_problem;
using testing_support::to_oracle;
using testing_support::to_vector;

namespace {

const oracle::Complex kI{0, 1};

AqaConfig toy_config(unsigned n, double tau) {
  AqaConfig c;
  c.n = n;
  c.tau = tau;
  c.schedule = AnnealingSchedule::linear();
  return c;
}

// One second-order step built from dense exponentials, schedule frozen at s.
oracle::Matrix dense_step(const IsingProblem& problem, const AnnealingSchedule& schedule, double s, double tau) {
  const unsigned n = problem.num_qubits();
  const auto [a, b] = schedule.eval(s);
  oracle::Matrix single(std::size_t{1} << n);
  for (unsigned q = 0; q < n; ++q) {
    single = single + oracle::embed(n, q, a * oracle::sigma_x() + (-b * problem.fields()[q]) * oracle::sigma_z());
  }
  const auto half = oracle::expm((tau / 2) * kI * single);
  const auto zz = oracle::expm((-tau * b) * kI * to_oracle(problem.couplers_only()).hamiltonian());
  return half * zz * half;
}

IsingProblem instance_problem(unsigned n, unsigned f, std::uint64_t seed) {
  return rescale(to_ising(generate_instance(n, f, 0.3, seed))).problem;
}

}  // namespace

TEST(Aqa, CombinedFormMatchesDenseSteps) {
  const auto problem = random_problem(4, 2);
  for (auto sampling : {TimeSampling::kLeftEndpoint, TimeSampling::kMidpoint}) {
    auto config = toy_config(3, 0.3);
    config.sampling = sampling;
    const auto result = aqa_run(problem, config);
    auto psi = oracle::plus_state(4);
    for (unsigned l = 0; l <= 3; ++l) {
      const double s = (l + (sampling == TimeSampling::kMidpoint ? 0.5 : 0.0)) / 4.0;
      psi = oracle::apply(dense_step(problem, config.schedule, s, 0.3), psi);
    }
    EXPECT_LT(oracle::max_diff(to_vector(result.state), psi), 1e-12);
  }
}

TEST(Aqa, GigahertzScheduleUsesAngularFactor) {
  const auto problem = random_problem(3, 5);
  AqaConfig config;
  config.n = 2;
  config.tau = 0.02;
  const auto result = aqa_run(problem, config);
  const double w = 2 * std::numbers::pi;
  auto psi = oracle::plus_state(3);
  for (unsigned l = 0; l <= 2; ++l) psi = oracle::apply(dense_step(problem, config.schedule, l / 3.0, w * 0.02), psi);
  EXPECT_LT(oracle::max_diff(to_vector(result.state), psi), 1e-12);
}

TEST(Aqa, SplitFormIsQaoaEvaluation) {
  const auto problem = instance_problem(8, 12, 3);
  for (auto sampling : {TimeSampling::kLeftEndpoint, TimeSampling::kMidpoint}) {
    auto config = toy_config(20, 0.2);
    config.form = AqaForm::kSplit;
    config.sampling = sampling;
    const auto result = aqa_run(problem, config);
    const auto q = evaluate(problem, split_params(config), 1.0, true);
    EXPECT_LT(result.state.max_abs_difference(*q.state), 1e-12);
    EXPECT_DOUBLE_EQ(*result.success_probability, *q.success_probability);
  }
  auto config = toy_config(9, 0.3);
  EXPECT_EQ(split_params(config), aqa_params(config.schedule, 9, 0.3));
  config.sampling = TimeSampling::kMidpoint;
  EXPECT_EQ(split_params(config), params_on_grid(config.schedule, midpoint_grid(10), 0.3));
}

TEST(Aqa, TrivialProblemStaysUniform) {
  const IsingProblem zero(5, std::vector<double>(5, 0.0), {});
  for (auto form : {AqaForm::kCombined, AqaForm::kSplit}) {
    auto config = toy_config(12, 0.4);
    config.form = form;
    config.record_observables = true;
    const auto result = aqa_run(zero, config);
    EXPECT_LT(max_difference_up_to_phase(result.state, StateVector::plus_state(5)), 1e-14);
    for (const auto& sample : result.trajectory)
      for (double v : sample.spin) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(Aqa, Trajectory) {
  const auto problem = instance_problem(6, 9, 4);
  auto config = toy_config(9, 0.5);
  config.record_observables = true;
  const auto result = aqa_run(problem, config);
  ASSERT_EQ(result.trajectory.size(), 10U);
  for (unsigned l = 0; l < 10; ++l) {
    EXPECT_EQ(result.trajectory[l].step, l);
    EXPECT_DOUBLE_EQ(result.trajectory[l].s, (l + 1) / 10.0);
    EXPECT_EQ(result.trajectory[l].spin.size(), 6U);
  }
  EXPECT_EQ(result.trajectory.back().spin, result.state.spin_expectations());
  // Same state with and without recording.
  config.record_observables = false;
  EXPECT_LT(aqa_run(problem, config).state.max_abs_difference(result.state), 1e-13);
  for (double v : StateVector::plus_state(6).spin_expectations()) EXPECT_EQ(v, 0.0);

  const auto csv = trajectory_csv(result.trajectory, 6);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,s,sz_0,sz_1,sz_2,sz_3,sz_4,sz_5");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
}

TEST(Aqa, SlowAnnealReachesPlantedSpins) {
  const auto instance = generate_instance(5, 8, 0.3, 12);
  const auto problem = rescale(to_ising(instance)).problem;
  const auto result = aqa_run(problem, toy_config(1999, 0.05));
  ASSERT_GT(*result.success_probability, 0.99);
  const auto spins = result.state.spin_expectations();
  for (unsigned q = 0; q < 5; ++q) {
    const double planted = ((*instance.planted >> q) & 1U) ? 1.0 : -1.0;
    EXPECT_NEAR(spins[q], planted, 0.02);
  }
}

TEST(Aqa, StepCountRaisesSuccess) {
  const auto problem = instance_problem(10, 15, 8);
  const double few = *aqa_run(problem, toy_config(5, 0.2)).success_probability;
  const double many = *aqa_run(problem, toy_config(100, 0.2)).success_probability;
  EXPECT_GT(many, few);
}

TEST(Aqa, NormConserved) {
  const auto result = aqa_run(instance_problem(12, 18, 1), toy_config(1000, 0.2));
  EXPECT_NEAR(result.state.norm_squared(), 1.0, 1e-10);
}

TEST(Aqa, ReferenceMatchesDensePropagator) {
  const auto problem = random_problem(3, 9);
  const auto schedule = AnnealingSchedule::linear();
  const double t = 2.0;
  const auto ref = reference_evolve(problem, schedule, t);
  EXPECT_LT(ref.last_change, 1e-9);
  // Exponential midpoint rule with exact per-step propagators.
  const unsigned steps = 4000;
  const double dt = t / steps;
  const auto hc = to_oracle(problem).hamiltonian();
  const auto hd = oracle::driver(3);
  auto psi = oracle::plus_state(3);
  for (unsigned l = 0; l < steps; ++l) {
    const auto [a, b] = schedule.eval((l + 0.5) / steps);
    // H(s) = -A H_D + B H_C
    psi = oracle::apply(oracle::expm(-dt * kI * ((-a) * hd + b * hc)), psi);
  }
  EXPECT_LT(oracle::max_diff(to_vector(ref.state), psi), 1e-6);
}

TEST(Aqa, ReferenceEdgeCases) {
  const IsingProblem zero(3, {0, 0, 0}, {});
  const auto ref = reference_evolve(zero, AnnealingSchedule::linear(), 1.0);
  EXPECT_LT(max_difference_up_to_phase(ref.state, StateVector::plus_state(3)), 1e-13);
  EXPECT_THROW(reference_evolve(zero, AnnealingSchedule::linear(), 1.0, 32), DomainError);
  EXPECT_THROW(reference_evolve(random_problem(13, 1), AnnealingSchedule::linear(), 1.0), CapacityError);
  ReferenceOptions tight;
  tight.max_doublings = 1;
  tight.tolerance = 1e-15;
  EXPECT_THROW(reference_evolve(random_problem(4, 2), AnnealingSchedule::linear(), 5.0, 64, tight), OracleError);
}

TEST(Aqa, MidpointSelfConvergenceIsSecondOrder) {
  const auto problem = instance_problem(6, 9, 5);
  const double t = 5.0;
  auto run = [&](unsigned steps) {
    auto c = toy_config(steps - 1, t / steps);
    c.sampling = TimeSampling::kMidpoint;
    return aqa_run(problem, c).state;
  };
  const auto a = run(64), b = run(128), c = run(256);
  const double ratio = a.max_abs_difference(b) / b.max_abs_difference(c);
  EXPECT_GT(ratio, 3.4);
  EXPECT_LT(ratio, 4.6);
}

TEST(Aqa, LeftEndpointSamplingIsFirstOrder) {
  // Freezing the schedule at the start of each step costs one order.
  const auto problem = instance_problem(6, 9, 5);
  const auto table = trotter_order_check(problem, AnnealingSchedule::linear(), 4.0, {0.05, 0.025, 0.0125},
                                         TimeSampling::kLeftEndpoint);
  EXPECT_NEAR(*table.rows.back().ratio_combined, 2.0, 0.3);
}

TEST(Aqa, TrotterTableSmallStep) {
  const auto problem = instance_problem(6, 9, 5);
  const auto table =
      trotter_order_check(problem, AnnealingSchedule::linear(), 5.0, {5.0 / 2500, 5.0 / 5000}, TimeSampling::kMidpoint);
  EXPECT_LT(table.rows[1].error_combined, 1e-7);
  EXPECT_NEAR(*table.rows[1].ratio_combined, 4.0, 0.4);
  EXPECT_THROW(trotter_order_check(problem, AnnealingSchedule::linear(), 5.0, {0.3}), DomainError);
  const auto csv = table.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "tau,steps,error_combined,error_split,combined_vs_split,ratio_combined,ratio_split,ratio_mutual");
}

TEST(Aqa, SmallStepTracksReferenceSuccess) {
  const auto problem = instance_problem(6, 9, 7);
  const auto result = aqa_run(problem, toy_config(200, 0.01));
  const auto ref = reference_evolve(problem, AnnealingSchedule::linear(), anneal_time(200, 0.01));
  const double reference_success = ref.state.basis_probability(*problem.known_solution());
  EXPECT_NEAR(*result.success_probability, reference_success, 1e-3);
}

TEST(Aqa, ExponentialFit) {
  std::vector<ScalingPoint> half, uniform;
  for (unsigned n : {10U, 12U, 14U, 16U, 20U}) {
    half.push_back({n, "s", std::exp2(-0.5 * n)});
    uniform.push_back({n, "u", std::exp2(-1.0 * n)});
  }
  const auto fit = fit_exponential_decay(half);
  EXPECT_NEAR(fit.alpha, 0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-11);
  EXPECT_NEAR(fit.residual, 0.0, 1e-12);
  EXPECT_NEAR(fit_exponential_decay(uniform).alpha, 1.0, 1e-12);

  half.push_back({18, "zero", 0.0});
  const auto skipped = fit_exponential_decay(half);
  EXPECT_EQ(skipped.points, 5U);
  ASSERT_EQ(skipped.warnings.size(), 1U);
  EXPECT_NE(skipped.warnings[0].find("zero"), std::string::npos);
  EXPECT_THROW(fit_exponential_decay({{10, "a", 0.1}}), DomainError);

  const auto json = nlohmann::json::parse(fit.to_json());
  EXPECT_TRUE(json.contains("alpha") && json.contains("intercept") && json.contains("residual"));
}

TEST(Aqa, ScalingStudy) {
  std::vector<LabeledProblem> instances;
  for (unsigned n : {6U, 8U, 10U}) instances.push_back({"n" + std::to_string(n), instance_problem(n, n + n / 2, n)});
  const auto study = scaling_study(instances, toy_config(20, 0.3));
  ASSERT_EQ(study.table.size(), 3U);
  EXPECT_EQ(study.table[1].instance, "n8");
  EXPECT_DOUBLE_EQ(study.table[1].success, *aqa_run(instances[1].problem, toy_config(20, 0.3)).success_probability);
  EXPECT_TRUE(std::isfinite(study.fit.alpha));
  EXPECT_EQ(study.to_csv().substr(0, 18), "N,instance,success");

  instances.pop_back();
  EXPECT_THROW(scaling_study(instances, toy_config(5, 0.3)), DomainError);
  instances.push_back({"nosol", random_problem(9, 1)});
  EXPECT_THROW(scaling_study(instances, toy_config(5, 0.3)), DomainError);
}

TEST(Aqa, WorkComparison) {
  const auto problem = instance_problem(6, 9, 2);
  const auto aqa = aqa_run(problem, toy_config(50, 0.2));
  OptTrace trace;
  for (std::size_t k = 0; k < 200; ++k) trace.entries.push_back({k + 1, {}, 0.0, 0.0, 0.01 * (k % 7)});
  trace.best_success_index = 6;
  const auto report = work_comparison(aqa, 50, trace, 7);
  EXPECT_EQ(report.qaoa_work, 1400U);
  EXPECT_EQ(report.aqa_work, 51U);
  EXPECT_DOUBLE_EQ(report.work_ratio, 1400.0 / 51.0);
  EXPECT_DOUBLE_EQ(*report.qaoa_success, 0.06);
  EXPECT_EQ(report.aqa_success, aqa.success_probability);
}

TEST(Aqa, Validation) {
  EXPECT_THROW(aqa_run(random_problem(3, 1), toy_config(0, 0.1)), DomainError);
  EXPECT_THROW(aqa_run(random_problem(3, 1), toy_config(3, 0.0)), DomainError);
  EXPECT_EQ(parse_form("split"), AqaForm::kSplit);
  EXPECT_EQ(parse_sampling("midpoint"), TimeSampling::kMidpoint);
  EXPECT_THROW(parse_form("merged"), DomainError);
  EXPECT_EQ(to_string(TimeSampling::kLeftEndpoint), "left");
}
