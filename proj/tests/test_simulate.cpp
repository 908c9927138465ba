#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ctmp/errors.hpp"
#include "ctmp/presets.hpp"
#include "ctmp/rng.hpp"
#include "ctmp/simulate.hpp"

#include "oracle_utils.hpp"

using namespace ctmp;

namespace {

RateModel two_state() {
  Matrix w(2, 2);
  w << -1.0, 1.0, 1.0, -1.0;
  return validate_generator(w, {0});
}

}  // namespace

TEST_CASE("simulation is deterministic for a fixed seed") {
  const RateModel model = cftr_model();
  const Trajectory a = gillespie(model, 100.0, std::nullopt, 42);
  const Trajectory b = gillespie(model, 100.0, std::nullopt, 42);
  CHECK(a.initial_state == b.initial_state);
  CHECK(a.jump_times == b.jump_times);
  CHECK(a.jump_targets == b.jump_targets);

  const Trajectory c = gillespie(model, 100.0, std::nullopt, 43);
  CHECK(a.jump_times != c.jump_times);
}

TEST_CASE("mean sojourn matches the exponential holding time") {
  const RateModel model = two_state();
  const Trajectory traj = gillespie(model, 1e4, 0, 7);

  // Complete sojourns in state 0: entry at a jump to 0 (or time 0), exit at
  // the following jump.
  double total = 0.0;
  long count = 0;
  double entered = 0.0;
  int state = traj.initial_state;
  for (std::size_t k = 0; k < traj.jump_times.size(); ++k) {
    if (state == 0) {
      total += traj.jump_times[k] - entered;
      ++count;
    }
    state = traj.jump_targets[k];
    entered = traj.jump_times[k];
  }
  CHECK(count >= 4500);
  CHECK(total / count >= 0.97);
  CHECK(total / count <= 1.03);
}

TEST_CASE("occupancy fractions converge to the stationary distribution") {
  // Batch-mean standard errors over 100 windows.
  const RateModel model = chain3_model(1.0, 2.0);
  const double horizon = 2e4;
  const Trajectory traj = gillespie(model, horizon, std::nullopt, 11);

  const int batches = 100;
  Matrix batch_occ = Matrix::Zero(batches, model.n());
  const double width = horizon / batches;
  int state = traj.initial_state;
  double t = 0.0;
  std::size_t jump = 0;
  for (int b = 0; b < batches; ++b) {
    const double end = (b + 1) * width;
    while (t < end) {
      const double next =
          jump < traj.jump_times.size() ? std::min(traj.jump_times[jump], end) : end;
      batch_occ(b, state) += next - t;
      t = next;
      if (jump < traj.jump_times.size() && t == traj.jump_times[jump])
        state = traj.jump_targets[jump++];
    }
  }
  batch_occ /= width;
  for (int s = 0; s < model.n(); ++s) {
    const double mean = batch_occ.col(s).mean();
    const double var =
        (batch_occ.col(s).array() - mean).square().sum() / (batches - 1);
    const double se = std::sqrt(var / batches);
    CHECK(std::abs(mean - model.pi()(s)) <= 3.0 * se);
  }
}

TEST_CASE("absorbing state pads the trajectory and sets the flag") {
  Matrix w(2, 2);
  w << 0.0, 1.0, 0.0, -1.0;
  const RateModel model = validate_generator(w, {1});

  const Trajectory stuck = gillespie(model, 5.0, 0, 3);
  CHECK(stuck.absorbed);
  CHECK(stuck.jump_times.empty());
  CHECK(stuck.state_at(5.0) == 0);

  const Trajectory falls_in = gillespie(model, 1e3, 1, 3);
  CHECK(falls_in.absorbed);
  CHECK(falls_in.jump_times.size() == 1);
  CHECK(falls_in.jump_targets.back() == 0);
}

TEST_CASE("observation extraction") {
  SUBCASE("chain path 2 -> 3 -> 2 flips twice") {
    Trajectory traj;
    traj.initial_state = 1;
    traj.jump_times = {1.0, 2.5};
    traj.jump_targets = {2, 1};
    traj.horizon = 4.0;
    const ObservationTrace trace = observe(traj, chain3_model(1.0, 1.0));
    CHECK(trace.initial_value == 0);
    CHECK(trace.transition_times == std::vector<double>{1.0, 2.5});
  }
  SUBCASE("CFTR path 3 -> 4 -> 5 -> 4 flips once") {
    Trajectory traj;
    traj.initial_state = 2;
    traj.jump_times = {0.5, 1.0, 1.5};
    traj.jump_targets = {3, 4, 3};
    traj.horizon = 2.0;
    const ObservationTrace trace = observe(traj, cftr_model());
    CHECK(trace.initial_value == 0);
    CHECK(trace.transition_times == std::vector<double>{0.5});
  }
  SUBCASE("constant path yields no transitions") {
    Trajectory traj;
    traj.initial_state = 0;
    traj.horizon = 2.0;
    const ObservationTrace trace = observe(traj, chain3_model(1.0, 1.0));
    CHECK(trace.transition_times.empty());
  }
}

TEST_CASE("sampling the observation trace") {
  ObservationTrace trace;
  trace.initial_value = 0;
  trace.transition_times = {0.5};
  trace.horizon = 1.0;

  SUBCASE("quarter grid") {
    const SampledObservations s = sample(trace, 0.25);
    CHECK(s.initial_value == 0);
    CHECK(s.values == std::vector<int>{0, 1, 1, 1});
  }
  SUBCASE("grid that misses the endpoint") {
    const SampledObservations s = sample(trace, 0.3);
    CHECK(s.values == std::vector<int>{0, 1, 1});
  }
  SUBCASE("step beyond the horizon") {
    CHECK_THROWS_AS(sample(trace, 2.0), EmptyGrid);
  }
}

TEST_CASE("sampling commutes with observing the trajectory") {
  Rng rng(808);
  const RateModel model = cftr_model();
  for (int rep = 0; rep < 5; ++rep) {
    const Trajectory traj = gillespie(model, 3.0, std::nullopt, 900 + rep);
    const ObservationTrace trace = observe(traj, model);
    CHECK(trace.transition_times.size() <= traj.jump_times.size());
    for (double dt : {0.01, 0.037, 0.25}) {
      const SampledObservations s = sample(trace, dt);
      for (std::size_t k = 0; k < s.values.size(); ++k) {
        const double t = static_cast<double>(k + 1) * dt;
        const int direct = model.observable(traj.state_at(t)) ? 1 : 0;
        CHECK(s.values[k] == direct);
      }
    }
  }
}

TEST_CASE("sampled change points recover the transition times within dt") {
  const RateModel model = chain3_model(1.0, 2.0);
  for (int rep = 0; rep < 5; ++rep) {
    const Trajectory traj = gillespie(model, 5.0, std::nullopt, 77 + rep);
    const ObservationTrace trace = observe(traj, model);
    const double dt = 1e-3;
    const SampledObservations s = sample(trace, dt);

    std::vector<double> recovered;
    int prev = s.initial_value;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
      if (s.values[k] != prev) recovered.push_back(static_cast<double>(k + 1) * dt);
      prev = s.values[k];
    }
    // Transitions after the last grid point are invisible to the sampler.
    const double last_grid = static_cast<double>(s.values.size()) * dt;
    std::vector<double> visible;
    for (double t : trace.transition_times)
      if (t <= last_grid) visible.push_back(t);
    REQUIRE(recovered.size() == visible.size());
    for (std::size_t i = 0; i < visible.size(); ++i) {
      CHECK(recovered[i] >= visible[i]);
      CHECK(recovered[i] - visible[i] <= dt);
    }
  }
}

TEST_CASE("change-point trace reproduces the sampled record exactly") {
  const RateModel model = cftr_model();
  for (int rep = 0; rep < 5; ++rep) {
    const Trajectory traj = gillespie(model, 4.0, std::nullopt, 1400 + rep);
    const ObservationTrace trace = observe(traj, model);
    for (double dt : {0.002, 0.03}) {
      const SampledObservations s = sample(trace, dt);
      const ObservationTrace quantized = change_point_trace(s);
      CHECK(quantized.horizon == static_cast<double>(s.values.size()) * dt);

      const SampledObservations again = sample(quantized, dt);
      CHECK(again.initial_value == s.initial_value);
      CHECK(again.values == s.values);

      // Each recovered midpoint sits within half a bin of a true transition.
      for (double t : quantized.transition_times) {
        double nearest = 1e300;
        for (double truth : trace.transition_times)
          nearest = std::min(nearest, std::abs(truth - t));
        CHECK(nearest <= dt / 2.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("trajectory and trace JSON round trips") {
  const RateModel model = cftr_model();
  const Trajectory traj = gillespie(model, 10.0, std::nullopt, 5);
  const Trajectory traj2 = Trajectory::from_json(traj.to_json());
  CHECK(traj2.initial_state == traj.initial_state);
  CHECK(traj2.jump_times == traj.jump_times);
  CHECK(traj2.jump_targets == traj.jump_targets);
  CHECK(traj2.horizon == traj.horizon);

  const ObservationTrace trace = observe(traj, model);
  const ObservationTrace trace2 = ObservationTrace::from_json(trace.to_json());
  CHECK(trace2.initial_value == trace.initial_value);
  CHECK(trace2.transition_times == trace.transition_times);
  CHECK(trace2.horizon == trace.horizon);

  CHECK_THROWS_AS(ObservationTrace::from_json(nlohmann::json{{"y0", 0}}), ParseError);
  nlohmann::json bad = trace.to_json();
  bad["times"] = std::vector<double>{2.0, 1.0};
  CHECK_THROWS_AS(ObservationTrace::from_json(bad), InvalidTrace);
}
