#pragma once

#include <cstddef>
#include <optional>

#include "activeperc/geometry.hpp"
#include "activeperc/learner.hpp"
#include "activeperc/oracles.hpp"

namespace activeperc {

struct InitConfig {
  NoiseModel model;
  double delta = 0.1;
  std::optional<std::size_t> test_samples;
  double scale_m = kDefaultScaleM;
  double scale_b = kDefaultScaleB;
  double budget_factor = 100.0;
};

/// Target accuracy of the two sub-runs: (1 - 2 eta)/16 for bounded models,
/// 1/16 otherwise.
double init_target_epsilon(const NoiseModel& model);

/// ceil(8/(1 - 2 eta)^2 ln(6/delta)) for bounded models (eta = 0 when
/// realizable), ceil(8 ln(6/delta)) for adversarial noise.
std::size_t init_test_size(const NoiseModel& model, double delta);

struct InitResult {
  UnitVector chosen;
  UnitVector v_plus;
  UnitVector v_minus;
  std::size_t test_size = 0;
  std::size_t errors_plus = 0;
  std::size_t errors_minus = 0;
  std::size_t labels = 0;
  std::size_t unlabeled_draws = 0;
  /// True when v_plus and v_minus coincide and no test could be run.
  bool degenerate = false;
};

/// Runs active_perceptron from e_1 and from -e_1, then picks the one with
/// fewer mistakes on labeled points drawn from the region where the two
/// disagree (ties go to the e_1 run).
InitResult acute_initialize(LabelingOracle& oracle, Rng& rng, std::size_t d,
                            const InitConfig& config);

}  // namespace activeperc
