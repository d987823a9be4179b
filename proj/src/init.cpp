#include "activeperc/init.hpp"

#include <cmath>
#include <limits>
#include <variant>

namespace activeperc {

double init_target_epsilon(const NoiseModel& model) {
  if (std::holds_alternative<noise::AdversarialBand>(model)) return 1.0 / 16.0;
  return noise_factor(model) / 16.0;
}

std::size_t init_test_size(const NoiseModel& model, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  const double zeta =
      std::holds_alternative<noise::AdversarialBand>(model) ? 1.0 : noise_factor(model);
  return static_cast<std::size_t>(std::ceil(8.0 / (zeta * zeta) * std::log(6.0 / delta)));
}

InitResult acute_initialize(LabelingOracle& oracle, Rng& rng, std::size_t d,
                            const InitConfig& config) {
  if (d < kMinDimension) throw DimensionError("dimension must be at least 3");
  if (oracle.dim() != d) throw DimensionError("oracle dimension does not match d");
  validate(config.model);

  const double eps = init_target_epsilon(config.model);
  const double sub_delta = config.delta / 3.0;
  const Schedule schedule =
      make_schedule(d, eps, sub_delta, config.model, config.scale_m, config.scale_b);
  RunOptions options;
  options.budget_factor = config.budget_factor;

  const UnitVector e1 = UnitVector::basis(d, 0);
  // Independent instance streams for the two sub-runs.
  Rng plus_rng(derive_seed(rng(), {1}));
  Rng minus_rng(derive_seed(rng(), {2}));
  const RunReport plus = active_perceptron(oracle, plus_rng, e1, eps, sub_delta, schedule, options);
  const RunReport minus =
      active_perceptron(oracle, minus_rng, -e1, eps, sub_delta, schedule, options);

  InitResult result{plus.final, plus.final, minus.final};
  result.labels = plus.total_labels + minus.total_labels;
  result.unlabeled_draws = plus.total_unlabeled + minus.total_unlabeled;

  const double separation = angle(plus.final, minus.final);
  if (separation < 1e-12) {
    result.degenerate = true;
    return result;
  }

  result.test_size = config.test_samples.value_or(init_test_size(config.model, config.delta));
  // Disagreement region R = {x : sign(v+ . x) != sign(v- . x)} has mass angle/pi.
  const double region_mass = separation / kPi;
  const double budget_real =
      config.budget_factor * static_cast<double>(result.test_size) / region_mass;
  const std::size_t budget = budget_real > 1e18 ? std::numeric_limits<std::size_t>::max()
                                                : static_cast<std::size_t>(std::ceil(budget_real));
  std::size_t draws = 0;
  for (std::size_t i = 0; i < result.test_size; ++i) {
    for (;;) {
      if (draws >= budget)
        throw BudgetExceeded("disagreement-region sampling exceeded its draw budget", draws);
      UnitVector x = sample_uniform_sphere(d, rng);
      ++draws;
      const Label plus_label = sign_label(dot(plus.final, x));
      if (plus_label == sign_label(dot(minus.final, x))) continue;
      const Label y = oracle.query(x);
      ++result.labels;
      if (plus_label != y)
        ++result.errors_plus;
      else
        ++result.errors_minus;
      break;
    }
  }
  result.unlabeled_draws += draws;
  result.chosen = result.errors_plus <= result.errors_minus ? plus.final : minus.final;
  return result;
}

}  // namespace activeperc
