#include "activeperc/passive.hpp"

#include <chrono>

namespace activeperc {

LabeledExample LabeledExampleSource::draw() {
  UnitVector x = sample_uniform_sphere(oracle_->dim(), *instances_);
  const Label y = oracle_->query(x);
  ++drawn_;
  return {std::move(x), y};
}

std::pair<LabeledExample, std::size_t> LabeledExampleSource::draw_in_band(
    const Band& band, std::size_t draw_budget) {
  BandDraw drawn = rejection_sample_band(band, *instances_, draw_budget);
  const Label y = oracle_->query(drawn.x);
  oracle_->charge_unobserved(drawn.draws_used - 1);
  drawn_ += drawn.draws_used;
  return {LabeledExample{std::move(drawn.x), y}, drawn.draws_used};
}

PassiveEpochResult passive_mod_perceptron(LabeledExampleSource& source, const UnitVector& w0,
                                          std::size_t m, double b, std::size_t draw_budget,
                                          const StepObserver& observer) {
  require_same_dim(source.oracle().target(), w0);
  if (!(b > 0.0 && b <= 1.0)) throw PreconditionError("band width must lie in (0, 1]");
  PassiveEpochResult result{w0};
  for (std::size_t t = 0; t < m; ++t) {
    const Band band(result.w, b / 2.0, b);
    if (result.labeled_draws >= draw_budget)
      throw BudgetExceeded("passive epoch draw budget exceeded", result.labeled_draws);
    std::pair<LabeledExample, std::size_t> drawn{LabeledExample{w0, Label::positive}, 0};
    try {
      drawn = source.draw_in_band(band, draw_budget - result.labeled_draws);
    } catch (const BudgetExceeded&) {
      throw BudgetExceeded("passive epoch draw budget exceeded", draw_budget);
    }
    result.labeled_draws += drawn.second;
    const LabeledExample& ex = drawn.first;
    if (observer) observer(result.w, ex.x, ex.y);
    result.w = modified_perceptron_step(result.w, ex.x, ex.y);
  }
  return result;
}

RunReport passive_perceptron(LabeledExampleSource& source, const UnitVector& v0, double epsilon,
                             double delta, const Schedule& schedule, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_schedule(schedule, v0.dim(), epsilon, delta);
  require_same_dim(source.oracle().target(), v0);
  if (options.reference) require_same_dim(*options.reference, v0);

  auto angle_to_ref = [&](const UnitVector& v) -> std::optional<double> {
    if (!options.reference) return std::nullopt;
    return angle(v, *options.reference);
  };

  RunReport report{.final = v0};
  for (int k = 1; k <= schedule.epochs; ++k) {
    const std::size_t mk = schedule.m[k - 1];
    const double bk = schedule.b[k - 1];
    EpochTrace trace;
    trace.epoch = k;
    trace.theta_before = angle_to_ref(report.final);
    const std::size_t budget = epoch_draw_budget(v0.dim(), mk, bk, options.budget_factor);
    PassiveEpochResult epoch =
        passive_mod_perceptron(source, report.final, mk, bk, budget, options.observer);
    report.final = std::move(epoch.w);
    trace.theta_after = angle_to_ref(report.final);
    trace.labels = epoch.labeled_draws;
    trace.unlabeled_draws = epoch.labeled_draws;
    report.total_labels += epoch.labeled_draws;
    report.total_unlabeled += epoch.labeled_draws;
    report.traces.push_back(trace);
  }
  report.final_angle = angle_to_ref(report.final);
  if (report.final_angle) report.succeeded = *report.final_angle <= kPi * epsilon;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace activeperc
