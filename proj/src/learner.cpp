#include "activeperc/learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace activeperc {

std::size_t Schedule::total_labels() const {
  std::size_t total = 0;
  for (std::size_t mk : m) total += mk;
  return total;
}

int epoch_count(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  // Guard exact powers of two against log2 rounding up.
  const double k = std::log2(1.0 / epsilon);
  const double rounded = std::round(k);
  if (std::abs(k - rounded) < 1e-12) return std::max(1, static_cast<int>(rounded));
  return std::max(1, static_cast<int>(std::ceil(k)));
}

Schedule make_schedule(std::size_t d, double epsilon, double delta, const NoiseModel& model,
                       double scale_m, double scale_b) {
  if (d < kMinDimension) throw DimensionError("dimension must be at least 3");
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  if (!(scale_m > 0.0 && scale_b > 0.0)) throw PreconditionError("scale factors must be positive");
  validate(model);

  Schedule s;
  s.dim = d;
  s.epochs = epoch_count(epsilon);
  s.scale_m = scale_m;
  s.scale_b = scale_b;
  s.noise_factor = noise_factor(model);
  s.epsilon = epsilon;
  s.delta = delta;

  const double nd = static_cast<double>(d);
  const double zeta = s.noise_factor;
  const double base = scale_m * nd / (zeta * zeta);
  const double b_cap = 1.0 / (10.0 * std::sqrt(nd));
  for (int k = 1; k <= s.epochs; ++k) {
    const double kk = static_cast<double>(k) * (k + 1.0);
    const double m_real = std::ceil(base * (std::log(base) + std::log(kk / delta)));
    const auto mk = static_cast<std::size_t>(std::max(1.0, m_real));
    const double md = static_cast<double>(mk);
    const double log_term = std::log(md * md * kk / delta);
    const double c_tilde = scale_b / log_term;
    const double theta_k = kPi * std::ldexp(1.0, -k);
    s.m.push_back(mk);
    s.band_constant.push_back(c_tilde);
    s.b.push_back(std::min(c_tilde * zeta * theta_k / std::sqrt(nd), b_cap));
  }
  return s;
}

UnitVector modified_perceptron_step(const UnitVector& w, const UnitVector& x, Label y) {
  const double wx = dot(w, x);
  if (to_int(y) * wx >= 0.0) return w;
  std::vector<double> next(w.coords().begin(), w.coords().end());
  for (std::size_t i = 0; i < next.size(); ++i) next[i] -= 2.0 * wx * x[i];
  return UnitVector::normalized(std::move(next));
}

EpochResult mod_perceptron(LabelingOracle& oracle, Rng& instances, const UnitVector& w0,
                           std::size_t m, double b, std::size_t draw_budget,
                           const StepObserver& observer) {
  require_same_dim(oracle.target(), w0);
  if (!(b > 0.0 && b <= 1.0)) throw PreconditionError("band width must lie in (0, 1]");
  EpochResult result{w0};
  for (std::size_t t = 0; t < m; ++t) {
    const Band band(result.w, b / 2.0, b);
    if (result.draws >= draw_budget)
      throw BudgetExceeded("epoch draw budget exceeded", result.draws);
    BandDraw drawn{w0, 0};
    try {
      drawn = rejection_sample_band(band, instances, draw_budget - result.draws);
    } catch (const BudgetExceeded&) {
      throw BudgetExceeded("epoch draw budget exceeded", draw_budget);
    }
    result.draws += drawn.draws_used;
    const Label y = oracle.query(drawn.x);
    ++result.labels;
    if (observer) observer(result.w, drawn.x, y);
    result.w = modified_perceptron_step(result.w, drawn.x, y);
  }
  return result;
}

std::size_t epoch_draw_budget(std::size_t d, std::size_t m, double b, double factor) {
  const double p = band_mass(d, b / 2.0, b);
  const double budget = factor * static_cast<double>(m) / p;
  if (!std::isfinite(budget) || budget > 1e18) return std::numeric_limits<std::size_t>::max();
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(budget)));
}

void check_schedule(const Schedule& schedule, std::size_t d, double epsilon, double delta) {
  if (schedule.dim != d)
    throw DimensionError("schedule built for dimension " + std::to_string(schedule.dim) +
                         ", run has dimension " + std::to_string(d));
  if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0, 1)");
  if (schedule.epochs != epoch_count(epsilon) ||
      schedule.m.size() != static_cast<std::size_t>(schedule.epochs) ||
      schedule.b.size() != schedule.m.size())
    throw PreconditionError("schedule does not match ceil(log2(1/epsilon)) epochs");
}

RunReport active_perceptron(LabelingOracle& oracle, Rng& instances, const UnitVector& v0,
                            double epsilon, double delta, const Schedule& schedule,
                            const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_schedule(schedule, v0.dim(), epsilon, delta);
  require_same_dim(oracle.target(), v0);
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
    EpochResult epoch =
        mod_perceptron(oracle, instances, report.final, mk, bk, budget, options.observer);
    report.final = std::move(epoch.w);
    trace.theta_after = angle_to_ref(report.final);
    trace.labels = epoch.labels;
    trace.unlabeled_draws = epoch.draws;
    report.total_labels += epoch.labels;
    report.total_unlabeled += epoch.draws;
    report.traces.push_back(trace);
  }
  report.final_angle = angle_to_ref(report.final);
  if (report.final_angle) report.succeeded = *report.final_angle <= kPi * epsilon;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace activeperc
