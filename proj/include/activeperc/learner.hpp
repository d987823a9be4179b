#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "activeperc/geometry.hpp"
#include "activeperc/oracles.hpp"

namespace activeperc {

/// Scale constants reproducing the analysis constants verbatim. They give
/// sample sizes around 1e14 and are only useful for inspecting schedules.
inline const double kAnalysisScaleM = (3200.0 * kPi) * (3200.0 * kPi) * (3200.0 * kPi);
inline const double kAnalysisScaleB = 1.0 / (2.0 * (600.0 * kPi) * (600.0 * kPi));

/// Desk-scale defaults.
inline constexpr double kDefaultScaleM = 4.0;
inline constexpr double kDefaultScaleB = 1.0;

/// Per-epoch sample counts m_k and band widths b_k for k = 1..epochs.
struct Schedule {
  std::size_t dim = 0;
  int epochs = 0;
  std::vector<std::size_t> m;
  std::vector<double> b;
  /// c~_k = scale_b / ln(m_k^2 k(k+1) / delta), so b_k = c~_k zeta theta_k / sqrt(d)
  /// with theta_k = pi 2^-k (before clamping).
  std::vector<double> band_constant;
  double scale_m = kDefaultScaleM;
  double scale_b = kDefaultScaleB;
  double noise_factor = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;

  std::size_t total_labels() const;
};

/// ceil(log2(1/epsilon)).
int epoch_count(double epsilon);

/// m_k = ceil(scale_m (d/z^2) (ln(scale_m d/z^2) + ln(k(k+1)/delta))),
/// b_k = min(scale_b 2^-k pi z / (sqrt(d) ln(m_k^2 k(k+1)/delta)), 1/(10 sqrt d))
/// with z the model's noise factor.
Schedule make_schedule(std::size_t d, double epsilon, double delta, const NoiseModel& model,
                       double scale_m = kDefaultScaleM, double scale_b = kDefaultScaleB);

/// One modified Perceptron update: reflect w through the hyperplane normal to
/// x when y (w.x) < 0, otherwise return w. The result is renormalized.
UnitVector modified_perceptron_step(const UnitVector& w, const UnitVector& x, Label y);

/// Called once per iteration with the iterate before the update, the
/// accepted instance and its label.
using StepObserver = std::function<void(const UnitVector& w, const UnitVector& x, Label y)>;

struct EpochResult {
  UnitVector w;
  std::size_t labels = 0;
  std::size_t draws = 0;
};

/// m iterations of: band b/2 <= w_t.x <= b, rejection sample an instance from
/// `instances`, query its label, update. `draw_budget` caps total draws.
EpochResult mod_perceptron(LabelingOracle& oracle, Rng& instances, const UnitVector& w0,
                           std::size_t m, double b, std::size_t draw_budget,
                           const StepObserver& observer = {});

struct EpochTrace {
  int epoch = 0;
  std::optional<double> theta_before;
  std::optional<double> theta_after;
  std::size_t labels = 0;
  std::size_t unlabeled_draws = 0;
};

struct RunReport {
  UnitVector final;
  std::size_t total_labels = 0;
  std::size_t total_unlabeled = 0;
  std::vector<EpochTrace> traces = {};
  std::optional<double> final_angle = {};
  /// final_angle <= pi epsilon; set only when a reference direction was supplied.
  std::optional<bool> succeeded = {};
  double wall_time = 0.0;
};

struct RunOptions {
  /// Known target used only for diagnostics (angles, success flag).
  std::optional<UnitVector> reference;
  /// Per-epoch draw budget is budget_factor * m_k / band_mass(b_k).
  double budget_factor = 100.0;
  StepObserver observer;
};

/// Draw budget for one epoch: factor * m / P[b/2 <= x_1 <= b].
std::size_t epoch_draw_budget(std::size_t d, std::size_t m, double b, double factor);

/// Runs the schedule's epochs from v0, which is assumed to have an acute
/// angle with the target.
RunReport active_perceptron(LabelingOracle& oracle, Rng& instances, const UnitVector& v0,
                            double epsilon, double delta, const Schedule& schedule,
                            const RunOptions& options = {});

/// Validates epsilon/delta/dimension against a schedule.
void check_schedule(const Schedule& schedule, std::size_t d, double epsilon, double delta);

}  // namespace activeperc
