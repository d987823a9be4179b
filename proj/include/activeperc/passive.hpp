#pragma once

#include <cstddef>
#include <utility>

#include "activeperc/learner.hpp"

namespace activeperc {

struct LabeledExample {
  UnitVector x;
  Label y;
};

/// Source of i.i.d. labeled examples (x, y) ~ D: x uniform on the sphere,
/// y from the oracle's conditional label law. Every draw is labeled, so the
/// oracle's query count equals the number of examples drawn.
class LabeledExampleSource {
 public:
  LabeledExampleSource(LabelingOracle& oracle, Rng& instances)
      : oracle_(&oracle), instances_(&instances) {}

  LabeledExample draw();
  /// Draws pairs until the instance lands in `band` and returns the accepted
  /// pair with the number of pairs drawn. Rejected pairs use the same
  /// margin-only representation as rejection_sample_band.
  std::pair<LabeledExample, std::size_t> draw_in_band(const Band& band, std::size_t draw_budget);
  std::size_t drawn() const noexcept { return drawn_; }
  std::size_t dim() const noexcept { return oracle_->dim(); }
  const LabelingOracle& oracle() const noexcept { return *oracle_; }

 private:
  LabelingOracle* oracle_;
  Rng* instances_;
  std::size_t drawn_ = 0;
};

struct PassiveEpochResult {
  UnitVector w;
  std::size_t labeled_draws = 0;
};

/// m iterations: draw labeled pairs until the instance lands in
/// b/2 <= w_t.x <= b, then update. `draw_budget` caps pairs drawn.
PassiveEpochResult passive_mod_perceptron(LabeledExampleSource& source, const UnitVector& w0,
                                          std::size_t m, double b, std::size_t draw_budget,
                                          const StepObserver& observer = {});

/// Passive counterpart of active_perceptron. In the report both
/// total_labels and total_unlabeled count labeled pairs drawn.
RunReport passive_perceptron(LabeledExampleSource& source, const UnitVector& v0, double epsilon,
                             double delta, const Schedule& schedule,
                             const RunOptions& options = {});

}  // namespace activeperc
