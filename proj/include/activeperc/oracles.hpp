#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "activeperc/geometry.hpp"
#include "activeperc/rng.hpp"

namespace activeperc {

enum class Label : int { negative = -1, positive = 1 };

inline int to_int(Label y) noexcept { return static_cast<int>(y); }
inline Label flip(Label y) noexcept {
  return y == Label::positive ? Label::negative : Label::positive;
}
/// sign(z) with sign(0) := +1.
inline Label sign_label(double z) noexcept { return z >= 0.0 ? Label::positive : Label::negative; }

namespace noise {

struct Realizable {};

/// Every label flipped independently with probability eta.
struct BoundedConstant {
  double eta;
};

/// Label flipped with probability eta when |u.x| <= margin, never otherwise.
struct BoundedMargin {
  double eta;
  double margin;
};

/// Labels deterministically inverted on the slab |u.x| <= tau, where tau is
/// chosen so the slab has probability mass nu.
struct AdversarialBand {
  double nu;
};

}  // namespace noise

using NoiseModel =
    std::variant<noise::Realizable, noise::BoundedConstant, noise::BoundedMargin,
                 noise::AdversarialBand>;

/// Throws PreconditionError when parameters are outside their ranges.
void validate(const NoiseModel& model);

/// 1 - 2 eta for the bounded models, 1 otherwise.
double noise_factor(const NoiseModel& model);

/// Short tag used in CSV output: realizable, bounded, margin, adversarial.
std::string noise_kind(const NoiseModel& model);
/// Primary parameter (eta or nu); 0 for realizable.
double noise_param(const NoiseModel& model);

/// Parses "realizable", "bounded:ETA", "margin:ETA:MARGIN" or "adversarial:NU".
NoiseModel parse_noise(const std::string& text);
std::string format_noise(const NoiseModel& model);

/// Threshold tau with P[|x_1| <= tau] = nu for x uniform on S^{d-1}, found
/// by bisection on band_mass to 1e-10.
double slab_threshold(std::size_t d, double nu);

/// Query-counted labeling oracle for a hidden target halfspace.
///
/// Bounded models draw flips from the oracle's own generator, so repeated
/// queries at one point are conditionally independent. The realizable and
/// adversarial models are deterministic functions of x.
class LabelingOracle {
 public:
  LabelingOracle(UnitVector target, NoiseModel model, std::uint64_t seed);

  Label query(const UnitVector& x);
  std::size_t query_count() const noexcept { return queries_; }
  /// Charges `n` labels that were drawn but never observed (passive pairs
  /// whose instance fell outside the band). Their values cannot affect
  /// anything, so they are counted without being generated.
  void charge_unobserved(std::size_t n) noexcept { queries_ += n; }

  const UnitVector& target() const noexcept { return target_; }
  const NoiseModel& model() const noexcept { return model_; }
  std::size_t dim() const noexcept { return target_.dim(); }
  /// Slab half-width for AdversarialBand, 0 for other models.
  double slab() const noexcept { return slab_; }

 private:
  UnitVector target_;
  NoiseModel model_;
  Rng rng_;
  double slab_ = 0.0;
  std::size_t queries_ = 0;
};

}  // namespace activeperc
