#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "activeperc/geometry.hpp"
#include "activeperc/oracles.hpp"

namespace activeperc::verify {

/// Outcome of one statistical check. `statistic` is the measured quantity and
/// `threshold` the value it was compared against; `detail` is free text.
struct CheckReport {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Fraction of n uniform points on which sign(a.x) != sign(b.x).
double disagreement_frequency(const UnitVector& a, const UnitVector& b, std::size_t n, Rng& rng);

/// n_pairs random hypothesis pairs; each empirical disagreement must be within
/// 3 binomial standard errors of angle/pi. statistic = worst deviation in
/// standard errors.
CheckReport check_error_angle_relation(std::size_t d, std::size_t n_pairs,
                                       std::size_t n_samples, Rng& rng);

/// Quadrature band mass against (sqrt(d)/(8 pi)) b for every (d, b) with
/// b <= 1/(10 sqrt d); other pairs are skipped and listed in the detail.
CheckReport check_band_mass_bound(const std::vector<std::size_t>& d_list,
                                  const std::vector<double>& b_list);

/// For each theta and xi = theta/(8 sqrt d): E[u.x] <= xi,
/// E[(u.x)^2] <= 5 theta^2/d and E[(u.x)1{u.x<0}] <= xi - theta/(36 sqrt d),
/// each with a 3-standard-error allowance.
std::vector<CheckReport> check_conditional_moments(std::size_t d,
                                                   const std::vector<double>& theta_list,
                                                   std::size_t n, Rng& rng);

struct ProgressResult {
  double mean_drift = 0.0;
  double drift_se = 0.0;
  double max_abs_change = 0.0;
  /// 16 c~ zeta theta^2 / (3 sqrt d), which equals 16 b theta / 3.
  double step_bound = 0.0;
  std::size_t steps = 0;
};

/// n_steps independent single updates from iterates with angle to the target
/// drawn uniformly in [theta/4, 5 theta/3], instances from the band [b/2, b].
ProgressResult simulate_progress(const NoiseModel& model, std::size_t d, double theta, double b,
                                 std::size_t n_steps, Rng& rng);

/// Drift positive with a 3-standard-error margin and every step within the
/// coarse per-step bound.
std::vector<CheckReport> check_progress_measure(const NoiseModel& model, std::size_t d,
                                                double theta, double b, std::size_t n_steps,
                                                Rng& rng);

struct SuiteConfig {
  std::uint64_t seed = 20170224;
  /// Sample count used wherever a check samples.
  std::size_t samples = 1'000'000;
  std::size_t pairs = 20;
};

/// Runs every check with per-check generators derived from the seed.
std::vector<CheckReport> run_suite(const SuiteConfig& config);

}  // namespace activeperc::verify
