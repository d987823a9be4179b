#include "activeperc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/random/normal_distribution.hpp>

#include "activeperc/learner.hpp"

namespace activeperc::verify {
namespace {

constexpr double kSigmas = 3.0;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

double disagreement_frequency(const UnitVector& a, const UnitVector& b, std::size_t n, Rng& rng) {
  require_same_dim(a, b);
  if (n == 0) throw PreconditionError("need at least one sample");
  boost::random::normal_distribution<double> gauss;
  std::vector<double> g(a.dim());
  std::size_t disagree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (double& v : g) v = gauss(rng);
    // Signs are scale invariant, so the Gaussian direction is used unnormalized.
    if (sign_label(dot(a.coords(), g)) != sign_label(dot(b.coords(), g))) ++disagree;
  }
  return static_cast<double>(disagree) / static_cast<double>(n);
}

CheckReport check_error_angle_relation(std::size_t d, std::size_t n_pairs, std::size_t n_samples,
                                       Rng& rng) {
  if (n_samples < 100'000) throw PreconditionError("error-angle check needs n_samples >= 1e5");
  CheckReport report;
  report.name = "error_angle_relation";
  report.threshold = kSigmas;
  double worst = 0.0;
  double worst_abs = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const UnitVector a = sample_uniform_sphere(d, rng);
    const UnitVector b = sample_uniform_sphere(d, rng);
    const double p = disagreement_mass(a, b);
    const double freq = disagreement_frequency(a, b, n_samples, rng);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples));
    const double dev = std::abs(freq - p);
    worst_abs = std::max(worst_abs, dev);
    if (se > 0.0) {
      worst = std::max(worst, dev / se);
      ok = ok && dev <= kSigmas * se;
    } else {
      ok = ok && dev == 0.0;
    }
  }
  report.passed = ok;
  report.statistic = worst;
  report.detail = "d=" + std::to_string(d) + " pairs=" + std::to_string(n_pairs) +
                  " n=" + std::to_string(n_samples) + " max|freq-theta/pi|=" + fmt(worst_abs);
  return report;
}

CheckReport check_band_mass_bound(const std::vector<std::size_t>& d_list,
                                  const std::vector<double>& b_list) {
  CheckReport report;
  report.name = "band_mass_lower_bound";
  report.passed = true;
  report.statistic = std::numeric_limits<double>::infinity();
  report.threshold = 1.0;
  std::size_t checked = 0;
  std::ostringstream skipped;
  for (std::size_t d : d_list) {
    for (double b : b_list) {
      if (b > 1.0 / (10.0 * std::sqrt(static_cast<double>(d)))) {
        skipped << " (d=" << d << ",b=" << b << ")";
        continue;
      }
      const double mass = band_mass(d, b / 2.0, b);
      const double bound = band_mass_lower_bound(d, b);
      report.statistic = std::min(report.statistic, mass / bound);
      report.passed = report.passed && mass >= bound;
      ++checked;
    }
  }
  report.detail = "checked=" + std::to_string(checked) + " min(mass/bound)=" +
                  fmt(report.statistic);
  if (!skipped.str().empty()) report.detail += " skipped b>1/(10sqrt d):" + skipped.str();
  return report;
}

std::vector<CheckReport> check_conditional_moments(std::size_t d,
                                                   const std::vector<double>& theta_list,
                                                   std::size_t n, Rng& rng) {
  std::vector<CheckReport> out;
  const double sd = std::sqrt(static_cast<double>(d));
  for (double theta : theta_list) {
    const UnitVector u = sample_uniform_sphere(d, rng);
    const UnitVector w = vector_at_angle(u, theta, rng);
    const double xi = theta / (8.0 * sd);
    const ConditionalMoments cm = conditional_moment_oracle(u, w, xi, n, rng);
    const std::string tag = "(d=" + std::to_string(d) + ",theta=" + fmt(theta) + ")";

    CheckReport mean;
    mean.name = "conditional_mean" + tag;
    mean.statistic = cm.mean;
    mean.threshold = xi + kSigmas * cm.mean_se;
    mean.passed = mean.statistic <= mean.threshold;
    mean.detail = "bound xi=" + fmt(xi);

    CheckReport second;
    second.name = "conditional_second_moment" + tag;
    second.statistic = cm.second_moment;
    second.threshold = 5.0 * theta * theta / static_cast<double>(d) + kSigmas * cm.second_moment_se;
    second.passed = second.statistic <= second.threshold;
    second.detail = "bound 5theta^2/d=" + fmt(5.0 * theta * theta / static_cast<double>(d));

    CheckReport negative;
    negative.name = "conditional_negative_part" + tag;
    const double neg_bound = xi - theta / (36.0 * sd);
    negative.statistic = cm.negative_part_mean;
    negative.threshold = neg_bound + kSigmas * cm.negative_part_mean_se;
    negative.passed = negative.statistic <= negative.threshold;
    negative.detail = "bound xi-theta/(36sqrt d)=" + fmt(neg_bound);

    out.push_back(mean);
    out.push_back(second);
    out.push_back(negative);
  }
  return out;
}

ProgressResult simulate_progress(const NoiseModel& model, std::size_t d, double theta, double b,
                                 std::size_t n_steps, Rng& rng) {
  if (n_steps < 2) throw PreconditionError("need at least two steps");
  if (!(b > 0.0 && b <= 1.0)) throw PreconditionError("band width must lie in (0, 1]");
  const UnitVector u = sample_uniform_sphere(d, rng);
  LabelingOracle oracle(u, model, rng());
  std::uniform_real_distribution<double> start_angle(theta / 4.0, std::min(kPi, 5.0 * theta / 3.0));

  ProgressResult r;
  r.steps = n_steps;
  r.step_bound = 16.0 * b * theta / 3.0;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < n_steps; ++i) {
    const UnitVector w = vector_at_angle(u, start_angle(rng), rng);
    const UnitVector x = sample_band_direct(Band(w, b / 2.0, b), rng);
    const UnitVector next = modified_perceptron_step(w, x, oracle.query(x));
    const double change = dot(next, u) - dot(w, u);
    sum += change;
    sumsq += change * change;
    r.max_abs_change = std::max(r.max_abs_change, std::abs(change));
  }
  const double n = static_cast<double>(n_steps);
  r.mean_drift = sum / n;
  const double var = std::max(0.0, (sumsq / n - r.mean_drift * r.mean_drift) * n / (n - 1.0));
  r.drift_se = std::sqrt(var / n);
  return r;
}

std::vector<CheckReport> check_progress_measure(const NoiseModel& model, std::size_t d,
                                                double theta, double b, std::size_t n_steps,
                                                Rng& rng) {
  const ProgressResult r = simulate_progress(model, d, theta, b, n_steps, rng);
  const std::string tag = "(" + format_noise(model) + ",d=" + std::to_string(d) +
                          ",theta=" + fmt(theta) + ",b=" + fmt(b) + ")";
  CheckReport drift;
  drift.name = "progress_drift_positive" + tag;
  drift.statistic = r.mean_drift;
  drift.threshold = kSigmas * r.drift_se;
  drift.passed = r.mean_drift > drift.threshold;
  drift.detail = "steps=" + std::to_string(r.steps) + " se=" + fmt(r.drift_se);

  CheckReport coarse;
  coarse.name = "progress_step_bound" + tag;
  coarse.statistic = r.max_abs_change;
  coarse.threshold = r.step_bound;
  coarse.passed = r.max_abs_change <= r.step_bound;
  coarse.detail = "max |delta cos| over every step";
  return {drift, coarse};
}

std::vector<CheckReport> run_suite(const SuiteConfig& config) {
  std::vector<CheckReport> all;
  auto rng_for = [&](std::uint64_t check) { return Rng(derive_seed(config.seed, {check})); };
  auto append = [&all](std::vector<CheckReport> more) {
    all.insert(all.end(), more.begin(), more.end());
  };

  {
    Rng rng = rng_for(1);
    all.push_back(check_error_angle_relation(10, config.pairs, config.samples, rng));
  }
  {
    std::vector<double> bs;
    for (double b = 0.001; b <= 0.2; b *= 1.5) bs.push_back(b);
    all.push_back(check_band_mass_bound({3, 10, 50, 100}, bs));
  }
  {
    Rng rng = rng_for(3);
    append(check_conditional_moments(20, {kPi / 8.0, kPi / 4.0}, config.samples, rng));
  }
  {
    // Band width from the default schedule's second epoch, where theta = pi/4.
    const std::size_t d = 10;
    const double theta = kPi / 4.0;
    const std::vector<NoiseModel> models{noise::Realizable{}, noise::BoundedConstant{0.3},
                                         noise::AdversarialBand{theta / 200.0}};
    std::uint64_t id = 10;
    for (const NoiseModel& model : models) {
      const Schedule s = make_schedule(d, 0.05, 0.1, model);
      const double b = s.band_constant[1] * s.noise_factor * theta / std::sqrt(double(d));
      Rng rng = rng_for(id++);
      append(check_progress_measure(model, d, theta, b, config.samples, rng));
    }
  }
  return all;
}

}  // namespace activeperc::verify
