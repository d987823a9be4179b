#pragma once

#include <algorithm>
#include <span>
#include <vector>

namespace activeperc::stats {

double mean(std::span<const double> xs);
double median(std::vector<double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// One-sample KS statistic against a continuous CDF.
template <class Cdf>
double ks_statistic_cdf(std::vector<double> xs, Cdf cdf);

/// Asymptotic critical value c(alpha) sqrt((n + m)/(n m)) with
/// c(alpha) = sqrt(-ln(alpha/2)/2). Pass m = 0 for the one-sample test.
double ks_critical(double alpha, std::size_t n, std::size_t m = 0);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y ~ slope x + intercept.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

template <class Cdf>
double ks_statistic_cdf(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace activeperc::stats
