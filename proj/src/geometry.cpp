#include "activeperc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace activeperc {
namespace {

void require_dimension(std::size_t d) {
  if (d < kMinDimension)
    throw DimensionError("dimension must be at least 3, got " + std::to_string(d));
}

std::vector<double> gaussian_vector(std::size_t d, Rng& rng) {
  boost::random::normal_distribution<double> normal;
  std::vector<double> g(d);
  for (double& v : g) v = normal(rng);
  return g;
}

}  // namespace

UnitVector UnitVector::normalized(std::vector<double> coords) {
  require_dimension(coords.size());
  const double n = std::sqrt(dot(coords, coords));
  if (!(n > 0.0) || !std::isfinite(n)) throw PreconditionError("cannot normalize a zero vector");
  for (double& c : coords) c /= n;
  return UnitVector(std::move(coords));
}

UnitVector UnitVector::checked(std::vector<double> coords) {
  require_dimension(coords.size());
  const double n = std::sqrt(dot(coords, coords));
  if (std::abs(n - 1.0) > kUnitNormTolerance)
    throw PreconditionError("vector is not unit norm (norm " + std::to_string(n) + ")");
  return UnitVector(std::move(coords));
}

UnitVector UnitVector::basis(std::size_t d, std::size_t axis) {
  require_dimension(d);
  if (axis >= d) throw DimensionError("basis axis out of range");
  std::vector<double> c(d, 0.0);
  c[axis] = 1.0;
  return UnitVector(std::move(c));
}

double UnitVector::norm() const noexcept { return std::sqrt(dot(coords_, coords_)); }

UnitVector UnitVector::operator-() const {
  std::vector<double> c(coords_);
  for (double& v : c) v = -v;
  return UnitVector(std::move(c));
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void require_same_dim(const UnitVector& a, const UnitVector& b) {
  if (a.dim() != b.dim())
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
}

double dot(const UnitVector& a, const UnitVector& b) {
  require_same_dim(a, b);
  return dot(a.coords(), b.coords());
}

Band::Band(UnitVector normal, double lower, double upper)
    : normal_(std::move(normal)), lower_(lower), upper_(upper) {
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0))
    throw PreconditionError("band requires 0 <= lower < upper <= 1");
}

bool Band::contains(const UnitVector& x) const {
  const double m = dot(normal_, x);
  return m >= lower_ && m <= upper_;
}

double Band::mass() const { return band_mass(normal_.dim(), lower_, upper_); }

UnitVector sample_uniform_sphere(std::size_t d, Rng& rng) {
  require_dimension(d);
  for (;;) {
    auto g = gaussian_vector(d, rng);
    if (dot(g, g) > 0.0) return UnitVector::normalized(std::move(g));
  }
}

double angle(const UnitVector& a, const UnitVector& b) {
  return std::acos(std::clamp(dot(a, b), -1.0, 1.0));
}

double disagreement_mass(const UnitVector& a, const UnitVector& b) { return angle(a, b) / kPi; }

double coordinate_density(std::size_t d, double z) {
  require_dimension(d);
  if (std::abs(z) > 1.0) return 0.0;
  const double nd = static_cast<double>(d);
  return std::pow(1.0 - z * z, (nd - 3.0) / 2.0) / boost::math::beta((nd - 1.0) / 2.0, 0.5);
}

double slice_coordinate_density(std::size_t d, double xi, double z) {
  require_dimension(d);
  if (std::abs(xi) >= 1.0) throw PreconditionError("slice offset must lie in (-1, 1)");
  const double r2 = 1.0 - xi * xi;
  if (z * z >= r2) return 0.0;
  const double nd = static_cast<double>(d);
  return std::pow(r2 - z * z, (nd - 4.0) / 2.0) /
         (std::pow(r2, (nd - 3.0) / 2.0) * boost::math::beta((nd - 2.0) / 2.0, 0.5));
}

double band_mass(std::size_t d, double lower, double upper) {
  require_dimension(d);
  if (!(lower >= 0.0 && lower < upper && upper <= 1.0))
    throw PreconditionError("band_mass requires 0 <= lower < upper <= 1");
  const double exponent = (static_cast<double>(d) - 3.0) / 2.0;
  auto kernel = [exponent](double z) {
    const double s = 1.0 - z * z;
    return s <= 0.0 ? 0.0 : std::pow(s, exponent);
  };
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      kernel, lower, upper, 30, 1e-10, &error);
  return integral / boost::math::beta((static_cast<double>(d) - 1.0) / 2.0, 0.5);
}

double band_mass_lower_bound(std::size_t d, double b) {
  return std::sqrt(static_cast<double>(d)) / (8.0 * kPi) * b;
}

BandDraw rejection_sample_band(const Band& band, Rng& rng, std::size_t draw_budget) {
  if (draw_budget == 0) throw PreconditionError("draw budget must be at least 1");
  // Each draw is a uniform point, but the acceptance test only sees its
  // margin normal.x, so a draw is represented by the uniform variate U that
  // the margin's inverse CDF maps to it: accept iff F(lower) <= U <= F(upper).
  // Only the accepted draw is materialized, from the slice at its margin.
  const double a = (static_cast<double>(band.normal().dim()) - 1.0) / 2.0;
  auto cdf = [a](double t) { return 0.5 + 0.5 * boost::math::ibeta(0.5, a, t * t); };
  const double lo = cdf(band.lower());
  const double hi = cdf(band.upper());
  boost::random::uniform_01<double> unit;
  for (std::size_t used = 1; used <= draw_budget; ++used) {
    const double u = unit(rng);
    if (u < lo || u > hi) continue;
    const double t = std::sqrt(boost::math::ibeta_inv(0.5, a, 2.0 * u - 1.0));
    const double margin = std::clamp(t, band.lower(), band.upper());
    return {sample_sphere_slice(band.normal(), margin, rng), used};
  }
  throw BudgetExceeded("band rejection sampling exhausted its draw budget", draw_budget);
}

UnitVector sample_sphere_slice(const UnitVector& w, double xi, Rng& rng) {
  if (!(std::abs(xi) < 1.0)) throw PreconditionError("slice offset must lie in (-1, 1)");
  const std::size_t d = w.dim();
  for (;;) {
    auto g = gaussian_vector(d, rng);
    const double along = dot(g, w.coords());
    for (std::size_t i = 0; i < d; ++i) g[i] -= along * w[i];
    const double n = std::sqrt(dot(g, g));
    if (!(n > 0.0)) continue;
    const double radial = std::sqrt(1.0 - xi * xi);
    for (std::size_t i = 0; i < d; ++i) g[i] = xi * w[i] + radial * g[i] / n;
    return UnitVector::normalized(std::move(g));
  }
}

UnitVector sample_band_direct(const Band& band, Rng& rng) {
  const double exponent = (static_cast<double>(band.normal().dim()) - 3.0) / 2.0;
  // The margin density is proportional to (1 - z^2)^exponent, which on
  // [lower, upper] peaks at z = lower.
  const double peak = std::pow(1.0 - band.lower() * band.lower(), exponent);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const double z = band.lower() + (band.upper() - band.lower()) * unit(rng);
    if (z >= 1.0) continue;
    if (unit(rng) * peak <= std::pow(1.0 - z * z, exponent))
      return sample_sphere_slice(band.normal(), z, rng);
  }
}

UnitVector vector_at_angle(const UnitVector& u, double theta, Rng& rng) {
  if (!(theta >= 0.0 && theta <= kPi)) throw PreconditionError("angle must lie in [0, pi]");
  // Orthogonal direction to u, uniform on the complement sphere.
  const UnitVector perp = sample_sphere_slice(u, 0.0, rng);
  std::vector<double> c(u.dim());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = std::cos(theta) * u[i] + std::sin(theta) * perp[i];
  return UnitVector::normalized(std::move(c));
}

ConditionalMoments conditional_moment_oracle(const UnitVector& u, const UnitVector& w, double xi,
                                             std::size_t n, Rng& rng) {
  require_same_dim(u, w);
  const double theta = angle(u, w);
  const double d = static_cast<double>(u.dim());
  if (!(theta > 0.0 && theta <= 0.9 * kPi))
    throw PreconditionError("conditional moments need angle(u, w) in (0, 9pi/10]");
  if (!(xi >= 0.0 && xi <= theta / (4.0 * std::sqrt(d))))
    throw PreconditionError("conditional moments need 0 <= xi <= angle / (4 sqrt d)");
  if (n < 2) throw PreconditionError("need at least two samples");

  double s1 = 0, s1sq = 0, s2 = 0, s2sq = 0, s3 = 0, s3sq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ux = dot(u, sample_sphere_slice(w, xi, rng));
    const double sq = ux * ux;
    const double neg = ux < 0.0 ? ux : 0.0;
    s1 += ux;
    s1sq += sq;
    s2 += sq;
    s2sq += sq * sq;
    s3 += neg;
    s3sq += neg * neg;
  }
  const double nn = static_cast<double>(n);
  auto se = [nn](double sum, double sumsq) {
    const double mean = sum / nn;
    const double var = std::max(0.0, (sumsq / nn - mean * mean) * nn / (nn - 1.0));
    return std::sqrt(var / nn);
  };
  return {s1 / nn, s2 / nn, s3 / nn, se(s1, s1sq), se(s2, s2sq), se(s3, s3sq)};
}

}  // namespace activeperc
