#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "activeperc/rng.hpp"

namespace activeperc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr std::size_t kMinDimension = 3;
inline constexpr double kUnitNormTolerance = 1e-9;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by rejection samplers when the draw budget runs out before a point
/// is accepted. Carries the number of draws consumed.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t draws_used)
      : std::runtime_error(what), draws_used_(draws_used) {}
  std::size_t draws_used() const noexcept { return draws_used_; }

 private:
  std::size_t draws_used_;
};

/// A point on the unit sphere S^{d-1}, d >= 3. Used both for hypotheses and
/// for instances.
class UnitVector {
 public:
  /// Scales `coords` to unit length. Throws on d < 3 or a zero vector.
  static UnitVector normalized(std::vector<double> coords);
  /// Accepts `coords` only if it already has unit norm (within 1e-9).
  static UnitVector checked(std::vector<double> coords);
  static UnitVector basis(std::size_t d, std::size_t axis);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  double norm() const noexcept;

  UnitVector operator-() const;
  bool operator==(const UnitVector&) const = default;

 private:
  explicit UnitVector(std::vector<double> c) : coords_(std::move(c)) {}
  std::vector<double> coords_;
};

double dot(const UnitVector& a, const UnitVector& b);
double dot(std::span<const double> a, std::span<const double> b);

/// Requires equal dimensions; throws DimensionError otherwise.
void require_same_dim(const UnitVector& a, const UnitVector& b);

/// Region {x : lower <= normal . x <= upper} with 0 <= lower < upper <= 1.
class Band {
 public:
  Band(UnitVector normal, double lower, double upper);

  const UnitVector& normal() const noexcept { return normal_; }
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  bool contains(const UnitVector& x) const;
  /// Probability mass of the band under the uniform sphere measure.
  double mass() const;

 private:
  UnitVector normal_;
  double lower_;
  double upper_;
};

UnitVector sample_uniform_sphere(std::size_t d, Rng& rng);

/// Angle in [0, pi]; the dot product is clamped to [-1, 1] first.
double angle(const UnitVector& a, const UnitVector& b);

/// P[sign(a.x) != sign(b.x)] for x uniform on the sphere, i.e. angle/pi.
double disagreement_mass(const UnitVector& a, const UnitVector& b);

/// Density of a single coordinate x_1 of a uniform point on S^{d-1}:
/// (1 - z^2)^{(d-3)/2} / B((d-1)/2, 1/2).
double coordinate_density(std::size_t d, double z);

/// Density of x_1 conditioned on x_2 = xi:
/// (1 - xi^2 - z^2)^{(d-4)/2} / ((1 - xi^2)^{(d-3)/2} B((d-2)/2, 1/2)).
double slice_coordinate_density(std::size_t d, double xi, double z);

/// P[lower <= x_1 <= upper] by adaptive Gauss-Kronrod quadrature of
/// coordinate_density (relative tolerance 1e-8). Requires 0 <= lower < upper <= 1.
double band_mass(std::size_t d, double lower, double upper);

/// Lower bound (sqrt(d) / (8 pi)) * b on P[x_1 in [b/2, b]], valid for b <= 1/(10 sqrt d).
double band_mass_lower_bound(std::size_t d, double b);

struct BandDraw {
  UnitVector x;
  std::size_t draws_used;
};

/// Draws uniform points until one lands in `band`. draws_used counts every
/// draw including the accepted one.
BandDraw rejection_sample_band(const Band& band, Rng& rng, std::size_t draw_budget);

/// Exact draw from the uniform law on `band` without rejection against the
/// full sphere: the margin is sampled from its 1-d density, then the point
/// from the corresponding slice. Used where draw counts are irrelevant.
UnitVector sample_band_direct(const Band& band, Rng& rng);

/// Uniform point on the slice {x in S^{d-1} : w . x = xi}.
UnitVector sample_sphere_slice(const UnitVector& w, double xi, Rng& rng);

/// A uniformly random unit vector at angle `theta` from `u`.
UnitVector vector_at_angle(const UnitVector& u, double theta, Rng& rng);

struct ConditionalMoments {
  double mean;
  double second_moment;
  double negative_part_mean;
  // Standard errors of the three Monte Carlo estimates.
  double mean_se;
  double second_moment_se;
  double negative_part_mean_se;
};

/// Monte Carlo estimates of E[u.x], E[(u.x)^2] and E[(u.x) 1{u.x < 0}] with x
/// uniform on the slice w . x = xi. Requires angle(u, w) in (0, 9 pi / 10] and
/// 0 <= xi <= angle / (4 sqrt d).
ConditionalMoments conditional_moment_oracle(const UnitVector& u, const UnitVector& w,
                                             double xi, std::size_t n, Rng& rng);

}  // namespace activeperc
