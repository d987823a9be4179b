#include "activeperc/oracles.hpp"

#include <cmath>
#include <sstream>

#include <boost/random/uniform_01.hpp>

namespace activeperc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) throw PreconditionError("eta must lie in [0, 1/2)");
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw PreconditionError("invalid " + what + ": '" + text + "'");
  return v;
}

}  // namespace

void validate(const NoiseModel& model) {
  std::visit(overloaded{
                 [](const noise::Realizable&) {},
                 [](const noise::BoundedConstant& m) { require_eta(m.eta); },
                 [](const noise::BoundedMargin& m) {
                   require_eta(m.eta);
                   if (!(m.margin > 0.0 && m.margin <= 1.0))
                     throw PreconditionError("margin must lie in (0, 1]");
                 },
                 [](const noise::AdversarialBand& m) {
                   if (!(m.nu >= 0.0 && m.nu <= 1.0))
                     throw PreconditionError("nu must lie in [0, 1]");
                 },
             },
             model);
}

double noise_factor(const NoiseModel& model) {
  return std::visit(overloaded{
                        [](const noise::BoundedConstant& m) { return 1.0 - 2.0 * m.eta; },
                        [](const noise::BoundedMargin& m) { return 1.0 - 2.0 * m.eta; },
                        [](const auto&) { return 1.0; },
                    },
                    model);
}

std::string noise_kind(const NoiseModel& model) {
  return std::visit(overloaded{
                        [](const noise::Realizable&) { return std::string("realizable"); },
                        [](const noise::BoundedConstant&) { return std::string("bounded"); },
                        [](const noise::BoundedMargin&) { return std::string("margin"); },
                        [](const noise::AdversarialBand&) { return std::string("adversarial"); },
                    },
                    model);
}

double noise_param(const NoiseModel& model) {
  return std::visit(overloaded{
                        [](const noise::Realizable&) { return 0.0; },
                        [](const noise::BoundedConstant& m) { return m.eta; },
                        [](const noise::BoundedMargin& m) { return m.eta; },
                        [](const noise::AdversarialBand& m) { return m.nu; },
                    },
                    model);
}

NoiseModel parse_noise(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.empty()) throw PreconditionError("empty noise specification");

  NoiseModel model;
  const std::string& kind = parts[0];
  if (kind == "realizable" && parts.size() == 1) {
    model = noise::Realizable{};
  } else if (kind == "bounded" && parts.size() == 2) {
    model = noise::BoundedConstant{parse_number(parts[1], "eta")};
  } else if (kind == "margin" && parts.size() == 3) {
    model = noise::BoundedMargin{parse_number(parts[1], "eta"), parse_number(parts[2], "margin")};
  } else if (kind == "adversarial" && parts.size() == 2) {
    model = noise::AdversarialBand{parse_number(parts[1], "nu")};
  } else {
    throw PreconditionError("unrecognized noise specification '" + text + "'");
  }
  validate(model);
  return model;
}

std::string format_noise(const NoiseModel& model) {
  std::ostringstream os;
  os << noise_kind(model);
  if (const auto* m = std::get_if<noise::BoundedMargin>(&model))
    os << ':' << m->eta << ':' << m->margin;
  else if (!std::holds_alternative<noise::Realizable>(model))
    os << ':' << noise_param(model);
  return os.str();
}

double slab_threshold(std::size_t d, double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) throw PreconditionError("nu must lie in [0, 1]");
  if (nu == 0.0) return 0.0;
  if (nu == 1.0) return 1.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * band_mass(d, 0.0, mid) < nu)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

LabelingOracle::LabelingOracle(UnitVector target, NoiseModel model, std::uint64_t seed)
    : target_(std::move(target)), model_(model), rng_(seed) {
  validate(model_);
  if (const auto* m = std::get_if<noise::AdversarialBand>(&model_))
    slab_ = slab_threshold(target_.dim(), m->nu);
}

Label LabelingOracle::query(const UnitVector& x) {
  require_same_dim(target_, x);
  if (std::abs(x.norm() - 1.0) > kUnitNormTolerance)
    throw PreconditionError("query point is not unit norm");
  ++queries_;
  const double margin = dot(target_, x);
  const Label clean = sign_label(margin);
  boost::random::uniform_01<double> unit;
  return std::visit(overloaded{
                        [&](const noise::Realizable&) { return clean; },
                        [&](const noise::BoundedConstant& m) {
                          return unit(rng_) < m.eta ? flip(clean) : clean;
                        },
                        [&](const noise::BoundedMargin& m) {
                          if (std::abs(margin) > m.margin) return clean;
                          return unit(rng_) < m.eta ? flip(clean) : clean;
                        },
                        [&](const noise::AdversarialBand&) {
                          return slab_ > 0.0 && std::abs(margin) <= slab_ ? flip(clean) : clean;
                        },
                    },
                    model_);
}

}  // namespace activeperc
