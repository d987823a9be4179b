// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "activeperc/bench.hpp"
#include "activeperc/init.hpp"
#include "activeperc/stats.hpp"
#include "activeperc/verify.hpp"

namespace ap = activeperc;
namespace bench = activeperc::bench;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const std::string& title, double time_limit_s,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool passed = out.passed;
  if (time_limit_s > 0.0 && secs >= time_limit_s) {
    passed = false;
    out.detail += fmt(" [over time limit %.0fs]", time_limit_s);
  }
  failures += passed ? 0 : 1;
  std::printf("%s [%2d] %s: %s (%.1fs)\n", passed ? "PASS" : "FAIL", id, title.c_str(),
              out.detail.c_str(), secs);
  std::fflush(stdout);
}

bench::ExperimentConfig base(double epsilon, ap::NoiseModel noise, std::uint64_t seed) {
  bench::ExperimentConfig c;
  c.d = 10;
  c.epsilon = epsilon;
  c.delta = 0.1;
  c.noise = noise;
  c.trials = 20;
  c.master_seed = seed;
  return c;
}

std::size_t successes(const std::vector<bench::TrialRow>& rows) {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.succeeded ? 1 : 0;
  return n;
}

std::string csv_text(const std::vector<bench::TrialRow>& rows) {
  std::ostringstream os;
  bench::write_csv(os, rows, false);
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<double> log_of(const std::vector<double>& xs) {
  std::vector<double> out;
  for (double x : xs) out.push_back(std::log(x));
  return out;
}

}  // namespace

int main() {
  std::printf("activeperc acceptance (default scales scale_m=%g scale_b=%g)\n",
              ap::kDefaultScaleM, ap::kDefaultScaleB);

  criterion(1, "norm and progress identity over 1e6 steps", 30.0, [] {
    double worst_norm = 0.0, worst_residual = 0.0;
    std::size_t steps = 0, flips = 0;
    for (std::size_t d : {3u, 10u, 100u}) {
      ap::Rng rng(ap::derive_seed(1, {d}));
      const ap::UnitVector u = ap::sample_uniform_sphere(d, rng);
      ap::UnitVector w = ap::sample_uniform_sphere(d, rng);
      const std::size_t n = d == 100 ? 333'334 : 333'333;
      for (std::size_t t = 0; t < n; ++t, ++steps) {
        const ap::UnitVector x = ap::sample_uniform_sphere(d, rng);
        const ap::Label y = rng() & 1 ? ap::Label::positive : ap::Label::negative;
        const double wx = ap::dot(w, x);
        const bool flip = ap::to_int(y) * wx < 0.0;
        const ap::UnitVector next = ap::modified_perceptron_step(w, x, y);
        const double change = ap::dot(next, u) - ap::dot(w, u);
        const double predicted = flip ? -2.0 * wx * ap::dot(u, x) : 0.0;
        worst_residual = std::max(worst_residual, std::abs(change - predicted));
        worst_norm = std::max(worst_norm, std::abs(next.norm() - 1.0));
        flips += flip;
        w = next;
      }
    }
    return Outcome{steps == 1'000'000 && worst_norm <= 1e-9 && worst_residual <= 1e-9,
                   fmt("steps=%zu flips=%zu max|norm-1|=%.2e max residual=%.2e", steps, flips,
                       worst_norm, worst_residual)};
  });

  std::string criterion2_csv;
  criterion(2, "end-to-end realizable d=10 eps=0.05", 60.0, [&] {
    const auto rows = bench::run_single(base(0.05, ap::noise::Realizable{}, 2));
    criterion2_csv = csv_text(rows);
    const std::size_t s = successes(rows);
    return Outcome{s >= 18, fmt("%zu/20 succeeded (need 18)", s)};
  });

  criterion(3, "end-to-end bounded noise eta=0.2, 0.3", 180.0, [] {
    const std::size_t a = successes(bench::run_single(base(0.05, ap::noise::BoundedConstant{0.2}, 3)));
    const std::size_t b = successes(bench::run_single(base(0.05, ap::noise::BoundedConstant{0.3}, 3)));
    return Outcome{a >= 18 && b >= 16,
                   fmt("eta=0.2: %zu/20 (need 18), eta=0.3: %zu/20 (need 16)", a, b)};
  });

  criterion(4, "end-to-end adversarial nu=eps/10", 120.0, [] {
    const std::size_t s =
        successes(bench::run_single(base(0.05, ap::noise::AdversarialBand{0.005}, 4)));
    return Outcome{s >= 18, fmt("%zu/20 succeeded (need 18)", s)};
  });

  // Criteria 5 and 8 share one epsilon sweep.
  bench::SweepResult eps_sweep;
  const std::vector<double> eps_values{0.2, 0.1, 0.05, 0.025};
  criterion(5, "labels linear in ln(1/eps)", 0.0, [&] {
    eps_sweep = bench::run_sweep(base(0.1, ap::noise::Realizable{}, 5), bench::SweepAxis::epsilon,
                                 eps_values);
    std::vector<double> x, y;
    for (const auto& s : eps_sweep.summary) {
      x.push_back(std::log(1.0 / s.value));
      y.push_back(s.median_labels);
    }
    const auto fit = ap::stats::linear_fit(x, y);
    return Outcome{fit.r_squared >= 0.9,
                   fmt("median labels %.0f %.0f %.0f %.0f, R^2=%.4f (need >= 0.9)", y[0], y[1],
                       y[2], y[3], fit.r_squared)};
  });

  criterion(6, "labels linear in d", 0.0, [] {
    const std::vector<double> ds{5, 10, 20, 40};
    const auto sweep =
        bench::run_sweep(base(0.1, ap::noise::Realizable{}, 6), bench::SweepAxis::d, ds);
    std::vector<double> y;
    for (const auto& s : sweep.summary) y.push_back(s.median_labels);
    const double slope = ap::stats::linear_fit(log_of(ds), log_of(y)).slope;
    return Outcome{std::abs(slope - 1.0) <= 0.3,
                   fmt("median labels %.0f %.0f %.0f %.0f, log-log slope=%.3f (need 1 +/- 0.3)",
                       y[0], y[1], y[2], y[3], slope)};
  });

  criterion(7, "labels scale with 1/(1-2 eta)^2", 0.0, [] {
    const auto sweep = bench::run_sweep(base(0.05, ap::noise::BoundedConstant{0.1}, 7),
                                        bench::SweepAxis::eta, {0.1, 0.3});
    const double ratio = sweep.summary[1].median_labels / sweep.summary[0].median_labels;
    return Outcome{ratio >= 4.0 / 3.0 && ratio <= 12.0,
                   fmt("median labels %.0f -> %.0f, ratio=%.3f (need within [4/3, 12])",
                       sweep.summary[0].median_labels, sweep.summary[1].median_labels, ratio)};
  });

  criterion(8, "unlabeled draws scale with 1/eps", 0.0, [&] {
    std::vector<double> x, y;
    for (const auto& s : eps_sweep.summary) {
      x.push_back(1.0 / s.value);
      y.push_back(s.median_unlabeled);
    }
    const double slope = ap::stats::linear_fit(log_of(x), log_of(y)).slope;
    return Outcome{std::abs(slope - 1.0) <= 0.3,
                   fmt("median unlabeled %.3g %.3g %.3g %.3g, log-log slope=%.3f (need 1 +/- 0.3)",
                       y[0], y[1], y[2], y[3], slope)};
  });

  criterion(9, "verification suite at n=1e6", 300.0, [] {
    ap::verify::SuiteConfig config;
    config.samples = 1'000'000;
    config.pairs = 20;
    const auto checks = ap::verify::run_suite(config);
    std::size_t ok = 0;
    std::string failed;
    for (const auto& c : checks) {
      if (c.passed)
        ++ok;
      else
        failed += " " + c.name;
    }
    return Outcome{ok == checks.size(),
                   fmt("%zu/%zu checks passed", ok, checks.size()) +
                       (failed.empty() ? "" : "; failed:" + failed)};
  });

  criterion(10, "rejection sampler concentration", 0.0, [] {
    const std::size_t d = 10, m = 1000;
    // Band [b/2, b] with mass near 0.01.
    double lo = 1e-4, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (ap::band_mass(d, mid / 2.0, mid) < 0.01 ? lo : hi) = mid;
    }
    const double b = 0.5 * (lo + hi);
    const double p = ap::band_mass(d, b / 2.0, b);
    const double limit = 2.0 * m / p;
    std::size_t within = 0;
    for (std::uint64_t rep = 0; rep < 100; ++rep) {
      ap::Rng rng(ap::derive_seed(10, {rep}));
      const ap::Band band(ap::sample_uniform_sphere(d, rng), b / 2.0, b);
      std::size_t total = 0;
      for (std::size_t i = 0; i < m; ++i)
        total += ap::rejection_sample_band(band, rng, 100'000'000).draws_used;
      within += static_cast<double>(total) <= limit;
    }
    return Outcome{within >= 99,
                   fmt("p=%.5f, total draws <= 2m/p=%.0f in %zu/100 repetitions (need 99)", p,
                       limit, within)};
  });

  criterion(11, "acute initialization d=5", 0.0, [] {
    const std::size_t d = 5;
    std::string detail;
    bool ok = true;
    for (const ap::NoiseModel& model :
         {ap::NoiseModel{ap::noise::Realizable{}}, ap::NoiseModel{ap::noise::BoundedConstant{0.2}}}) {
      std::size_t good = 0;
      for (std::uint64_t t = 0; t < 20; ++t) {
        const std::uint64_t seed = ap::derive_seed(11, {t, ap::noise_kind(model).size()});
        ap::Rng rng(seed);
        // Even trials plant u near -e_1, so the e_1 start is nearly antipodal.
        std::vector<double> c(d);
        ap::UnitVector g = ap::sample_uniform_sphere(d, rng);
        for (std::size_t i = 0; i < d; ++i) c[i] = 0.05 * g[i];
        c[0] -= 1.0;
        const ap::UnitVector u =
            t % 2 == 0 ? ap::UnitVector::normalized(c) : ap::sample_uniform_sphere(d, rng);
        ap::LabelingOracle oracle(u, model, ap::derive_seed(seed, {1}));
        ap::InitConfig config;
        config.model = model;
        const ap::InitResult r = ap::acute_initialize(oracle, rng, d, config);
        good += ap::angle(r.chosen, u) <= ap::kPi / 4.0;
      }
      ok = ok && good >= 18;
      detail += fmt("%s%s: %zu/20", detail.empty() ? "" : ", ", ap::format_noise(model).c_str(), good);
    }
    return Outcome{ok, detail + " within pi/4 (need 18 each; half with u near -e_1)"};
  });

  criterion(12, "passive equivalence", 0.0, [] {
    auto active = base(0.05, ap::noise::Realizable{}, 121);
    active.trials = 50;
    auto passive = active;
    passive.mode = bench::Mode::passive;
    passive.master_seed = 122;
    std::vector<double> a, p;
    for (const auto& r : bench::run_single(active)) a.push_back(static_cast<double>(r.unlabeled_draws));
    for (const auto& r : bench::run_single(passive)) p.push_back(static_cast<double>(r.labels));
    const double ks = ap::stats::ks_statistic(a, p);
    const double crit = ap::stats::ks_critical(0.05, a.size(), p.size());
    bool ok = ks < crit;
    std::string detail = fmt("KS=%.3f (critical %.3f at 5%%)", ks, crit);

    struct Gate {
      ap::NoiseModel noise;
      std::size_t need;
    };
    for (const Gate& g : {Gate{ap::noise::Realizable{}, 18}, Gate{ap::noise::BoundedConstant{0.2}, 18},
                          Gate{ap::noise::BoundedConstant{0.3}, 16},
                          Gate{ap::noise::AdversarialBand{0.005}, 18}}) {
      auto c = base(0.05, g.noise, 123);
      c.mode = bench::Mode::passive;
      const std::size_t s = successes(bench::run_single(c));
      ok = ok && s >= g.need;
      detail += fmt("; passive %s %zu/20 (need %zu)", ap::format_noise(g.noise).c_str(), s, g.need);
    }
    return Outcome{ok, detail};
  });

  criterion(13, "determinism", 0.0, [&] {
    const std::string again = csv_text(bench::run_single(base(0.05, ap::noise::Realizable{}, 2)));
    bool ok = !criterion2_csv.empty() && again == criterion2_csv;
    std::string detail = fmt("criterion 2 CSV re-run %s", ok ? "identical" : "DIFFERS");

    const std::string bin = ACTIVEPERC_BENCH_PATH;
    const std::string dir = std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp";
    const std::string f1 = dir + "/activeperc_accept_1.csv", f2 = dir + "/activeperc_accept_2.csv";
    const std::string args = " sweep --sweep eta=0.1,0.2 --noise bounded:0.1 --d 8 --epsilon 0.1"
                             " --trials 4 --seed 13";
    const int s1 = std::system((bin + args + " --jobs 1 --out " + f1 + " > /dev/null").c_str());
    const int s2 = std::system((bin + args + " --jobs 3 --out " + f2 + " > /dev/null").c_str());
    const std::string c1 = read_file(f1), c2 = read_file(f2);
    const bool cli_ok = s1 == 0 && s2 == 0 && !c1.empty() && c1 == c2;
    ok = ok && cli_ok;
    detail += fmt("; CLI sweep (jobs 1 vs 3) %s, %zu bytes", cli_ok ? "identical" : "DIFFERS",
                  c1.size());
    std::remove(f1.c_str());
    std::remove(f2.c_str());
    return Outcome{ok, detail};
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASSED" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
