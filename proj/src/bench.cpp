#include "activeperc/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "activeperc/init.hpp"
#include "activeperc/passive.hpp"
#include "activeperc/stats.hpp"

namespace activeperc::bench {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

/// Runs job(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any job is rethrown after all threads join.
template <class Job>
void parallel_for(std::size_t n, unsigned jobs, Job job) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

Mode parse_mode(const std::string& text) {
  if (text == "active") return Mode::active;
  if (text == "passive") return Mode::passive;
  if (text == "init") return Mode::init;
  if (text == "verify") return Mode::verify;
  throw PreconditionError("unknown mode '" + text + "'");
}

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::active: return "active";
    case Mode::passive: return "passive";
    case Mode::init: return "init";
    case Mode::verify: return "verify";
  }
  return "unknown";
}

void validate(const ExperimentConfig& config) {
  if (config.d < kMinDimension) throw DimensionError("dimension must be at least 3");
  if (config.trials < 1) throw PreconditionError("trials must be at least 1");
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
    throw PreconditionError("epsilon must lie in (0, 1)");
  if (!(config.delta > 0.0 && config.delta < 1.0))
    throw PreconditionError("delta must lie in (0, 1)");
  if (!(config.scale_m > 0.0 && config.scale_b > 0.0))
    throw PreconditionError("scale factors must be positive");
  activeperc::validate(config.noise);
}

std::string to_csv(const TrialRow& row, bool record_time) {
  std::ostringstream os;
  os << row.trial << ',' << row.seed << ',' << to_string(row.mode) << ',' << row.d << ','
     << noise_kind(row.noise) << ',' << num(noise_param(row.noise)) << ',' << num(row.epsilon)
     << ',' << num(row.delta) << ',' << num(row.scale_m) << ',' << num(row.scale_b) << ','
     << row.labels << ',' << row.unlabeled_draws << ',' << num(row.final_angle) << ','
     << (row.succeeded ? 1 : 0) << ',' << (record_time ? num(row.wall_time_s) : std::string("0"));
  return os.str();
}

std::string to_csv(const verify::CheckReport& check) {
  return csv_field(check.name) + ',' + (check.passed ? "1" : "0") + ',' + num(check.statistic) +
         ',' + num(check.threshold) + ',' + csv_field(check.detail);
}

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool record_time) {
  out << kCsvHeader << '\n';
  for (const TrialRow& row : rows) out << to_csv(row, record_time) << '\n';
}

void write_csv(std::ostream& out, const std::vector<verify::CheckReport>& checks) {
  out << kVerifyCsvHeader << '\n';
  for (const auto& c : checks) out << to_csv(c) << '\n';
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t value_index, std::size_t trial) {
  return derive_seed(master_seed, {value_index, trial});
}

TrialRow run_trial(const ExperimentConfig& config, std::size_t value_index, std::size_t trial) {
  validate(config);
  if (config.mode == Mode::verify)
    throw PreconditionError("verify mode has no per-trial runs; use the verify suite");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = trial_seed(config.master_seed, value_index, trial);

  Rng target_rng = make_rng(seed, Stream::target);
  const UnitVector u = sample_uniform_sphere(config.d, target_rng);
  LabelingOracle oracle(u, config.noise, derive_seed(seed, {static_cast<std::uint64_t>(Stream::labels)}));
  Rng instances = make_rng(seed, Stream::instances);

  const Schedule schedule = make_schedule(config.d, config.epsilon, config.delta, config.noise,
                                          config.scale_m, config.scale_b);
  RunOptions options;
  options.reference = u;

  std::size_t extra_draws = 0;
  std::optional<UnitVector> v0;
  if (config.mode == Mode::init) {
    Rng init_rng = make_rng(seed, Stream::init);
    InitConfig init;
    init.model = config.noise;
    init.delta = config.delta;
    init.scale_m = config.scale_m;
    init.scale_b = config.scale_b;
    InitResult r = acute_initialize(oracle, init_rng, config.d, init);
    extra_draws = r.unlabeled_draws;
    v0 = r.chosen;
  } else {
    Rng start_rng = make_rng(seed, Stream::start);
    UnitVector v = sample_uniform_sphere(config.d, start_rng);
    v0 = dot(v, u) < 0.0 ? -v : v;
  }

  RunReport report = [&] {
    if (config.mode == Mode::passive) {
      LabeledExampleSource source(oracle, instances);
      return passive_perceptron(source, *v0, config.epsilon, config.delta, schedule, options);
    }
    return active_perceptron(oracle, instances, *v0, config.epsilon, config.delta, schedule,
                             options);
  }();

  TrialRow row;
  row.trial = trial;
  row.seed = seed;
  row.mode = config.mode;
  row.d = config.d;
  row.noise = config.noise;
  row.epsilon = config.epsilon;
  row.delta = config.delta;
  row.scale_m = config.scale_m;
  row.scale_b = config.scale_b;
  row.labels = oracle.query_count();
  row.unlabeled_draws = report.total_unlabeled + extra_draws;
  row.final_angle = report.final_angle.value_or(std::nan(""));
  row.succeeded = report.succeeded.value_or(false);
  row.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<TrialRow> run_single(const ExperimentConfig& config) {
  validate(config);
  std::vector<TrialRow> rows(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t t) { rows[t] = run_trial(config, 0, t); });
  return rows;
}

SweepAxis parse_axis(const std::string& text) {
  if (text == "d") return SweepAxis::d;
  if (text == "eta") return SweepAxis::eta;
  if (text == "nu") return SweepAxis::nu;
  if (text == "epsilon") return SweepAxis::epsilon;
  throw PreconditionError("unknown sweep axis '" + text + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::d: return "d";
    case SweepAxis::eta: return "eta";
    case SweepAxis::nu: return "nu";
    case SweepAxis::epsilon: return "epsilon";
  }
  return "unknown";
}

std::pair<SweepAxis, std::vector<double>> parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw PreconditionError("sweep must look like axis=v1,v2,...");
  const SweepAxis axis = parse_axis(text.substr(0, eq));
  std::vector<double> values;
  std::stringstream ss(text.substr(eq + 1));
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw PreconditionError("invalid sweep value '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw PreconditionError("sweep needs at least one value");
  return {axis, values};
}

ExperimentConfig apply_axis(const ExperimentConfig& config, SweepAxis axis, double value) {
  ExperimentConfig c = config;
  switch (axis) {
    case SweepAxis::d:
      if (value < 3.0 || value != std::floor(value))
        throw PreconditionError("swept dimension must be an integer >= 3");
      c.d = static_cast<std::size_t>(value);
      break;
    case SweepAxis::eta:
      if (const auto* m = std::get_if<noise::BoundedMargin>(&config.noise))
        c.noise = noise::BoundedMargin{value, m->margin};
      else
        c.noise = noise::BoundedConstant{value};
      break;
    case SweepAxis::nu:
      c.noise = noise::AdversarialBand{value};
      break;
    case SweepAxis::epsilon:
      c.epsilon = value;
      break;
  }
  validate(c);
  return c;
}

SweepSummary summarize(double value, const std::vector<TrialRow>& rows) {
  SweepSummary s;
  s.value = value;
  s.trials = rows.size();
  if (rows.empty()) return s;
  std::vector<double> labels, unlabeled;
  std::size_t wins = 0;
  for (const auto& r : rows) {
    labels.push_back(static_cast<double>(r.labels));
    unlabeled.push_back(static_cast<double>(r.unlabeled_draws));
    wins += r.succeeded ? 1 : 0;
  }
  s.median_labels = stats::median(labels);
  s.median_unlabeled = stats::median(unlabeled);
  s.success_rate = static_cast<double>(wins) / static_cast<double>(rows.size());
  return s;
}

SweepResult run_sweep(const ExperimentConfig& config, SweepAxis axis,
                      const std::vector<double>& values) {
  if (values.empty()) throw PreconditionError("sweep needs at least one value");
  std::vector<ExperimentConfig> configs;
  for (double v : values) configs.push_back(apply_axis(config, axis, v));

  const std::size_t per_value = config.trials;
  SweepResult result;
  result.axis = axis;
  result.rows.resize(values.size() * per_value);
  parallel_for(result.rows.size(), config.jobs, [&](std::size_t i) {
    const std::size_t vi = i / per_value;
    result.rows[i] = run_trial(configs[vi], vi, i % per_value);
  });
  for (std::size_t vi = 0; vi < values.size(); ++vi) {
    std::vector<TrialRow> slice(result.rows.begin() + vi * per_value,
                                result.rows.begin() + (vi + 1) * per_value);
    result.summary.push_back(summarize(values[vi], slice));
  }
  return result;
}

}  // namespace activeperc::bench
