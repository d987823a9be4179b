#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "activeperc/learner.hpp"
#include "activeperc/oracles.hpp"
#include "activeperc/verify.hpp"

namespace activeperc::bench {

enum class Mode { active, passive, init, verify };

Mode parse_mode(const std::string& text);
std::string to_string(Mode mode);

struct ExperimentConfig {
  Mode mode = Mode::active;
  std::size_t d = 10;
  NoiseModel noise = noise::Realizable{};
  double epsilon = 0.1;
  double delta = 0.1;
  double scale_m = kDefaultScaleM;
  double scale_b = kDefaultScaleB;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::string output_path;
  unsigned jobs = 1;
  /// Fill the wall_time_s column; off by default so output is byte-stable.
  bool record_time = false;
};

/// Throws PreconditionError on an invalid configuration.
void validate(const ExperimentConfig& config);

/// One CSV row.
struct TrialRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::active;
  std::size_t d = 0;
  NoiseModel noise;
  double epsilon = 0.0;
  double delta = 0.0;
  double scale_m = 0.0;
  double scale_b = 0.0;
  std::size_t labels = 0;
  std::size_t unlabeled_draws = 0;
  double final_angle = 0.0;
  bool succeeded = false;
  double wall_time_s = 0.0;
};

inline constexpr const char* kCsvHeader =
    "trial,seed,mode,d,noise_kind,noise_param,epsilon,delta,scale_m,scale_b,labels,"
    "unlabeled_draws,final_angle,succeeded,wall_time_s";

inline constexpr const char* kVerifyCsvHeader = "check,passed,statistic,threshold,detail";

std::string to_csv(const TrialRow& row, bool record_time);
std::string to_csv(const verify::CheckReport& check);
void write_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool record_time);
void write_csv(std::ostream& out, const std::vector<verify::CheckReport>& checks);

/// Seed for trial `trial` of sweep value `value_index`.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t value_index, std::size_t trial);

/// One seeded end-to-end run against a freshly planted target. For
/// Mode::init the run starts from acute_initialize's output instead of a
/// random acute start. labels is the oracle's total query count.
TrialRow run_trial(const ExperimentConfig& config, std::size_t value_index, std::size_t trial);

/// All config.trials trials (sweep value index 0), in trial order.
std::vector<TrialRow> run_single(const ExperimentConfig& config);

enum class SweepAxis { d, eta, nu, epsilon };

SweepAxis parse_axis(const std::string& text);
std::string to_string(SweepAxis axis);

/// Parses "axis=v1,v2,...".
std::pair<SweepAxis, std::vector<double>> parse_sweep(const std::string& text);

/// Copy of `config` with the swept field set. eta keeps the margin profile
/// when the base noise is BoundedMargin and otherwise uses BoundedConstant.
ExperimentConfig apply_axis(const ExperimentConfig& config, SweepAxis axis, double value);

struct SweepSummary {
  double value = 0.0;
  std::size_t trials = 0;
  double median_labels = 0.0;
  double median_unlabeled = 0.0;
  double success_rate = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::epsilon;
  std::vector<TrialRow> rows;
  std::vector<SweepSummary> summary;
};

/// Rows are ordered by (value index, trial) regardless of config.jobs.
SweepResult run_sweep(const ExperimentConfig& config, SweepAxis axis,
                      const std::vector<double>& values);

SweepSummary summarize(double value, const std::vector<TrialRow>& rows);

}  // namespace activeperc::bench
