#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l1s/recovery.hpp"

namespace l1s {

/// How M grows with n in a rate sweep.
enum class MRule {
  MixedWiener,      ///< floor(n^{(r+1/2)/r})
  IsotropicWiener,  ///< floor(n^{1/d + 1/(pr) - 1/(2r)})
  ChebyshevWiener,  ///< floor(n^{1 + 1/(pr) - 1/(2r)})
  LegendreWiener,   ///< floor(n^{1 + 1/(pr) - 1/r})
  MixedSobolev,     ///< floor(n^{2r/(r-1/2)})
  Fixed,
};

MRule parse_m_rule(const std::string& name);
std::string m_rule_name(MRule rule);
std::int64_t apply_m_rule(MRule rule, const ClassSpec& cls, std::int64_t n,
                          std::int64_t fixed_M = 0);

/// Random test functions of a sweep.
struct FunctionFamily {
  enum class Support { ScaledN, ScaledM };
  /// Support is the box (or degree range) of radius ceil(scale * n) or ceil(scale * M).
  Support support = Support::ScaledN;
  double scale = 2.0;
  std::optional<std::size_t> sparsity;

  IndexSet support_set(const ClassSpec& cls, std::int64_t n, std::int64_t M) const;
};

struct ExperimentConfig {
  RecoveryConfig base;
  std::vector<std::int64_t> n_values;
  int trials_per_n = 10;
  MRule m_rule = MRule::MixedWiener;
  std::int64_t fixed_M = 0;
  std::uint64_t seed_base = 0;
  FunctionFamily family;
  std::string csv_path;
  std::string json_path;

  void validate() const;
};

struct RatePair {
  double rho = 0.0;
  double beta = 0.0;
  bool operator==(const RatePair&) const = default;
};

struct RateRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double median_error = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double success_fraction = 0.0;
  bool operator==(const RateRow&) const = default;
};

struct RateReport {
  std::vector<RateRow> rows;
  double fitted_slope = 0.0;
  RatePair predicted_n;
  RatePair predicted_m;
  bool operator==(const RateReport&) const = default;
};

enum class RateIndex { NIndexed, MIndexed };

struct TransferResult {
  double rate = 0.0;
  double log_power = 0.0;
  double constant = 0.0;
};

/// Exponent of log(n) in the sample count behind each class's corollary.
double oversampling_log_power(const ClassSpec& cls);

/// (rho, beta) with error ~ n^rho log(n)^beta, or the same in terms of m.
RatePair predicted_rate(const ClassSpec& cls, RateIndex index);

/// a_n <= c n^{-r} log(n)^beta at m ~ c1 n log(n)^alpha becomes
/// a_m <~ (4 c1 2^alpha)^r m^{-r} log(m)^{beta + alpha r}.
TransferResult rate_transfer(double c1, double alpha, double r, double beta);

/// Least-squares slope of log(error) against log(n); drops the smallest n
/// when at least four points are given.
double fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& errors);

/// Linear-interpolation quantile of an ascending sample.
double quantile_sorted(const std::vector<double>& sorted, double q);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// Per-trial record, useful for diagnostics.
struct TrialRecord {
  std::int64_t n = 0;
  std::int64_t M = 0;
  std::size_t m = 0;
  double eta = 0.0;
  double error = 0.0;
  double norm = 0.0;
  int iterations = 0;
  bool certified = false;
};

RateReport run_rate_experiment(const ExperimentConfig& config,
                               std::vector<TrialRecord>* trials = nullptr);

struct PhaseRow {
  std::size_t m = 0;
  int successes = 0;
  int trials = 0;
  int uncertified = 0;
  double success_fraction = 0.0;
};

struct PhaseTable {
  std::int64_t N = 0;
  std::int64_t s = 0;
  std::vector<PhaseRow> rows;
};

/// Success rate of noiseless recovery of random s-sparse unit-modulus vectors.
PhaseTable run_phase_experiment(const SystemDescriptor& system, std::int64_t N, std::int64_t s,
                                const std::vector<std::size_t>& m_grid, int trials,
                                std::uint64_t seed, BpdnTolerances tol = {});

enum class ReportFormat { Csv, Json };

void emit_report(const RateReport& report, ReportFormat format, const std::string& path);
std::string report_to_string(const RateReport& report, ReportFormat format);
RateReport parse_report_json(const std::string& text);
std::string phase_to_csv(const PhaseTable& table);

}  // namespace l1s
