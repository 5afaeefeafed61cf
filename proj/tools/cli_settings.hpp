#pragma once

#include <optional>
#include <string>
#include <vector>

#include "l1s/harness.hpp"
#include "l1s/widths.hpp"

namespace l1s::cli {

/// Every tunable of the four subcommands, with file values and then flags
/// layered over the defaults.
struct Settings {
  std::string system_kind;  ///< empty: natural system of the class
  int system_d = 0;         ///< 0: class dimension

  std::string class_name = "wiener_mixed";
  double r = 1.0;
  double p = 1.0;
  int d = 1;
  double alpha = -0.5;

  std::string theorem;  ///< empty: default theorem of the system
  std::string plan;     ///< "grid" or "continuous" (Fourier only)
  std::int64_t n = 8;
  std::int64_t M = 0;  ///< 0: from the M rule
  std::string m_rule;  ///< empty: default rule of the class
  double c_sample = 1.0;
  double c_eta = 1.0;
  std::string eta = "auto";
  std::uint64_t seed = 0;

  double feas_tol = -1.0;
  double obj_tol = 1e-7;
  int max_iters = 50000;

  std::string function_file;
  std::string support = "n";
  double support_scale = 2.0;
  std::size_t sparsity = 0;  ///< 0: dense support
  std::uint64_t function_seed = 1;

  std::vector<std::int64_t> n_values{4, 8, 16, 32};
  int trials = 10;
  std::int64_t fixed_M = 0;

  std::int64_t phase_N = 257;
  std::int64_t phase_s = 5;
  std::vector<std::size_t> phase_m{40, 80, 120, 160};

  std::string quantity = "pietsch";
  std::string gamma = "geometric:0.5";
  std::int64_t h_max = 10000;
  double target_q = 2.0;

  std::string output_dir;
  std::string output_file;
};

/// Reads a YAML file with sections system, class, recovery, solver, function,
/// experiment, phase, oracle, output. Unknown keys are rejected.
void load_settings_file(const std::string& path, Settings& s);

/// Flag > file > L1S_OUTPUT_DIR > ".".
std::string resolve_output_dir(const Settings& s);

ClassSpec make_class(const Settings& s);
SystemDescriptor make_system(const Settings& s);
MRule make_m_rule(const Settings& s);
RecoveryConfig make_recovery_config(const Settings& s);
FunctionFamily make_family(const Settings& s);
ExperimentConfig make_experiment_config(const Settings& s);
DiagonalSpec make_diagonal(const Settings& s);

}  // namespace l1s::cli
