#pragma once

#include <optional>

#include "l1s/bpdn.hpp"
#include "l1s/function_classes.hpp"

namespace l1s {

/// Which sampling guarantee fixes the sample count and search set.
enum class Theorem {
  Fourier3,     ///< continuous i.i.d. points on the torus
  FourierGrid,  ///< i.i.d. rows of the DFT on the grid of size 2(2d+1)M+1
  Chebyshev,    ///< arcsine points, search set {0..3M}
  Legendre,     ///< preconditioned Legendre, search set {0..M}
};

std::string theorem_name(Theorem t);
Theorem parse_theorem(const std::string& name);

struct EtaMode {
  bool automatic = true;
  double value = 0.0;

  static EtaMode auto_select() { return {true, 0.0}; }
  static EtaMode fixed(double v) { return {false, v}; }
};

struct RecoveryConfig {
  SystemDescriptor system = SystemDescriptor::fourier(1);
  ClassSpec cls = ClassSpec::wiener_mixed(1.0, 1);
  std::int64_t n = 1;
  std::int64_t M = 3;
  double c_sample = 1.0;
  double c_eta = 1.0;
  EtaMode eta = EtaMode::auto_select();
  SamplePlan plan = SamplePlan::continuous(0);
  Theorem theorem = Theorem::FourierGrid;
  BpdnTolerances tol;

  void validate() const;
};

struct RecoveryResult {
  CoefficientExpansion reconstruction;
  std::size_t samples_used = 0;
  double eta = 0.0;
  BpdnSolution solver;
  std::optional<double> l2_error;
};

/// max(ln x, 1)
double guarded_log(double x);

std::size_t sample_count(const RecoveryConfig& config);

/// The set J fixed exactly by the quasi-projection (or truncation).
IndexSet base_set(const RecoveryConfig& config);
/// The search set J* that carries the reconstruction.
IndexSet search_set(const RecoveryConfig& config);
/// Operator norm bound of the quasi-projection behind the theorem.
double quasi_projection_bound(const RecoveryConfig& config);

/// System whose samples enter the solver (the preconditioned one for Legendre).
SystemDescriptor measurement_system(const RecoveryConfig& config);
/// System of the reconstruction expansion.
SystemDescriptor reconstruction_system(const RecoveryConfig& config);

/// Sampling plan implied by the theorem, keeping the seed of config.plan.
SamplePlan recovery_plan(const RecoveryConfig& config);
PointSet draw_recovery_points(const RecoveryConfig& config);

Eigen::MatrixXcd build_matrix(const SystemDescriptor& system, const IndexSet& Jstar,
                              const PointSet& points);
/// Same map as build_matrix, with fast transforms where available.
std::shared_ptr<LinearOperator> build_operator(const SystemDescriptor& system,
                                               const IndexSet& Jstar, const PointSet& points);

/// Analytic bounds on sigma_n and E_J for a class, in the theorem's setting.
double sigma_bound(const RecoveryConfig& config);
double truncation_bound(const RecoveryConfig& config);
double choose_eta(const RecoveryConfig& config);

RecoveryResult recover(const Eigen::VectorXcd& f_samples, const RecoveryConfig& config,
                       const PointSet& points);

/// Samples f(t_l) of the function at the recovery points.
Eigen::VectorXcd sample_function(const CoefficientExpansion& f, const PointSet& points);

double l2_error(const CoefficientExpansion& f_true, const CoefficientExpansion& f_hat);

/// Keeps Legendre degrees 0..M.
CoefficientExpansion legendre_truncation_TM(const CoefficientExpansion& f, std::int64_t M);

}  // namespace l1s
