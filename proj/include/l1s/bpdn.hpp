#pragma once

#include <memory>

#include "l1s/operators.hpp"

namespace l1s {

struct BpdnTolerances {
  /// Negative selects 1e-8 * (1 + |y|_2).
  double feas_tol = -1.0;
  double obj_tol = 1e-7;
  int max_iters = 50000;
  /// Iterations between certification checks.
  int check_every = 10;
};

/// min |z|_1 subject to |Az - y|_2 <= eta sqrt(m).
struct BpdnProblem {
  std::shared_ptr<const LinearOperator> A;
  Eigen::VectorXcd y;
  double eta = 0.0;
  BpdnTolerances tol;

  static BpdnProblem dense(Eigen::MatrixXcd A, Eigen::VectorXcd y, double eta,
                           BpdnTolerances tol = {});
  double radius() const;
};

struct BpdnSolution {
  Eigen::VectorXcd z;
  double residual_norm = 0.0;
  double objective = 0.0;
  /// Primal objective minus the best dual bound found.
  double gap = 0.0;
  int iterations = 0;
  bool certified = false;
};

/// Entrywise v_j max(1 - t/|v_j|, 0).
Eigen::VectorXcd soft_threshold_complex(const Eigen::VectorXcd& v, double t);

/// Primal-dual splitting with fixed steps balanced from A^*y; certified by
/// the duality gap and the residual.
BpdnSolution solve_bpdn(const BpdnProblem& problem);

/// Closed-form solution when A^*A = cI.
BpdnSolution bpdn_orthonormal_oracle(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                                     double eta);

}  // namespace l1s
