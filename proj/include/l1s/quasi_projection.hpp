#pragma once

#include "l1s/function_classes.hpp"

namespace l1s {

/// De la Vallee Poussin operator: a univariate pair (n, m) with m <= n, or the
/// d-fold tensor operator built from the pair ((d+1)M, dM).
struct DlvpSpec {
  std::int64_t n = 0;
  std::int64_t m = 0;
  int d = 1;
  std::int64_t M = 0;
  bool tensor = false;

  static DlvpSpec univariate(std::int64_t n, std::int64_t m);
  static DlvpSpec tensor_product(int d, std::int64_t M);
};

/// 1 for |k| <= n-m, (n+m+1-|k|)/(2m+1) on the blending band, 0 beyond n+m.
double dlvp_coeff(std::int64_t n, std::int64_t m, std::int64_t k);
double tensor_dlvp_coeff(int d, std::int64_t M, const MultiIndex& k);

CoefficientExpansion apply_quasi_projection(const DlvpSpec& spec, const CoefficientExpansion& f);

struct KernelNorm {
  double value = 0.0;
  /// (2n+1)/(2m+1), raised to the d-th power for the tensor operator.
  double bound = 0.0;
  std::int64_t nodes = 0;
};

/// Trapezoid approximation of the L1 norm of the kernel; nodes = 0 picks 8(n+m)+1.
KernelNorm kernel_l1_norm(const DlvpSpec& spec, std::int64_t nodes = 0);

/// Even trigonometric polynomial g with g(theta) = f(cos 2 pi theta).
CoefficientExpansion chebyshev_lift(const CoefficientExpansion& f);
/// Inverse of the lift on even expansions.
CoefficientExpansion chebyshev_unlift(const CoefficientExpansion& g);
/// Algebraic operator realized as unlift(P^{(n,m)} lift(f)).
CoefficientExpansion chebyshev_quasi_projection(std::int64_t n, std::int64_t m,
                                                const CoefficientExpansion& f);

}  // namespace l1s
