#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "l1s/function_classes.hpp"

namespace l1s {

/// l1 norm of x after zeroing its s largest-modulus entries.
double sigma_s_l1(const Eigen::VectorXcd& x, std::int64_t s);

/// l2 norm of the coefficients left after keeping the n largest in modulus.
double best_n_term_l2(const CoefficientExpansion& f, std::int64_t n);

/// Separable norm (sum_k (|c_k| w_k)^q)^{1/q}, q in {1, 2}.
class TargetNorm {
 public:
  /// Norm of a class with exponent 1 or 2; other exponents are rejected.
  static TargetNorm of_class(const ClassSpec& cls);
  static TargetNorm unweighted(double q);

  double q() const { return q_; }
  double weight(const MultiIndex& k) const;
  double norm(const CoefficientExpansion& f) const;
  bool weighted() const { return cls_.has_value(); }
  const std::optional<ClassSpec>& cls() const { return cls_; }

 private:
  double q_ = 2.0;
  std::optional<ClassSpec> cls_;
};

/// Minimal target norm of f - g over n-term g.
double best_n_term_weighted(const CoefficientExpansion& f, std::int64_t n,
                            const TargetNorm& target);
double best_n_term_weighted(const CoefficientExpansion& f, std::int64_t n,
                            const ClassSpec& target);

/// n^{1-1/p} * norm_p
double stechkin_bound(double p, std::int64_t n, double norm_p);

/// Non-increasing positive diagonal gamma_1 >= gamma_2 >= ... (1-based).
struct DiagonalSpec {
  std::vector<double> prefix;
  std::function<double(std::int64_t)> tail;
  std::int64_t h_max = 10000;

  double gamma(std::int64_t j) const;

  /// gamma_j = ratio^{j-1}
  static DiagonalSpec geometric(double ratio, std::int64_t h_max = 10000);
  /// gamma_j = j^{-r}
  static DiagonalSpec power(double r, std::int64_t h_max = 10000);
  static DiagonalSpec from_values(std::vector<double> values);
};

struct WidthValue {
  double value = 0.0;
  std::int64_t argmax = 0;
  /// The supremum was attained at the enumeration cutoff.
  bool at_cutoff = false;
};

/// sup_{n <= h <= h_max} ((h-n+1) / sum_{j<=h} gamma_j^{-2})^{1/2}
WidthValue pietsch_diag_an(const DiagonalSpec& spec, std::int64_t n);

/// Worst best-n-term error in an unweighted l^q target over the unit ball of a
/// class whose norm has the same exponent q, from the h_max smallest weights.
WidthValue class_width(const ClassSpec& ball, const TargetNorm& target, std::int64_t n,
                       std::int64_t h_max = 256);

/// sigma_{n1+n2}(f)_X <= sigma_{n1}(f)_H * sigma_{n2}(unit ball of H)_X
bool product_bound_check(const CoefficientExpansion& f, std::int64_t n1, std::int64_t n2,
                         const ClassSpec& intermediate, const TargetNorm& target);

}  // namespace l1s
