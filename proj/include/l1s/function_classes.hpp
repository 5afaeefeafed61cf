#pragma once

#include <map>
#include <optional>
#include <string>

#include "l1s/ortho_systems.hpp"

namespace l1s {

/// Coefficient-defined smoothness class.
struct ClassSpec {
  enum class Kind { WienerMixed, WienerIso, SobolevMixedH, PolyWiener };
  Kind kind = Kind::WienerMixed;
  double r = 1.0;
  double p = 1.0;
  int d = 1;
  /// Jacobi parameter of PolyWiener: -1/2 (Chebyshev) or 0 (Legendre).
  double alpha = -0.5;

  static ClassSpec wiener_mixed(double r, int d);
  static ClassSpec wiener_iso(double r, double p, int d);
  static ClassSpec sobolev_mixed(double r, int d);
  static ClassSpec poly_wiener(double alpha, double r, double p);

  int dim() const { return d; }
  /// Exponent of the per-index contributions (1 or 2 for the separable norms).
  double norm_exponent() const;
  bool accepts(const SystemDescriptor& system) const;
  std::string name() const;
};

ClassSpec parse_class(const std::string& name, double r, double p, int d, double alpha);

/// f = sum_k c_k b_k over a finite support.
class CoefficientExpansion {
 public:
  CoefficientExpansion() = default;
  explicit CoefficientExpansion(SystemDescriptor system) : system_(system) {}

  static CoefficientExpansion from_vector(SystemDescriptor system, const IndexSet& indices,
                                          const Eigen::VectorXcd& values);

  const SystemDescriptor& system() const { return system_; }
  const std::map<MultiIndex, cplx>& coefficients() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool empty() const { return c_.empty(); }

  void set(const MultiIndex& k, cplx value);
  cplx get(const MultiIndex& k) const;
  double l2_norm() const;

  /// Coefficients laid out in the enumeration order of an index set; entries
  /// outside the set are dropped.
  Eigen::VectorXcd to_vector(const IndexSet& indices) const;

  bool operator==(const CoefficientExpansion&) const = default;

 private:
  SystemDescriptor system_;
  std::map<MultiIndex, cplx> c_;
};

double index_weight(const ClassSpec& cls, const MultiIndex& index);
double class_norm(const ClassSpec& cls, const CoefficientExpansion& f);

/// Random member of the unit ball: complex Gaussian coefficients divided by
/// the index weight, rescaled to class norm one.
CoefficientExpansion random_unit_function(const ClassSpec& cls, const IndexSet& support,
                                          std::optional<std::size_t> sparsity,
                                          std::uint64_t seed);

cplx evaluate_function(const CoefficientExpansion& f, std::span<const double> point);
inline cplx evaluate_function(const CoefficientExpansion& f, double x) {
  return evaluate_function(f, std::span<const double>(&x, 1));
}
Eigen::VectorXcd evaluate_function(const CoefficientExpansion& f, const PointSet& points);

/// sum of |c_k| over k outside J.
double truncation_error_bound(const ClassSpec& cls, const CoefficientExpansion& f,
                              const IndexSet& J);

/// Natural expansion system of a class (Fourier{d}, Chebyshev or Legendre).
SystemDescriptor class_system(const ClassSpec& cls);

}  // namespace l1s
