#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "l1s/index_set.hpp"

namespace l1s {

using cplx = std::complex<double>;

enum class SystemKind { Fourier, Chebyshev, LegendrePreconditioned, LegendreRaw };

enum class Measure {
  Haar,      ///< normalized Haar measure on [0,1)^d
  Arcsine,   ///< density (1/pi)(1-x^2)^{-1/2} on [-1,1]
  Lebesgue,  ///< Lebesgue measure on [-1,1]
};

/// An orthonormal system together with its sampling measure.
struct SystemDescriptor {
  SystemKind kind = SystemKind::Fourier;
  int d = 1;

  static SystemDescriptor fourier(int d);
  static SystemDescriptor chebyshev();
  static SystemDescriptor legendre_preconditioned();
  /// L_n = sqrt(n+1/2) P_n, orthonormal with respect to Lebesgue measure.
  static SystemDescriptor legendre_raw();

  int dim() const { return d; }
  bool is_polynomial() const { return kind != SystemKind::Fourier; }
  bool is_bounded() const { return kind != SystemKind::LegendreRaw; }
  Measure measure() const;
  std::string name() const;

  bool operator==(const SystemDescriptor&) const = default;
};

SystemDescriptor parse_system(const std::string& name, int d = 1);

/// Sampling points stored row-major (m rows of d coordinates).
struct PointSet {
  int d = 1;
  std::vector<double> coords;
  /// Integer grid coordinates when drawn from a uniform grid, else empty.
  std::vector<std::int64_t> grid;
  /// Grid points per axis (2D+1), or 0.
  std::int64_t grid_size = 0;

  std::size_t size() const { return coords.size() / static_cast<std::size_t>(d); }
  std::span<const double> point(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(d), static_cast<std::size_t>(d)};
  }
  bool on_grid() const { return grid_size > 0; }

  static PointSet from_coords(int d, std::vector<double> coords);
};

struct SamplePlan {
  enum class Mode { ContinuousIid, GridUniform };
  Mode mode = Mode::ContinuousIid;
  std::int64_t D = 0;
  std::uint64_t seed = 0;

  static SamplePlan continuous(std::uint64_t seed);
  static SamplePlan grid_uniform(std::int64_t D, std::uint64_t seed);
};

cplx evaluate_basis(const SystemDescriptor& system, const MultiIndex& index,
                    std::span<const double> point);
inline cplx evaluate_basis(const SystemDescriptor& system, const MultiIndex& index,
                           double x) {
  return evaluate_basis(system, index, std::span<const double>(&x, 1));
}

/// Non-normalized Legendre polynomials P_0..P_nmax at x (three-term recurrence).
void legendre_values(std::int64_t nmax, double x, double* out);
/// (1-x^2)^{1/4} sqrt(pi), the preconditioning weight.
double legendre_weight(double x);

PointSet draw_points(const SystemDescriptor& system, std::size_t m, const SamplePlan& plan);

double uniform_bound(const SystemDescriptor& system);

struct QuadratureRule {
  enum class Kind { Default, Trapezoid, GaussChebyshev, GaussLegendre };
  Kind kind = Kind::Default;
  /// Nodes (per axis for the trapezoid rule); 0 selects the default count.
  int nodes = 0;
};

struct Quadrature1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1,1], weights summing to 2.
Quadrature1d gauss_legendre(int n);
/// Gauss-Chebyshev nodes with equal weights 1/n (arcsine probability measure).
Quadrature1d gauss_chebyshev(int n);

/// Inner products <b_i, b_j> in L^2 of the system's measure.
Eigen::MatrixXcd gram_matrix(const SystemDescriptor& system, const IndexSet& indices,
                             QuadratureRule rule = {});

}  // namespace l1s
