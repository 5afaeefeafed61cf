#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "l1s/ortho_systems.hpp"

namespace l1s {

/// Measurement map C^N -> C^m with its adjoint. Implementations keep scratch
/// buffers, so one instance must not be applied from two threads at once.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  virtual void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const = 0;
  virtual void apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const = 0;
  Eigen::MatrixXcd to_dense() const;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXcd A) : A_(std::move(A)) {}
  Eigen::Index rows() const override { return A_.rows(); }
  Eigen::Index cols() const override { return A_.cols(); }
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  void apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const override;
  const Eigen::MatrixXcd& matrix() const { return A_; }

 private:
  Eigen::MatrixXcd A_;
};

/// Rows of the d-dimensional DFT on the grid {0,...,G-1}^d / G, evaluated by
/// a full FFT followed by row selection.
class GridFourierOperator final : public LinearOperator {
 public:
  GridFourierOperator(const IndexSet& columns, const PointSet& points);
  ~GridFourierOperator() override;
  GridFourierOperator(const GridFourierOperator&) = delete;
  GridFourierOperator& operator=(const GridFourierOperator&) = delete;

  Eigen::Index rows() const override { return static_cast<Eigen::Index>(row_bin_.size()); }
  Eigen::Index cols() const override { return static_cast<Eigen::Index>(col_bin_.size()); }
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  void apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const override;

 private:
  std::vector<std::size_t> col_bin_;
  std::vector<std::size_t> row_bin_;
  std::size_t total_ = 0;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Univariate trigonometric sums sum_{|k|<=K} c_k e^{i k theta_l} at arbitrary
/// nodes by Gaussian gridding on an oversampled FFT grid.
class Nufft1d {
 public:
  Nufft1d(std::int64_t K, std::vector<double> theta, int spread = 12);
  ~Nufft1d();
  Nufft1d(const Nufft1d&) = delete;
  Nufft1d& operator=(const Nufft1d&) = delete;

  std::int64_t max_mode() const { return K_; }
  std::size_t size() const { return theta_.size(); }
  /// c has 2K+1 entries for k = -K..K.
  void forward(const Eigen::VectorXcd& c, Eigen::VectorXcd& f) const;
  /// Exact adjoint of forward.
  void adjoint(const Eigen::VectorXcd& f, Eigen::VectorXcd& c) const;

 private:
  std::int64_t K_;
  std::vector<double> theta_;
  int spread_;
  std::int64_t grid_ = 0;
  std::vector<double> deconv_;
  std::vector<std::int64_t> first_;
  std::vector<double> weights_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// Chebyshev measurement matrix sqrt(2) cos(n arccos x_l) applied through the
/// cosine lift and a non-uniform FFT.
class ChebyshevOperator final : public LinearOperator {
 public:
  ChebyshevOperator(const IndexSet& degrees, const PointSet& points);
  Eigen::Index rows() const override { return static_cast<Eigen::Index>(nufft_->size()); }
  Eigen::Index cols() const override { return static_cast<Eigen::Index>(deg_.size()); }
  void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  void apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const override;

 private:
  std::vector<std::int64_t> deg_;
  std::unique_ptr<Nufft1d> nufft_;
  mutable Eigen::VectorXcd modes_;
};

/// Power-method estimate of the spectral norm (deterministic start).
double estimate_norm(const LinearOperator& A, int max_iters = 200, double rel_tol = 1e-7);

}  // namespace l1s
