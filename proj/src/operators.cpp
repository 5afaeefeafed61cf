#include "l1s/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include "l1s/errors.hpp"

namespace l1s {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

std::size_t wrap(std::int64_t k, std::int64_t n) {
  const std::int64_t r = k % n;
  return static_cast<std::size_t>(r < 0 ? r + n : r);
}

}  // namespace

Eigen::MatrixXcd LinearOperator::to_dense() const {
  Eigen::MatrixXcd A(rows(), cols());
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(cols());
  Eigen::VectorXcd col;
  for (Eigen::Index j = 0; j < cols(); ++j) {
    e[j] = 1.0;
    apply(e, col);
    A.col(j) = col;
    e[j] = 0.0;
  }
  return A;
}

void DenseOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  y.noalias() = A_ * x;
}

void DenseOperator::apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const {
  x.noalias() = A_.adjoint() * y;
}

struct GridFourierOperator::Plans {
  std::vector<cplx> in, out;
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;
};

GridFourierOperator::GridFourierOperator(const IndexSet& columns, const PointSet& points)
    : plans_(std::make_unique<Plans>()) {
  if (!points.on_grid()) throw InvalidArgument("grid operator needs grid points");
  if (points.size() == 0) throw InvalidArgument("at least one sample point is required");
  if (columns.dim() != points.d) throw DimensionMismatch("index and point dimensions differ");
  const std::int64_t G = points.grid_size;
  const int d = points.d;
  total_ = 1;
  for (int t = 0; t < d; ++t) total_ *= static_cast<std::size_t>(G);

  col_bin_.reserve(columns.size());
  for (const auto& k : columns.indices()) {
    if (2 * k.max_abs() + 1 > G)
      throw ResolutionError("frequency " + k.to_string() + " aliases on the sampling grid");
    std::size_t b = 0;
    for (int t = 0; t < d; ++t) b = b * static_cast<std::size_t>(G) + wrap(k[t], G);
    col_bin_.push_back(b);
  }
  row_bin_.reserve(points.size());
  for (std::size_t l = 0; l < points.size(); ++l) {
    std::size_t b = 0;
    for (int t = 0; t < d; ++t)
      b = b * static_cast<std::size_t>(G) +
          static_cast<std::size_t>(points.grid[l * static_cast<std::size_t>(d) + t]);
    row_bin_.push_back(b);
  }

  plans_->in.assign(total_, 0.0);
  plans_->out.assign(total_, 0.0);
  std::vector<int> dims(d, static_cast<int>(G));
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->backward = fftw_plan_dft(d, dims.data(), as_fftw(plans_->in.data()),
                                   as_fftw(plans_->out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  plans_->forward = fftw_plan_dft(d, dims.data(), as_fftw(plans_->in.data()),
                                  as_fftw(plans_->out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
}

GridFourierOperator::~GridFourierOperator() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
}

void GridFourierOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  auto& in = plans_->in;
  std::fill(in.begin(), in.end(), cplx(0.0));
  for (std::size_t j = 0; j < col_bin_.size(); ++j) in[col_bin_[j]] = x[static_cast<Eigen::Index>(j)];
  fftw_execute(plans_->backward);
  y.resize(rows());
  for (std::size_t l = 0; l < row_bin_.size(); ++l)
    y[static_cast<Eigen::Index>(l)] = plans_->out[row_bin_[l]];
}

void GridFourierOperator::apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const {
  auto& in = plans_->in;
  std::fill(in.begin(), in.end(), cplx(0.0));
  for (std::size_t l = 0; l < row_bin_.size(); ++l) in[row_bin_[l]] += y[static_cast<Eigen::Index>(l)];
  fftw_execute(plans_->forward);
  x.resize(cols());
  for (std::size_t j = 0; j < col_bin_.size(); ++j)
    x[static_cast<Eigen::Index>(j)] = plans_->out[col_bin_[j]];
}

struct Nufft1d::Plans {
  std::vector<cplx> in, out;
  fftw_plan backward = nullptr;
  fftw_plan forward = nullptr;
};

Nufft1d::Nufft1d(std::int64_t K, std::vector<double> theta, int spread)
    : K_(K), theta_(std::move(theta)), spread_(spread), plans_(std::make_unique<Plans>()) {
  if (K < 0) throw InvalidArgument("mode bound must be nonnegative");
  if (spread < 2) throw InvalidArgument("spreading width too small");
  const std::int64_t modes = 2 * K + 1;
  grid_ = std::max<std::int64_t>(2 * modes, 4 * spread);
  if (grid_ % 2) ++grid_;
  const double pi = std::numbers::pi;
  const double R = static_cast<double>(grid_) / static_cast<double>(modes);
  const double tau = pi * spread / (static_cast<double>(modes) * modes * R * (R - 0.5));

  deconv_.resize(static_cast<std::size_t>(modes));
  for (std::int64_t k = -K; k <= K; ++k) {
    const double kk = static_cast<double>(k);
    deconv_[static_cast<std::size_t>(k + K)] = std::sqrt(pi / tau) * std::exp(kk * kk * tau);
  }

  const double h = 2.0 * pi / static_cast<double>(grid_);
  const std::size_t width = 2 * static_cast<std::size_t>(spread);
  first_.resize(theta_.size());
  weights_.resize(theta_.size() * width);
  for (std::size_t l = 0; l < theta_.size(); ++l) {
    const double t = theta_[l];
    if (!std::isfinite(t)) throw DomainError("non-finite node");
    const auto j0 = static_cast<std::int64_t>(std::floor(t / h));
    first_[l] = j0 - spread + 1;
    for (std::size_t q = 0; q < width; ++q) {
      const double delta = t - h * static_cast<double>(first_[l] + static_cast<std::int64_t>(q));
      weights_[l * width + q] = std::exp(-delta * delta / (4.0 * tau)) / static_cast<double>(grid_);
    }
  }

  plans_->in.assign(static_cast<std::size_t>(grid_), 0.0);
  plans_->out.assign(static_cast<std::size_t>(grid_), 0.0);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->backward = fftw_plan_dft_1d(static_cast<int>(grid_), as_fftw(plans_->in.data()),
                                      as_fftw(plans_->out.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
  plans_->forward = fftw_plan_dft_1d(static_cast<int>(grid_), as_fftw(plans_->in.data()),
                                     as_fftw(plans_->out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
}

Nufft1d::~Nufft1d() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plans_->backward) fftw_destroy_plan(plans_->backward);
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
}

void Nufft1d::forward(const Eigen::VectorXcd& c, Eigen::VectorXcd& f) const {
  if (c.size() != 2 * K_ + 1) throw DimensionMismatch("mode vector has the wrong length");
  auto& in = plans_->in;
  std::fill(in.begin(), in.end(), cplx(0.0));
  for (std::int64_t k = -K_; k <= K_; ++k)
    in[wrap(k, grid_)] = c[k + K_] * deconv_[static_cast<std::size_t>(k + K_)];
  fftw_execute(plans_->backward);
  const auto& H = plans_->out;
  const std::size_t width = 2 * static_cast<std::size_t>(spread_);
  f.resize(static_cast<Eigen::Index>(theta_.size()));
  for (std::size_t l = 0; l < theta_.size(); ++l) {
    cplx s = 0.0;
    const double* w = &weights_[l * width];
    std::int64_t j = first_[l];
    for (std::size_t q = 0; q < width; ++q, ++j) s += w[q] * H[wrap(j, grid_)];
    f[static_cast<Eigen::Index>(l)] = s;
  }
}

void Nufft1d::adjoint(const Eigen::VectorXcd& f, Eigen::VectorXcd& c) const {
  if (static_cast<std::size_t>(f.size()) != theta_.size())
    throw DimensionMismatch("sample vector has the wrong length");
  auto& in = plans_->in;
  std::fill(in.begin(), in.end(), cplx(0.0));
  const std::size_t width = 2 * static_cast<std::size_t>(spread_);
  for (std::size_t l = 0; l < theta_.size(); ++l) {
    const cplx v = f[static_cast<Eigen::Index>(l)];
    const double* w = &weights_[l * width];
    std::int64_t j = first_[l];
    for (std::size_t q = 0; q < width; ++q, ++j) in[wrap(j, grid_)] += w[q] * v;
  }
  fftw_execute(plans_->forward);
  c.resize(2 * K_ + 1);
  for (std::int64_t k = -K_; k <= K_; ++k)
    c[k + K_] = plans_->out[wrap(k, grid_)] * deconv_[static_cast<std::size_t>(k + K_)];
}

ChebyshevOperator::ChebyshevOperator(const IndexSet& degrees, const PointSet& points) {
  if (points.d != 1 || degrees.dim() != 1) throw DimensionMismatch("Chebyshev system is univariate");
  if (points.size() == 0) throw InvalidArgument("at least one sample point is required");
  std::int64_t K = 0;
  for (const auto& k : degrees.indices()) {
    if (k[0] < 0) throw DomainError("polynomial degree must be nonnegative");
    deg_.push_back(k[0]);
    K = std::max(K, k[0]);
  }
  std::vector<double> theta(points.size());
  for (std::size_t l = 0; l < points.size(); ++l) {
    const double x = points.coords[l];
    if (!(x >= -1.0 && x <= 1.0)) throw DomainError("point outside [-1,1]");
    theta[l] = std::acos(x);
  }
  nufft_ = std::make_unique<Nufft1d>(K, std::move(theta));
  modes_.resize(2 * K + 1);
}

void ChebyshevOperator::apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  const std::int64_t K = nufft_->max_mode();
  modes_.setZero();
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = 0; j < deg_.size(); ++j) {
    const std::int64_t n = deg_[j];
    const cplx v = x[static_cast<Eigen::Index>(j)];
    if (n == 0) {
      modes_[K] += v;
    } else {
      modes_[K + n] += s * v;
      modes_[K - n] += s * v;
    }
  }
  nufft_->forward(modes_, y);
}

void ChebyshevOperator::apply_adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& x) const {
  const std::int64_t K = nufft_->max_mode();
  nufft_->adjoint(y, modes_);
  const double s = 1.0 / std::numbers::sqrt2;
  x.resize(cols());
  for (std::size_t j = 0; j < deg_.size(); ++j) {
    const std::int64_t n = deg_[j];
    x[static_cast<Eigen::Index>(j)] = n == 0 ? modes_[K] : s * (modes_[K + n] + modes_[K - n]);
  }
}

double estimate_norm(const LinearOperator& A, int max_iters, double rel_tol) {
  std::mt19937_64 gen(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(A.cols());
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = cplx(normal(gen), normal(gen));
  v.normalize();
  Eigen::VectorXcd Av, AtAv;
  double est = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    A.apply(v, Av);
    A.apply_adjoint(Av, AtAv);
    const double nrm = AtAv.norm();
    if (nrm == 0.0) return 0.0;
    const double next = std::sqrt(nrm);
    v = AtAv / nrm;
    if (it > 0 && std::abs(next - est) <= rel_tol * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

}  // namespace l1s
