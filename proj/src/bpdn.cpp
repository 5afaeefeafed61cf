#include "l1s/bpdn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "l1s/errors.hpp"

namespace l1s {

BpdnProblem BpdnProblem::dense(Eigen::MatrixXcd A, Eigen::VectorXcd y, double eta,
                               BpdnTolerances tol) {
  BpdnProblem p;
  p.A = std::make_shared<DenseOperator>(std::move(A));
  p.y = std::move(y);
  p.eta = eta;
  p.tol = tol;
  return p;
}

double BpdnProblem::radius() const { return eta * std::sqrt(static_cast<double>(y.size())); }

Eigen::VectorXcd soft_threshold_complex(const Eigen::VectorXcd& v, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("threshold must be nonnegative");
  Eigen::VectorXcd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    const double a = std::abs(v[j]);
    out[j] = a > t ? v[j] * (1.0 - t / a) : cplx(0.0);
  }
  return out;
}

namespace {

double l1(const Eigen::VectorXcd& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) s += std::abs(v[j]);
  return s;
}

double linf(const Eigen::VectorXcd& v) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) s = std::max(s, std::abs(v[j]));
  return s;
}

}  // namespace

BpdnSolution solve_bpdn(const BpdnProblem& problem) {
  if (!problem.A) throw InvalidArgument("missing measurement operator");
  const auto& A = *problem.A;
  const Eigen::VectorXcd& y = problem.y;
  if (A.rows() < 1 || A.cols() < 1) throw DimensionMismatch("empty measurement operator");
  if (A.rows() != y.size()) throw DimensionMismatch("sample count differs from operator rows");
  if (!(problem.eta >= 0.0)) throw InvalidArgument("eta must be nonnegative");
  if (!y.allFinite()) throw InvalidArgument("samples must be finite");

  const double r = problem.radius();
  const double ynorm = y.norm();
  const double feas_tol = problem.tol.feas_tol >= 0.0 ? problem.tol.feas_tol : 1e-8 * (1.0 + ynorm);
  const double obj_tol = problem.tol.obj_tol;
  const int check_every = std::max(1, problem.tol.check_every);

  BpdnSolution sol;
  sol.z = Eigen::VectorXcd::Zero(A.cols());
  if (ynorm <= r) {
    sol.residual_norm = ynorm;
    sol.certified = true;
    return sol;
  }

  const double L = 1.01 * estimate_norm(A);
  if (L == 0.0) {
    sol.residual_norm = ynorm;
    return sol;
  }

  Eigen::VectorXcd Aty;
  A.apply_adjoint(y, Aty);
  // Ratio of primal to dual scale: |A^*y|/L^2 against the dual point y/|A^*y|_inf.
  const double balance = std::max(linf(Aty) * Aty.norm() / (L * L * ynorm), 1e-12);
  const double tau = std::sqrt(0.99) * balance / L;
  const double sigma = std::sqrt(0.99) / (balance * L);

  Eigen::VectorXcd z = sol.z, Az = Eigen::VectorXcd::Zero(A.rows());
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(A.rows()), Atu = Eigen::VectorXcd::Zero(A.cols());
  Eigen::VectorXcd z_new, Az_new, v, u_new, Atu_new, w;

  for (int it = 1; it <= problem.tol.max_iters; ++it) {
    z_new = soft_threshold_complex(z - tau * Atu, tau);
    A.apply(z_new, Az_new);
    v = u + sigma * (2.0 * Az_new - Az);
    w = v / sigma - y;
    const double nw = w.norm();
    if (nw > r) w *= r / nw;
    u_new = v - sigma * (y + w);
    A.apply_adjoint(u_new, Atu_new);

    z.swap(z_new);
    Az.swap(Az_new);
    u.swap(u_new);
    Atu.swap(Atu_new);
    sol.iterations = it;

    if (it % check_every != 0 && it != problem.tol.max_iters) continue;
    A.apply(z, Az);
    const double residual = (Az - y).norm();
    const double objective = l1(z);
    const double s = std::max(1.0, linf(Atu));
    const double dual = (-(y.dot(u)).real() - r * u.norm()) / s;
    const double gap = objective - dual;
    sol.residual_norm = residual;
    sol.objective = objective;
    sol.gap = gap;
    if (residual <= r + feas_tol && std::abs(gap) <= obj_tol * std::max(1.0, objective)) {
      sol.certified = true;
      break;
    }
  }
  sol.z = z;
  return sol;
}

BpdnSolution bpdn_orthonormal_oracle(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                                     double eta) {
  if (A.rows() != y.size()) throw DimensionMismatch("sample count differs from matrix rows");
  if (!(eta >= 0.0)) throw InvalidArgument("eta must be nonnegative");
  const Eigen::MatrixXcd G = A.adjoint() * A;
  const double c = G.diagonal().real().mean();
  const double dev = (G - c * Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
  if (!(c > 0.0) || dev > 1e-10 * std::max(1.0, c))
    throw InvalidArgument("matrix columns are not orthogonal with equal norms");

  const double r = eta * std::sqrt(static_cast<double>(y.size()));
  const Eigen::VectorXcd x0 = A.adjoint() * y / c;
  const double perp2 = std::max(0.0, (y - A * x0).squaredNorm());
  const double rho2 = (r * r - perp2) / c;

  BpdnSolution sol;
  sol.certified = true;
  if (rho2 < 0.0) {
    sol.z = x0;
    sol.certified = false;
  } else if (x0.squaredNorm() <= rho2) {
    sol.z = Eigen::VectorXcd::Zero(A.cols());
  } else {
    std::vector<double> a(static_cast<std::size_t>(x0.size()));
    for (Eigen::Index j = 0; j < x0.size(); ++j) a[static_cast<std::size_t>(j)] = std::abs(x0[j]);
    std::sort(a.begin(), a.end());
    // sum_j min(a_j, t)^2 = rho2, solved on the segment [a_{k-1}, a_k].
    double below = 0.0;
    double t = 0.0;
    const std::size_t N = a.size();
    for (std::size_t k = 0; k < N; ++k) {
      const double cand = std::sqrt(std::max(0.0, (rho2 - below) / static_cast<double>(N - k)));
      if (cand <= a[k]) {
        t = cand;
        break;
      }
      below += a[k] * a[k];
    }
    sol.z = soft_threshold_complex(x0, t);
  }
  sol.residual_norm = (A * sol.z - y).norm();
  sol.objective = l1(sol.z);
  return sol;
}

}  // namespace l1s
