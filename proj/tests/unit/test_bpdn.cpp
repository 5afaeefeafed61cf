#include <cmath>
#include <random>

#include "doctest.h"
#include "l1s/bpdn.hpp"
#include "l1s/errors.hpp"

using namespace l1s;

namespace {

Eigen::MatrixXcd random_isometry(int m, int N, double c, std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd G(m, N);
  for (auto& e : G.reshaped()) e = {nd(g), nd(g)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  return std::sqrt(c) * (qr.householderQ() * Eigen::MatrixXcd::Identity(m, N));
}

BpdnTolerances tight() {
  BpdnTolerances t;
  t.obj_tol = 1e-11;
  t.feas_tol = 1e-12;
  return t;
}

}  // namespace

TEST_CASE("soft threshold") {
  Eigen::VectorXcd v(3);
  v << std::polar(3.0, 0.7), cplx(0.5, 0.0), cplx(0.0);
  const auto w = soft_threshold_complex(v, 1.0);
  CHECK(std::abs(w[0] - std::polar(2.0, 0.7)) < 1e-15);
  CHECK(w[1] == cplx(0.0));
  CHECK(w[2] == cplx(0.0));
  CHECK(soft_threshold_complex(v, 0.0) == v);
  CHECK_THROWS(soft_threshold_complex(v, -1.0));
}

TEST_CASE("identity example") {
  Eigen::VectorXcd y(2);
  y << 3.0, 0.0;
  const auto A = Eigen::MatrixXcd::Identity(2, 2);
  const double eta = 1.0 / std::sqrt(2.0);
  const auto s = solve_bpdn(BpdnProblem::dense(A, y, eta));
  CHECK(s.certified);
  CHECK(std::abs(s.z[0] - 2.0) < 1e-8);
  CHECK(std::abs(s.z[1]) < 1e-8);
  const auto o = bpdn_orthonormal_oracle(A, y, eta);
  CHECK(std::abs(o.z[0] - 2.0) < 1e-14);
  CHECK(o.z[1] == cplx(0.0));
}

TEST_CASE("zero and large-radius shortcuts") {
  std::mt19937_64 g(1);
  const auto A = random_isometry(6, 4, 1.0, g);
  const auto s = solve_bpdn(BpdnProblem::dense(A, Eigen::VectorXcd::Zero(6), 0.3));
  CHECK(s.certified);
  CHECK(s.z.isZero());
  CHECK(s.objective == 0.0);
  Eigen::VectorXcd y = Eigen::VectorXcd::Ones(6);
  const auto big = solve_bpdn(BpdnProblem::dense(A, y, 2.0));
  CHECK(big.z.isZero());
  CHECK(bpdn_orthonormal_oracle(A, y, 1e6).z.isZero());
}

TEST_CASE("solver agrees with the closed form") {
  std::mt19937_64 g(21);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u;
  for (int t = 0; t < 30; ++t) {
    const int N = 4 + t % 20, m = N + t % 5;
    const double c = 0.5 + t % 4;
    const auto A = random_isometry(m, N, c, g);
    Eigen::VectorXcd y(m);
    for (auto& e : y) e = {nd(g), nd(g)};
    const Eigen::VectorXcd perp = y - A * (A.adjoint() * y) / c;
    const double r = perp.norm() + (0.05 + 0.9 * u(g)) * (y.norm() - perp.norm());
    const double eta = r / std::sqrt(double(m));
    const auto o = bpdn_orthonormal_oracle(A, y, eta);
    const auto s = solve_bpdn(BpdnProblem::dense(A, y, eta, tight()));
    CHECK(s.certified);
    CHECK((s.z - o.z).norm() <= 1e-6 * o.z.norm());
    CHECK(s.residual_norm <= r + 1e-12);
  }
}

TEST_CASE("oracle rejects non-orthogonal matrices") {
  Eigen::MatrixXcd A(2, 2);
  A << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(bpdn_orthonormal_oracle(A, Eigen::VectorXcd::Ones(2), 0.1), InvalidArgument);
}

TEST_CASE("full DFT recovers sparse vectors exactly") {
  const auto sys = SystemDescriptor::fourier(1);
  const auto J = IndexSet::box(1, 8);
  std::vector<double> coords;
  for (int l = 0; l < 17; ++l) coords.push_back(l / 17.0);
  const auto pts = PointSet::from_coords(1, coords);
  Eigen::MatrixXcd A(17, 17);
  for (int l = 0; l < 17; ++l)
    for (std::size_t j = 0; j < J.size(); ++j) A(l, static_cast<Eigen::Index>(j)) = evaluate_basis(sys, J[j], pts.point(static_cast<std::size_t>(l)));
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(17);
  x[2] = cplx(1.0, -1.0);
  x[11] = 0.5;
  const Eigen::VectorXcd y = A * x;
  CHECK((bpdn_orthonormal_oracle(A, y, 0.0).z - x).norm() < 1e-12);
  const auto s = solve_bpdn(BpdnProblem::dense(A, y, 0.0));
  CHECK(s.certified);
  CHECK((s.z - x).norm() < 1e-6);
}

TEST_CASE("sandwich, scaling and determinism") {
  std::mt19937_64 g(8);
  std::normal_distribution<double> nd;
  const int m = 30, N = 60;
  Eigen::MatrixXcd A(m, N);
  for (auto& e : A.reshaped()) e = {nd(g), nd(g)};
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
  x[3] = 2.0;
  x[40] = cplx(0.0, -1.0);
  Eigen::VectorXcd e(m);
  for (auto& v : e) v = {nd(g) * 0.01, nd(g) * 0.01};
  const Eigen::VectorXcd y = A * x + e;
  const double eta = 1.2 * e.norm() / std::sqrt(double(m));
  const auto s = solve_bpdn(BpdnProblem::dense(A, y, eta));
  REQUIRE(s.certified);
  CHECK(s.objective <= x.cwiseAbs().sum() + 1e-7);
  CHECK(s.residual_norm <= eta * std::sqrt(double(m)) + 1e-8 * (1 + y.norm()));

  const auto s3 = solve_bpdn(BpdnProblem::dense(A, 3.0 * y, 3.0 * eta, tight()));
  const auto s1 = solve_bpdn(BpdnProblem::dense(A, y, eta, tight()));
  CHECK((s3.z - 3.0 * s1.z).norm() <= 1e-6 * s3.z.norm());

  const auto again = solve_bpdn(BpdnProblem::dense(A, y, eta));
  CHECK(again.z == s.z);
  CHECK(again.iterations == s.iterations);
}

TEST_CASE("infeasible problems end uncertified") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(3, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 1.0;
  Eigen::VectorXcd y(3);
  y << 1.0, 1.0, 1.0;
  BpdnTolerances tol;
  tol.max_iters = 500;
  const auto s = solve_bpdn(BpdnProblem::dense(A, y, 0.0, tol));
  CHECK_FALSE(s.certified);
  CHECK(s.iterations == 500);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(solve_bpdn(BpdnProblem::dense(Eigen::MatrixXcd::Identity(2, 2), Eigen::VectorXcd::Ones(3), 0.0)),
                  DimensionMismatch);
  CHECK_THROWS_AS(solve_bpdn(BpdnProblem::dense(Eigen::MatrixXcd::Identity(2, 2), Eigen::VectorXcd::Ones(2), -1.0)),
                  InvalidArgument);
}
