// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments pick
// criteria by number, e.g. `acceptance 4 8`.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "l1s/bpdn.hpp"
#include "l1s/harness.hpp"
#include "l1s/quasi_projection.hpp"
#include "l1s/widths.hpp"

using namespace l1s;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [violated]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Sample count constant, noise constant and test functions shared by the
// rate and Legendre criteria; fixed once.
constexpr double kSampleConstant = 1.0;
constexpr double kEtaConstant = 0.1;
constexpr double kSupportScale = 2.0;
constexpr std::uint64_t kSeedBase = 2024;

BpdnTolerances tight_tolerances() {
  BpdnTolerances t;
  t.obj_tol = 1e-11;
  t.feas_tol = 1e-12;
  return t;
}

double max_offdiag_error(const Eigen::MatrixXcd& G) {
  double e = 0.0;
  for (Eigen::Index j = 0; j < G.cols(); ++j)
    for (Eigen::Index i = 0; i < G.rows(); ++i)
      e = std::max(e, std::abs(G(i, j) - (i == j ? 1.0 : 0.0)));
  return e;
}

Outcome orthonormality() {
  Outcome o;
  for (int d = 1; d <= 3; ++d) {
    const double e = max_offdiag_error(gram_matrix(SystemDescriptor::fourier(d), IndexSet::box(d, 8)));
    o.require(e <= 1e-8, "fourier d=" + std::to_string(d) + fmt(" %.2e", e));
  }
  const auto J = IndexSet::degrees(16);
  const double ec = max_offdiag_error(gram_matrix(SystemDescriptor::chebyshev(), J));
  o.require(ec <= 1e-8, "chebyshev" + fmt(" %.2e", ec));
  const double el = max_offdiag_error(gram_matrix(SystemDescriptor::legendre_preconditioned(), J));
  o.require(el <= 1e-8, "legendre_preconditioned" + fmt(" %.2e", el));
  return o;
}

Outcome boundedness() {
  Outcome o;
  constexpr int kPoints = 10000;
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u;

  double fmax = 0.0;
  for (int d = 1; d <= 3; ++d) {
    std::vector<MultiIndex> idx;
    if (d == 1) {
      const auto box = IndexSet::box(1, 200);
      idx = box.indices();
    } else {
      std::uniform_int_distribution<std::int64_t> pick(-200, 200);
      for (int t = 0; t < 400; ++t) {
        std::vector<std::int64_t> k(static_cast<std::size_t>(d));
        for (auto& v : k) v = pick(g);
        idx.emplace_back(k);
      }
    }
    const auto sys = SystemDescriptor::fourier(d);
    std::vector<double> x(static_cast<std::size_t>(d));
    for (int l = 0; l < kPoints; ++l) {
      for (auto& v : x) v = u(g);
      for (const auto& k : idx) fmax = std::max(fmax, std::abs(evaluate_basis(sys, k, x)));
    }
  }
  o.require(fmax <= 1.0 + 1e-12, "fourier max" + fmt(" %.15f", fmax));

  // Equispaced points including both endpoints.
  std::vector<double> xs(kPoints);
  for (int l = 0; l < kPoints; ++l) xs[static_cast<std::size_t>(l)] = -1.0 + 2.0 * l / (kPoints - 1);
  for (const auto& sys : {SystemDescriptor::chebyshev(), SystemDescriptor::legendre_preconditioned()}) {
    double mx = 0.0;
    for (double x : xs)
      for (std::int64_t n = 0; n <= 200; ++n)
        mx = std::max(mx, std::abs(evaluate_basis(sys, MultiIndex::degree(n), x)));
    const double K = uniform_bound(sys);
    o.require(mx <= K + 1e-9, sys.name() + " max" + fmt(" %.6f", mx) + fmt(" <= %.6f", K));
  }
  return o;
}

CoefficientExpansion sparse_function(int d, std::int64_t R, int s, std::mt19937_64& g) {
  std::uniform_int_distribution<std::int64_t> pick(-R, R);
  std::normal_distribution<double> nd;
  CoefficientExpansion f(SystemDescriptor::fourier(d));
  while (static_cast<int>(f.size()) < s) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(d));
    for (auto& v : k) v = pick(g);
    f.set(MultiIndex(k), {nd(g), nd(g)});
  }
  return f;
}

Outcome quasi_projection_suite() {
  Outcome o;
  std::mt19937_64 g(3);
  bool fixed = true, range = true, sparse = true;
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t M : {2, 4, 8}) {
      const auto spec = DlvpSpec::tensor_product(d, M);
      const auto cls = ClassSpec::wiener_mixed(1.0, d);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = random_unit_function(cls, IndexSet::box(d, M), std::nullopt, seed);
        const auto pf = apply_quasi_projection(spec, f);
        for (const auto& [k, c] : f.coefficients())
          fixed = fixed && std::abs(pf.get(k) - c) <= 1e-14 * std::max(1.0, std::abs(c));
        const auto big = sparse_function(d, (2 * d + 2) * M, 12, g);
        const auto pb = apply_quasi_projection(spec, big);
        const auto search = IndexSet::search_box(d, M);
        for (const auto& [k, c] : pb.coefficients())
          if (c != cplx(0.0)) range = range && search.contains(k);
        std::size_t nz = 0;
        for (const auto& [k, c] : pb.coefficients()) nz += c != cplx(0.0);
        sparse = sparse && nz <= 12;
      }
    }
  }
  o.require(fixed, "fixed point on Box");
  o.require(range, "range in SearchBox");
  o.require(sparse, "sparsity does not grow");

  double worst = 0.0;
  for (int d = 1; d <= 3; ++d)
    for (std::int64_t M : {2, 4, 8}) worst = std::max(worst, kernel_l1_norm(DlvpSpec::tensor_product(d, M)).value);
  o.require(worst <= std::numbers::e + 1e-3, "tensor kernel L1 max" + fmt(" %.6f", worst));

  for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{2, 1}, {4, 2}, {8, 4}}) {
    const auto k = kernel_l1_norm(DlvpSpec::univariate(n, m));
    const double b = (2.0 * n + 1.0) / (2.0 * m + 1.0);
    o.require(k.value <= b + 1e-6, "K(" + std::to_string(n) + "," + std::to_string(m) + ")" +
                                       fmt(" %.6f", k.value) + fmt(" <= %.6f", b));
  }
  return o;
}

Eigen::MatrixXcd random_isometry(int m, int N, double c, std::mt19937_64& g) {
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd G(m, N);
  for (auto& e : G.reshaped()) e = {nd(g), nd(g)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  return std::sqrt(c) * (qr.householderQ() * Eigen::MatrixXcd::Identity(m, N));
}

Outcome solver_vs_oracle() {
  Outcome o;
  std::mt19937_64 g(4);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> u;
  std::uniform_int_distribution<int> size(2, 64);
  double worst = 0.0;
  int uncertified = 0;
  for (int t = 0; t < 100; ++t) {
    const int N = size(g);
    const int m = N + t % 8;
    const double c = 0.25 + 4.0 * u(g);
    const auto A = random_isometry(m, N, c, g);
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
    for (int j = 0; j < std::max(1, N / 6); ++j) x[static_cast<Eigen::Index>(size(g) % N)] = {nd(g), nd(g)};
    Eigen::VectorXcd y = A * x;
    for (auto& e : y) e += cplx(0.05 * nd(g), 0.05 * nd(g));
    const Eigen::VectorXcd perp = y - A * (A.adjoint() * y) / c;
    const double r = perp.norm() + (0.02 + 0.96 * u(g)) * (y.norm() - perp.norm());
    const double eta = r / std::sqrt(static_cast<double>(m));
    const auto ref = bpdn_orthonormal_oracle(A, y, eta);
    const auto s = solve_bpdn(BpdnProblem::dense(A, y, eta, tight_tolerances()));
    uncertified += !s.certified;
    worst = std::max(worst, (s.z - ref.z).norm() / std::max(ref.z.norm(), 1e-300));
  }
  o.require(worst <= 1e-6, "worst relative distance" + fmt(" %.2e", worst));
  o.require(uncertified == 0, std::to_string(uncertified) + " uncertified");

  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::VectorXcd y(2);
  y << 3.0, 0.0;
  const auto s = solve_bpdn(BpdnProblem::dense(I, y, 1.0 / std::sqrt(2.0)));
  const double e = std::max(std::abs(s.z[0] - 2.0), std::abs(s.z[1]));
  o.require(e <= 1e-8, "identity example" + fmt(" %.1e", e));
  return o;
}

Outcome exact_sparse_recovery() {
  Outcome o;
  const std::vector<std::size_t> grid{40, 80, 120, 160};
  std::vector<std::vector<double>> reps;
  int at120 = 0;
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const auto t = run_phase_experiment(SystemDescriptor::fourier(1), 257, 5, grid, 100, 42 + rep);
    std::vector<double> fr;
    for (const auto& r : t.rows) fr.push_back(r.success_fraction);
    if (rep == 0) at120 = t.rows[2].successes;
    reps.push_back(fr);
  }
  o.require(at120 >= 90, "m=120: " + std::to_string(at120) + "/100");
  std::string med;
  bool monotone = true;
  double prev = -1.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> col{reps[0][i], reps[1][i], reps[2][i]};
    std::sort(col.begin(), col.end());
    monotone = monotone && col[1] >= prev;
    prev = col[1];
    med += (i ? "," : "") + fmt("%.2f", col[1]);
  }
  o.require(monotone, "median fractions " + med);
  return o;
}

ExperimentConfig sweep(const RecoveryConfig& base, MRule rule) {
  ExperimentConfig e;
  e.base = base;
  e.base.c_sample = kSampleConstant;
  e.base.c_eta = kEtaConstant;
  e.n_values = {4, 8, 16, 32};
  e.trials_per_n = 10;
  e.m_rule = rule;
  e.seed_base = kSeedBase;
  e.family.support = FunctionFamily::Support::ScaledN;
  e.family.scale = kSupportScale;
  return e;
}

void check_slope(Outcome& o, const std::string& label, const RateReport& r, double lo, double hi) {
  std::string med;
  double cert = 1.0;
  for (const auto& row : r.rows) {
    med += (med.empty() ? "" : ",") + fmt("%.3g", row.median_error);
    cert = std::min(cert, row.success_fraction);
  }
  o.require(r.fitted_slope >= lo && r.fitted_slope <= hi,
            label + " slope" + fmt(" %.3f", r.fitted_slope) + fmt(" in [%.1f,", lo) +
                fmt("%.1f]", hi) + " (medians " + med + ")");
  o.require(cert == 1.0, label + " all solves certified");
}

Outcome rate_mixed_wiener() {
  Outcome o;
  RecoveryConfig b;
  b.system = SystemDescriptor::fourier(1);
  b.cls = ClassSpec::wiener_mixed(1.0, 1);
  b.theorem = Theorem::FourierGrid;
  check_slope(o, "wiener_mixed r=1", run_rate_experiment(sweep(b, MRule::MixedWiener)), -2.1, -1.1);
  return o;
}

Outcome rate_chebyshev_wiener() {
  Outcome o;
  RecoveryConfig b;
  b.system = SystemDescriptor::chebyshev();
  b.theorem = Theorem::Chebyshev;
  b.cls = ClassSpec::poly_wiener(-0.5, 1.0, 1.0);
  check_slope(o, "p=1", run_rate_experiment(sweep(b, MRule::ChebyshevWiener)), -2.1, -1.1);
  b.cls = ClassSpec::poly_wiener(-0.5, 1.0, 0.5);
  check_slope(o, "p=1/2", run_rate_experiment(sweep(b, MRule::ChebyshevWiener)), -3.2, -1.9);
  return o;
}

Outcome legendre_preconditioning() {
  Outcome o;
  const auto pre = SystemDescriptor::legendre_preconditioned();
  const auto raw = SystemDescriptor::legendre_raw();
  const auto gl = gauss_legendre(64);
  const auto gt = gauss_legendre(400);
  std::mt19937_64 g(8);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> deg(0, 32);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int K = deg(g);
    std::vector<cplx> beta(static_cast<std::size_t>(K + 1));
    for (auto& b : beta) b = {nd(g), nd(g)};
    double lam = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      cplx v = 0.0;
      for (int k = 0; k <= K; ++k)
        v += beta[static_cast<std::size_t>(k)] * evaluate_basis(raw, MultiIndex::degree(k), gl.nodes[i]);
      lam += gl.weights[i] * std::norm(v);
    }
    // mu-integral after x = cos(theta), by Gauss-Legendre in theta.
    double mu = 0.0;
    for (std::size_t i = 0; i < gt.nodes.size(); ++i) {
      const double x = std::cos(0.5 * std::numbers::pi * (gt.nodes[i] + 1.0));
      cplx v = 0.0;
      for (int k = 0; k <= K; ++k)
        v += beta[static_cast<std::size_t>(k)] * evaluate_basis(pre, MultiIndex::degree(k), x);
      mu += 0.5 * gt.weights[i] * std::norm(v);
    }
    worst = std::max(worst, std::abs(std::sqrt(mu) - std::sqrt(lam)));
  }
  o.require(worst <= 1e-8, "isometry defect" + fmt(" %.2e", worst));

  RecoveryConfig c;
  c.system = raw;
  c.cls = ClassSpec::poly_wiener(0.0, 1.0, 1.0);
  c.theorem = Theorem::Legendre;
  c.n = 5;
  c.M = 64;
  c.c_sample = kSampleConstant;
  c.eta = EtaMode::fixed(0.0);
  int successes = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    c.plan = SamplePlan::continuous(derive_seed(kSeedBase, 64, t, 1));
    const auto f = random_unit_function(c.cls, IndexSet::degrees(64), 5, derive_seed(kSeedBase, 64, t, 0));
    const auto pts = draw_recovery_points(c);
    const auto res = recover(sample_function(f, pts), c, pts);
    successes += l2_error(f, res.reconstruction) <= 1e-4 * f.l2_norm();
  }
  o.require(successes >= 90, "recovery " + std::to_string(successes) + "/100 at m=" +
                                 std::to_string(sample_count(c)));
  return o;
}

double exhaustive_sigma_l1(const Eigen::VectorXcd& x, int s) {
  const int N = static_cast<int>(x.size());
  double best = INFINITY;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    if (__builtin_popcount(mask) != s) continue;
    std::vector<double> rest;
    for (int j = 0; j < N; ++j)
      if (!(mask >> j & 1u)) rest.push_back(std::abs(x[j]));
    std::sort(rest.begin(), rest.end());
    double t = 0.0;
    for (double v : rest) t += v;
    best = std::min(best, t);
  }
  return best;
}

double exhaustive_best_l2(const std::vector<double>& mod, int n) {
  const int N = static_cast<int>(mod.size());
  double best = INFINITY;
  for (unsigned mask = 0; mask < (1u << N); ++mask) {
    if (__builtin_popcount(mask) > n) continue;
    double t = 0.0;
    for (int j = 0; j < N; ++j)
      if (!(mask >> j & 1u)) t += mod[static_cast<std::size_t>(j)] * mod[static_cast<std::size_t>(j)];
    best = std::min(best, std::sqrt(t));
  }
  return best;
}

Outcome widths_oracles() {
  Outcome o;
  std::mt19937_64 g(9);
  std::normal_distribution<double> nd;
  bool exact = true;
  for (int t = 0; t < 200; ++t) {
    const int N = 1 + t % 8;
    Eigen::VectorXcd x(N);
    CoefficientExpansion f(SystemDescriptor::fourier(1));
    std::vector<double> mod;
    for (int j = 0; j < N; ++j) {
      x[j] = {nd(g), nd(g)};
      f.set(MultiIndex{j}, x[j]);
      mod.push_back(std::abs(x[j]));
    }
    for (int n = 0; n <= std::min(4, N); ++n) {
      exact = exact && sigma_s_l1(x, n) == exhaustive_sigma_l1(x, n);
      exact = exact && std::abs(best_n_term_l2(f, n) - exhaustive_best_l2(mod, n)) <=
                           1e-15 * std::max(1.0, f.l2_norm());
    }
  }
  o.require(exact, "sigma_s_l1 and best n-term match enumeration");

  bool stechkin = true;
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXcd x(24);
    for (auto& e : x) e = {nd(g) * std::exp(nd(g)), nd(g)};
    for (double p : {0.5, 1.0}) {
      double np = 0.0;
      for (auto e : x) np += std::pow(std::abs(e), p);
      np = std::pow(np, 1.0 / p);
      for (int s = 1; s <= 12; ++s)
        stechkin = stechkin && sigma_s_l1(x, s) <= stechkin_bound(p, s, np) * (1.0 + 1e-12);
    }
  }
  o.require(stechkin, "Stechkin on 200 vectors");

  const auto geo = DiagonalSpec::geometric(0.5);
  const double a1 = pietsch_diag_an(geo, 1).value;
  const double a2 = pietsch_diag_an(geo, 2).value;
  o.require(std::abs(a1 - 1.0) <= 1e-15 && std::abs(a2 - std::sqrt(0.2)) <= 1e-15,
            "geometric a_1" + fmt("=%.15f", a1) + " a_2" + fmt("=%.15f", a2));

  for (double r : {0.5, 1.0}) {
    const auto pw = DiagonalSpec::power(r, 100000);
    double lo = INFINITY, hi = 0.0;
    bool attained = true;
    for (std::int64_t n = 1; n <= 64; ++n) {
      const auto w = pietsch_diag_an(pw, n);
      attained = attained && !w.at_cutoff;
      const double v = w.value * std::pow(static_cast<double>(n), r);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    o.require(lo >= 0.25 && attained,
              "power r=" + fmt("%.1f", r) + " a_n n^r in" + fmt(" [%.4f,", lo) + fmt("%.4f]", hi));
  }
  return o;
}

Outcome exponent_bookkeeping() {
  Outcome o;
  for (auto [r, d] : {std::pair{1.0, 1}, {1.0, 2}, {2.0, 3}}) {
    const auto m = predicted_rate(ClassSpec::wiener_mixed(r, d), RateIndex::MIndexed);
    const RatePair expected{-r - 0.5, 3.0 * (r + 0.5) + (d - 1) * r + 0.5};
    o.require(m == expected, "(r,d)=(" + fmt("%g", r) + "," + std::to_string(d) + ") -> (" +
                                 fmt("%g", m.rho) + "," + fmt("%g", m.beta) + ")");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "orthonormality", 10, orthonormality},
      {2, "boundedness constants", 30, boundedness},
      {3, "quasi-projection suite", 60, quasi_projection_suite},
      {4, "solver vs closed form", 60, solver_vs_oracle},
      {5, "exact sparse recovery", 300, exact_sparse_recovery},
      {6, "rate, mixed Wiener", 900, rate_mixed_wiener},
      {7, "rate, Chebyshev Wiener", 900, rate_chebyshev_wiener},
      {8, "Legendre preconditioning", 600, legendre_preconditioning},
      {9, "widths oracles", 60, widths_oracles},
      {10, "exponent bookkeeping", 1, exponent_bookkeeping},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs <= c.budget_s, fmt("%.1fs", secs) + fmt(" within %.0fs", c.budget_s));
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
