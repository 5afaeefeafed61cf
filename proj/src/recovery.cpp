#include "l1s/recovery.hpp"

#include <cmath>
#include <numbers>

#include "l1s/errors.hpp"
#include "l1s/quasi_projection.hpp"

namespace l1s {

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Fourier3:
      return "fourier3";
    case Theorem::FourierGrid:
      return "fourier_grid";
    case Theorem::Chebyshev:
      return "chebyshev";
    case Theorem::Legendre:
      return "legendre";
  }
  return "unknown";
}

Theorem parse_theorem(const std::string& name) {
  if (name == "fourier3") return Theorem::Fourier3;
  if (name == "fourier_grid") return Theorem::FourierGrid;
  if (name == "chebyshev") return Theorem::Chebyshev;
  if (name == "legendre") return Theorem::Legendre;
  throw InvalidArgument("unknown theorem '" + name + "'");
}

SystemDescriptor measurement_system(const RecoveryConfig& config) {
  switch (config.theorem) {
    case Theorem::Fourier3:
    case Theorem::FourierGrid:
      return SystemDescriptor::fourier(config.system.dim());
    case Theorem::Chebyshev:
      return SystemDescriptor::chebyshev();
    case Theorem::Legendre:
      return SystemDescriptor::legendre_preconditioned();
  }
  return config.system;
}

SystemDescriptor reconstruction_system(const RecoveryConfig& config) {
  if (config.theorem == Theorem::Legendre) return SystemDescriptor::legendre_raw();
  return measurement_system(config);
}

void RecoveryConfig::validate() const {
  if (n < 1) throw InvalidArgument("sparsity target n must be at least 1");
  if (!(c_sample > 0.0)) throw InvalidArgument("c_sample must be positive");
  if (!(c_eta >= 0.0)) throw InvalidArgument("c_eta must be nonnegative");
  if (!eta.automatic && !(eta.value >= 0.0)) throw InvalidArgument("eta must be nonnegative");
  const bool fourier = theorem == Theorem::Fourier3 || theorem == Theorem::FourierGrid;
  if (fourier != (system.kind == SystemKind::Fourier))
    throw DomainError("theorem " + theorem_name(theorem) + " does not apply to system " +
                      system.name());
  if (theorem == Theorem::Chebyshev && system.kind != SystemKind::Chebyshev)
    throw DomainError("the Chebyshev theorem needs the Chebyshev system");
  if (theorem == Theorem::Legendre && system.kind != SystemKind::LegendreRaw &&
      system.kind != SystemKind::LegendrePreconditioned)
    throw DomainError("the Legendre theorem needs a Legendre system");
  if (theorem == Theorem::Legendre ? M < 1 : M < 3)
    throw InvalidArgument("M is too small for theorem " + theorem_name(theorem));
  if (!cls.accepts(reconstruction_system(*this)))
    throw DomainError("class " + cls.name() + " does not live on system " + system.name());
}

double guarded_log(double x) { return std::max(std::log(x), 1.0); }

std::size_t sample_count(const RecoveryConfig& config) {
  config.validate();
  const double n = static_cast<double>(config.n);
  const double M = static_cast<double>(config.M);
  const double d = static_cast<double>(config.system.dim());
  const double Ln = guarded_log(n);
  double m = 0.0;
  switch (config.theorem) {
    case Theorem::Fourier3:
      m = config.c_sample * d * std::log(d + 1.0) * n * Ln * Ln * Ln * std::log(M);
      break;
    case Theorem::FourierGrid:
      m = config.c_sample * d * std::log(d + 1.0) * n * Ln * Ln * std::log(M);
      break;
    case Theorem::Chebyshev:
      m = config.c_sample * n * Ln * Ln * Ln * std::log(M);
      break;
    case Theorem::Legendre:
      m = config.c_sample * n * Ln * Ln * Ln * guarded_log(M + 1.0);
      break;
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
}

IndexSet base_set(const RecoveryConfig& config) {
  if (config.system.kind == SystemKind::Fourier) return IndexSet::box(config.system.dim(), config.M);
  return IndexSet::degrees(config.M);
}

IndexSet search_set(const RecoveryConfig& config) {
  switch (config.theorem) {
    case Theorem::Fourier3:
    case Theorem::FourierGrid:
      return IndexSet::search_box(config.system.dim(), config.M);
    case Theorem::Chebyshev:
      return IndexSet::degrees(3 * config.M);
    case Theorem::Legendre:
      return IndexSet::degrees(config.M);
  }
  return IndexSet::degrees(config.M);
}

double quasi_projection_bound(const RecoveryConfig& config) {
  switch (config.theorem) {
    case Theorem::Fourier3:
    case Theorem::FourierGrid:
      return std::numbers::e;
    case Theorem::Chebyshev:
      return 2.0;
    case Theorem::Legendre:
      return 1.0;
  }
  return 1.0;
}

SamplePlan recovery_plan(const RecoveryConfig& config) {
  if (config.theorem == Theorem::FourierGrid)
    return SamplePlan::grid_uniform((2 * config.system.dim() + 1) * config.M, config.plan.seed);
  return SamplePlan::continuous(config.plan.seed);
}

PointSet draw_recovery_points(const RecoveryConfig& config) {
  return draw_points(measurement_system(config), sample_count(config), recovery_plan(config));
}

Eigen::MatrixXcd build_matrix(const SystemDescriptor& system, const IndexSet& Jstar,
                              const PointSet& points) {
  if (!system.is_bounded())
    throw UnboundedSystem("the raw Legendre system must go through the preconditioned pipeline");
  if (points.size() == 0) throw InvalidArgument("at least one sample point is required");
  if (points.d != system.dim() || Jstar.dim() != system.dim())
    throw DimensionMismatch("points, indices and system must share one dimension");
  const auto m = static_cast<Eigen::Index>(points.size());
  const auto N = static_cast<Eigen::Index>(Jstar.size());
  Eigen::MatrixXcd A(m, N);
  if (system.kind == SystemKind::LegendrePreconditioned) {
    std::int64_t K = 0;
    for (const auto& k : Jstar.indices()) K = std::max(K, k[0]);
    std::vector<double> P(static_cast<std::size_t>(K + 1));
    for (Eigen::Index l = 0; l < m; ++l) {
      const double x = points.point(static_cast<std::size_t>(l))[0];
      if (!(x >= -1.0 && x <= 1.0)) throw DomainError("point outside [-1,1]");
      legendre_values(K, x, P.data());
      const double w = legendre_weight(x);
      for (Eigen::Index j = 0; j < N; ++j) {
        const auto deg = Jstar[static_cast<std::size_t>(j)][0];
        A(l, j) = w * std::sqrt(static_cast<double>(deg) + 0.5) * P[static_cast<std::size_t>(deg)];
      }
    }
    return A;
  }
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index l = 0; l < m; ++l)
      A(l, j) = evaluate_basis(system, Jstar[static_cast<std::size_t>(j)],
                               points.point(static_cast<std::size_t>(l)));
  return A;
}

std::shared_ptr<LinearOperator> build_operator(const SystemDescriptor& system,
                                               const IndexSet& Jstar, const PointSet& points) {
  const double work = static_cast<double>(points.size()) * static_cast<double>(Jstar.size());
  constexpr double kDenseLimit = 65536.0;
  if (work > kDenseLimit) {
    if (system.kind == SystemKind::Fourier && points.on_grid() && points.d == system.dim()) {
      std::int64_t K = 0;
      for (const auto& k : Jstar.indices()) K = std::max(K, k.max_abs());
      if (2 * K + 1 <= points.grid_size) return std::make_shared<GridFourierOperator>(Jstar, points);
    }
    if (system.kind == SystemKind::Chebyshev) return std::make_shared<ChebyshevOperator>(Jstar, points);
  }
  return std::make_shared<DenseOperator>(build_matrix(system, Jstar, points));
}

namespace {

double sobolev_tail(double r, int d, std::int64_t M) {
  const double all = 2.0 * std::riemann_zeta(2.0 * r) - 1.0;
  double box = 1.0;
  for (std::int64_t j = 2; j <= M + 1; ++j) box += 2.0 * std::pow(static_cast<double>(j), -2.0 * r);
  return std::sqrt(std::max(0.0, std::pow(all, d) - std::pow(box, d)));
}

}  // namespace

double sigma_bound(const RecoveryConfig& config) {
  const auto& c = config.cls;
  const double n = static_cast<double>(config.n);
  const double Ln = guarded_log(n);
  switch (c.kind) {
    case ClassSpec::Kind::WienerMixed:
      return std::pow(n, -c.r - 0.5) * std::pow(Ln, (c.d - 1) * c.r + 0.5);
    case ClassSpec::Kind::WienerIso:
      return std::pow(n, -c.r / c.d - 1.0 / c.p + 0.5);
    case ClassSpec::Kind::SobolevMixedH:
      return std::pow(n, -c.r) * std::pow(Ln, (c.d - 1) * c.r + 0.5);
    case ClassSpec::Kind::PolyWiener:
      if (c.alpha == -0.5) return std::pow(n, -(c.r + 1.0 / c.p - 0.5));
      return std::pow(n, -(c.r + 1.0 / c.p - 1.0));
  }
  throw UnsupportedClass("no analytic best n-term bound for " + c.name());
}

double truncation_bound(const RecoveryConfig& config) {
  const auto& c = config.cls;
  const double M = static_cast<double>(config.M);
  switch (c.kind) {
    case ClassSpec::Kind::WienerMixed:
      return std::pow(M, -c.r);
    case ClassSpec::Kind::WienerIso:
    case ClassSpec::Kind::PolyWiener:
      return std::pow(1.0 + M, -c.r);
    case ClassSpec::Kind::SobolevMixedH:
      return sobolev_tail(c.r, c.d, config.M);
  }
  throw UnsupportedClass("no analytic truncation bound for " + c.name());
}

double choose_eta(const RecoveryConfig& config) {
  if (!config.eta.automatic) {
    if (!(config.eta.value >= 0.0)) throw InvalidArgument("eta must be nonnegative");
    return config.eta.value;
  }
  const double tau = quasi_projection_bound(config);
  return config.c_eta * (tau * sigma_bound(config) + (1.0 + tau) * truncation_bound(config));
}

Eigen::VectorXcd sample_function(const CoefficientExpansion& f, const PointSet& points) {
  return evaluate_function(f, points);
}

RecoveryResult recover(const Eigen::VectorXcd& f_samples, const RecoveryConfig& config,
                       const PointSet& points) {
  config.validate();
  if (static_cast<std::size_t>(f_samples.size()) != points.size())
    throw DimensionMismatch("sample vector length differs from the number of points");
  const auto system = measurement_system(config);
  const IndexSet Jstar = search_set(config);

  Eigen::VectorXcd y = f_samples;
  if (config.theorem == Theorem::Legendre)
    for (Eigen::Index l = 0; l < y.size(); ++l)
      y[l] *= legendre_weight(points.point(static_cast<std::size_t>(l))[0]);

  BpdnProblem problem;
  problem.A = build_operator(system, Jstar, points);
  problem.y = std::move(y);
  problem.eta = choose_eta(config);
  problem.tol = config.tol;

  RecoveryResult result;
  result.solver = solve_bpdn(problem);
  result.samples_used = points.size();
  result.eta = problem.eta;
  result.reconstruction =
      CoefficientExpansion::from_vector(reconstruction_system(config), Jstar, result.solver.z);
  return result;
}

namespace {

bool legendre_kind(SystemKind k) {
  return k == SystemKind::LegendreRaw || k == SystemKind::LegendrePreconditioned;
}

}  // namespace

double l2_error(const CoefficientExpansion& f_true, const CoefficientExpansion& f_hat) {
  const auto& a = f_true.system();
  const auto& b = f_hat.system();
  if (a.kind == SystemKind::Chebyshev && b == SystemDescriptor::fourier(1))
    return l2_error(chebyshev_lift(f_true), f_hat);
  if (b.kind == SystemKind::Chebyshev && a == SystemDescriptor::fourier(1))
    return l2_error(f_true, chebyshev_lift(f_hat));
  if (!(a == b) && !(legendre_kind(a.kind) && legendre_kind(b.kind)))
    throw DomainError("cannot compare expansions in " + a.name() + " and " + b.name());
  double s = 0.0;
  for (const auto& [k, c] : f_true.coefficients()) s += std::norm(c - f_hat.get(k));
  for (const auto& [k, c] : f_hat.coefficients())
    if (!f_true.coefficients().contains(k)) s += std::norm(c);
  return std::sqrt(s);
}

CoefficientExpansion legendre_truncation_TM(const CoefficientExpansion& f, std::int64_t M) {
  if (!legendre_kind(f.system().kind))
    throw DomainError("truncation acts on Legendre expansions");
  if (M < 0) throw InvalidArgument("M must be nonnegative");
  CoefficientExpansion out(f.system());
  for (const auto& [k, c] : f.coefficients())
    if (k[0] <= M) out.set(k, c);
  return out;
}

}  // namespace l1s
