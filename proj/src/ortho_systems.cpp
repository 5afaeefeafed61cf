#include "l1s/ortho_systems.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "l1s/errors.hpp"

namespace l1s {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

void require_interval(double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("point outside [-1,1]");
}

double chebyshev_value(std::int64_t n, double x) {
  if (n == 0) return 1.0;
  return kSqrt2 * std::cos(static_cast<double>(n) * std::acos(x));
}

double legendre_normalized(std::int64_t n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return std::sqrt(0.5);
  for (std::int64_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk + 1.0) * x * p1 - kk * p0) / (kk + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return std::sqrt(static_cast<double>(n) + 0.5) * p1;
}

}  // namespace

SystemDescriptor SystemDescriptor::fourier(int d) {
  if (d < 1) throw InvalidArgument("Fourier dimension must be at least 1");
  return {SystemKind::Fourier, d};
}
SystemDescriptor SystemDescriptor::chebyshev() { return {SystemKind::Chebyshev, 1}; }
SystemDescriptor SystemDescriptor::legendre_preconditioned() {
  return {SystemKind::LegendrePreconditioned, 1};
}
SystemDescriptor SystemDescriptor::legendre_raw() { return {SystemKind::LegendreRaw, 1}; }

Measure SystemDescriptor::measure() const {
  switch (kind) {
    case SystemKind::Fourier:
      return Measure::Haar;
    case SystemKind::Chebyshev:
    case SystemKind::LegendrePreconditioned:
      return Measure::Arcsine;
    case SystemKind::LegendreRaw:
      return Measure::Lebesgue;
  }
  return Measure::Haar;
}

std::string SystemDescriptor::name() const {
  switch (kind) {
    case SystemKind::Fourier:
      return "fourier";
    case SystemKind::Chebyshev:
      return "chebyshev";
    case SystemKind::LegendrePreconditioned:
      return "legendre_preconditioned";
    case SystemKind::LegendreRaw:
      return "legendre";
  }
  return "unknown";
}

SystemDescriptor parse_system(const std::string& name, int d) {
  if (name == "fourier") return SystemDescriptor::fourier(d);
  if (name == "chebyshev") return SystemDescriptor::chebyshev();
  if (name == "legendre_preconditioned") return SystemDescriptor::legendre_preconditioned();
  if (name == "legendre") return SystemDescriptor::legendre_raw();
  throw InvalidArgument("unknown system '" + name + "'");
}

PointSet PointSet::from_coords(int d, std::vector<double> coords) {
  if (d < 1 || coords.size() % static_cast<std::size_t>(d) != 0)
    throw DimensionMismatch("coordinate count is not a multiple of the dimension");
  PointSet p;
  p.d = d;
  p.coords = std::move(coords);
  return p;
}

SamplePlan SamplePlan::continuous(std::uint64_t seed) {
  return {Mode::ContinuousIid, 0, seed};
}

SamplePlan SamplePlan::grid_uniform(std::int64_t D, std::uint64_t seed) {
  if (D < 1) throw InvalidArgument("grid parameter D must be at least 1");
  return {Mode::GridUniform, D, seed};
}

void legendre_values(std::int64_t nmax, double x, double* out) {
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = x;
  for (std::int64_t k = 1; k < nmax; ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = ((2.0 * kk + 1.0) * x * out[k] - kk * out[k - 1]) / (kk + 1.0);
  }
}

double legendre_weight(double x) {
  return std::sqrt(kPi) * std::pow(std::max(0.0, 1.0 - x * x), 0.25);
}

cplx evaluate_basis(const SystemDescriptor& system, const MultiIndex& index,
                    std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(system.dim()))
    throw DimensionMismatch("point dimension does not match the system");
  if (index.dim() != static_cast<std::size_t>(system.dim()))
    throw DimensionMismatch("index dimension does not match the system");

  if (system.kind == SystemKind::Fourier) {
    double phase = 0.0;
    for (std::size_t j = 0; j < point.size(); ++j) {
      if (!std::isfinite(point[j])) throw DomainError("non-finite torus coordinate");
      const double t = point[j] - std::floor(point[j]);
      const double kt = static_cast<double>(index[j]) * t;
      phase += kt - std::round(kt);
    }
    const double a = 2.0 * kPi * phase;
    return {std::cos(a), std::sin(a)};
  }

  const double x = point[0];
  require_interval(x);
  const std::int64_t n = index[0];
  if (n < 0) throw DomainError("polynomial degree must be nonnegative");
  switch (system.kind) {
    case SystemKind::Chebyshev:
      return chebyshev_value(n, x);
    case SystemKind::LegendrePreconditioned:
      return legendre_weight(x) * legendre_normalized(n, x);
    case SystemKind::LegendreRaw:
      return legendre_normalized(n, x);
    case SystemKind::Fourier:
      break;
  }
  return 0.0;
}

PointSet draw_points(const SystemDescriptor& system, std::size_t m, const SamplePlan& plan) {
  if (m == 0) throw InvalidArgument("at least one sample point is required");
  std::mt19937_64 gen(plan.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PointSet p;
  p.d = system.dim();
  p.coords.resize(m * static_cast<std::size_t>(p.d));

  if (plan.mode == SamplePlan::Mode::GridUniform) {
    if (system.kind != SystemKind::Fourier)
      throw DomainError("grid sampling is only defined for the Fourier system");
    if (plan.D < 1) throw InvalidArgument("grid parameter D must be at least 1");
    const std::int64_t G = 2 * plan.D + 1;
    std::uniform_int_distribution<std::int64_t> pick(0, G - 1);
    p.grid_size = G;
    p.grid.resize(p.coords.size());
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      p.grid[i] = pick(gen);
      p.coords[i] = static_cast<double>(p.grid[i]) / static_cast<double>(G);
    }
    return p;
  }

  for (auto& c : p.coords) {
    const double u = unif(gen);
    switch (system.measure()) {
      case Measure::Haar:
        c = u;
        break;
      case Measure::Arcsine:
        c = std::cos(kPi * u);
        break;
      case Measure::Lebesgue:
        c = 2.0 * u - 1.0;
        break;
    }
  }
  return p;
}

double uniform_bound(const SystemDescriptor& system) {
  switch (system.kind) {
    case SystemKind::Fourier:
      return 1.0;
    case SystemKind::Chebyshev:
      return kSqrt2;
    case SystemKind::LegendrePreconditioned:
      return 4.0 * std::sqrt(kPi);
    case SystemKind::LegendreRaw:
      break;
  }
  throw UnboundedSystem("the raw Legendre system has no finite uniform bound");
}

Quadrature1d gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("quadrature needs at least one node");
  Quadrature1d q;
  q.nodes.resize(n);
  q.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.nodes[n / 2] = 0.0;
  return q;
}

Quadrature1d gauss_chebyshev(int n) {
  if (n < 1) throw InvalidArgument("quadrature needs at least one node");
  Quadrature1d q;
  q.nodes.resize(n);
  q.weights.assign(n, 1.0 / n);
  for (int j = 0; j < n; ++j) q.nodes[j] = std::cos(kPi * (2.0 * j + 1.0) / (2.0 * n));
  return q;
}

namespace {

Eigen::MatrixXcd fourier_gram(const SystemDescriptor& system, const IndexSet& indices,
                              QuadratureRule rule) {
  if (rule.kind != QuadratureRule::Kind::Default && rule.kind != QuadratureRule::Kind::Trapezoid)
    throw InvalidArgument("the Fourier system uses the trapezoid rule");
  std::int64_t K = 0;
  for (const auto& k : indices.indices()) K = std::max(K, k.max_abs());
  const std::int64_t L = rule.nodes > 0 ? rule.nodes : 4 * K + 1;
  if (L < 2 * K + 1)
    throw ResolutionError("trapezoid rule with " + std::to_string(L) +
                          " nodes cannot resolve frequency differences up to " +
                          std::to_string(2 * K));

  const auto one = SystemDescriptor::fourier(1);
  const std::int64_t side = 2 * K + 1;
  Eigen::MatrixXcd g1 = Eigen::MatrixXcd::Zero(side, side);
  for (std::int64_t q = 0; q < L; ++q) {
    const double x = static_cast<double>(q) / static_cast<double>(L);
    Eigen::VectorXcd e(side);
    for (std::int64_t a = -K; a <= K; ++a) e[a + K] = evaluate_basis(one, MultiIndex({a}), x);
    g1.noalias() += e * e.adjoint();
  }
  g1 /= static_cast<double>(L);

  const std::size_t N = indices.size();
  const int d = system.dim();
  Eigen::MatrixXcd G(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    const auto& kj = indices[j];
    for (std::size_t i = 0; i < N; ++i) {
      const auto& ki = indices[i];
      cplx v = 1.0;
      for (int t = 0; t < d; ++t) v *= g1(ki[t] + K, kj[t] + K);
      G(i, j) = v;
    }
  }
  return G;
}

}  // namespace

Eigen::MatrixXcd gram_matrix(const SystemDescriptor& system, const IndexSet& indices,
                             QuadratureRule rule) {
  if (indices.dim() != system.dim())
    throw DimensionMismatch("index set dimension does not match the system");
  if (system.kind == SystemKind::Fourier) return fourier_gram(system, indices, rule);

  std::int64_t K = 0;
  for (const auto& k : indices.indices()) K = std::max(K, k[0]);
  const int Q = rule.nodes > 0 ? rule.nodes : static_cast<int>(2 * K + 8);
  if (Q < K + 1)
    throw ResolutionError("a " + std::to_string(Q) +
                          "-node Gauss rule cannot integrate products of degree " +
                          std::to_string(2 * K));

  Quadrature1d quad;
  bool undo_weight = false;
  if (system.kind == SystemKind::Chebyshev) {
    if (rule.kind != QuadratureRule::Kind::Default &&
        rule.kind != QuadratureRule::Kind::GaussChebyshev)
      throw InvalidArgument("the Chebyshev system uses the Gauss-Chebyshev rule");
    quad = gauss_chebyshev(Q);
  } else {
    if (rule.kind != QuadratureRule::Kind::Default &&
        rule.kind != QuadratureRule::Kind::GaussLegendre)
      throw InvalidArgument("Legendre systems use the Gauss-Legendre rule");
    quad = gauss_legendre(Q);
    undo_weight = system.kind == SystemKind::LegendrePreconditioned;
  }

  const std::size_t N = indices.size();
  Eigen::MatrixXd V(Q, N);
  for (int q = 0; q < Q; ++q) {
    const double x = quad.nodes[q];
    const double scale = undo_weight ? 1.0 / legendre_weight(x) : 1.0;
    for (std::size_t j = 0; j < N; ++j)
      V(q, j) = evaluate_basis(system, indices[j], x).real() * std::sqrt(quad.weights[q]) * scale;
  }
  return (V.transpose() * V).cast<cplx>();
}

}  // namespace l1s
