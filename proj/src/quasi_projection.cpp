#include "l1s/quasi_projection.hpp"

#include <cmath>
#include <numbers>

#include "l1s/errors.hpp"

namespace l1s {

DlvpSpec DlvpSpec::univariate(std::int64_t n, std::int64_t m) {
  if (m < 0 || m > n) throw InvalidArgument("need 0 <= m <= n");
  DlvpSpec s;
  s.n = n;
  s.m = m;
  return s;
}

DlvpSpec DlvpSpec::tensor_product(int d, std::int64_t M) {
  if (d < 1 || M < 1) throw InvalidArgument("need d >= 1 and M >= 1");
  DlvpSpec s;
  s.n = (d + 1) * M;
  s.m = d * M;
  s.d = d;
  s.M = M;
  s.tensor = true;
  return s;
}

double dlvp_coeff(std::int64_t n, std::int64_t m, std::int64_t k) {
  if (m < 0 || m > n) throw InvalidArgument("need 0 <= m <= n");
  const std::int64_t a = k < 0 ? -k : k;
  if (a <= n - m) return 1.0;
  if (a <= n + m) return static_cast<double>(n + m + 1 - a) / static_cast<double>(2 * m + 1);
  return 0.0;
}

double tensor_dlvp_coeff(int d, std::int64_t M, const MultiIndex& k) {
  if (static_cast<int>(k.dim()) != d) throw DimensionMismatch("index dimension differs from d");
  const auto spec = DlvpSpec::tensor_product(d, M);
  double a = 1.0;
  for (auto kj : k.entries()) a *= dlvp_coeff(spec.n, spec.m, kj);
  return a;
}

CoefficientExpansion apply_quasi_projection(const DlvpSpec& spec, const CoefficientExpansion& f) {
  if (f.system().kind != SystemKind::Fourier)
    throw DomainError("quasi-projection acts on Fourier expansions");
  const int d = f.system().dim();
  if (spec.tensor ? spec.d != d : d != 1)
    throw DimensionMismatch("operator dimension differs from the expansion");
  CoefficientExpansion out(f.system());
  for (const auto& [k, c] : f.coefficients()) {
    double a = 1.0;
    for (auto kj : k.entries()) a *= dlvp_coeff(spec.n, spec.m, kj);
    if (a != 0.0) out.set(k, a == 1.0 ? c : a * c);
  }
  return out;
}

KernelNorm kernel_l1_norm(const DlvpSpec& spec, std::int64_t nodes) {
  const std::int64_t deg = spec.n + spec.m;
  const std::int64_t Q = nodes > 0 ? nodes : 8 * deg + 1;
  if (Q < 4 * deg + 1)
    throw ResolutionError("kernel quadrature needs at least " + std::to_string(4 * deg + 1) +
                          " nodes");
  std::vector<double> a(static_cast<std::size_t>(deg + 1));
  for (std::int64_t k = 0; k <= deg; ++k)
    a[static_cast<std::size_t>(k)] = dlvp_coeff(spec.n, spec.m, k);
  double sum = 0.0;
  for (std::int64_t q = 0; q < Q; ++q) {
    double K = a[0];
    for (std::int64_t k = 1; k <= deg; ++k) {
      const double x = static_cast<double>((k * q) % Q) / static_cast<double>(Q);
      K += 2.0 * a[static_cast<std::size_t>(k)] * std::cos(2.0 * std::numbers::pi * x);
    }
    sum += std::abs(K);
  }
  KernelNorm out;
  out.nodes = Q;
  out.value = sum / static_cast<double>(Q);
  out.bound = static_cast<double>(2 * spec.n + 1) / static_cast<double>(2 * spec.m + 1);
  if (spec.tensor) {
    out.value = std::pow(out.value, spec.d);
    out.bound = std::pow(out.bound, spec.d);
  }
  return out;
}

CoefficientExpansion chebyshev_lift(const CoefficientExpansion& f) {
  if (f.system().kind != SystemKind::Chebyshev)
    throw DomainError("the lift maps Chebyshev expansions");
  CoefficientExpansion g(SystemDescriptor::fourier(1));
  for (const auto& [k, c] : f.coefficients()) {
    if (k[0] == 0) {
      g.set(k, c);
    } else {
      g.set(MultiIndex({k[0]}), c / std::numbers::sqrt2);
      g.set(MultiIndex({-k[0]}), c / std::numbers::sqrt2);
    }
  }
  return g;
}

CoefficientExpansion chebyshev_unlift(const CoefficientExpansion& g) {
  if (g.system() != SystemDescriptor::fourier(1))
    throw DomainError("the inverse lift maps univariate Fourier expansions");
  CoefficientExpansion f(SystemDescriptor::chebyshev());
  for (const auto& [k, c] : g.coefficients()) {
    if (k[0] < 0) continue;
    if (k[0] == 0) {
      f.set(k, c);
    } else {
      f.set(k, (c + g.get(MultiIndex({-k[0]}))) / std::numbers::sqrt2);
    }
  }
  for (const auto& [k, c] : g.coefficients()) {
    if (k[0] < 0 && !g.coefficients().contains(MultiIndex({-k[0]})))
      f.set(MultiIndex({-k[0]}), c / std::numbers::sqrt2);
  }
  return f;
}

CoefficientExpansion chebyshev_quasi_projection(std::int64_t n, std::int64_t m,
                                                const CoefficientExpansion& f) {
  return chebyshev_unlift(apply_quasi_projection(DlvpSpec::univariate(n, m), chebyshev_lift(f)));
}

}  // namespace l1s
