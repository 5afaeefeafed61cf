#include "l1s/function_classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "l1s/errors.hpp"

namespace l1s {

namespace {

void check_r(double r) {
  if (!(r > 0.0)) throw InvalidArgument("smoothness r must be positive");
}
void check_p(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("summability p must lie in (0,1]");
}
void check_d(int d) {
  if (d < 1) throw InvalidArgument("dimension must be at least 1");
}

}  // namespace

ClassSpec ClassSpec::wiener_mixed(double r, int d) {
  check_r(r);
  check_d(d);
  return {Kind::WienerMixed, r, 1.0, d, 0.0};
}

ClassSpec ClassSpec::wiener_iso(double r, double p, int d) {
  check_r(r);
  check_p(p);
  check_d(d);
  return {Kind::WienerIso, r, p, d, 0.0};
}

ClassSpec ClassSpec::sobolev_mixed(double r, int d) {
  if (!(r > 0.5)) throw InvalidArgument("mixed Sobolev smoothness must exceed 1/2");
  check_d(d);
  return {Kind::SobolevMixedH, r, 2.0, d, 0.0};
}

ClassSpec ClassSpec::poly_wiener(double alpha, double r, double p) {
  if (alpha != -0.5 && alpha != 0.0) throw InvalidArgument("alpha must be -1/2 or 0");
  check_r(r);
  check_p(p);
  return {Kind::PolyWiener, r, p, 1, alpha};
}

double ClassSpec::norm_exponent() const {
  switch (kind) {
    case Kind::WienerMixed:
      return 1.0;
    case Kind::SobolevMixedH:
      return 2.0;
    case Kind::WienerIso:
    case Kind::PolyWiener:
      return p;
  }
  return 1.0;
}

bool ClassSpec::accepts(const SystemDescriptor& system) const {
  if (kind != Kind::PolyWiener) return system.kind == SystemKind::Fourier && system.d == d;
  if (alpha == -0.5) return system.kind == SystemKind::Chebyshev;
  return system.kind == SystemKind::LegendreRaw ||
         system.kind == SystemKind::LegendrePreconditioned;
}

std::string ClassSpec::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::WienerMixed:
      os << "wiener_mixed(r=" << r << ",d=" << d << ")";
      break;
    case Kind::WienerIso:
      os << "wiener_iso(r=" << r << ",p=" << p << ",d=" << d << ")";
      break;
    case Kind::SobolevMixedH:
      os << "sobolev_mixed(r=" << r << ",d=" << d << ")";
      break;
    case Kind::PolyWiener:
      os << "poly_wiener(alpha=" << alpha << ",r=" << r << ",p=" << p << ")";
      break;
  }
  return os.str();
}

ClassSpec parse_class(const std::string& name, double r, double p, int d, double alpha) {
  if (name == "wiener_mixed") return ClassSpec::wiener_mixed(r, d);
  if (name == "wiener_iso") return ClassSpec::wiener_iso(r, p, d);
  if (name == "sobolev_mixed") return ClassSpec::sobolev_mixed(r, d);
  if (name == "poly_wiener") return ClassSpec::poly_wiener(alpha, r, p);
  throw InvalidArgument("unknown class '" + name + "'");
}

SystemDescriptor class_system(const ClassSpec& cls) {
  if (cls.kind != ClassSpec::Kind::PolyWiener) return SystemDescriptor::fourier(cls.d);
  return cls.alpha == -0.5 ? SystemDescriptor::chebyshev() : SystemDescriptor::legendre_raw();
}

CoefficientExpansion CoefficientExpansion::from_vector(SystemDescriptor system,
                                                       const IndexSet& indices,
                                                       const Eigen::VectorXcd& values) {
  if (static_cast<std::size_t>(values.size()) != indices.size())
    throw DimensionMismatch("coefficient vector length differs from the index set size");
  CoefficientExpansion f(system);
  auto hint = f.c_.end();
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (values[j] == cplx(0.0)) continue;
    if (static_cast<int>(indices[j].dim()) != system.dim())
      throw DimensionMismatch("index dimension does not match the system");
    hint = f.c_.emplace_hint(hint, indices[j], values[j]);
  }
  return f;
}

void CoefficientExpansion::set(const MultiIndex& k, cplx value) {
  if (static_cast<int>(k.dim()) != system_.dim())
    throw DimensionMismatch("index dimension does not match the system");
  if (system_.is_polynomial() && k[0] < 0)
    throw DomainError("polynomial degree must be nonnegative");
  c_[k] = value;
}

cplx CoefficientExpansion::get(const MultiIndex& k) const {
  auto it = c_.find(k);
  return it == c_.end() ? cplx(0.0) : it->second;
}

double CoefficientExpansion::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, v] : c_) s += std::norm(v);
  return std::sqrt(s);
}

Eigen::VectorXcd CoefficientExpansion::to_vector(const IndexSet& indices) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(indices.size()));
  for (const auto& [k, c] : c_) {
    if (auto pos = indices.position(k)) v[static_cast<Eigen::Index>(*pos)] = c;
  }
  return v;
}

double index_weight(const ClassSpec& cls, const MultiIndex& index) {
  if (static_cast<int>(index.dim()) != cls.dim())
    throw DimensionMismatch("index dimension does not match the class");
  switch (cls.kind) {
    case ClassSpec::Kind::WienerMixed:
    case ClassSpec::Kind::SobolevMixedH: {
      double w = 1.0;
      for (auto k : index.entries()) w *= std::pow(1.0 + std::abs(static_cast<double>(k)), cls.r);
      return w;
    }
    case ClassSpec::Kind::WienerIso:
      return std::pow(1.0 + static_cast<double>(index.max_abs()), cls.r);
    case ClassSpec::Kind::PolyWiener:
      if (index[0] < 0) throw DomainError("polynomial degree must be nonnegative");
      return std::pow(1.0 + static_cast<double>(index[0]), cls.r);
  }
  return 1.0;
}

double class_norm(const ClassSpec& cls, const CoefficientExpansion& f) {
  if (!f.empty() && !cls.accepts(f.system()))
    throw DomainError("expansion system " + f.system().name() + " does not match class " +
                      cls.name());
  const double q = cls.norm_exponent();
  double s = 0.0;
  for (const auto& [k, c] : f.coefficients()) {
    const double a = std::abs(c) * index_weight(cls, k);
    s += q == 1.0 ? a : q == 2.0 ? a * a : std::pow(a, q);
  }
  if (q == 1.0) return s;
  if (q == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / q);
}

CoefficientExpansion random_unit_function(const ClassSpec& cls, const IndexSet& support,
                                          std::optional<std::size_t> sparsity,
                                          std::uint64_t seed) {
  if (support.empty()) throw InvalidArgument("support must be non-empty");
  if (support.dim() != cls.dim())
    throw DimensionMismatch("support dimension does not match the class");
  if (sparsity && (*sparsity == 0 || *sparsity > support.size()))
    throw InvalidArgument("sparsity must lie in [1, |support|]");

  std::mt19937_64 gen(seed);
  std::vector<std::size_t> chosen(support.size());
  std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  if (sparsity) {
    for (std::size_t i = 0; i < *sparsity; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, chosen.size() - 1);
      std::swap(chosen[i], chosen[pick(gen)]);
    }
    chosen.resize(*sparsity);
    std::sort(chosen.begin(), chosen.end());
  }

  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CoefficientExpansion f(class_system(cls));
  for (auto j : chosen) {
    const auto& k = support[j];
    const double re = normal(gen);
    const double im = normal(gen);
    f.set(k, cplx(re, im) / index_weight(cls, k));
  }
  const double norm = class_norm(cls, f);
  CoefficientExpansion g(f.system());
  for (const auto& [k, c] : f.coefficients()) g.set(k, c / norm);
  return g;
}

cplx evaluate_function(const CoefficientExpansion& f, std::span<const double> point) {
  if (point.size() != static_cast<std::size_t>(f.system().dim()))
    throw DimensionMismatch("point dimension does not match the expansion");
  cplx s = 0.0;
  for (const auto& [k, c] : f.coefficients()) s += c * evaluate_basis(f.system(), k, point);
  return s;
}

Eigen::VectorXcd evaluate_function(const CoefficientExpansion& f, const PointSet& points) {
  if (points.d != f.system().dim())
    throw DimensionMismatch("point dimension does not match the expansion");
  const std::size_t m = points.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
  const auto kind = f.system().kind;
  if (kind == SystemKind::LegendreRaw || kind == SystemKind::LegendrePreconditioned) {
    if (f.empty()) return out;
    const std::int64_t nmax = f.coefficients().rbegin()->first[0];
    std::vector<double> P(static_cast<std::size_t>(nmax + 1));
    for (std::size_t i = 0; i < m; ++i) {
      const double x = points.point(i)[0];
      if (!(x >= -1.0 && x <= 1.0)) throw DomainError("point outside [-1,1]");
      legendre_values(nmax, x, P.data());
      cplx s = 0.0;
      for (const auto& [k, c] : f.coefficients())
        s += c * (std::sqrt(static_cast<double>(k[0]) + 0.5) * P[static_cast<std::size_t>(k[0])]);
      out[static_cast<Eigen::Index>(i)] =
          kind == SystemKind::LegendrePreconditioned ? s * legendre_weight(x) : s;
    }
    return out;
  }
  for (std::size_t i = 0; i < m; ++i)
    out[static_cast<Eigen::Index>(i)] = evaluate_function(f, points.point(i));
  return out;
}

double truncation_error_bound(const ClassSpec& cls, const CoefficientExpansion& f,
                              const IndexSet& J) {
  if (!f.empty() && !cls.accepts(f.system()))
    throw DomainError("expansion system does not match the class");
  double tail = 0.0;
  for (const auto& [k, c] : f.coefficients())
    if (J.empty() || !J.contains(k)) tail += std::abs(c);
  return tail;
}

}  // namespace l1s
