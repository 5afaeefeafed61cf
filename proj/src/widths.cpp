#include "l1s/widths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "l1s/errors.hpp"

namespace l1s {

namespace {

/// Positions of the n largest values; ties go to the lower position.
std::vector<bool> largest_mask(const std::vector<double>& values, std::int64_t n) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<bool> drop(values.size(), false);
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), values.size());
  for (std::size_t i = 0; i < keep; ++i) drop[order[i]] = true;
  return drop;
}

}  // namespace

double sigma_s_l1(const Eigen::VectorXcd& x, std::int64_t s) {
  if (s < 0) throw InvalidArgument("sparsity s must be nonnegative");
  std::vector<double> mod(static_cast<std::size_t>(x.size()));
  for (Eigen::Index j = 0; j < x.size(); ++j) mod[static_cast<std::size_t>(j)] = std::abs(x[j]);
  // Summed in ascending order.
  std::sort(mod.begin(), mod.end());
  const auto keep = mod.size() - std::min<std::size_t>(static_cast<std::size_t>(s), mod.size());
  double tail = 0.0;
  for (std::size_t j = 0; j < keep; ++j) tail += mod[j];
  return tail;
}

double best_n_term_l2(const CoefficientExpansion& f, std::int64_t n) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  std::vector<double> sq;
  sq.reserve(f.size());
  for (const auto& [k, c] : f.coefficients()) sq.push_back(std::norm(c));
  const auto drop = largest_mask(sq, n);
  double tail = 0.0;
  for (std::size_t j = 0; j < sq.size(); ++j)
    if (!drop[j]) tail += sq[j];
  return std::sqrt(tail);
}

TargetNorm TargetNorm::of_class(const ClassSpec& cls) {
  const double q = cls.norm_exponent();
  if (q != 1.0 && q != 2.0)
    throw UnsupportedClass("class " + cls.name() + " does not have a separable l1/l2 norm");
  TargetNorm t;
  t.q_ = q;
  t.cls_ = cls;
  return t;
}

TargetNorm TargetNorm::unweighted(double q) {
  if (q != 1.0 && q != 2.0) throw UnsupportedClass("target exponent must be 1 or 2");
  TargetNorm t;
  t.q_ = q;
  return t;
}

double TargetNorm::weight(const MultiIndex& k) const {
  return cls_ ? index_weight(*cls_, k) : 1.0;
}

double TargetNorm::norm(const CoefficientExpansion& f) const {
  return best_n_term_weighted(f, 0, *this);
}

double best_n_term_weighted(const CoefficientExpansion& f, std::int64_t n,
                            const TargetNorm& target) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  if (target.cls() && !f.empty() && !target.cls()->accepts(f.system()))
    throw DomainError("expansion system does not match the target class");
  std::vector<double> contrib;
  contrib.reserve(f.size());
  for (const auto& [k, c] : f.coefficients()) {
    const double a = std::abs(c) * target.weight(k);
    contrib.push_back(target.q() == 1.0 ? a : a * a);
  }
  const auto drop = largest_mask(contrib, n);
  double tail = 0.0;
  for (std::size_t j = 0; j < contrib.size(); ++j)
    if (!drop[j]) tail += contrib[j];
  return target.q() == 1.0 ? tail : std::sqrt(tail);
}

double best_n_term_weighted(const CoefficientExpansion& f, std::int64_t n,
                            const ClassSpec& target) {
  return best_n_term_weighted(f, n, TargetNorm::of_class(target));
}

double stechkin_bound(double p, std::int64_t n, double norm_p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in (0,1]");
  if (n < 1) throw InvalidArgument("n must be at least 1");
  return std::pow(static_cast<double>(n), 1.0 - 1.0 / p) * norm_p;
}

double DiagonalSpec::gamma(std::int64_t j) const {
  if (j >= 1 && static_cast<std::size_t>(j) <= prefix.size())
    return prefix[static_cast<std::size_t>(j - 1)];
  return tail ? tail(j) : 0.0;
}

DiagonalSpec DiagonalSpec::geometric(double ratio, std::int64_t h_max) {
  if (!(ratio > 0.0 && ratio <= 1.0)) throw InvalidArgument("ratio must lie in (0,1]");
  DiagonalSpec s;
  s.tail = [ratio](std::int64_t j) { return std::pow(ratio, static_cast<double>(j - 1)); };
  s.h_max = h_max;
  return s;
}

DiagonalSpec DiagonalSpec::power(double r, std::int64_t h_max) {
  if (!(r >= 0.0)) throw InvalidArgument("decay exponent must be nonnegative");
  DiagonalSpec s;
  s.tail = [r](std::int64_t j) { return std::pow(static_cast<double>(j), -r); };
  s.h_max = h_max;
  return s;
}

DiagonalSpec DiagonalSpec::from_values(std::vector<double> values) {
  DiagonalSpec s;
  s.h_max = static_cast<std::int64_t>(values.size());
  s.prefix = std::move(values);
  return s;
}

WidthValue pietsch_diag_an(const DiagonalSpec& spec, std::int64_t n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (spec.h_max < n) throw InvalidArgument("h_max must be at least n");
  WidthValue best;
  best.value = -1.0;
  double sum = 0.0;
  double prev = INFINITY;
  for (std::int64_t h = 1; h <= spec.h_max; ++h) {
    const double g = spec.gamma(h);
    const bool from_tail = static_cast<std::size_t>(h) > spec.prefix.size() && spec.tail;
    // A tail that underflowed makes every later term zero.
    if (g == 0.0 && from_tail && prev > 0.0) break;
    if (!(g > 0.0)) throw InvalidArgument("diagonal entry " + std::to_string(h) + " is zero");
    if (g > prev) throw InvalidArgument("diagonal must be non-increasing");
    prev = g;
    sum += 1.0 / (g * g);
    if (std::isinf(sum)) break;
    if (h < n) continue;
    const double v = std::sqrt(static_cast<double>(h - n + 1) / sum);
    if (v > best.value) {
      best.value = v;
      best.argmax = h;
    }
  }
  best.at_cutoff = best.argmax == spec.h_max;
  return best;
}

WidthValue class_width(const ClassSpec& ball, const TargetNorm& target, std::int64_t n,
                       std::int64_t h_max) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  if (target.weighted()) throw UnsupportedClass("class widths need an unweighted target");
  const double q = ball.norm_exponent();
  if (q != target.q()) throw UnsupportedClass("ball and target exponents differ");
  if (h_max <= n) throw InvalidArgument("h_max must exceed n");

  std::vector<double> w;
  if (ball.kind == ClassSpec::Kind::PolyWiener) {
    for (std::int64_t k = 0; k < h_max; ++k) w.push_back(index_weight(ball, MultiIndex({k})));
  } else {
    const auto box = IndexSet::box(ball.d, (h_max + 1) / 2);
    for (const auto& k : box.indices()) w.push_back(index_weight(ball, k));
    std::sort(w.begin(), w.end());
    w.resize(static_cast<std::size_t>(h_max));
  }

  WidthValue best;
  best.value = -1.0;
  double sum = 0.0;
  for (std::int64_t h = 1; h <= h_max; ++h) {
    sum += std::pow(w[static_cast<std::size_t>(h - 1)], q);
    if (h <= n) continue;
    const double v = std::pow(static_cast<double>(h - n) / sum, 1.0 / q);
    if (v > best.value) {
      best.value = v;
      best.argmax = h;
    }
  }
  best.at_cutoff = best.argmax == h_max;
  return best;
}

bool product_bound_check(const CoefficientExpansion& f, std::int64_t n1, std::int64_t n2,
                         const ClassSpec& intermediate, const TargetNorm& target) {
  const double lhs = best_n_term_weighted(f, n1 + n2, target);
  const double first = best_n_term_weighted(f, n1, TargetNorm::of_class(intermediate));
  const double second = class_width(intermediate, target, n2).value;
  return lhs <= first * second * (1.0 + 1e-12);
}

}  // namespace l1s
