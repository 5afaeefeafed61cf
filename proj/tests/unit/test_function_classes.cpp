#include <cmath>
#include <random>

#include "doctest.h"
#include "l1s/errors.hpp"
#include "l1s/function_classes.hpp"

using namespace l1s;

TEST_CASE("index weights") {
  CHECK(index_weight(ClassSpec::wiener_mixed(1.0, 2), MultiIndex{1, 0}) == 2.0);
  CHECK(index_weight(ClassSpec::wiener_iso(2.0, 1.0, 2), MultiIndex{3, -4}) == 25.0);
  CHECK(index_weight(ClassSpec::poly_wiener(-0.5, 1.0, 1.0), MultiIndex::degree(3)) == 4.0);
  CHECK_THROWS_AS(index_weight(ClassSpec::wiener_mixed(1.0, 2), MultiIndex{1}), DimensionMismatch);
}

TEST_CASE("weights are monotone") {
  const auto mixed = ClassSpec::wiener_mixed(1.5, 2);
  const auto iso = ClassSpec::wiener_iso(1.5, 0.5, 2);
  for (std::int64_t a = 0; a < 6; ++a) {
    CHECK(index_weight(mixed, MultiIndex{a, 2}) <= index_weight(mixed, MultiIndex{a + 1, 2}));
    CHECK(index_weight(iso, MultiIndex{a, -a}) <= index_weight(iso, MultiIndex{a + 1, 0}));
    CHECK(index_weight(mixed, MultiIndex{a, 0}) >= 1.0);
  }
}

TEST_CASE("class parameter ranges") {
  CHECK_THROWS_AS(ClassSpec::wiener_mixed(0.0, 1), InvalidArgument);
  CHECK_THROWS_AS(ClassSpec::sobolev_mixed(0.5, 1), InvalidArgument);
  CHECK_THROWS_AS(ClassSpec::wiener_iso(1.0, 1.5, 1), InvalidArgument);
  CHECK_THROWS_AS(ClassSpec::poly_wiener(0.5, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS(parse_class("besov", 1, 1, 1, 0));
}

TEST_CASE("class norms") {
  CoefficientExpansion f(SystemDescriptor::fourier(2));
  f.set(MultiIndex{0, 0}, 1.0);
  f.set(MultiIndex{1, 0}, 1.0);
  CHECK(class_norm(ClassSpec::wiener_mixed(1.0, 2), f) == doctest::Approx(3.0));

  CoefficientExpansion g(SystemDescriptor::fourier(1));
  g.set(MultiIndex{1}, 1.0);
  CHECK(class_norm(ClassSpec::sobolev_mixed(1.0, 1), g) == doctest::Approx(2.0));
  CHECK(class_norm(ClassSpec::wiener_mixed(1.0, 1), CoefficientExpansion(SystemDescriptor::fourier(1))) == 0.0);

  CHECK_THROWS(class_norm(ClassSpec::poly_wiener(0.0, 1.0, 1.0), g));
}

TEST_CASE("class norms are homogeneous") {
  const auto cls = ClassSpec::wiener_iso(1.0, 0.5, 1);
  const auto f = random_unit_function(cls, IndexSet::box(1, 6), std::nullopt, 4);
  CoefficientExpansion g(f.system());
  for (const auto& [k, c] : f.coefficients()) g.set(k, cplx(0.0, -3.0) * c);
  CHECK(class_norm(cls, g) == doctest::Approx(3.0 * class_norm(cls, f)).epsilon(1e-13));
}

TEST_CASE("random unit functions") {
  const auto cls = ClassSpec::wiener_mixed(1.0, 1);
  const auto J = IndexSet::box(1, 8);
  const auto f = random_unit_function(cls, J, std::nullopt, 77);
  CHECK(std::abs(class_norm(cls, f) - 1.0) < 1e-12);
  for (const auto& [k, c] : f.coefficients()) CHECK(J.contains(k));
  CHECK(f == random_unit_function(cls, J, std::nullopt, 77));

  for (const auto& c : {ClassSpec::sobolev_mixed(1.0, 1), ClassSpec::wiener_iso(2.0, 0.5, 1)}) {
    const auto s = random_unit_function(c, J, 1, 5);
    REQUIRE(s.size() == 1);
    const auto& [k, v] = *s.coefficients().begin();
    CHECK(std::abs(v) == doctest::Approx(1.0 / index_weight(c, k)).epsilon(1e-14));
  }
  CHECK_THROWS(random_unit_function(cls, J, 0, 1));
  CHECK_THROWS(random_unit_function(cls, J, 18, 1));
  CHECK_THROWS(random_unit_function(cls, IndexSet::empty(1), std::nullopt, 1));
}

TEST_CASE("function evaluation") {
  CoefficientExpansion f(SystemDescriptor::fourier(1));
  f.set(MultiIndex{0}, 1.0);
  CHECK(evaluate_function(f, 0.37) == cplx(1.0));
  CoefficientExpansion g(SystemDescriptor::fourier(1));
  g.set(MultiIndex{1}, 1.0);
  CHECK(std::abs(evaluate_function(g, 0.5) - cplx(-1.0)) < 1e-15);
  CHECK(evaluate_function(CoefficientExpansion(SystemDescriptor::fourier(1)), 0.2) == cplx(0.0));
}

TEST_CASE("batched evaluation matches pointwise evaluation") {
  for (const auto& cls : {ClassSpec::poly_wiener(-0.5, 1.0, 1.0), ClassSpec::poly_wiener(0.0, 1.0, 1.0),
                          ClassSpec::wiener_mixed(1.0, 2)}) {
    const auto sys = class_system(cls);
    const auto J = cls.kind == ClassSpec::Kind::PolyWiener ? IndexSet::degrees(12) : IndexSet::box(2, 3);
    const auto f = random_unit_function(cls, J, std::nullopt, 8);
    const auto draw_sys = sys.kind == SystemKind::LegendreRaw ? SystemDescriptor::legendre_raw() : sys;
    const auto pts = draw_points(draw_sys, 20, SamplePlan::continuous(2));
    const auto v = evaluate_function(f, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
      CHECK(std::abs(v[static_cast<Eigen::Index>(i)] - evaluate_function(f, pts.point(i))) < 1e-12);
  }
}

TEST_CASE("Parseval against quadrature") {
  const auto cls = ClassSpec::poly_wiener(-0.5, 1.0, 1.0);
  const auto f = random_unit_function(cls, IndexSet::degrees(10), std::nullopt, 3);
  const auto q = gauss_chebyshev(40);
  double s = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) s += q.weights[i] * std::norm(evaluate_function(f, q.nodes[i]));
  CHECK(std::abs(std::sqrt(s) - f.l2_norm()) < 1e-8);

  const auto g = random_unit_function(ClassSpec::wiener_mixed(1.0, 2), IndexSet::box(2, 3), std::nullopt, 3);
  const int L = 16;
  double t = 0.0;
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      const double x[2] = {a / double(L), b / double(L)};
      t += std::norm(evaluate_function(g, x)) / (L * L);
    }
  CHECK(std::abs(std::sqrt(t) - g.l2_norm()) < 1e-8);
}

TEST_CASE("truncation tails") {
  const auto cls = ClassSpec::wiener_mixed(1.0, 1);
  CoefficientExpansion f(SystemDescriptor::fourier(1));
  f.set(MultiIndex{5}, 1.0);
  CHECK(class_norm(cls, f) == 6.0);
  const double tail = truncation_error_bound(cls, f, IndexSet::box(1, 4));
  CHECK(tail == 1.0);
  CHECK(tail <= 6.0 / 4.0);
  CHECK(truncation_error_bound(cls, f, IndexSet::box(1, 5)) == 0.0);
  CHECK(truncation_error_bound(cls, f, IndexSet::empty(1)) == 1.0);
}

TEST_CASE("tails of unit-ball functions obey the M^-r bound") {
  for (int d : {1, 2}) {
    for (double r : {0.5, 1.0, 2.0}) {
      const auto cls = ClassSpec::wiener_mixed(r, d);
      for (int t = 0; t < 100; ++t) {
        const auto f = random_unit_function(cls, IndexSet::box(d, d == 1 ? 40 : 20), std::nullopt,
                                            static_cast<std::uint64_t>(1000 * d + 10 * r + t));
        for (std::int64_t M : {2, 4, 8, 16})
          CHECK(truncation_error_bound(cls, f, IndexSet::box(d, M)) <= std::pow(M, -r) + 1e-12);
      }
    }
  }
}

TEST_CASE("expansion bookkeeping") {
  const auto J = IndexSet::box(1, 2);
  Eigen::VectorXcd v(5);
  v << 0.0, 1.0, 0.0, cplx(0, 2), 0.0;
  const auto f = CoefficientExpansion::from_vector(SystemDescriptor::fourier(1), J, v);
  CHECK(f.size() == 2);
  CHECK(f.get(MultiIndex{1}) == cplx(0, 2));
  CHECK(f.to_vector(J) == v);
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(5.0)));
}
