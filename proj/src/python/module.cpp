#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "l1s/bpdn.hpp"
#include "l1s/errors.hpp"
#include "l1s/harness.hpp"
#include "l1s/serialize.hpp"
#include "l1s/widths.hpp"

namespace py = pybind11;
using namespace l1s;

namespace {

MultiIndex to_index(const std::vector<std::int64_t>& k) { return MultiIndex(k); }

Eigen::MatrixXd points_array(const PointSet& p) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(p.size()), p.d);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.d; ++j) out(static_cast<Eigen::Index>(i), j) = p.point(i)[static_cast<std::size_t>(j)];
  return out;
}

PointSet points_from_array(const Eigen::MatrixXd& a) {
  std::vector<double> coords;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) coords.push_back(a(i, j));
  return PointSet::from_coords(static_cast<int>(a.cols()), std::move(coords));
}

py::dict solution_dict(const BpdnSolution& s) {
  py::dict d;
  d["z"] = s.z;
  d["residual_norm"] = s.residual_norm;
  d["objective"] = s.objective;
  d["gap"] = s.gap;
  d["iterations"] = s.iterations;
  d["certified"] = s.certified;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Function recovery from point samples by basis pursuit denoising";

  py::register_exception<Error>(m, "L1sError", PyExc_ValueError);

  py::class_<SystemDescriptor>(m, "System")
      .def_static("fourier", &SystemDescriptor::fourier, py::arg("d") = 1)
      .def_static("chebyshev", &SystemDescriptor::chebyshev)
      .def_static("legendre_preconditioned", &SystemDescriptor::legendre_preconditioned)
      .def_static("legendre_raw", &SystemDescriptor::legendre_raw)
      .def_static("parse", &parse_system, py::arg("name"), py::arg("d") = 1)
      .def_property_readonly("d", &SystemDescriptor::dim)
      .def_property_readonly("name", &SystemDescriptor::name)
      .def("uniform_bound", [](const SystemDescriptor& s) { return uniform_bound(s); })
      .def("evaluate", [](const SystemDescriptor& s, const std::vector<std::int64_t>& k,
                          const std::vector<double>& x) { return evaluate_basis(s, to_index(k), x); })
      .def("__eq__", [](const SystemDescriptor& a, const SystemDescriptor& b) { return a == b; })
      .def("__repr__", [](const SystemDescriptor& s) { return "System(" + s.name() + ")"; });

  py::class_<ClassSpec>(m, "FunctionClass")
      .def_static("wiener_mixed", &ClassSpec::wiener_mixed, py::arg("r"), py::arg("d"))
      .def_static("wiener_iso", &ClassSpec::wiener_iso, py::arg("r"), py::arg("p"), py::arg("d"))
      .def_static("sobolev_mixed", &ClassSpec::sobolev_mixed, py::arg("r"), py::arg("d"))
      .def_static("poly_wiener", &ClassSpec::poly_wiener, py::arg("alpha"), py::arg("r"), py::arg("p"))
      .def_readonly("r", &ClassSpec::r)
      .def_readonly("p", &ClassSpec::p)
      .def_readonly("d", &ClassSpec::d)
      .def_readonly("alpha", &ClassSpec::alpha)
      .def_property_readonly("name", &ClassSpec::name)
      .def("system", [](const ClassSpec& c) { return class_system(c); });

  py::class_<IndexSet>(m, "IndexSet")
      .def_static("box", &IndexSet::box)
      .def_static("search_box", &IndexSet::search_box)
      .def_static("degrees", &IndexSet::degrees)
      .def("__len__", &IndexSet::size)
      .def("indices", [](const IndexSet& J) {
        std::vector<std::vector<std::int64_t>> out;
        for (const auto& k : J.indices()) out.push_back(k.entries());
        return out;
      })
      .def("__contains__", [](const IndexSet& J, const std::vector<std::int64_t>& k) {
        return J.contains(to_index(k));
      });

  py::class_<CoefficientExpansion>(m, "Expansion")
      .def(py::init<SystemDescriptor>())
      .def_property_readonly("system", &CoefficientExpansion::system)
      .def("set", [](CoefficientExpansion& f, const std::vector<std::int64_t>& k, cplx v) {
        f.set(to_index(k), v);
      })
      .def("get", [](const CoefficientExpansion& f, const std::vector<std::int64_t>& k) {
        return f.get(to_index(k));
      })
      .def("coefficients", [](const CoefficientExpansion& f) {
        std::vector<std::pair<std::vector<std::int64_t>, cplx>> out;
        for (const auto& [k, c] : f.coefficients()) out.emplace_back(k.entries(), c);
        return out;
      })
      .def("l2_norm", &CoefficientExpansion::l2_norm)
      .def("__len__", &CoefficientExpansion::size)
      .def("__call__", [](const CoefficientExpansion& f, const Eigen::MatrixXd& points) {
        return evaluate_function(f, points_from_array(points));
      })
      .def("to_json", [](const CoefficientExpansion& f) { return expansion_to_json(f); })
      .def_static("from_json", &expansion_from_json);

  py::class_<BpdnTolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("feas_tol", &BpdnTolerances::feas_tol)
      .def_readwrite("obj_tol", &BpdnTolerances::obj_tol)
      .def_readwrite("max_iters", &BpdnTolerances::max_iters);

  py::enum_<Theorem>(m, "Theorem")
      .value("fourier3", Theorem::Fourier3)
      .value("fourier_grid", Theorem::FourierGrid)
      .value("chebyshev", Theorem::Chebyshev)
      .value("legendre", Theorem::Legendre);

  py::class_<RecoveryConfig>(m, "RecoveryConfig")
      .def(py::init<>())
      .def_readwrite("system", &RecoveryConfig::system)
      .def_readwrite("function_class", &RecoveryConfig::cls)
      .def_readwrite("n", &RecoveryConfig::n)
      .def_readwrite("M", &RecoveryConfig::M)
      .def_readwrite("c_sample", &RecoveryConfig::c_sample)
      .def_readwrite("c_eta", &RecoveryConfig::c_eta)
      .def_readwrite("theorem", &RecoveryConfig::theorem)
      .def_readwrite("tol", &RecoveryConfig::tol)
      .def_property(
          "eta", [](const RecoveryConfig& c) -> py::object {
            if (c.eta.automatic) return py::str("auto");
            return py::float_(c.eta.value);
          },
          [](RecoveryConfig& c, py::object v) {
            if (py::isinstance<py::str>(v) && v.cast<std::string>() == "auto")
              c.eta = EtaMode::auto_select();
            else
              c.eta = EtaMode::fixed(v.cast<double>());
          })
      .def_property(
          "seed", [](const RecoveryConfig& c) { return c.plan.seed; },
          [](RecoveryConfig& c, std::uint64_t s) { c.plan.seed = s; });

  py::class_<RecoveryResult>(m, "RecoveryResult")
      .def_readonly("reconstruction", &RecoveryResult::reconstruction)
      .def_readonly("samples_used", &RecoveryResult::samples_used)
      .def_readonly("eta", &RecoveryResult::eta)
      .def_property_readonly("solver", [](const RecoveryResult& r) { return solution_dict(r.solver); })
      .def("to_json", [](const RecoveryResult& r) { return recovery_result_to_json(r); });

  m.def("sample_count", &sample_count);
  m.def("choose_eta", &choose_eta);
  m.def("search_set", &search_set);
  m.def("draw_recovery_points", [](const RecoveryConfig& c) { return points_array(draw_recovery_points(c)); },
        "Sample points of the configuration, one row per point.");
  m.def("recover", [](const Eigen::VectorXcd& samples, const RecoveryConfig& c,
                      const Eigen::MatrixXd& points) { return recover(samples, c, points_from_array(points)); },
        py::arg("samples"), py::arg("config"), py::arg("points"));
  m.def("random_unit_function", &random_unit_function, py::arg("function_class"), py::arg("support"),
        py::arg("sparsity") = std::nullopt, py::arg("seed") = 0);
  m.def("l2_error", &l2_error);

  m.def("solve_bpdn", [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y, double eta,
                         const BpdnTolerances& tol) {
        return solution_dict(solve_bpdn(BpdnProblem::dense(A, y, eta, tol)));
      },
      py::arg("A"), py::arg("y"), py::arg("eta"), py::arg("tol") = BpdnTolerances{},
      "min |z|_1 subject to |Az - y|_2 <= eta sqrt(m).");
  m.def("bpdn_orthonormal_oracle", [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& y,
                                      double eta) { return solution_dict(bpdn_orthonormal_oracle(A, y, eta)); });

  m.def("sigma_s_l1", &sigma_s_l1);
  m.def("pietsch_geometric", [](double ratio, std::int64_t n, std::int64_t h_max) {
    return pietsch_diag_an(DiagonalSpec::geometric(ratio, h_max), n).value;
  }, py::arg("ratio"), py::arg("n"), py::arg("h_max") = 10000);
  m.def("pietsch_power", [](double r, std::int64_t n, std::int64_t h_max) {
    return pietsch_diag_an(DiagonalSpec::power(r, h_max), n).value;
  }, py::arg("r"), py::arg("n"), py::arg("h_max") = 10000);

  m.def("predicted_rate", [](const ClassSpec& c, bool m_indexed) {
    const auto r = predicted_rate(c, m_indexed ? RateIndex::MIndexed : RateIndex::NIndexed);
    return std::pair{r.rho, r.beta};
  }, py::arg("function_class"), py::arg("m_indexed") = false);
  m.def("rate_transfer", [](double c1, double alpha, double r, double beta) {
    const auto t = rate_transfer(c1, alpha, r, beta);
    return std::tuple{t.rate, t.log_power, t.constant};
  });
  m.def("fit_loglog_slope", &fit_loglog_slope);

  m.def("run_rate_experiment", [](const RecoveryConfig& base, const std::vector<std::int64_t>& n_values,
                                  int trials, const std::string& m_rule, std::uint64_t seed,
                                  double support_scale) {
        ExperimentConfig e;
        e.base = base;
        e.n_values = n_values;
        e.trials_per_n = trials;
        e.m_rule = parse_m_rule(m_rule);
        e.seed_base = seed;
        e.family.scale = support_scale;
        const auto r = run_rate_experiment(e);
        py::dict d;
        std::vector<py::dict> rows;
        for (const auto& row : r.rows) {
          py::dict x;
          x["n"] = row.n;
          x["m"] = row.m;
          x["median_error"] = row.median_error;
          x["q25"] = row.q25;
          x["q75"] = row.q75;
          x["success_fraction"] = row.success_fraction;
          rows.push_back(x);
        }
        d["rows"] = rows;
        d["fitted_slope"] = r.fitted_slope;
        d["csv"] = report_to_string(r, ReportFormat::Csv);
        return d;
      },
      py::arg("base"), py::arg("n_values"), py::arg("trials") = 10, py::arg("m_rule") = "mixed_wiener",
      py::arg("seed") = 0, py::arg("support_scale") = 2.0);
}
