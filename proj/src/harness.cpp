#include "l1s/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "l1s/errors.hpp"

namespace l1s {

MRule parse_m_rule(const std::string& name) {
  if (name == "mixed_wiener") return MRule::MixedWiener;
  if (name == "isotropic_wiener") return MRule::IsotropicWiener;
  if (name == "chebyshev_wiener") return MRule::ChebyshevWiener;
  if (name == "legendre_wiener") return MRule::LegendreWiener;
  if (name == "mixed_sobolev") return MRule::MixedSobolev;
  if (name == "fixed") return MRule::Fixed;
  throw InvalidArgument("unknown M rule '" + name + "'");
}

std::string m_rule_name(MRule rule) {
  switch (rule) {
    case MRule::MixedWiener:
      return "mixed_wiener";
    case MRule::IsotropicWiener:
      return "isotropic_wiener";
    case MRule::ChebyshevWiener:
      return "chebyshev_wiener";
    case MRule::LegendreWiener:
      return "legendre_wiener";
    case MRule::MixedSobolev:
      return "mixed_sobolev";
    case MRule::Fixed:
      return "fixed";
  }
  return "fixed";
}

std::int64_t apply_m_rule(MRule rule, const ClassSpec& cls, std::int64_t n, std::int64_t fixed_M) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  const double nn = static_cast<double>(n);
  const double r = cls.r, p = cls.p;
  double e = 0.0;
  switch (rule) {
    case MRule::MixedWiener:
      e = (r + 0.5) / r;
      break;
    case MRule::IsotropicWiener:
      e = 1.0 / cls.d + 1.0 / (p * r) - 1.0 / (2.0 * r);
      break;
    case MRule::ChebyshevWiener:
      e = 1.0 + 1.0 / (p * r) - 1.0 / (2.0 * r);
      break;
    case MRule::LegendreWiener:
      e = 1.0 + 1.0 / (p * r) - 1.0 / r;
      break;
    case MRule::MixedSobolev:
      if (!(r > 0.5)) throw InvalidArgument("mixed Sobolev rule needs r > 1/2");
      e = 2.0 * r / (r - 0.5);
      break;
    case MRule::Fixed:
      if (fixed_M < 1) throw InvalidArgument("fixed M must be at least 1");
      return fixed_M;
  }
  // Guard against pow returning k - ulp for exact integer powers.
  return static_cast<std::int64_t>(std::floor(std::pow(nn, e) * (1.0 + 1e-12)));
}

IndexSet FunctionFamily::support_set(const ClassSpec& cls, std::int64_t n, std::int64_t M) const {
  const double base = support == Support::ScaledN ? static_cast<double>(n) : static_cast<double>(M);
  const auto R = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(scale * base)));
  if (cls.kind == ClassSpec::Kind::PolyWiener) return IndexSet::degrees(R);
  return IndexSet::box(cls.d, R);
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw InvalidArgument("n_values must not be empty");
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw InvalidArgument("n_values must be strictly increasing");
  if (n_values.front() < 1) throw InvalidArgument("n values must be positive");
  if (trials_per_n < 1) throw InvalidArgument("trials_per_n must be at least 1");
}

double oversampling_log_power(const ClassSpec& cls) {
  return cls.kind == ClassSpec::Kind::PolyWiener ? 4.0 : 3.0;
}

RatePair predicted_rate(const ClassSpec& cls, RateIndex index) {
  RatePair out;
  const double r = cls.r, p = cls.p;
  switch (cls.kind) {
    case ClassSpec::Kind::WienerMixed:
      out = {-r - 0.5, (cls.d - 1) * r + 0.5};
      break;
    case ClassSpec::Kind::WienerIso:
      out = {-r / cls.d - 1.0 / p + 0.5, 0.0};
      break;
    case ClassSpec::Kind::SobolevMixedH:
      out = {-r, (cls.d - 1) * r + 0.5};
      break;
    case ClassSpec::Kind::PolyWiener:
      out = cls.alpha == -0.5 ? RatePair{-(r + 1.0 / p - 0.5), 0.0}
                              : RatePair{-(r + 1.0 / p - 1.0), 0.0};
      break;
    default:
      throw UnsupportedClass("no predicted rate for this class");
  }
  if (index == RateIndex::MIndexed) {
    const auto t = rate_transfer(1.0, oversampling_log_power(cls), -out.rho, out.beta);
    out = {t.rate, t.log_power};
  }
  return out;
}

TransferResult rate_transfer(double c1, double alpha, double r, double beta) {
  TransferResult t;
  t.rate = -r;
  t.log_power = beta + alpha * r;
  t.constant = std::pow(4.0 * c1 * std::pow(2.0, alpha), r);
  return t;
}

double fit_loglog_slope(const std::vector<double>& n, const std::vector<double>& errors) {
  if (n.size() != errors.size()) throw DimensionMismatch("n and error sequences differ in length");
  const std::size_t start = n.size() >= 4 ? 1 : 0;
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < n.size(); ++i) {
    if (!(errors[i] > 0.0) || !(n[i] > 0.0)) continue;
    xs.push_back(std::log(n[i]));
    ys.push_back(std::log(errors[i]));
  }
  if (xs.size() < 2) return std::nan("");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::nan("");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return splitmix(splitmix(splitmix(splitmix(base) ^ a) ^ b) ^ c);
}

RateReport run_rate_experiment(const ExperimentConfig& config, std::vector<TrialRecord>* trials) {
  config.validate();
  const auto& cls = config.base.cls;
  RateReport report;
  report.predicted_n = predicted_rate(cls, RateIndex::NIndexed);
  report.predicted_m = predicted_rate(cls, RateIndex::MIndexed);
  const std::int64_t min_M = config.base.theorem == Theorem::Legendre ? 1 : 3;

  std::vector<double> ns, medians;
  for (auto n : config.n_values) {
    RecoveryConfig cfg = config.base;
    cfg.n = n;
    cfg.M = std::max(min_M, apply_m_rule(config.m_rule, cls, n, config.fixed_M));
    const IndexSet support = config.family.support_set(cls, n, cfg.M);
    const auto un = static_cast<std::uint64_t>(n);

    std::vector<double> errors;
    int certified = 0;
    for (int t = 0; t < config.trials_per_n; ++t) {
      const auto ut = static_cast<std::uint64_t>(t);
      const auto f = random_unit_function(cls, support, config.family.sparsity,
                                          derive_seed(config.seed_base, un, ut, 0));
      cfg.plan.seed = derive_seed(config.seed_base, un, ut, 1);
      const PointSet points = draw_recovery_points(cfg);
      const auto result = recover(sample_function(f, points), cfg, points);
      const double err = l2_error(f, result.reconstruction);
      errors.push_back(err);
      certified += result.solver.certified ? 1 : 0;
      if (trials) {
        trials->push_back({n, cfg.M, points.size(), result.eta, err, f.l2_norm(),
                           result.solver.iterations, result.solver.certified});
      }
    }
    std::sort(errors.begin(), errors.end());
    RateRow row;
    row.n = n;
    row.m = static_cast<std::int64_t>(sample_count(cfg));
    row.median_error = quantile_sorted(errors, 0.5);
    row.q25 = quantile_sorted(errors, 0.25);
    row.q75 = quantile_sorted(errors, 0.75);
    row.success_fraction = static_cast<double>(certified) / config.trials_per_n;
    report.rows.push_back(row);
    ns.push_back(static_cast<double>(n));
    medians.push_back(row.median_error);
  }
  report.fitted_slope = fit_loglog_slope(ns, medians);
  return report;
}

PhaseTable run_phase_experiment(const SystemDescriptor& system, std::int64_t N, std::int64_t s,
                                const std::vector<std::size_t>& m_grid, int trials,
                                std::uint64_t seed, BpdnTolerances tol) {
  if (s < 0 || s > N) throw InvalidArgument("need 0 <= s <= N");
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  IndexSet columns;
  SamplePlan plan;
  if (system.kind == SystemKind::Fourier) {
    if (system.dim() != 1 || N % 2 == 0)
      throw InvalidArgument("Fourier phase experiments use d = 1 and odd N = 2D+1");
    columns = IndexSet::box(1, (N - 1) / 2);
    plan = SamplePlan::grid_uniform((N - 1) / 2, 0);
  } else {
    if (!system.is_bounded()) throw UnboundedSystem("phase experiments need a bounded system");
    columns = IndexSet::degrees(N - 1);
    plan = SamplePlan::continuous(0);
  }

  PhaseTable table;
  table.N = N;
  table.s = s;
  for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
    const std::size_t m = m_grid[mi];
    PhaseRow row;
    row.m = m;
    row.trials = trials;
    for (int t = 0; t < trials; ++t) {
      const auto ut = static_cast<std::uint64_t>(t);
      std::mt19937_64 gen(derive_seed(seed, m, ut, 0));
      std::vector<std::size_t> idx(static_cast<std::size_t>(N));
      for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
      Eigen::VectorXcd x = Eigen::VectorXcd::Zero(N);
      for (std::int64_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), idx.size() - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[pick(gen)]);
        x[static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)])] = std::polar(1.0, phase(gen));
      }
      plan.seed = derive_seed(seed, m, ut, 1);
      const PointSet points = draw_points(system, m, plan);
      BpdnProblem problem;
      problem.A = build_operator(system, columns, points);
      problem.A->apply(x, problem.y);
      problem.eta = 0.0;
      problem.tol = tol;
      const auto sol = solve_bpdn(problem);
      const double rel = (sol.z - x).norm() / std::max(x.norm(), 1e-300);
      if (rel <= 1e-4) ++row.successes;
      if (!sol.certified) ++row.uncertified;
    }
    row.success_fraction = static_cast<double>(row.successes) / trials;
    table.rows.push_back(row);
  }
  return table;
}

namespace {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return fmt17(v);
}

}  // namespace

std::string report_to_string(const RateReport& report, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::Csv) {
    os << "n,m,median_error,q25,q75,success_fraction\n";
    for (const auto& r : report.rows)
      os << r.n << ',' << r.m << ',' << fmt17(r.median_error) << ',' << fmt17(r.q25) << ','
         << fmt17(r.q75) << ',' << fmt17(r.success_fraction) << '\n';
    return os.str();
  }
  os << "{\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    os << (i ? ",\n" : "\n") << "    {\"n\": " << r.n << ", \"m\": " << r.m
       << ", \"median_error\": " << json_number(r.median_error) << ", \"q25\": " << json_number(r.q25)
       << ", \"q75\": " << json_number(r.q75)
       << ", \"success_fraction\": " << json_number(r.success_fraction) << "}";
  }
  os << (report.rows.empty() ? "],\n" : "\n  ],\n");
  os << "  \"fitted_slope\": " << json_number(report.fitted_slope) << ",\n";
  os << "  \"predicted_n\": {\"rho\": " << json_number(report.predicted_n.rho)
     << ", \"beta\": " << json_number(report.predicted_n.beta) << "},\n";
  os << "  \"predicted_m\": {\"rho\": " << json_number(report.predicted_m.rho)
     << ", \"beta\": " << json_number(report.predicted_m.beta) << "}\n}\n";
  return os.str();
}

void emit_report(const RateReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << report_to_string(report, format);
  if (!out) throw IoError("failed writing '" + path + "'");
}

RateReport parse_report_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto num = [](const nlohmann::json& v) {
    return v.is_null() ? std::nan("") : v.get<double>();
  };
  RateReport r;
  for (const auto& row : j.at("rows")) {
    RateRow x;
    x.n = row.at("n").get<std::int64_t>();
    x.m = row.at("m").get<std::int64_t>();
    x.median_error = num(row.at("median_error"));
    x.q25 = num(row.at("q25"));
    x.q75 = num(row.at("q75"));
    x.success_fraction = num(row.at("success_fraction"));
    r.rows.push_back(x);
  }
  r.fitted_slope = num(j.at("fitted_slope"));
  r.predicted_n = {num(j.at("predicted_n").at("rho")), num(j.at("predicted_n").at("beta"))};
  r.predicted_m = {num(j.at("predicted_m").at("rho")), num(j.at("predicted_m").at("beta"))};
  return r;
}

std::string phase_to_csv(const PhaseTable& table) {
  std::ostringstream os;
  os << "m,successes,trials,success_fraction,uncertified\n";
  for (const auto& r : table.rows)
    os << r.m << ',' << r.successes << ',' << r.trials << ',' << fmt17(r.success_fraction) << ','
       << r.uncertified << '\n';
  return os.str();
}

}  // namespace l1s
