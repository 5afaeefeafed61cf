#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cli_settings.hpp"
#include "l1s/errors.hpp"
#include "l1s/serialize.hpp"

namespace {

using l1s::cli::Settings;

/// Flags stay unset unless given, so they only override what the file says.
struct Overrides {
  std::optional<std::string> system_kind, class_name, theorem, plan, m_rule, eta, function_file,
      support, quantity, gamma, output_dir, output_file;
  std::optional<int> system_d, d, trials, max_iters;
  std::optional<double> r, p, alpha, c_sample, c_eta, feas_tol, obj_tol, support_scale, target_q;
  std::optional<std::int64_t> n, M, fixed_M, phase_N, phase_s, h_max;
  std::optional<std::uint64_t> seed, function_seed;
  std::optional<std::size_t> sparsity;
  std::optional<std::vector<std::int64_t>> n_values;
  std::optional<std::vector<std::size_t>> phase_m;

  void apply(Settings& s) const {
    auto set = [](auto& dst, const auto& src) {
      if (src) dst = *src;
    };
    set(s.system_kind, system_kind);
    set(s.system_d, system_d);
    set(s.class_name, class_name);
    set(s.r, r);
    set(s.p, p);
    set(s.d, d);
    set(s.alpha, alpha);
    set(s.theorem, theorem);
    set(s.plan, plan);
    set(s.n, n);
    set(s.M, M);
    set(s.m_rule, m_rule);
    set(s.c_sample, c_sample);
    set(s.c_eta, c_eta);
    set(s.eta, eta);
    set(s.seed, seed);
    set(s.feas_tol, feas_tol);
    set(s.obj_tol, obj_tol);
    set(s.max_iters, max_iters);
    set(s.function_file, function_file);
    set(s.support, support);
    set(s.support_scale, support_scale);
    set(s.sparsity, sparsity);
    set(s.function_seed, function_seed);
    set(s.n_values, n_values);
    set(s.trials, trials);
    set(s.fixed_M, fixed_M);
    set(s.phase_N, phase_N);
    set(s.phase_s, phase_s);
    set(s.phase_m, phase_m);
    set(s.quantity, quantity);
    set(s.gamma, gamma);
    set(s.h_max, h_max);
    set(s.target_q, target_q);
    set(s.output_dir, output_dir);
    set(s.output_file, output_file);
  }
};

void add_model_flags(CLI::App* app, Overrides& o) {
  app->add_option("--system", o.system_kind, "fourier, chebyshev, legendre_preconditioned, legendre");
  app->add_option("--system-d", o.system_d, "dimension of the system");
  app->add_option("--class", o.class_name, "wiener_mixed, wiener_iso, sobolev_mixed, poly_wiener");
  app->add_option("-r,--r", o.r, "smoothness");
  app->add_option("-p,--p", o.p, "summability exponent");
  app->add_option("-d,--d", o.d, "dimension");
  app->add_option("--alpha", o.alpha, "Jacobi parameter (-0.5 or 0)");
  app->add_option("--theorem", o.theorem, "fourier3, fourier_grid, chebyshev, legendre");
  app->add_option("--plan", o.plan, "grid or continuous (Fourier)");
  app->add_option("-M,--M", o.M, "search parameter; 0 uses the M rule");
  app->add_option("--m-rule", o.m_rule, "M rule name");
  app->add_option("--c-sample", o.c_sample, "sample count constant");
  app->add_option("--c-eta", o.c_eta, "noise level constant");
  app->add_option("--eta", o.eta, "'auto' or a fixed noise level");
  app->add_option("--seed", o.seed, "seed of the sample points / experiment");
  app->add_option("--feas-tol", o.feas_tol, "solver feasibility tolerance (negative: scaled default)");
  app->add_option("--obj-tol", o.obj_tol, "solver relative gap tolerance");
  app->add_option("--max-iters", o.max_iters, "solver iteration cap");
  app->add_option("--support", o.support, "random function support scales with 'n' or 'M'");
  app->add_option("--support-scale", o.support_scale, "support radius factor");
  app->add_option("--sparsity", o.sparsity, "nonzeros of random functions (0: dense)");
}

void add_output_flags(CLI::App* app, Overrides& o) {
  app->add_option("--out-dir", o.output_dir, "output directory (default $L1S_OUTPUT_DIR or .)");
  app->add_option("-o,--out", o.output_file, "output file name or path");
}

std::string output_path(const Settings& s, const std::string& fallback) {
  const std::string name = s.output_file.empty() ? fallback : s.output_file;
  std::filesystem::path p(name);
  if (p.is_absolute() || p.has_parent_path()) return p.string();
  const auto dir = std::filesystem::path(l1s::cli::resolve_output_dir(s));
  std::filesystem::create_directories(dir);
  return (dir / p).string();
}

int run_recover(const Settings& s, bool strict) {
  const auto cfg = l1s::cli::make_recovery_config(s);
  l1s::CoefficientExpansion f;
  if (!s.function_file.empty()) {
    f = l1s::expansion_from_json(l1s::read_text_file(s.function_file));
  } else {
    const auto family = l1s::cli::make_family(s);
    f = l1s::random_unit_function(cfg.cls, family.support_set(cfg.cls, cfg.n, cfg.M),
                                  family.sparsity, s.function_seed);
  }
  const auto points = l1s::draw_recovery_points(cfg);
  auto result = l1s::recover(l1s::sample_function(f, points), cfg, points);
  result.l2_error = l1s::l2_error(f, result.reconstruction);
  const auto path = output_path(s, "recovery.json");
  l1s::write_text_file(path, l1s::recovery_result_to_json(result));
  std::printf("m=%zu N=%zu eta=%.6g l2_error=%.6g certified=%d -> %s\n", result.samples_used,
              l1s::search_set(cfg).size(), result.eta, *result.l2_error,
              result.solver.certified ? 1 : 0, path.c_str());
  return strict && !result.solver.certified ? 2 : 0;
}

int run_rates(const Settings& s, bool strict) {
  const auto cfg = l1s::cli::make_experiment_config(s);
  std::vector<l1s::TrialRecord> trials;
  const auto report = l1s::run_rate_experiment(cfg, &trials);
  const auto csv = output_path(s, "rates.csv");
  std::filesystem::path json(csv);
  json.replace_extension(".json");
  l1s::emit_report(report, l1s::ReportFormat::Csv, csv);
  l1s::emit_report(report, l1s::ReportFormat::Json, json.string());
  std::cout << l1s::report_to_string(report, l1s::ReportFormat::Csv);
  std::printf("fitted_slope=%.6g predicted=(%.6g, %.6g) -> %s\n", report.fitted_slope,
              report.predicted_n.rho, report.predicted_n.beta, csv.c_str());
  bool all_certified = true;
  for (const auto& t : trials) all_certified = all_certified && t.certified;
  return strict && !all_certified ? 2 : 0;
}

int run_phase(const Settings& s, bool strict) {
  const auto system = l1s::cli::make_system(s);
  l1s::BpdnTolerances tol;
  tol.feas_tol = s.feas_tol;
  tol.obj_tol = s.obj_tol;
  tol.max_iters = s.max_iters;
  const auto table =
      l1s::run_phase_experiment(system, s.phase_N, s.phase_s, s.phase_m, s.trials, s.seed, tol);
  const auto text = l1s::phase_to_csv(table);
  const auto path = output_path(s, "phase.csv");
  l1s::write_text_file(path, text);
  std::cout << text;
  bool all_certified = true;
  for (const auto& r : table.rows) all_certified = all_certified && r.uncertified == 0;
  return strict && !all_certified ? 2 : 0;
}

int run_oracle(const Settings& s) {
  std::string out = "name,n,value,attained_flag\n";
  char buf[128];
  for (auto n : s.n_values) {
    l1s::WidthValue w;
    if (s.quantity == "pietsch") {
      w = l1s::pietsch_diag_an(l1s::cli::make_diagonal(s), n);
    } else if (s.quantity == "class_width") {
      w = l1s::class_width(l1s::cli::make_class(s), l1s::TargetNorm::unweighted(s.target_q), n,
                           s.h_max);
    } else {
      throw l1s::InvalidArgument("unknown oracle quantity '" + s.quantity + "'");
    }
    std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%d\n", s.quantity.c_str(),
                  static_cast<long long>(n), w.value, w.at_cutoff ? 1 : 0);
    out += buf;
  }
  std::cout << out;
  if (!s.output_file.empty() || !s.output_dir.empty())
    l1s::write_text_file(output_path(s, "oracle.csv"), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Function recovery from point samples by basis pursuit denoising"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  bool strict = false;
  Overrides o;
  app.add_option("-c,--config", config, "YAML config file")->check(CLI::ExistingFile);
  app.add_flag("--strict", strict, "exit with status 2 if any solve is uncertified");

  auto* recover = app.add_subcommand("recover", "recover one function");
  add_model_flags(recover, o);
  add_output_flags(recover, o);
  recover->add_option("-n,--n", o.n, "sparsity target");
  recover->add_option("--function", o.function_file, "expansion JSON of the function to sample");
  recover->add_option("--function-seed", o.function_seed, "seed of the random test function");

  auto* rates = app.add_subcommand("rates", "error rate sweep over n");
  add_model_flags(rates, o);
  add_output_flags(rates, o);
  rates->add_option("--n-values", o.n_values, "increasing n values")->delimiter(',');
  rates->add_option("--trials", o.trials, "trials per n");
  rates->add_option("--fixed-M", o.fixed_M, "M for the fixed rule");

  auto* phase = app.add_subcommand("phase", "success fraction of sparse recovery");
  phase->add_option("--system", o.system_kind, "fourier (d = 1) or a polynomial system");
  phase->add_option("--N", o.phase_N, "number of columns");
  phase->add_option("--s", o.phase_s, "sparsity");
  phase->add_option("--m", o.phase_m, "sample counts")->delimiter(',');
  phase->add_option("--trials", o.trials, "trials per sample count");
  phase->add_option("--seed", o.seed, "seed");
  phase->add_option("--obj-tol", o.obj_tol, "solver relative gap tolerance");
  phase->add_option("--max-iters", o.max_iters, "solver iteration cap");
  add_output_flags(phase, o);

  auto* oracle = app.add_subcommand("oracle", "width oracles as CSV rows");
  oracle->add_option("--quantity", o.quantity, "pietsch or class_width");
  oracle->add_option("--gamma", o.gamma, "geometric:<ratio> or power:<r>");
  oracle->add_option("--n-values", o.n_values, "n values")->delimiter(',');
  oracle->add_option("--h-max", o.h_max, "enumeration cutoff");
  oracle->add_option("--target-q", o.target_q, "target exponent for class_width");
  oracle->add_option("--class", o.class_name, "class of the unit ball");
  oracle->add_option("-r,--r", o.r, "smoothness");
  oracle->add_option("-p,--p", o.p, "summability exponent");
  oracle->add_option("-d,--d", o.d, "dimension");
  oracle->add_option("--alpha", o.alpha, "Jacobi parameter");
  add_output_flags(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    Settings s;
    if (!config.empty()) l1s::cli::load_settings_file(config, s);
    o.apply(s);
    if (recover->parsed()) return run_recover(s, strict);
    if (rates->parsed()) return run_rates(s, strict);
    if (phase->parsed()) {
      if (s.system_kind.empty()) s.system_kind = "fourier";
      return run_phase(s, strict);
    }
    return run_oracle(s);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
