#include "cli_settings.hpp"

#include <cstdlib>
#include <map>
#include <set>

#include <yaml-cpp/yaml.h>

#include "l1s/errors.hpp"

namespace l1s::cli {

namespace {

template <class T>
void read(const YAML::Node& sec, const char* key, T& out, std::set<std::string>& seen) {
  seen.insert(key);
  if (const auto v = sec[key]) out = v.as<T>();
}

void reject_unknown(const YAML::Node& sec, const std::string& name,
                    const std::set<std::string>& seen) {
  for (const auto& kv : sec) {
    const auto key = kv.first.as<std::string>();
    if (!seen.count(key)) throw InvalidArgument("unknown key '" + name + "." + key + "'");
  }
}

}  // namespace

void load_settings_file(const std::string& path, Settings& s) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw IoError("cannot read config '" + path + "'");
  } catch (const YAML::Exception& e) {
    throw InvalidArgument("malformed config '" + path + "': " + e.what());
  }
  if (root.IsNull()) return;
  if (!root.IsMap()) throw InvalidArgument("config root must be a mapping");

  using Section = void (*)(const YAML::Node&, Settings&, std::set<std::string>&);
  static const std::map<std::string, Section> sections{
      {"system",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "kind", s.system_kind, k);
         read(n, "d", s.system_d, k);
       }},
      {"class",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "name", s.class_name, k);
         read(n, "r", s.r, k);
         read(n, "p", s.p, k);
         read(n, "d", s.d, k);
         read(n, "alpha", s.alpha, k);
       }},
      {"recovery",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "theorem", s.theorem, k);
         read(n, "plan", s.plan, k);
         read(n, "n", s.n, k);
         read(n, "M", s.M, k);
         read(n, "m_rule", s.m_rule, k);
         read(n, "c_sample", s.c_sample, k);
         read(n, "c_eta", s.c_eta, k);
         read(n, "eta", s.eta, k);
         read(n, "seed", s.seed, k);
       }},
      {"solver",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "feas_tol", s.feas_tol, k);
         read(n, "obj_tol", s.obj_tol, k);
         read(n, "max_iters", s.max_iters, k);
       }},
      {"function",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "file", s.function_file, k);
         read(n, "support", s.support, k);
         read(n, "scale", s.support_scale, k);
         read(n, "sparsity", s.sparsity, k);
         read(n, "seed", s.function_seed, k);
       }},
      {"experiment",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "n_values", s.n_values, k);
         read(n, "trials", s.trials, k);
         read(n, "fixed_M", s.fixed_M, k);
       }},
      {"phase",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "N", s.phase_N, k);
         read(n, "s", s.phase_s, k);
         read(n, "m", s.phase_m, k);
       }},
      {"oracle",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "quantity", s.quantity, k);
         read(n, "gamma", s.gamma, k);
         read(n, "h_max", s.h_max, k);
         read(n, "target_q", s.target_q, k);
       }},
      {"output",
       [](const YAML::Node& n, Settings& s, std::set<std::string>& k) {
         read(n, "dir", s.output_dir, k);
         read(n, "file", s.output_file, k);
       }},
  };

  for (const auto& kv : root) {
    const auto name = kv.first.as<std::string>();
    const auto it = sections.find(name);
    if (it == sections.end()) throw InvalidArgument("unknown config section '" + name + "'");
    if (!kv.second.IsMap()) throw InvalidArgument("config section '" + name + "' must be a mapping");
    std::set<std::string> seen;
    try {
      it->second(kv.second, s, seen);
    } catch (const YAML::Exception& e) {
      throw InvalidArgument("bad value in section '" + name + "': " + e.what());
    }
    reject_unknown(kv.second, name, seen);
  }
}

std::string resolve_output_dir(const Settings& s) {
  if (!s.output_dir.empty()) return s.output_dir;
  if (const char* env = std::getenv("L1S_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

ClassSpec make_class(const Settings& s) {
  return parse_class(s.class_name, s.r, s.p, s.d, s.alpha);
}

SystemDescriptor make_system(const Settings& s) {
  const ClassSpec cls = make_class(s);
  if (s.system_kind.empty()) return class_system(cls);
  return parse_system(s.system_kind, s.system_d > 0 ? s.system_d : cls.d);
}

MRule make_m_rule(const Settings& s) {
  if (!s.m_rule.empty()) return parse_m_rule(s.m_rule);
  const ClassSpec cls = make_class(s);
  switch (cls.kind) {
    case ClassSpec::Kind::WienerMixed:
      return MRule::MixedWiener;
    case ClassSpec::Kind::WienerIso:
      return MRule::IsotropicWiener;
    case ClassSpec::Kind::SobolevMixedH:
      return MRule::MixedSobolev;
    case ClassSpec::Kind::PolyWiener:
      return cls.alpha == -0.5 ? MRule::ChebyshevWiener : MRule::LegendreWiener;
  }
  return MRule::Fixed;
}

RecoveryConfig make_recovery_config(const Settings& s) {
  RecoveryConfig c;
  c.cls = make_class(s);
  c.system = make_system(s);
  if (!s.theorem.empty()) {
    c.theorem = parse_theorem(s.theorem);
  } else if (c.system.kind == SystemKind::Fourier) {
    c.theorem = s.plan == "continuous" ? Theorem::Fourier3 : Theorem::FourierGrid;
  } else if (c.system.kind == SystemKind::Chebyshev) {
    c.theorem = Theorem::Chebyshev;
  } else {
    c.theorem = Theorem::Legendre;
  }
  if (!s.plan.empty()) {
    if (s.plan != "grid" && s.plan != "continuous")
      throw InvalidArgument("plan must be 'grid' or 'continuous'");
    const bool grid = c.theorem == Theorem::FourierGrid;
    if (grid != (s.plan == "grid"))
      throw InvalidArgument("plan '" + s.plan + "' conflicts with theorem " + theorem_name(c.theorem));
  }
  c.n = s.n;
  const std::int64_t min_M = c.theorem == Theorem::Legendre ? 1 : 3;
  c.M = s.M > 0 ? s.M : std::max(min_M, apply_m_rule(make_m_rule(s), c.cls, s.n, s.fixed_M));
  c.c_sample = s.c_sample;
  c.c_eta = s.c_eta;
  if (s.eta == "auto") {
    c.eta = EtaMode::auto_select();
  } else {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s.eta, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.eta.size()) throw InvalidArgument("eta must be 'auto' or a number");
    c.eta = EtaMode::fixed(v);
  }
  c.plan.seed = s.seed;
  c.tol.feas_tol = s.feas_tol;
  c.tol.obj_tol = s.obj_tol;
  c.tol.max_iters = s.max_iters;
  c.validate();
  return c;
}

FunctionFamily make_family(const Settings& s) {
  FunctionFamily f;
  if (s.support == "n") {
    f.support = FunctionFamily::Support::ScaledN;
  } else if (s.support == "M") {
    f.support = FunctionFamily::Support::ScaledM;
  } else {
    throw InvalidArgument("function.support must be 'n' or 'M'");
  }
  f.scale = s.support_scale;
  if (s.sparsity > 0) f.sparsity = s.sparsity;
  return f;
}

ExperimentConfig make_experiment_config(const Settings& s) {
  ExperimentConfig e;
  Settings first = s;
  first.n = s.n_values.empty() ? 1 : s.n_values.front();
  first.M = 0;
  e.base = make_recovery_config(first);
  e.n_values = s.n_values;
  e.trials_per_n = s.trials;
  e.m_rule = s.M > 0 ? MRule::Fixed : make_m_rule(s);
  e.fixed_M = s.M > 0 ? s.M : s.fixed_M;
  e.seed_base = s.seed;
  e.family = make_family(s);
  e.validate();
  return e;
}

DiagonalSpec make_diagonal(const Settings& s) {
  const auto colon = s.gamma.find(':');
  if (colon == std::string::npos)
    throw InvalidArgument("gamma must look like 'geometric:<ratio>' or 'power:<r>'");
  const std::string kind = s.gamma.substr(0, colon);
  const double v = std::stod(s.gamma.substr(colon + 1));
  if (kind == "geometric") return DiagonalSpec::geometric(v, s.h_max);
  if (kind == "power") return DiagonalSpec::power(v, s.h_max);
  throw InvalidArgument("unknown gamma family '" + kind + "'");
}

}  // namespace l1s::cli
