#include "l1s/serialize.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "l1s/errors.hpp"

namespace l1s {

namespace {

nlohmann::ordered_json expansion_json(const CoefficientExpansion& f) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& [k, c] : f.coefficients())
    entries.push_back(nlohmann::ordered_json::array({k.entries(), c.real(), c.imag()}));
  return {{"system", f.system().name()}, {"dim", f.system().d}, {"entries", entries}};
}

// Pretty layout with one entry per line.
std::string layout(const nlohmann::ordered_json& j) {
  std::string out = "{\n";
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    out += first ? "" : ",\n";
    first = false;
    out += "  " + nlohmann::json(key).dump() + ": ";
    if (key == "entries") {
      out += "[";
      for (std::size_t i = 0; i < value.size(); ++i)
        out += (i ? ",\n    " : "\n    ") + value[i].dump();
      out += value.empty() ? "]" : "\n  ]";
    } else {
      out += value.dump();
    }
  }
  return out + "\n}\n";
}

}  // namespace

std::string expansion_to_json(const CoefficientExpansion& f) { return layout(expansion_json(f)); }

CoefficientExpansion expansion_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed expansion JSON: ") + e.what());
  }
  try {
    const int d = j.value("dim", 1);
    CoefficientExpansion f(parse_system(j.at("system").get<std::string>(), d));
    for (const auto& e : j.at("entries")) {
      MultiIndex k(e.at(0).get<std::vector<std::int64_t>>());
      if (k.dim() != static_cast<std::size_t>(d)) throw DimensionMismatch("entry index has wrong dimension");
      f.set(k, cplx(e.at(1).get<double>(), e.at(2).get<double>()));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed expansion JSON: ") + e.what());
  }
}

std::string recovery_result_to_json(const RecoveryResult& result) {
  nlohmann::ordered_json j = expansion_json(result.reconstruction);
  j["samples_used"] = result.samples_used;
  j["eta"] = result.eta;
  j["solver"] = {{"residual_norm", result.solver.residual_norm},
                 {"objective", result.solver.objective},
                 {"gap", result.solver.gap},
                 {"iterations", result.solver.iterations},
                 {"certified", result.solver.certified}};
  if (result.l2_error) j["l2_error"] = *result.l2_error;
  return layout(j);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace l1s
