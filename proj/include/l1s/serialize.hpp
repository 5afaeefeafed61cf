#pragma once

#include <string>

#include "l1s/recovery.hpp"

namespace l1s {

/// {"system": name, "dim": d, "entries": [[[k...], re, im], ...]}
std::string expansion_to_json(const CoefficientExpansion& f);
CoefficientExpansion expansion_from_json(const std::string& text);

/// Reconstruction plus solver diagnostics.
std::string recovery_result_to_json(const RecoveryResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace l1s
