// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>

#include "migmap/api_model.hpp"

namespace migmap::corpus {

/// Canonical JSON form: {"name","version","methods":[{"package","class",
/// "class_description","name","return_type","return_description",
/// "params":[{"name","type","description"}],"description"}]}. Methods are
/// written sorted by qualified id, so saving is deterministic.
void save_api_json(const ApiLibrary& library, const std::filesystem::path& file);
std::string api_to_json(const ApiLibrary& library);

/// Raises SchemaViolation (with the offending field path) on missing or
/// mis-typed fields; unknown fields are ignored.
ApiLibrary load_api_json(const std::filesystem::path& file);
ApiLibrary api_from_json(const std::string& text);

}  // namespace migmap::corpus
