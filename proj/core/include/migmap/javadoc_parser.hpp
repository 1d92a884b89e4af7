// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "migmap/api_model.hpp"

namespace migmap::corpus {

/// Walks an extracted javadoc tree (the layout produced by the JDK 8 standard
/// doclet) and collects every method found in the per-class "Method Detail"
/// sections. Parsing is best effort: pages that do not look like class pages
/// are ignored, a malformed class page is skipped with a note appended to
/// warnings. Raises NoClassPagesFound when not a single class page was
/// recognized under doc_dir.
ApiLibrary parse_javadoc_html(const std::filesystem::path& doc_dir,
                              std::string library_name,
                              std::string library_version,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace migmap::corpus
