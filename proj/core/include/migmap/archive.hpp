// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>

namespace migmap::corpus {

/// Unpacks a zip archive (javadoc jars are plain zip) into out_dir, creating
/// it if needed. Entries whose paths are absolute or contain ".." components
/// raise UnsafeEntryPath before anything is written for them; a structurally
/// broken archive raises CorruptArchive.
void extract_archive(const std::filesystem::path& archive,
                     const std::filesystem::path& out_dir);

}  // namespace migmap::corpus
