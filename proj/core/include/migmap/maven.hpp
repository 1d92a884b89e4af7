// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace migmap::corpus {

struct MavenCoordinates {
  std::string group_id;
  std::string artifact_id;
  std::string version;

  /// Throws std::invalid_argument when a part is empty, contains whitespace,
  /// or the group id has empty dot-separated segments.
  MavenCoordinates(std::string group, std::string artifact, std::string version);
};

/// Mirror base URL: the MIGMAP_MAVEN_BASE_URL environment variable when set,
/// otherwise Maven Central.
std::string default_maven_base_url();

/// {base}/{group with dots as slashes}/{artifact}/{version}/{artifact}-{version}-javadoc.jar
std::string maven_javadoc_url(const MavenCoordinates& coords, std::string_view base_url);
std::string maven_javadoc_url(const MavenCoordinates& coords);

/// Downloads the javadoc jar into dest_dir and returns the saved path.
/// RemoteNotFound on HTTP 404, NetworkFailure on transport errors, IoFailure
/// when the file cannot be written.
std::filesystem::path fetch_javadoc_archive(const MavenCoordinates& coords,
                                            const std::filesystem::path& dest_dir,
                                            std::string_view base_url);
std::filesystem::path fetch_javadoc_archive(const MavenCoordinates& coords,
                                            const std::filesystem::path& dest_dir);

}  // namespace migmap::corpus
