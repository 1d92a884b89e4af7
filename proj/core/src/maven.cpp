// SPDX-License-Identifier: Apache-2.0
#include "migmap/maven.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "migmap/errors.hpp"

namespace migmap::corpus {
namespace {

bool has_whitespace(std::string_view s) {
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

void validate_part(std::string_view value, const char* what) {
  if (value.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
  if (has_whitespace(value)) {
    throw std::invalid_argument(std::string(what) + " must not contain whitespace");
  }
}

std::string jar_name(const MavenCoordinates& coords) {
  return coords.artifact_id + "-" + coords.version + "-javadoc.jar";
}

/// Splits "https://host[:port]/path" into origin and path.
std::pair<std::string, std::string> split_url(std::string_view url) {
  std::size_t scheme = url.find("://");
  if (scheme == std::string_view::npos) throw NetworkFailure("unsupported url: " + std::string(url));
  std::size_t path_start = url.find('/', scheme + 3);
  if (path_start == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, path_start)), std::string(url.substr(path_start))};
}

}  // namespace

MavenCoordinates::MavenCoordinates(std::string group, std::string artifact, std::string version)
    : group_id(std::move(group)), artifact_id(std::move(artifact)), version(std::move(version)) {
  validate_part(group_id, "group id");
  validate_part(artifact_id, "artifact id");
  validate_part(this->version, "version");
  if (group_id.front() == '.' || group_id.back() == '.' ||
      group_id.find("..") != std::string::npos) {
    throw std::invalid_argument("group id has an empty dot-separated segment: " + group_id);
  }
}

std::string default_maven_base_url() {
  if (const char* env = std::getenv("MIGMAP_MAVEN_BASE_URL"); env != nullptr && *env != '\0') {
    return env;
  }
  return "https://repo1.maven.org/maven2";
}

std::string maven_javadoc_url(const MavenCoordinates& coords, std::string_view base_url) {
  std::string url(base_url);
  while (!url.empty() && url.back() == '/') url.pop_back();
  url += '/';
  for (char c : coords.group_id) url += (c == '.') ? '/' : c;
  url += '/' + coords.artifact_id + '/' + coords.version + '/' + jar_name(coords);
  return url;
}

std::string maven_javadoc_url(const MavenCoordinates& coords) {
  return maven_javadoc_url(coords, default_maven_base_url());
}

std::filesystem::path fetch_javadoc_archive(const MavenCoordinates& coords,
                                            const std::filesystem::path& dest_dir,
                                            std::string_view base_url) {
  const std::string url = maven_javadoc_url(coords, base_url);
  auto [origin, path] = split_url(url);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(30);
  client.set_read_timeout(120);

  auto res = client.Get(path);
  if (!res) throw NetworkFailure("request failed for " + url + ": " + httplib::to_string(res.error()));
  if (res->status == 404) throw RemoteNotFound("no javadoc artifact at " + url);
  if (res->status != 200) {
    throw NetworkFailure("unexpected status " + std::to_string(res->status) + " for " + url);
  }

  std::error_code ec;
  std::filesystem::create_directories(dest_dir, ec);
  if (ec) throw IoFailure("cannot create directory " + dest_dir.string() + ": " + ec.message());

  std::filesystem::path out = dest_dir / jar_name(coords);
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open " + out.string() + " for writing");
  file.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
  if (!file) throw IoFailure("short write to " + out.string());
  return out;
}

std::filesystem::path fetch_javadoc_archive(const MavenCoordinates& coords,
                                            const std::filesystem::path& dest_dir) {
  return fetch_javadoc_archive(coords, dest_dir, default_maven_base_url());
}

}  // namespace migmap::corpus
