// SPDX-License-Identifier: Apache-2.0
#include "migmap/api_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "migmap/errors.hpp"

namespace migmap::corpus {
namespace {

using nlohmann::ordered_json;

std::string get_string(const ordered_json& node, const char* key, const std::string& path) {
  auto it = node.find(key);
  if (it == node.end() || !it->is_string()) throw SchemaViolation(path + "." + key);
  return it->get<std::string>();
}

}  // namespace

std::string api_to_json(const ApiLibrary& library) {
  ordered_json root;
  root["name"] = library.name();
  root["version"] = library.version();
  root["methods"] = ordered_json::array();
  for (const ApiMethod& m : library.methods()) {
    ordered_json jm;
    jm["package"] = m.package_name;
    jm["class"] = m.class_name;
    jm["class_description"] = m.class_description;
    jm["name"] = m.method_name;
    jm["return_type"] = m.return_type;
    jm["return_description"] = m.return_description;
    jm["params"] = ordered_json::array();
    for (const ApiParameter& p : m.parameters) {
      jm["params"].push_back({{"name", p.name}, {"type", p.type}, {"description", p.description}});
    }
    jm["description"] = m.description;
    root["methods"].push_back(std::move(jm));
  }
  return root.dump(2) + "\n";
}

void save_api_json(const ApiLibrary& library, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + file.string());
  out << api_to_json(library);
  if (!out) throw IoFailure("short write to " + file.string());
}

ApiLibrary api_from_json(const std::string& text) {
  ordered_json root = ordered_json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object()) throw SchemaViolation("$");

  if (!root.contains("name") || !root["name"].is_string()) throw SchemaViolation("name");
  if (!root.contains("version") || !root["version"].is_string()) throw SchemaViolation("version");
  if (!root.contains("methods") || !root["methods"].is_array()) throw SchemaViolation("methods");

  std::vector<ApiMethod> methods;
  std::size_t index = 0;
  for (const auto& jm : root["methods"]) {
    std::string path = "methods[" + std::to_string(index) + "]";
    if (!jm.is_object()) throw SchemaViolation(path);
    ApiMethod m;
    m.package_name = get_string(jm, "package", path);
    m.class_name = get_string(jm, "class", path);
    m.class_description = get_string(jm, "class_description", path);
    m.method_name = get_string(jm, "name", path);
    m.return_type = get_string(jm, "return_type", path);
    m.return_description = get_string(jm, "return_description", path);
    m.description = get_string(jm, "description", path);
    auto params = jm.find("params");
    if (params == jm.end() || !params->is_array()) throw SchemaViolation(path + ".params");
    std::size_t pi = 0;
    for (const auto& jp : *params) {
      std::string ppath = path + ".params[" + std::to_string(pi) + "]";
      if (!jp.is_object()) throw SchemaViolation(ppath);
      ApiParameter p;
      p.name = get_string(jp, "name", ppath);
      p.type = get_string(jp, "type", ppath);
      p.description = get_string(jp, "description", ppath);
      m.parameters.push_back(std::move(p));
      ++pi;
    }
    methods.push_back(std::move(m));
    ++index;
  }

  try {
    return ApiLibrary(root["name"].get<std::string>(), root["version"].get<std::string>(),
                      std::move(methods));
  } catch (const std::invalid_argument& e) {
    throw SchemaViolation(std::string("methods: ") + e.what());
  }
}

ApiLibrary load_api_json(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return api_from_json(buf.str());
}

}  // namespace migmap::corpus
