// SPDX-License-Identifier: Apache-2.0
#include "migmap/api_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace migmap::corpus {

std::string ApiMethod::input_parameters_signature() const {
  std::string out;
  for (const auto& p : parameters) {
    if (!out.empty()) out += ", ";
    out += p.type;
    if (!p.name.empty()) {
      out += ' ';
      out += p.name;
    }
  }
  return out;
}

std::string ApiMethod::input_parameters_description() const {
  std::string out;
  for (const auto& p : parameters) {
    if (p.description.empty()) continue;
    if (!out.empty()) out += " — ";
    out += p.name;
    out += " - ";
    out += p.description;
  }
  return out;
}

std::string ApiMethod::qualified_id() const {
  std::string id = package_name;
  if (!id.empty()) id += '.';
  id += class_name;
  id += '#';
  id += method_name;
  id += '(';
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i > 0) id += ',';
    id += parameters[i].type;
  }
  id += ')';
  return id;
}

ApiLibrary::ApiLibrary(std::string name, std::string version, std::vector<ApiMethod> methods)
    : name_(std::move(name)), version_(std::move(version)), methods_(std::move(methods)) {
  std::sort(methods_.begin(), methods_.end(), [](const ApiMethod& a, const ApiMethod& b) {
    return a.qualified_id() < b.qualified_id();
  });
  for (std::size_t i = 1; i < methods_.size(); ++i) {
    if (methods_[i - 1].qualified_id() == methods_[i].qualified_id()) {
      throw std::invalid_argument("duplicate method id: " + methods_[i].qualified_id());
    }
  }
}

const ApiMethod* ApiLibrary::find(std::string_view qualified_id) const {
  auto it = std::lower_bound(
      methods_.begin(), methods_.end(), qualified_id,
      [](const ApiMethod& m, std::string_view id) { return m.qualified_id() < id; });
  if (it != methods_.end() && it->qualified_id() == qualified_id) return &*it;
  return nullptr;
}

MigrationRule MigrationRule::from_rule_id(std::string_view rule_id) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
  };

  std::size_t pos = rule_id.find("→");  // →
  std::size_t arrow_len = 3;
  if (pos == std::string_view::npos) {
    pos = rule_id.find("->");
    arrow_len = 2;
  }
  if (pos == std::string_view::npos) {
    throw std::invalid_argument("rule id has no arrow separator: " + std::string(rule_id));
  }
  MigrationRule rule;
  rule.rule_id = std::string(rule_id);
  rule.source = trim(rule_id.substr(0, pos));
  rule.target = trim(rule_id.substr(pos + arrow_len));
  if (rule.source.empty() || rule.target.empty()) {
    throw std::invalid_argument("rule id has an empty side: " + std::string(rule_id));
  }
  if (rule.source == rule.target) {
    throw std::invalid_argument("rule source equals target: " + std::string(rule_id));
  }
  return rule;
}

std::string_view to_string(MappingLabel label) {
  return label == MappingLabel::valid ? "valid" : "invalid";
}

}  // namespace migmap::corpus
