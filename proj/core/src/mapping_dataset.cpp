// SPDX-License-Identifier: Apache-2.0
#include "migmap/mapping_dataset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

#include "migmap/csv.hpp"
#include "migmap/errors.hpp"

namespace migmap::corpus {
namespace {

constexpr const char* kHeader[] = {"rule_id", "source_method_id", "target_method_id", "label"};

struct Resolved {
  const ApiLibrary* library = nullptr;
  const ApiMethod* method = nullptr;
};

Resolved resolve(std::span<const ApiLibrary> libraries, const std::string& id, std::size_t row) {
  Resolved found;
  for (const ApiLibrary& lib : libraries) {
    if (const ApiMethod* m = lib.find(id); m != nullptr) {
      if (found.method != nullptr) {
        throw UnresolvableMethodId("method id is ambiguous across libraries: " + id, row);
      }
      found = {&lib, m};
    }
  }
  if (found.method == nullptr) {
    throw UnresolvableMethodId("method id not found in any library: " + id, row);
  }
  return found;
}

}  // namespace

std::size_t MappingDataset::record_count() const {
  std::size_t n = 0;
  for (const auto& r : rules) n += r.mappings.size();
  return n;
}

const RuleGroup* MappingDataset::find_rule(std::string_view rule_id) const {
  for (const auto& r : rules) {
    if (r.rule.rule_id == rule_id) return &r;
  }
  return nullptr;
}

MappingDataset load_mapping_dataset(const std::filesystem::path& file,
                                    std::span<const ApiLibrary> libraries) {
  auto rows = csv::read_file(file);
  if (rows.empty()) throw MalformedRow("missing header", 1);
  if (rows[0].size() != 4 || rows[0][0] != kHeader[0] || rows[0][1] != kHeader[1] ||
      rows[0][2] != kHeader[2] || rows[0][3] != kHeader[3]) {
    throw MalformedRow("header must be rule_id,source_method_id,target_method_id,label", 1);
  }

  std::map<std::string, RuleGroup> groups;
  std::set<std::array<std::string, 3>> seen;

  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& fields = rows[i];
    std::size_t row_no = i + 1;
    if (fields.size() != 4) throw MalformedRow("expected 4 fields", row_no);

    MappingRecord record;
    record.rule_id = fields[0];
    record.source_method_id = fields[1];
    record.target_method_id = fields[2];
    if (fields[3] == "valid") {
      record.label = MappingLabel::valid;
    } else if (fields[3] == "invalid") {
      record.label = MappingLabel::invalid;
    } else {
      throw MalformedRow("label must be valid or invalid, got \"" + fields[3] + "\"", row_no);
    }

    if (!seen.insert({record.rule_id, record.source_method_id, record.target_method_id}).second) {
      throw DuplicateRecord("duplicate (rule, source, target) triple", row_no);
    }

    MigrationRule rule;
    try {
      rule = MigrationRule::from_rule_id(record.rule_id);
    } catch (const std::invalid_argument& e) {
      throw MalformedRow(e.what(), row_no);
    }

    Resolved src = resolve(libraries, record.source_method_id, row_no);
    Resolved dst = resolve(libraries, record.target_method_id, row_no);

    auto [it, inserted] = groups.try_emplace(record.rule_id);
    RuleGroup& group = it->second;
    if (inserted) {
      group.rule = rule;
      group.source_library = src.library;
      group.target_library = dst.library;
    } else {
      if (group.source_library != src.library) {
        throw MalformedRow("source method belongs to a different library than the rule", row_no);
      }
      if (group.target_library != dst.library) {
        throw MalformedRow("target method belongs to a different library than the rule", row_no);
      }
    }
    group.mappings.push_back({record, src.method, dst.method});
  }

  MappingDataset dataset;
  for (auto& [id, group] : groups) dataset.rules.push_back(std::move(group));
  return dataset;
}

void save_mapping_records(const std::vector<MappingRecord>& records,
                          const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoFailure("cannot write " + file.string());
  out << csv::format_row({kHeader[0], kHeader[1], kHeader[2], kHeader[3]}) << '\n';
  for (const auto& r : records) {
    out << csv::format_row({r.rule_id, r.source_method_id, r.target_method_id,
                            std::string(to_string(r.label))})
        << '\n';
  }
  if (!out) throw IoFailure("short write to " + file.string());
}

}  // namespace migmap::corpus
