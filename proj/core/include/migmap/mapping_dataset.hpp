// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "migmap/api_model.hpp"

namespace migmap::corpus {

/// One labeled pair with its method records resolved against the loaded
/// libraries. Pointers refer into the libraries passed to
/// load_mapping_dataset and stay valid only while those outlive the dataset.
struct ResolvedMapping {
  MappingRecord record;
  const ApiMethod* source = nullptr;
  const ApiMethod* target = nullptr;
};

struct RuleGroup {
  MigrationRule rule;
  const ApiLibrary* source_library = nullptr;
  const ApiLibrary* target_library = nullptr;
  std::vector<ResolvedMapping> mappings;
};

struct MappingDataset {
  std::vector<RuleGroup> rules;  // sorted by rule id

  std::size_t record_count() const;
  const RuleGroup* find_rule(std::string_view rule_id) const;
};

/// Loads "rule_id,source_method_id,target_method_id,label" CSV (header
/// required, label in {valid,invalid}) and resolves every method id against
/// the given libraries. MalformedRow / DuplicateRecord / UnresolvableMethodId
/// carry the 1-based CSV row number.
MappingDataset load_mapping_dataset(const std::filesystem::path& file,
                                    std::span<const ApiLibrary> libraries);

void save_mapping_records(const std::vector<MappingRecord>& records,
                          const std::filesystem::path& file);

}  // namespace migmap::corpus
