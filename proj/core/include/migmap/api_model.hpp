// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace migmap::corpus {

struct ApiParameter {
  std::string name;
  std::string type;
  std::string description;

  friend bool operator==(const ApiParameter&, const ApiParameter&) = default;
};

/// One public method of a library, with the documentation fragments the
/// similarity features consume. Absent documentation is the empty string.
struct ApiMethod {
  std::string package_name;
  std::string class_name;
  std::string class_description;
  std::string method_name;
  std::string return_type;
  std::string return_description;
  std::vector<ApiParameter> parameters;
  std::string description;

  /// "String name, MockType type" in declaration order.
  std::string input_parameters_signature() const;

  /// Parameter descriptions rendered "name - text" and joined with " — ".
  std::string input_parameters_description() const;

  std::size_t input_parameter_count() const { return parameters.size(); }

  /// "org.easymock.IMockBuilder#createMock(String,MockType)". Parameter types
  /// are part of the key so overloads stay distinct.
  std::string qualified_id() const;

  friend bool operator==(const ApiMethod&, const ApiMethod&) = default;
};

/// A parsed library: named, versioned, with methods kept sorted by qualified
/// id so that every downstream iteration order is deterministic.
class ApiLibrary {
 public:
  ApiLibrary() = default;

  /// Sorts the methods; throws std::invalid_argument on duplicate ids.
  ApiLibrary(std::string name, std::string version, std::vector<ApiMethod> methods);

  const std::string& name() const { return name_; }
  const std::string& version() const { return version_; }
  const std::vector<ApiMethod>& methods() const { return methods_; }

  /// Null when no method has that qualified id.
  const ApiMethod* find(std::string_view qualified_id) const;

  friend bool operator==(const ApiLibrary&, const ApiLibrary&) = default;

 private:
  std::string name_;
  std::string version_;
  std::vector<ApiMethod> methods_;
};

/// Identifies a migration, e.g. "easymock→mockito".
struct MigrationRule {
  std::string rule_id;
  std::string source;
  std::string target;

  /// Splits on "→" or "->"; throws std::invalid_argument when either side is
  /// empty or both sides are equal.
  static MigrationRule from_rule_id(std::string_view rule_id);

  friend bool operator==(const MigrationRule&, const MigrationRule&) = default;
};

enum class MappingLabel { valid, invalid };

std::string_view to_string(MappingLabel label);

struct MappingRecord {
  std::string rule_id;
  std::string source_method_id;
  std::string target_method_id;
  MappingLabel label = MappingLabel::invalid;

  friend bool operator==(const MappingRecord&, const MappingRecord&) = default;
};

}  // namespace migmap::corpus
