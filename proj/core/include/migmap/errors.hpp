// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace migmap {

/// Base class for every domain error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Remote corpus acquisition.
struct RemoteNotFound : Error { using Error::Error; };
struct NetworkFailure : Error { using Error::Error; };
struct IoFailure : Error { using Error::Error; };

// Archive handling.
struct CorruptArchive : Error { using Error::Error; };
struct UnsafeEntryPath : Error { using Error::Error; };

// Documentation parsing.
struct NoClassPagesFound : Error { using Error::Error; };

/// Structural problem in a JSON document; carries the path of the offending field.
class SchemaViolation : public Error {
 public:
  explicit SchemaViolation(std::string field_path)
      : Error("schema violation at " + field_path), field_path_(std::move(field_path)) {}
  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

/// Problem tied to one row of a CSV input; carries the 1-based row number.
class RowError : public Error {
 public:
  RowError(std::string what, std::size_t row)
      : Error(std::move(what) + " (row " + std::to_string(row) + ")"), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

struct MalformedRow : RowError { using RowError::RowError; };
struct DuplicateRecord : RowError { using RowError::RowError; };
struct UnresolvableMethodId : RowError { using RowError::RowError; };

// Statistics and learning.
struct InsufficientData : Error { using Error::Error; };
struct DegenerateLabels : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct VersionMismatch : Error { using Error::Error; };
struct EmptyGrid : Error { using Error::Error; };

// Evaluation.
struct EmptyMatrix : Error { using Error::Error; };
struct EmptyTargetLibrary : Error { using Error::Error; };
struct TooFewRules : Error { using Error::Error; };
struct EmptySample : Error { using Error::Error; };

}  // namespace migmap
