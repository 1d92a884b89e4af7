// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace migmap::textops {

/// Splits an identifier on case and digit boundaries: lower->upper ("toJSON"),
/// the last upper of an upper run followed by lower ("JSONString" -> JSON,String),
/// and every letter<->digit transition. Case is preserved; concatenating the
/// pieces reproduces the input.
std::vector<std::string> camel_case_split(std::string_view token);

/// Identifier normalization: every non-alphanumeric byte becomes a space, each
/// remaining token is camel-case split, and the pieces are joined with single
/// spaces. "com.IMockBuilder" -> "com I Mock Builder".
std::string information_extraction(std::string_view text);

/// Whitespace tokenizer that detaches leading/trailing punctuation characters
/// as their own tokens ("builder." -> "builder", "."). Punctuation inside a
/// word (apostrophes, dots in code fragments) is left alone.
std::vector<std::string> tokenize(std::string_view text);

/// True when the token consists solely of ASCII punctuation characters.
bool is_punctuation_token(std::string_view token);

/// Single-pass suffix cascade, first match wins: "'s"; "ing" (stem >= 3); "ed"
/// with restoration of a stem-final 'e' after a single consonant ("named" ->
/// "name", "called" -> "call"); plural "s" unless "ss" (stem >= 2). Expects a
/// lowercase token.
std::string lemmatize_token(std::string_view token);

/// Case-insensitive word list used for stop-word and reserved-word removal.
class StopwordSet {
 public:
  /// Built-in list: common English words plus the Java reserved words.
  static const StopwordSet& embedded();

  /// Loads one word per line from a UTF-8 text file; blank lines are ignored.
  static StopwordSet from_file(const std::filesystem::path& file);

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Full description pipeline: tokenize, drop punctuation tokens, drop stop and
/// reserved words, lemmatize, lowercase, join with single spaces. Stop words
/// are filtered again after lemmatization so the output never contains one.
std::string text_preprocess(std::string_view text, const StopwordSet& stopwords);
std::string text_preprocess(std::string_view text);

/// Minimal normalization used where stop-word removal and lemmatization are
/// deliberately skipped: tokenize, drop punctuation tokens, lowercase, join.
std::string lightweight_normalize(std::string_view text);

std::string to_lower_ascii(std::string_view text);

}  // namespace migmap::textops
