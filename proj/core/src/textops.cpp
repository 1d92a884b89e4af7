// SPDX-License-Identifier: Apache-2.0
#include "migmap/textops.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "migmap/errors.hpp"

namespace migmap::textops {
namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_letter(char c) { return is_lower(c) || is_upper(c); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_letter(c) || is_digit(c); }
bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

std::vector<std::string> split_on_spaces(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out.push_back(' ');
    out += p;
  }
  return out;
}

}  // namespace

std::vector<std::string> camel_case_split(std::string_view token) {
  std::vector<std::string> parts;
  if (token.empty()) return parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i < token.size(); ++i) {
    char prev = token[i - 1];
    char cur = token[i];
    bool boundary = false;
    if (is_lower(prev) && is_upper(cur)) {
      boundary = true;
    } else if (is_upper(prev) && is_upper(cur) && i + 1 < token.size() && is_lower(token[i + 1])) {
      // End of an upper-case run: the last upper belongs to the next word.
      boundary = true;
    } else if ((is_letter(prev) && is_digit(cur)) || (is_digit(prev) && is_letter(cur))) {
      boundary = true;
    }
    if (boundary) {
      parts.emplace_back(token.substr(start, i - start));
      start = i;
    }
  }
  parts.emplace_back(token.substr(start));
  return parts;
}

std::string information_extraction(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) cleaned.push_back(is_alnum(c) ? c : ' ');

  std::vector<std::string> words;
  for (const auto& token : split_on_spaces(cleaned)) {
    for (auto& piece : camel_case_split(token)) words.push_back(std::move(piece));
  }
  return join(words);
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  for (const auto& chunk : split_on_spaces(text)) {
    std::size_t begin = 0;
    std::size_t end = chunk.size();
    while (begin < end && is_ascii_punct(chunk[begin])) {
      tokens.emplace_back(1, chunk[begin]);
      ++begin;
    }
    std::vector<std::string> trailing;
    while (end > begin && is_ascii_punct(chunk[end - 1])) {
      trailing.emplace_back(1, chunk[end - 1]);
      --end;
    }
    if (end > begin) tokens.emplace_back(chunk.substr(begin, end - begin));
    tokens.insert(tokens.end(), trailing.rbegin(), trailing.rend());
  }
  return tokens;
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token) {
    if (!is_ascii_punct(c)) return false;
  }
  return true;
}

std::string lemmatize_token(std::string_view token) {
  std::string t(token);
  const std::size_t n = t.size();

  if (n >= 2 && t.ends_with("'s")) return t.substr(0, n - 2);

  if (n >= 6 && t.ends_with("ing")) return t.substr(0, n - 3);

  if (n >= 3 && t.ends_with("ed")) {
    if (t.ends_with("eed")) {
      if (n - 1 >= 3) return t.substr(0, n - 1);  // agreed -> agree
    } else {
      char before = t[n - 3];
      if (is_letter(before) && !is_vowel(before) && n >= 4 && is_vowel(t[n - 4])) {
        // Single consonant after a vowel: the base verb ended in 'e'.
        if (n - 1 >= 3) return t.substr(0, n - 1);  // named -> name
      } else if (n - 2 >= 3) {
        return t.substr(0, n - 2);  // called -> call
      }
    }
    return t;
  }

  if (n >= 3 && t.ends_with('s') && !t.ends_with("ss")) return t.substr(0, n - 1);

  return t;
}

const StopwordSet& StopwordSet::embedded() {
  static const StopwordSet instance = [] {
    extern const char* embedded_stopwords_text();
    StopwordSet set;
    std::istringstream in(embedded_stopwords_text());
    std::string word;
    while (std::getline(in, word)) {
      if (!word.empty() && word.back() == '\r') word.pop_back();
      if (!word.empty()) set.words_.insert(to_lower_ascii(word));
    }
    return set;
  }();
  return instance;
}

StopwordSet StopwordSet::from_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoFailure("cannot open stop-word list: " + file.string());
  StopwordSet set;
  std::string word;
  while (std::getline(in, word)) {
    if (!word.empty() && word.back() == '\r') word.pop_back();
    if (!word.empty()) set.words_.insert(to_lower_ascii(word));
  }
  return set;
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.contains(to_lower_ascii(word));
}

std::string text_preprocess(std::string_view text, const StopwordSet& stopwords) {
  std::vector<std::string> kept;
  for (auto& token : tokenize(text)) {
    if (is_punctuation_token(token)) continue;
    if (stopwords.contains(token)) continue;
    std::string lemma = lemmatize_token(to_lower_ascii(token));
    // A lemma can itself be a stop word ("cans" -> "can"); filter once more so
    // the output is guaranteed free of them.
    if (lemma.empty() || stopwords.contains(lemma)) continue;
    kept.push_back(std::move(lemma));
  }
  return join(kept);
}

std::string text_preprocess(std::string_view text) {
  return text_preprocess(text, StopwordSet::embedded());
}

std::string lightweight_normalize(std::string_view text) {
  std::vector<std::string> kept;
  for (auto& token : tokenize(text)) {
    if (is_punctuation_token(token)) continue;
    kept.push_back(to_lower_ascii(token));
  }
  return join(kept);
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace migmap::textops
