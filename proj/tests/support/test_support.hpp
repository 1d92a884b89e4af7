// SPDX-License-Identifier: Apache-2.0
#pragma once

// Shared helpers for the test binaries: filesystem scratch space, an
// independent zip writer, and deterministic synthetic corpora. Everything
// here is seeded so reruns are bit-identical.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <unistd.h>
#include <zlib.h>

#include "migmap/api_model.hpp"
#include "migmap/errors.hpp"
#include "migmap/features.hpp"
#include "migmap/mapping_dataset.hpp"
#include "migmap/rng.hpp"

namespace testsup {

inline std::filesystem::path fixture_dir() {
  return std::filesystem::path(MIGMAP_TEST_FIXTURE_DIR);
}

// Unique scratch directory removed on destruction. The name mixes the pid and
// a process-local counter so parallel ctest jobs cannot collide.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("migmap_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("test support: cannot write " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("test support: cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Zip writer. Deliberately independent of the extraction code under test: it
// assembles local headers, the central directory, and the end record by hand
// and uses zlib only for raw deflate and crc32.

struct ZipEntry {
  std::string name;
  std::string content;
  bool deflate = false;
};

inline void put_u16(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& out, std::uint32_t v) {
  put_u16(out, v & 0xffff);
  put_u16(out, (v >> 16) & 0xffff);
}

inline std::string deflate_raw(std::string_view data) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8,
                   Z_DEFAULT_STRATEGY) != Z_OK) {
    throw std::runtime_error("test support: deflateInit2 failed");
  }
  std::string out(deflateBound(&strm, static_cast<uLong>(data.size())), '\0');
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  strm.avail_in = static_cast<uInt>(data.size());
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  int rc = deflate(&strm, Z_FINISH);
  out.resize(strm.total_out);
  deflateEnd(&strm);
  if (rc != Z_STREAM_END) throw std::runtime_error("test support: deflate failed");
  return out;
}

inline std::string zip_bytes(const std::vector<ZipEntry>& entries) {
  struct Central {
    std::string name;
    std::uint32_t method = 0;
    std::uint32_t crc = 0;
    std::uint32_t compressed = 0;
    std::uint32_t uncompressed = 0;
    std::uint32_t offset = 0;
  };
  std::string out;
  std::vector<Central> centrals;
  for (const ZipEntry& entry : entries) {
    Central c;
    c.name = entry.name;
    c.method = entry.deflate ? 8 : 0;
    c.crc = static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(entry.content.data()),
                static_cast<uInt>(entry.content.size())));
    std::string data = entry.deflate ? deflate_raw(entry.content) : entry.content;
    c.compressed = static_cast<std::uint32_t>(data.size());
    c.uncompressed = static_cast<std::uint32_t>(entry.content.size());
    c.offset = static_cast<std::uint32_t>(out.size());

    put_u32(out, 0x04034b50);  // local file header
    put_u16(out, 20);          // version needed
    put_u16(out, 0);           // flags
    put_u16(out, c.method);
    put_u16(out, 0);  // mod time
    put_u16(out, 0);  // mod date
    put_u32(out, c.crc);
    put_u32(out, c.compressed);
    put_u32(out, c.uncompressed);
    put_u16(out, static_cast<std::uint32_t>(c.name.size()));
    put_u16(out, 0);  // extra length
    out += c.name;
    out += data;
    centrals.push_back(std::move(c));
  }
  const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
  for (const Central& c : centrals) {
    put_u32(out, 0x02014b50);  // central directory header
    put_u16(out, 20);          // version made by
    put_u16(out, 20);          // version needed
    put_u16(out, 0);           // flags
    put_u16(out, c.method);
    put_u16(out, 0);  // mod time
    put_u16(out, 0);  // mod date
    put_u32(out, c.crc);
    put_u32(out, c.compressed);
    put_u32(out, c.uncompressed);
    put_u16(out, static_cast<std::uint32_t>(c.name.size()));
    put_u16(out, 0);  // extra length
    put_u16(out, 0);  // comment length
    put_u16(out, 0);  // disk number
    put_u16(out, 0);  // internal attributes
    put_u32(out, 0);  // external attributes
    put_u32(out, c.offset);
    out += c.name;
  }
  const std::uint32_t cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;
  put_u32(out, 0x06054b50);  // end of central directory
  put_u16(out, 0);
  put_u16(out, 0);
  put_u16(out, static_cast<std::uint32_t>(centrals.size()));
  put_u16(out, static_cast<std::uint32_t>(centrals.size()));
  put_u32(out, cd_size);
  put_u32(out, cd_offset);
  put_u16(out, 0);  // comment length
  return out;
}

inline void write_zip(const std::filesystem::path& path, const std::vector<ZipEntry>& entries) {
  write_file(path, zip_bytes(entries));
}

// ---------------------------------------------------------------------------
// Method and corpus builders.

inline migmap::corpus::ApiMethod make_method(
    std::string package_name, std::string class_name, std::string method_name,
    std::string return_type, std::vector<migmap::corpus::ApiParameter> parameters = {},
    std::string description = {}, std::string return_description = {},
    std::string class_description = {}) {
  migmap::corpus::ApiMethod m;
  m.package_name = std::move(package_name);
  m.class_name = std::move(class_name);
  m.method_name = std::move(method_name);
  m.return_type = std::move(return_type);
  m.parameters = std::move(parameters);
  m.description = std::move(description);
  m.return_description = std::move(return_description);
  m.class_description = std::move(class_description);
  return m;
}

// A fully documented method; every textual feature of the self pair is
// nonempty, so the extracted self-similarities must be maximal.
inline migmap::corpus::ApiMethod make_documented_method() {
  return make_method(
      "org.easymock", "IMockBuilder", "createMock", "T",
      {{"name", "String", "the mock name"}, {"type", "MockType", "the mock type"}},
      "Create a named mock of the request type from this builder.",
      "the newly created mock", "Helps the creation of partial mocks.");
}

// The toJSONString -> toString migration example: one source method and four
// candidate targets of which toString is the unambiguous best answer for
// every scoring approach.
struct MigrationExample {
  migmap::corpus::ApiMethod source;
  migmap::corpus::ApiLibrary source_library;
  migmap::corpus::ApiLibrary target_library;
  std::string best_target_id;  // the toString candidate
};

inline MigrationExample make_migration_example() {
  using migmap::corpus::ApiLibrary;
  MigrationExample ex;
  ex.source = make_method(
      "org.json", "JSONObject", "toJSONString", "String", {},
      "Make a JSON text of this JSONObject.",
      "a printable, displayable, portable, transmittable representation of the object",
      "A JSONObject is an unordered collection of name/value pairs.");
  auto to_string = make_method(
      "com.google.gson", "JsonObject", "toString", "String", {},
      "Returns a String representation of this element.",
      "String representation of this element.",
      "A class representing an object type in Json.");
  auto parse = make_method(
      "com.google.gson", "JsonParser", "parse", "JsonElement",
      {{"json", "String", "JSON text to parse"}},
      "Parses the specified JSON string into a parse tree.",
      "a parse tree of JsonElements corresponding to the specified JSON",
      "A parser to parse Json into a parse tree of JsonElements.");
  auto get = make_method(
      "com.google.gson", "JsonObject", "get", "JsonElement",
      {{"memberName", "String", "name of the member that is being requested"}},
      "Returns the member with the specified name.",
      "the member matching the name, null if no such member exists",
      "A class representing an object type in Json.");
  auto add_property = make_method(
      "com.google.gson", "JsonObject", "addProperty", "void",
      {{"property", "String", "name of the member"},
       {"value", "String", "the string value associated with the member"}},
      "Convenience method to add a string member.",
      "", "A class representing an object type in Json.");
  ex.best_target_id = to_string.qualified_id();
  ex.source_library = ApiLibrary("json", "20090211", {ex.source});
  ex.target_library =
      ApiLibrary("gson", "2.8.0", {to_string, parse, get, add_property});
  return ex;
}

// ---------------------------------------------------------------------------
// Synthetic feature datasets.

// 500-pair style dataset: phi1 carries the concept (clusters below 0.45 and
// above 0.55, so the label is exactly "phi1 > 0.5" before noise), phi6 is an
// independent uniform noise column, phi9 is constant (as when every method of
// a library shares one package), and the remaining columns are unrelated
// noise. `noisy_labels` flips each label with the given probability;
// `concept_labels` keeps the pre-noise truth in the same row order.
struct ThresholdDataset {
  std::vector<migmap::features::FeatureVector> vectors;  // labels include flips
  std::vector<bool> concept_labels;                      // pre-noise labels
};

inline ThresholdDataset make_threshold_dataset(std::size_t n, std::uint64_t seed,
                                               double flip_probability) {
  using migmap::features::FeatureVector;
  migmap::rng::SplitMix64 gen(seed);
  ThresholdDataset data;
  data.vectors.reserve(n);
  data.concept_labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool truth = (gen.next() & 1) != 0;
    FeatureVector v;
    v.rule_id = "alpha→beta";
    v.source_id = "s#" + std::to_string(i);
    v.target_id = "t#" + std::to_string(i);
    v.phi[0] = truth ? 0.55 + 0.45 * gen.next_double() : 0.45 * gen.next_double();
    for (std::size_t f = 1; f < migmap::features::kFeatureCount; ++f) {
      v.phi[f] = gen.next_double();
    }
    v.phi[4] = (gen.next() & 1) != 0 ? 1.0 : 0.0;  // phi5 is binary by contract
    v.phi[8] = 0.5;                                // constant phi9 analogue
    bool label = truth;
    if (gen.next_double() < flip_probability) label = !label;
    v.label = label;
    data.concept_labels.push_back(truth);
    data.vectors.push_back(std::move(v));
  }
  return data;
}

// Tiny vocabulary used to synthesize method documentation.
inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> words = {
      "stream", "buffer", "client", "request", "response", "token",  "parser",
      "widget", "record",  "column", "cursor",  "session", "packet", "vector",
      "handle", "config",  "module", "filter",  "result",  "object"};
  return words;
}

inline std::string pick_word(migmap::rng::SplitMix64& gen) {
  return word_pool()[gen.next_index(word_pool().size())];
}

inline std::string make_sentence(migmap::rng::SplitMix64& gen, std::size_t words) {
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (!text.empty()) text += ' ';
    text += pick_word(gen);
  }
  return text + ".";
}

inline std::string camel_join(std::string_view first, std::string_view second) {
  std::string name(first);
  name += static_cast<char>(second[0] - 'a' + 'A');
  name += second.substr(1);
  return name;
}

inline migmap::corpus::ApiMethod make_random_method(migmap::rng::SplitMix64& gen,
                                                    std::string package_name) {
  static const std::vector<std::string> return_types = {"String", "int",    "void",
                                                        "boolean", "Object", "List<String>"};
  std::string class_word = pick_word(gen);
  migmap::corpus::ApiMethod m = make_method(
      std::move(package_name), camel_join(class_word, pick_word(gen)),
      camel_join(pick_word(gen), pick_word(gen)),
      return_types[gen.next_index(return_types.size())]);
  const std::size_t param_count = gen.next_index(3);
  for (std::size_t i = 0; i < param_count; ++i) {
    m.parameters.push_back({pick_word(gen), return_types[gen.next_index(return_types.size())],
                            make_sentence(gen, 3)});
  }
  m.description = make_sentence(gen, 6);
  m.return_description = m.return_type == "void" ? "" : make_sentence(gen, 4);
  m.class_description = make_sentence(gen, 5);
  return m;
}

// A target-side near copy of the source: same return type and parameter shape,
// same name tokens in a fresh class, and a lightly reworded description.
inline migmap::corpus::ApiMethod make_counterpart(const migmap::corpus::ApiMethod& source,
                                                  migmap::rng::SplitMix64& gen,
                                                  std::string package_name) {
  migmap::corpus::ApiMethod m = source;
  m.package_name = std::move(package_name);
  m.class_name = camel_join(pick_word(gen), "port");
  m.description = source.description.substr(0, source.description.size() - 1) + " " +
                  pick_word(gen) + ".";
  return m;
}

// Labeled feature vectors where valid pairs are near copies and invalid pairs
// are unrelated random methods; real extraction keeps the feature semantics.
inline std::vector<migmap::features::FeatureVector> make_similarity_corpus(
    std::uint64_t seed, std::size_t pairs_per_class = 120) {
  migmap::rng::SplitMix64 gen(seed);
  const auto& extractor = migmap::features::FeatureExtractor::default_instance();
  std::vector<migmap::features::FeatureVector> vectors;
  vectors.reserve(pairs_per_class * 2);
  for (std::size_t i = 0; i < pairs_per_class; ++i) {
    auto source = make_random_method(gen, "old.lib");
    auto valid = make_counterpart(source, gen, "new.lib");
    vectors.push_back(extractor.extract(source, valid, true, "old→new"));
    auto other = make_random_method(gen, "new.lib");
    vectors.push_back(extractor.extract(source, other, false, "old→new"));
  }
  return vectors;
}

}  // namespace testsup
