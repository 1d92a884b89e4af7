// SPDX-License-Identifier: Apache-2.0
#include "migmap/archive.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <zlib.h>

#include "migmap/errors.hpp"

namespace migmap::corpus {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;

std::uint16_t read_u16(const std::vector<char>& buf, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(buf[off]) |
                                    (static_cast<unsigned char>(buf[off + 1]) << 8));
}

std::uint32_t read_u32(const std::vector<char>& buf, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(buf[off])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[off + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[off + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(buf[off + 3])) << 24);
}

struct Entry {
  std::string name;
  std::uint16_t method = 0;
  std::uint32_t compressed_size = 0;
  std::uint32_t uncompressed_size = 0;
  std::uint32_t local_offset = 0;
};

void check_entry_path(const std::string& name) {
  if (name.empty()) throw UnsafeEntryPath("empty entry name");
  std::string normalized = name;
  for (char& c : normalized) {
    if (c == '\\') c = '/';
  }
  if (normalized.front() == '/') throw UnsafeEntryPath("absolute entry path: " + name);
  if (normalized.size() >= 2 && normalized[1] == ':') {
    throw UnsafeEntryPath("drive-qualified entry path: " + name);
  }
  std::size_t start = 0;
  while (start <= normalized.size()) {
    std::size_t end = normalized.find('/', start);
    if (end == std::string::npos) end = normalized.size();
    if (normalized.substr(start, end - start) == "..") {
      throw UnsafeEntryPath("parent traversal in entry path: " + name);
    }
    if (end == normalized.size()) break;
    start = end + 1;
  }
}

std::string inflate_raw(const char* data, std::size_t size, std::size_t expected) {
  std::string out(expected, '\0');
  z_stream strm{};
  if (inflateInit2(&strm, -MAX_WBITS) != Z_OK) throw CorruptArchive("inflate init failed");
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
  strm.avail_in = static_cast<uInt>(size);
  strm.next_out = reinterpret_cast<Bytef*>(out.data());
  strm.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&strm, Z_FINISH);
  bool ok = (rc == Z_STREAM_END) && strm.total_out == expected;
  inflateEnd(&strm);
  if (!ok) throw CorruptArchive("deflate stream is damaged");
  return out;
}

}  // namespace

void extract_archive(const std::filesystem::path& archive, const std::filesystem::path& out_dir) {
  std::ifstream in(archive, std::ios::binary);
  if (!in) throw IoFailure("cannot open archive: " + archive.string());
  std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  if (buf.size() < 22) throw CorruptArchive("archive too small: " + archive.string());

  // End-of-central-directory record: scan backwards through the trailing
  // comment space for its signature.
  std::size_t eocd = std::string::npos;
  std::size_t scan_limit = buf.size() >= 22 + 65535 ? buf.size() - 22 - 65535 : 0;
  for (std::size_t pos = buf.size() - 22; ; --pos) {
    if (read_u32(buf, pos) == kEndOfCentralDirSig) {
      eocd = pos;
      break;
    }
    if (pos == scan_limit) break;
  }
  if (eocd == std::string::npos) throw CorruptArchive("no end-of-central-directory record");

  std::uint16_t entry_count = read_u16(buf, eocd + 10);
  std::uint32_t cd_size = read_u32(buf, eocd + 12);
  std::uint32_t cd_offset = read_u32(buf, eocd + 16);
  if (entry_count == 0xffff || cd_offset == 0xffffffff) {
    throw CorruptArchive("zip64 archives are not supported");
  }
  if (static_cast<std::size_t>(cd_offset) + cd_size > buf.size()) {
    throw CorruptArchive("central directory out of bounds");
  }

  std::vector<Entry> entries;
  std::size_t pos = cd_offset;
  for (std::uint16_t i = 0; i < entry_count; ++i) {
    if (pos + 46 > buf.size() || read_u32(buf, pos) != kCentralDirSig) {
      throw CorruptArchive("damaged central directory entry");
    }
    Entry e;
    e.method = read_u16(buf, pos + 10);
    e.compressed_size = read_u32(buf, pos + 20);
    e.uncompressed_size = read_u32(buf, pos + 24);
    std::uint16_t name_len = read_u16(buf, pos + 28);
    std::uint16_t extra_len = read_u16(buf, pos + 30);
    std::uint16_t comment_len = read_u16(buf, pos + 32);
    e.local_offset = read_u32(buf, pos + 42);
    if (pos + 46 + name_len > buf.size()) throw CorruptArchive("entry name out of bounds");
    e.name.assign(buf.data() + pos + 46, name_len);
    pos += 46u + name_len + extra_len + comment_len;
    entries.push_back(std::move(e));
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoFailure("cannot create directory " + out_dir.string() + ": " + ec.message());

  for (const Entry& e : entries) {
    check_entry_path(e.name);

    std::size_t lh = e.local_offset;
    if (lh + 30 > buf.size() || read_u32(buf, lh) != kLocalHeaderSig) {
      throw CorruptArchive("damaged local header for " + e.name);
    }
    std::uint16_t name_len = read_u16(buf, lh + 26);
    std::uint16_t extra_len = read_u16(buf, lh + 28);
    std::size_t data = lh + 30u + name_len + extra_len;
    if (data + e.compressed_size > buf.size()) {
      throw CorruptArchive("entry data out of bounds for " + e.name);
    }

    bool is_dir = !e.name.empty() && e.name.back() == '/';
    std::filesystem::path dest = out_dir / std::filesystem::path(e.name);
    if (is_dir) {
      std::filesystem::create_directories(dest, ec);
      if (ec) throw IoFailure("cannot create directory " + dest.string());
      continue;
    }

    std::string content;
    if (e.method == 0) {
      if (e.compressed_size != e.uncompressed_size) {
        throw CorruptArchive("stored entry with mismatched sizes: " + e.name);
      }
      content.assign(buf.data() + data, e.compressed_size);
    } else if (e.method == 8) {
      content = inflate_raw(buf.data() + data, e.compressed_size, e.uncompressed_size);
    } else {
      throw CorruptArchive("unsupported compression method for " + e.name);
    }

    std::filesystem::create_directories(dest.parent_path(), ec);
    std::ofstream out(dest, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot write " + dest.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoFailure("short write to " + dest.string());
  }
}

}  // namespace migmap::corpus
