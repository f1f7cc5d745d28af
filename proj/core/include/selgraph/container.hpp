// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

// Binary container shared by pyramid and weight files:
//
//   offset 0   8-byte magic (e.g. "SGPYRAMD", "SGWEIGHT")
//   offset 8   u64 little-endian byte length L of the manifest
//   offset 16  L bytes of UTF-8 JSON manifest, zero-padded to a multiple of 8
//   then       blob region; every array starts at an 8-byte aligned offset
//              relative to the start of the region, gaps are zero bytes
//
// All multi-byte values are little-endian.

#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace selgraph {

struct Container {
  nlohmann::json manifest;
  std::vector<std::uint8_t> blob;
};

/// Appends arrays to a blob region with 8-byte alignment.
class BlobWriter {
 public:
  /// Returns the offset of the appended bytes.
  std::uint64_t append(std::span<const std::uint8_t> bytes);

  template <typename T>
  std::uint64_t append_array(std::span<const T> values) {
    return append({reinterpret_cast<const std::uint8_t*>(values.data()), values.size_bytes()});
  }

  const std::vector<std::uint8_t>& bytes() const { return bytes_; }
  std::vector<std::uint8_t> release() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

std::vector<std::uint8_t> encode_container(std::string_view magic, const Container& container);

/// Throws kFormatError on a wrong magic, truncation or malformed manifest.
Container decode_container(std::string_view magic, std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// CRC-32 (IEEE, as used by zlib and PNG).
std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Copies `length` bytes at `offset` of the blob into a typed array, checking
/// bounds and element-size divisibility.
[[noreturn]] void throw_blob_range(std::uint64_t offset, std::uint64_t length, std::size_t size);

template <typename T>
std::vector<T> read_blob_array(const Container& c, std::uint64_t offset, std::uint64_t length) {
  if (offset > c.blob.size() || length > c.blob.size() - offset || length % sizeof(T) != 0) {
    throw_blob_range(offset, length, sizeof(T));
  }
  std::vector<T> out(length / sizeof(T));
  if (length > 0) std::memcpy(out.data(), c.blob.data() + offset, length);
  return out;
}

}  // namespace selgraph
