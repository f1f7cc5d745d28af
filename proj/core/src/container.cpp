// Copyright 2026 The selgraph Authors
// SPDX-License-Identifier: Apache-2.0

#include "selgraph/container.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "selgraph/error.hpp"

namespace selgraph {

static_assert(std::endian::native == std::endian::little,
              "container encoding assumes a little-endian host");

namespace {

constexpr std::size_t kAlign = 8;
constexpr std::size_t kMagicSize = 8;

std::size_t padded(std::size_t n) { return (n + kAlign - 1) / kAlign * kAlign; }

}  // namespace

std::uint64_t BlobWriter::append(std::span<const std::uint8_t> bytes) {
  bytes_.resize(padded(bytes_.size()), 0);
  const std::uint64_t offset = bytes_.size();
  bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
  return offset;
}

std::vector<std::uint8_t> encode_container(std::string_view magic, const Container& container) {
  if (magic.size() != kMagicSize) fail(ErrorCode::kInvalidArgument, "magic must be 8 bytes");
  const std::string manifest = container.manifest.dump();
  const std::uint64_t length = manifest.size();
  const std::size_t blob_start = padded(16 + manifest.size());
  std::vector<std::uint8_t> out(blob_start + container.blob.size(), 0);
  std::memcpy(out.data(), magic.data(), kMagicSize);
  for (int b = 0; b < 8; ++b) out[8 + b] = static_cast<std::uint8_t>(length >> (8 * b));
  std::memcpy(out.data() + 16, manifest.data(), manifest.size());
  if (!container.blob.empty()) {
    std::memcpy(out.data() + blob_start, container.blob.data(), container.blob.size());
  }
  return out;
}

Container decode_container(std::string_view magic, std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 16) fail(ErrorCode::kFormatError, "file too short for a container header");
  if (std::string_view(reinterpret_cast<const char*>(bytes.data()), kMagicSize) != magic) {
    fail(ErrorCode::kFormatError, "bad magic, expected '" + std::string(magic) + "'");
  }
  std::uint64_t length = 0;
  for (int b = 0; b < 8; ++b) length |= static_cast<std::uint64_t>(bytes[8 + b]) << (8 * b);
  if (length > bytes.size() - 16) fail(ErrorCode::kFormatError, "manifest runs past end of file");
  const auto* text = reinterpret_cast<const char*>(bytes.data() + 16);
  Container c;
  try {
    c.manifest = nlohmann::json::parse(text, text + length);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kFormatError, std::string("manifest is not valid JSON: ") + e.what());
  }
  const std::size_t blob_start = padded(16 + length);
  if (blob_start > bytes.size()) fail(ErrorCode::kFormatError, "truncated manifest padding");
  c.blob.assign(bytes.begin() + static_cast<std::ptrdiff_t>(blob_start), bytes.end());
  return c;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::kIoError, "write to '" + path.string() + "' failed");
}

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size() - done, 1u << 30));
    crc = ::crc32(crc, bytes.data() + done, chunk);
    done += chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

void throw_blob_range(std::uint64_t offset, std::uint64_t length, std::size_t size) {
  fail(ErrorCode::kFormatError, "array at offset " + std::to_string(offset) + " with length " +
                                    std::to_string(length) +
                                    " is out of bounds or not a multiple of " +
                                    std::to_string(size) + " bytes");
}

}  // namespace selgraph
