// Copyright 2026 The BBC Ledger Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BBC_SRC_BYTES_HPP
#define BBC_SRC_BYTES_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace bbc {

using Bytes = std::vector<uint8_t>;
using Hash32 = std::array<uint8_t, 32>;

/// Canonical byte writer: all integers big-endian fixed width, strings and
/// lists carry a u32 length prefix. Every hash in the ledger is computed
/// over bytes produced here.
class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(v); }

  void u16(uint16_t v) {
    out_.push_back(static_cast<uint8_t>(v >> 8));
    out_.push_back(static_cast<uint8_t>(v));
  }

  void u32(uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8) {
      out_.push_back(static_cast<uint8_t>(v >> shift));
    }
  }

  void u64(uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      out_.push_back(static_cast<uint8_t>(v >> shift));
    }
  }

  void i16(int16_t v) { u16(static_cast<uint16_t>(v)); }
  void i32(int32_t v) { u32(static_cast<uint32_t>(v)); }
  void boolean(bool v) { u8(v ? 1 : 0); }

  void raw(std::span<const uint8_t> data) {
    out_.insert(out_.end(), data.begin(), data.end());
  }

  void str(std::string_view s) {
    u32(static_cast<uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }

  void str_list(const std::vector<std::string>& list) {
    u32(static_cast<uint32_t>(list.size()));
    for (const auto& s : list) str(s);
  }

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

/// Bounds-checked reader over canonical bytes. Throws Errc::kTruncated when
/// the buffer runs out; decoding never reads past the span.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8() { return take(1)[0]; }

  uint16_t u16() {
    auto b = take(2);
    return static_cast<uint16_t>((b[0] << 8) | b[1]);
  }

  uint32_t u32() {
    auto b = take(4);
    return (static_cast<uint32_t>(b[0]) << 24) |
           (static_cast<uint32_t>(b[1]) << 16) |
           (static_cast<uint32_t>(b[2]) << 8) | static_cast<uint32_t>(b[3]);
  }

  uint64_t u64() {
    uint64_t hi = u32();
    return (hi << 32) | u32();
  }

  int16_t i16() { return static_cast<int16_t>(u16()); }
  int32_t i32() { return static_cast<int32_t>(u32()); }

  bool boolean() {
    uint8_t v = u8();
    if (v > 1) raise(Errc::kParse, "boolean byte must be 0 or 1");
    return v == 1;
  }

  std::span<const uint8_t> raw(size_t n) { return take(n); }

  std::string str() {
    uint32_t n = u32();
    auto b = take(n);
    return std::string(b.begin(), b.end());
  }

  std::vector<std::string> str_list() {
    uint32_t n = u32();
    std::vector<std::string> out;
    out.reserve(n);
    for (uint32_t i = 0; i < n; ++i) out.push_back(str());
    return out;
  }

  size_t offset() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }

 private:
  std::span<const uint8_t> take(size_t n) {
    if (n > data_.size() - pos_) {
      raise(Errc::kTruncated, "unexpected end of input");
    }
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

inline std::string to_hex(std::span<const uint8_t> data) {
  static const char* kDigits = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) raise(Errc::kParse, "hex string with odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) raise(Errc::kParse, "invalid hex digit");
    out.push_back(static_cast<uint8_t>((hi << 4) | lo));
  }
  return out;
}

inline std::string hash_hex(const Hash32& h) {
  return to_hex(std::span<const uint8_t>(h.data(), h.size()));
}

inline Hash32 hash_from_hex(std::string_view hex) {
  Bytes raw = from_hex(hex);
  if (raw.size() != 32) raise(Errc::kParse, "hash must be 32 bytes");
  Hash32 out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

}  // namespace bbc

#endif  // BBC_SRC_BYTES_HPP
