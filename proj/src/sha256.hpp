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

#ifndef BBC_SRC_SHA256_HPP
#define BBC_SRC_SHA256_HPP

#include <span>

#include "bytes.hpp"

namespace bbc {

/// SHA-256 over a byte span (OpenSSL-backed).
Hash32 sha256(std::span<const uint8_t> data);

/// SHA-256 with a one-byte domain-separation prefix, used by the Merkle tree
/// (0x00 for leaves, 0x01 for internal nodes).
Hash32 sha256_tagged(uint8_t tag, std::span<const uint8_t> data);

}  // namespace bbc

#endif  // BBC_SRC_SHA256_HPP
