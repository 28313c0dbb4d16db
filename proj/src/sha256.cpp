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

#include "sha256.hpp"

#include <openssl/evp.h>

#include "errors.hpp"

namespace bbc {

Hash32 sha256(std::span<const uint8_t> data) {
  Hash32 out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(),
                 nullptr) != 1 ||
      len != out.size()) {
    raise(Errc::kInternal, "SHA-256 digest failed");
  }
  return out;
}

Hash32 sha256_tagged(uint8_t tag, std::span<const uint8_t> data) {
  Bytes buf;
  buf.reserve(data.size() + 1);
  buf.push_back(tag);
  buf.insert(buf.end(), data.begin(), data.end());
  return sha256(buf);
}

}  // namespace bbc
