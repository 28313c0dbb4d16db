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

#ifndef BBC_SRC_ERRORS_HPP
#define BBC_SRC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bbc {

/// Error categories shared by the whole library. The C API maps these 1:1
/// onto its status codes; validation verdicts (ValidationFailure) are return
/// values, not errors, and live in ledger.hpp.
enum class Errc {
  kInvalidArgument,
  kIo,
  kParse,
  kBadMagic,
  kTruncated,
  kDuplicateActor,
  kTemplateRange,
  kKeyMismatch,
  kUnknownActor,
  kUnattestedTx,
  kEmptyBlock,
  kInvalidChain,
  kNotFound,
  kAmbiguous,
  kNotRetailed,
  kBudgetExceeded,
  kRange,
  kInternal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "INVALID_ARGUMENT";
    case Errc::kIo: return "IO";
    case Errc::kParse: return "PARSE";
    case Errc::kBadMagic: return "BAD_MAGIC";
    case Errc::kTruncated: return "TRUNCATED";
    case Errc::kDuplicateActor: return "DUPLICATE_ACTOR";
    case Errc::kTemplateRange: return "TEMPLATE_RANGE";
    case Errc::kKeyMismatch: return "KEY_MISMATCH";
    case Errc::kUnknownActor: return "UNKNOWN_ACTOR";
    case Errc::kUnattestedTx: return "UNATTESTED_TX";
    case Errc::kEmptyBlock: return "EMPTY_BLOCK";
    case Errc::kInvalidChain: return "INVALID_CHAIN";
    case Errc::kNotFound: return "NOT_FOUND";
    case Errc::kAmbiguous: return "AMBIGUOUS";
    case Errc::kNotRetailed: return "NOT_RETAILED";
    case Errc::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case Errc::kRange: return "RANGE";
    case Errc::kInternal: return "INTERNAL";
  }
  return "INTERNAL";
}

}  // namespace bbc

#endif  // BBC_SRC_ERRORS_HPP
