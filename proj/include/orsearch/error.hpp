// Copyright 2026 The orsearch Authors
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

#ifndef ORSEARCH_ERROR_HPP_
#define ORSEARCH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace orsearch {

enum class Errc {
  // Document / schema.
  kSyntax,
  kUnknownField,
  kMissingRequiredComponent,
  kWrongType,
  // Formula language.
  kMalformedDomain,
  kNestedDomain,
  kDuplicateIndex,
  kFilterNotSupported,
  kUnsupportedNumericSubscript,
  kUnsupportedParametrizedSumDomain,
  kMissingRelation,
  // Expansion.
  kNonlinearTerm,
  kUnknownSymbol,
  kSubscriptArityMismatch,
  kUnboundIndex,
  kIndexOutOfRange,
  kDivisionByZero,
  kInvalidModel,
  // Search and adapters.
  kInvalidConfig,
  kEmptyCandidates,
  kGeneratorFailure,
  kFixtureExhausted,
  kTransport,
  kMalformedResponse,
  kHttpStatus,
  // Augmentation and bench.
  kNoApplicableSite,
  kMissingLayer,
  kPlanInfeasible,
  kEmptyFixtureSet,
  kIo,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::kSyntax: return "SyntaxError";
    case Errc::kUnknownField: return "UnknownField";
    case Errc::kMissingRequiredComponent: return "MissingRequiredComponent";
    case Errc::kWrongType: return "WrongType";
    case Errc::kMalformedDomain: return "MalformedDomain";
    case Errc::kNestedDomain: return "NestedDomain";
    case Errc::kDuplicateIndex: return "DuplicateIndex";
    case Errc::kFilterNotSupported: return "FilterNotSupported";
    case Errc::kUnsupportedNumericSubscript: return "UnsupportedNumericSubscript";
    case Errc::kUnsupportedParametrizedSumDomain:
      return "UnsupportedParametrizedSumDomain";
    case Errc::kMissingRelation: return "MissingRelation";
    case Errc::kNonlinearTerm: return "NonlinearTerm";
    case Errc::kUnknownSymbol: return "UnknownSymbol";
    case Errc::kSubscriptArityMismatch: return "SubscriptArityMismatch";
    case Errc::kUnboundIndex: return "UnboundIndex";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kDivisionByZero: return "DivisionByZero";
    case Errc::kInvalidModel: return "InvalidModel";
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kEmptyCandidates: return "EmptyCandidates";
    case Errc::kGeneratorFailure: return "GeneratorFailure";
    case Errc::kFixtureExhausted: return "FixtureExhausted";
    case Errc::kTransport: return "TransportFailure";
    case Errc::kMalformedResponse: return "MalformedResponse";
    case Errc::kHttpStatus: return "HttpStatus";
    case Errc::kNoApplicableSite: return "NoApplicableSite";
    case Errc::kMissingLayer: return "MissingLayer";
    case Errc::kPlanInfeasible: return "PlanInfeasible";
    case Errc::kEmptyFixtureSet: return "EmptyFixtureSet";
    case Errc::kIo: return "IoError";
  }
  return "Unknown";
}

// The single exception type thrown by the library. `code()` is the typed
// error kind; `what()` carries a human readable message prefixed by it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace orsearch

#endif  // ORSEARCH_ERROR_HPP_
