// Copyright 2026 The hatelab Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hatelab {

enum class ErrorCode {
  InvalidArgument,
  FileUnreadable,
  ParseError,
  RuleTableInvalid,
  NotNormalized,
  EmptyLexicon,
  HeaderMismatch,
  OddAnnotatorCount,
  InsufficientPosts,
  BatchMismatch,
  RaggedMatrix,
  MissingLabel,
  EmptyVocab,
  SingleClass,
  NonFiniteLoss,
  FeatureConfigMismatch,
  IdMismatch,
  TooFewMinority,
  SampleTooLarge,
  MissingExpertLabels,
};

std::string_view to_string(ErrorCode code);

// All data errors raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hatelab
