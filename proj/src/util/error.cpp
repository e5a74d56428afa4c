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

#include "hatelab/util/error.hpp"

namespace hatelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileUnreadable: return "FileUnreadable";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RuleTableInvalid: return "RuleTableInvalid";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::EmptyLexicon: return "EmptyLexicon";
    case ErrorCode::HeaderMismatch: return "HeaderMismatch";
    case ErrorCode::OddAnnotatorCount: return "OddAnnotatorCount";
    case ErrorCode::InsufficientPosts: return "InsufficientPosts";
    case ErrorCode::BatchMismatch: return "BatchMismatch";
    case ErrorCode::RaggedMatrix: return "RaggedMatrix";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::EmptyVocab: return "EmptyVocab";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::FeatureConfigMismatch: return "FeatureConfigMismatch";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::TooFewMinority: return "TooFewMinority";
    case ErrorCode::SampleTooLarge: return "SampleTooLarge";
    case ErrorCode::MissingExpertLabels: return "MissingExpertLabels";
  }
  return "Unknown";
}

}  // namespace hatelab
