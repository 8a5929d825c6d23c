// Copyright 2026 The exprindex Authors
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

#include <cstdint>
#include <optional>
#include <string_view>

#include "exprindex/unify.hpp"

namespace exprindex {

enum class QueryMode : std::uint8_t { kVariant, kInstance, kGeneralization, kUnifiable };

std::string_view to_string(QueryMode mode);
std::optional<QueryMode> query_mode_from_string(std::string_view text);

// Whether a stored expression in `mode` relative to the query is an answer.
// Instance and generalization queries include variants.
constexpr bool accepts(QueryMode query, Mode mode) {
  switch (query) {
    case QueryMode::kVariant:
      return mode == Mode::kVR;
    case QueryMode::kInstance:
      return mode == Mode::kVR || mode == Mode::kSI;
    case QueryMode::kGeneralization:
      return mode == Mode::kVR || mode == Mode::kSG;
    case QueryMode::kUnifiable:
      return mode != Mode::kNU;
  }
  return false;
}

}  // namespace exprindex
