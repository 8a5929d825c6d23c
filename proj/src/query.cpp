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

#include "exprindex/query.hpp"

namespace exprindex {

std::string_view to_string(QueryMode mode) {
  switch (mode) {
    case QueryMode::kVariant:
      return "variant";
    case QueryMode::kInstance:
      return "instance";
    case QueryMode::kGeneralization:
      return "generalization";
    case QueryMode::kUnifiable:
      return "unifiable";
  }
  return "?";
}

std::optional<QueryMode> query_mode_from_string(std::string_view text) {
  for (QueryMode m : {QueryMode::kVariant, QueryMode::kInstance,
                      QueryMode::kGeneralization, QueryMode::kUnifiable}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

}  // namespace exprindex
