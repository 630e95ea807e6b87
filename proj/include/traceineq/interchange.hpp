// Copyright 2026 The traceineq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "traceineq/matcore.hpp"

namespace traceineq::interchange {

// Text form of a complex square matrix:
//   {"dim":n,"re":[[...],...],"im":[[...],...]}
// row-major, every number with 17 significant digits, so serialization
// round-trips bit-exactly. Parsing rejects non-square or ragged payloads
// with kInvalidConfig.
std::string matrix_to_text(const matcore::Matrix& m);
matcore::Matrix matrix_from_text(const std::string& text);

}  // namespace traceineq::interchange
