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

#include <cstdint>
#include <string>
#include <string_view>

namespace traceineq::report {

// "%.17g" rendering: round-trips every finite double bit-exactly and is
// locale-independent under the default "C" locale. Non-finite values render
// as "null" (JSON has no inf/nan literals).
std::string format_double(double v);

// Emits JSON with insertion-ordered keys and format_double for every double,
// so equal data always serializes to identical bytes.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();

  JsonWriter& key(std::string_view k);

  JsonWriter& value_double(double v);
  JsonWriter& value_uint(std::uint64_t v);
  JsonWriter& value_int(std::int64_t v);
  JsonWriter& value_string(std::string_view s);
  JsonWriter& value_bool(bool b);
  JsonWriter& value_null();
  // Splices pre-serialized JSON (e.g. a matrix object) as one value.
  JsonWriter& value_raw(std::string_view json);

  const std::string& str() const { return out_; }
  std::string take() { return std::move(out_); }

 private:
  void separate();

  std::string out_;
  // Comma bookkeeping per nesting level: true once a value was written.
  std::string stack_;
  bool pending_key_ = false;
};

std::string escape_string(std::string_view s);

}  // namespace traceineq::report
