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

#include "traceineq/interchange.hpp"

#include <json.hpp>

#include "traceineq/report.hpp"

namespace traceineq::interchange {

namespace {

void write_part(report::JsonWriter& w, const matcore::Matrix& m, bool real) {
  w.begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      w.value_double(real ? m(r, c).real() : m(r, c).imag());
    }
    w.end_array();
  }
  w.end_array();
}

}  // namespace

std::string matrix_to_text(const matcore::Matrix& m) {
  report::JsonWriter w;
  w.begin_object();
  w.key("dim").value_int(m.rows());
  w.key("re");
  write_part(w, m, true);
  w.key("im");
  write_part(w, m, false);
  w.end_object();
  return w.take();
}

matcore::Matrix matrix_from_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    raise(Errc::kInvalidConfig, "matrix_from_text: invalid JSON");
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") ||
      !j.contains("im") || !j["dim"].is_number_integer()) {
    raise(Errc::kInvalidConfig,
          "matrix_from_text: expected {dim, re, im} object");
  }
  auto dim = j["dim"].get<std::int64_t>();
  if (dim < 1 || dim > 4096) {
    raise(Errc::kInvalidConfig, "matrix_from_text: dim out of range");
  }
  int n = static_cast<int>(dim);

  auto read_part = [&](const nlohmann::json& part, const char* name) {
    Eigen::MatrixXd out(n, n);
    if (!part.is_array() || static_cast<int>(part.size()) != n) {
      raise(Errc::kInvalidConfig,
            std::string("matrix_from_text: ") + name + " must have dim rows");
    }
    for (int r = 0; r < n; ++r) {
      const auto& row = part[r];
      if (!row.is_array() || static_cast<int>(row.size()) != n) {
        raise(Errc::kInvalidConfig,
              std::string("matrix_from_text: ragged or non-square ") + name);
      }
      for (int c = 0; c < n; ++c) {
        if (!row[c].is_number()) {
          raise(Errc::kInvalidConfig,
                std::string("matrix_from_text: non-numeric entry in ") + name);
        }
        out(r, c) = row[c].get<double>();
      }
    }
    return out;
  };

  Eigen::MatrixXd re = read_part(j["re"], "re");
  Eigen::MatrixXd im = read_part(j["im"], "im");
  matcore::Matrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return m;
}

}  // namespace traceineq::interchange
