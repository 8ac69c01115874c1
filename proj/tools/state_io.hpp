// Copyright 2026 The luq Authors
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

#include <string>

#include "json.hpp"
#include "luq/decider.hpp"

namespace luq::io {

using json = nlohmann::json;

constexpr double kAcceptNorm = 1e-6;
constexpr double kWarnNorm = 1e-9;

struct StateFile {
  PureState state;
  std::string label;
  double norm_deviation = 0.0;
  bool renormalized = false;
};

json read_json(const std::string& path);
void write_json(const std::string& path, const json& j);

StateFile parse_state(const json& j);
StateFile read_state(const std::string& path);
json state_json(const PureState& s, const std::string& label = "");

json complex_json(cd z);
cd parse_complex(const json& j);
json matrix_json(const CMat& m);
CMat parse_matrix(const json& j, Eigen::Index rows, Eigen::Index cols);

json certificate_json(const LocalUnitaryLayer& l, const json& metadata);
LocalUnitaryLayer parse_certificate(const json& j);
LocalUnitaryLayer read_certificate(const std::string& path);

json witness_json(const Witness& w);
json log_json(const DecisionLog& log);

}  // namespace luq::io
