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

#include <utility>
#include <vector>

#include "luq/tensor_core.hpp"

namespace luq {

struct TraceDecomposition {
  PureState state;            // apply_local_layer(input, layer)
  LocalUnitaryLayer layer;
  bool sorted = true;         // diagonals descending on every nondegenerate qubit
  bool generic = true;        // no single-qubit marginal maximally mixed
  std::vector<bool> flagged;  // qubit marginal maximally mixed, identity used
};

TraceDecomposition trace_decompose(const PureState& psi);

// Phase-fixed sorted trace decomposition. Throws NonGenericState if some
// single-qubit marginal is maximally mixed.
std::pair<PureState, LocalUnitaryLayer> standard_form(const PureState& psi);

}  // namespace luq
