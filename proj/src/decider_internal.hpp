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

#include <optional>
#include <vector>

#include "luq/decider.hpp"

namespace luq::detail {

// New qubit p is old qubit perm[p].
PureState permute_qubits(const PureState& s, const std::vector<int>& perm);
// Layer acting on permuted states, expressed on the original qubits.
LocalUnitaryLayer unpermute_layer(const LocalUnitaryLayer& l,
                                  const std::vector<int>& perm);
// Rewrites qubit indices in a witness through map (local -> original).
Witness remap_witness(Witness w, const std::vector<int>& map);
Verdict remap_verdict(Verdict v, const std::vector<int>& map);

std::optional<Verdict> single_spectra_check(const PureState& psi,
                                            const PureState& phi);
std::optional<Verdict> pair_spectra_check(const PureState& psi,
                                          const PureState& phi);

// Equivalent if the layer verifies, nullopt otherwise.
std::optional<Verdict> accept(const PureState& psi, const PureState& phi,
                              const LocalUnitaryLayer& layer);

std::optional<Verdict> peel_product(const PureState& psi, const PureState& phi,
                                    const DecideOptions& opts,
                                    DecisionLog* log);

// Pin engine, branch enumeration, then fallback.
Verdict engine_decide(const PureState& psi, const PureState& phi,
                      const DecideOptions& opts, DecisionLog* log);

bool maximally_mixed(const DensityMatrix& rho, double tol = 1e-8);
int product_qubit(const PureState& s);

void note(DecisionLog* log, const std::string& s);

}  // namespace luq::detail
