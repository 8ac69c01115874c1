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

#include <random>
#include <string>

#include "luq/tensor_core.hpp"

namespace luq {

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState ghz(int n);
PureState bell(BellKind kind);
PureState w_state(int n);
// phases has length 2^n; amplitude i is e^{i phases[i]} / 2^{n/2}.
PureState lme_phase_state(int n, const Eigen::VectorXd& phases);
// (1 - (1 - e^{i phi}) |1..1><1..1|) |+>^n
PureState controlled_phase_all(int n, double phi);
// Phi+Phi+ + e^{ig1} Phi-Phi- + e^{ig2} Psi+Psi+ + sqrt(1-lambda) e^{ig3}
// Psi-Psi-, pairs on qubits (0,1) and (2,3), normalized. lambda <= 1.
PureState bell_pair_phase_state(double lambda, double g1, double g2,
                                double g3);
// |+>(Phi+Phi+ + Psi+Psi+) + e^{i alpha}|->(Phi-Phi- + Psi-Psi-), normalized.
PureState five_qubit_all_pairs_mixed(double alpha);
// (1 - lambda |Psi-><Psi-|) / (4 - lambda), lambda <= 1.
DensityMatrix werner_two_qubit(double lambda);

Eigen::Vector4cd bell_vector(BellKind kind);
PureState tensor(const PureState& a, const PureState& b);

// Haar-random helpers for tests, the fallback, and the CLI.
PureState random_state(int n, std::mt19937_64& rng);
Mat2c random_unitary2(std::mt19937_64& rng);
CMat random_unitary(int dim, std::mt19937_64& rng);
LocalUnitaryLayer random_layer(int n, std::mt19937_64& rng);

}  // namespace luq
