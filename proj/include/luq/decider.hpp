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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "luq/pin_engine.hpp"
#include "luq/tensor_core.hpp"
#include "luq/two_qubit.hpp"
#include "luq/verdict.hpp"

namespace luq {

struct DecideOptions {
  double tol = 1e-9;
  int fallback_starts = 32;
  std::uint64_t seed = 0x6c7571;
  bool fast_paths = true;     // n <= 4 class routes
  bool allow_fallback = true;
  PropagateOptions rules{};
};

struct BranchRecord {
  std::string bits;  // one character per qubit, '-' if the qubit is free
  bool moduli_ok = false;
  bool feasible = false;
};

struct DecisionLog {
  std::string route;
  std::vector<std::string> rules;
  std::vector<BranchRecord> branches;
  bool fallback_used = false;
  std::vector<std::string> notes;
};

// Tolerance for class parameters on the n <= 4 routes.
constexpr double kParamTol = 1e-7;
// Equivalent verdicts require 1 - overlap <= kCertificateTol.
constexpr double kCertificateTol = 1e-8;

Verdict decide_lu(const PureState& psi, const PureState& phi,
                  const DecideOptions& opts = {}, DecisionLog* log = nullptr);
Verdict decide_lu_2(const PureState& psi, const PureState& phi,
                    DecisionLog* log = nullptr);
Verdict decide_lu_3(const PureState& psi, const PureState& phi,
                    const DecideOptions& opts = {}, DecisionLog* log = nullptr);
Verdict decide_lu_4(const PureState& psi, const PureState& phi,
                    const DecideOptions& opts = {}, DecisionLog* log = nullptr);

struct ThreeQubitClass {
  std::string label;          // 3-1, 3-2, 3-3a, 3-3b
  Eigen::VectorXd entropies;  // single-qubit, log2
  double p = 0.0;             // 3-3a Schmidt weight of the anchor
  int anchor = -1;
};

// (lambda, gamma1, gamma2, gamma3) with gamma1, gamma2 in [0, pi).
struct BellPairParams {
  double lambda = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  std::vector<int> pair;  // the Werner pair

  Eigen::Vector4d vec() const { return {lambda, gamma1, gamma2, gamma3}; }
};

struct FourQubitClass {
  std::string label;  // 4-1a, 4-1b, 4-2a, 4-2b
  Eigen::VectorXd entropies;
  std::optional<NonlocalContent> nc;       // 4-2b
  std::vector<int> mixed_pair;             // 4-2b pair with rho = 1/4
  std::optional<BellPairParams> werner;    // 4-2a with a Werner pair
};

ThreeQubitClass classify_3(const PureState& psi);
FourQubitClass classify_4(const PureState& psi);

// Multistart sweep maximization of |<psi|(x)U phi>| over free qubits;
// determined qubits stay in their Z(alpha) X^k families. Returns a layer only
// if the verified overlap reaches 1 - 1e-9.
std::optional<LocalUnitaryLayer> numeric_fallback(const PureState& psi,
                                                  const PureState& phi,
                                                  const ConstraintSet& cs,
                                                  const DecideOptions& opts,
                                                  double* best_overlap = nullptr);

enum class ConjugateFlag { Zero, One, Unknown };

struct ConjugateResult {
  ConjugateFlag flag = ConjugateFlag::Unknown;
  Verdict verdict;
};

ConjugateResult conjugate_class(const PureState& psi,
                                const DecideOptions& opts = {});

enum class LoccRelation { Equivalent, LOCCIncomparable, Unknown };

LoccRelation locc_comparability(const PureState& psi, const PureState& phi,
                                const DecideOptions& opts = {});

Verdict decide_lu_mixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                        int n, const DecideOptions& opts = {},
                        DecisionLog* log = nullptr);

double verify_certificate(const PureState& psi, const PureState& phi,
                          const LocalUnitaryLayer& layer);
DensityMatrix apply_layer(const DensityMatrix& rho, int n,
                          const LocalUnitaryLayer& layer);

std::string to_string(ConjugateFlag f);
std::string to_string(LoccRelation r);

}  // namespace luq
