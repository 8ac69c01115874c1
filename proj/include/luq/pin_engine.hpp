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
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "luq/tensor_core.hpp"
#include "luq/verdict.hpp"

namespace luq {

// If psi = L phi then L_i = W^dagger e^{i a} Z(alpha) X^k V for some k in
// k_set.
struct Determination {
  Mat2c W = Mat2c::Identity();
  Mat2c V = Mat2c::Identity();
  std::vector<int> k_set{0, 1};
  std::string provenance;
};

struct FreeQubit {};

// If psi = L phi then W_i L_i V_i^dagger and W_j L_j V_j^dagger agree up to
// sign and phase.
struct WernerLink {
  int other = -1;
  Mat2c W = Mat2c::Identity();
  Mat2c V = Mat2c::Identity();
  double lambda = 0.0;
};

using QubitConstraint = std::variant<FreeQubit, Determination, WernerLink>;

enum class WitnessKind { B, C };

// B = tr_{~k}[(|i><j| + h.c.) rho], C = tr_{~k}[(i|i><j| + h.c.) rho] on the
// fixed qubits.
struct WitnessMatrix {
  Mat2c m = Mat2c::Zero();
  Eigen::Index i = 0;
  Eigen::Index j = 0;
  WitnessKind kind = WitnessKind::B;
};

// An LU invariant that differs between the two states.
class InvariantMismatch : public Error {
 public:
  explicit InvariantMismatch(SpectrumMismatch m)
      : Error("invariant mismatch: " + m.what), mismatch(std::move(m)) {}
  SpectrumMismatch mismatch;
};

struct ConstraintSet {
  std::vector<QubitConstraint> qubits;
  std::vector<std::string> log;
  std::optional<SpectrumMismatch> mismatch;

  bool all_determined() const;
  int free_count() const;
  const Determination* determination(int q) const;
};

struct PropagateOptions {
  bool single = true;
  bool weighted = true;
  bool orthogonal_pair = true;
  bool pair_witness = true;
  bool triple = true;
  bool werner = true;
  bool singlet = true;
  int max_subset = 5;  // qubits per correlation tensor
};

// Pin thresholds.
constexpr double kPinFire = 1e-6;
constexpr double kPinGap = 1e-6;
constexpr double kInvariantTol = 1e-6;

std::optional<Determination> pin_from_single_marginal(const PureState& psi,
                                                      const PureState& phi,
                                                      int i);
std::optional<Determination> pin_from_weighted_marginal(const PureState& psi,
                                                        const PureState& phi,
                                                        int anchor, int i);
// Throws NotApplicable when the anchor's off-diagonal block vanishes.
std::optional<Determination> pin_from_orthogonal_pair(const PureState& psi,
                                                      const PureState& phi,
                                                      int anchor, int i);

std::vector<WitnessMatrix> witness_matrices(const PureState& psi,
                                            const std::vector<int>& fixed,
                                            int k);
bool witnesses_trivial(const std::vector<WitnessMatrix>& w,
                       double tol = kDegeneracy);

// Conditions on the fixed qubits in their pinned frames; they must be
// Determined in cs. Throws NotApplicable if every witness is trivial.
std::optional<Determination> pin_from_pair_witness(
    const PureState& psi, const PureState& phi, const ConstraintSet& cs,
    const std::vector<int>& fixed, int k);

// Gram rule on the correlation tensor of {i, j, l} unfolded at l.
std::optional<Determination> pin_from_triple(const PureState& psi,
                                             const PureState& phi, int i,
                                             int j, int l);
std::optional<Determination> pin_from_subset_gram(const PureState& psi,
                                                  const PureState& phi,
                                                  const std::vector<int>& others,
                                                  int l);

std::optional<WernerLink> detect_werner_link(const PureState& psi,
                                             const PureState& phi, int i,
                                             int j);
// Normalized <Psi-|_{ij} of each state. Throws ProductObstruction when a
// projection vanishes or n < 3.
std::pair<PureState, PureState> singlet_projection(const PureState& psi,
                                                   const PureState& phi, int i,
                                                   int j);

// Real correlation tensor T(mu_1..mu_m) = tr(rho sigma_mu1 x ... ) on the
// subset, mu in {0,1,2,3}, first qubit most significant.
Eigen::VectorXd correlation_tensor(const PureState& psi,
                                   const std::vector<int>& subset);

ConstraintSet propagate(const PureState& psi, const PureState& phi,
                        const PropagateOptions& opts = {});

}  // namespace luq
