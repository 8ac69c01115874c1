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

#include "luq/tensor_core.hpp"

namespace luq {

// target = e^{i alpha0} (x)_k Z(alpha[k]) source
struct PhaseAssignment {
  double alpha0 = 0.0;
  std::vector<double> alpha;
};

struct ZeroSupport {
  std::vector<Eigen::Index> zeros;
  std::vector<Eigen::Index> fragile;  // nonzero, within 10x of threshold
  double threshold = 0.0;

  bool contains(Eigen::Index i) const;
};

struct QuotientVector {
  CVec q;
};

enum class PhaseStatus { Feasible, Infeasible, Unverified };

struct PhaseSolve {
  PhaseStatus status = PhaseStatus::Infeasible;
  PhaseAssignment assignment;
  std::string reason;
};

constexpr double kZeroRel = 1e-9;
constexpr double kModuliTol = 1e-7;
constexpr double kPhaseVerifyTol = 1e-8;

ZeroSupport zero_support(const CVec& v, double rel_tol = kZeroRel);
ZeroSupport zero_support(const PureState& psi, double rel_tol = kZeroRel);

CVec apply_phases(const CVec& v, int n, const PhaseAssignment& a);

// psi + 2 sum_{k in K} |k>
CVec pad_state(const PureState& psi);
// phi + 2 e^{-i abar0} sum_{k in K} e^{-i abar.k} |k>
CVec pad_state_with_phases(const PureState& phi, const PhaseAssignment& trial);

QuotientVector hadamard_quotient(const CVec& psi, const CVec& phi);
std::optional<std::vector<Eigen::Vector2cd>> is_product_state(const CVec& v,
                                                              int n,
                                                              double tol = 1e-9);
std::optional<PhaseAssignment> extract_phases(const QuotientVector& q, int n,
                                              double tol = 1e-9);

// One congruence a.x = t (mod 2 pi) over integer coefficients.
struct PhaseRow {
  std::vector<std::int64_t> a;
  double t = 0.0;
};

// Every solution modulo 2 pi of a consistent system, free columns set to 0.
// Returns empty if the system is inconsistent or has more than max_solutions.
std::vector<std::vector<double>> all_phase_solutions(
    const std::vector<PhaseRow>& rows, int cols,
    std::size_t max_solutions = 4096);

// Solves the linear phase system on the common support and verifies the
// result. Infeasible is exact: no assignment exists.
PhaseSolve solve_phases(const PureState& psi, const PureState& phi);
std::optional<PhaseAssignment> phase_gate_feasible(const PureState& psi,
                                                   const PureState& phi);

// Cross-check routes on the padded pair built from the support solve.
bool product_condition_route(const PureState& psi, const PureState& phi,
                             double tol = 1e-8);
std::optional<PhaseAssignment> quotient_route(const PureState& psi,
                                              const PureState& phi,
                                              double tol = 1e-8);

}  // namespace luq
