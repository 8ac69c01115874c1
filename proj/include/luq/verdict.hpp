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
#include <variant>
#include <vector>

#include "luq/tensor_core.hpp"

namespace luq {

struct SpectrumMismatch {
  std::vector<int> subset;
  Eigen::VectorXd lhs;
  Eigen::VectorXd rhs;
  std::string what = "marginal spectrum";
};

struct SchmidtMismatch {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct PhaseInfeasibleAllBranches {
  int branch_count = 0;
};

struct ClassMismatch {
  std::string lhs;
  std::string rhs;
};

// (lambda, gamma1, gamma2, gamma3) per side.
struct BellPairParamMismatch {
  Eigen::Vector4d lhs;
  Eigen::Vector4d rhs;
};

struct NonlocalContentMismatch {
  Vec3 lhs;
  Vec3 rhs;
};

using Witness =
    std::variant<SpectrumMismatch, SchmidtMismatch, PhaseInfeasibleAllBranches,
                 ClassMismatch, BellPairParamMismatch, NonlocalContentMismatch>;

// The certificate maps the second argument onto the first:
// psi = certificate * phi.
struct Equivalent {
  LocalUnitaryLayer certificate;
};

struct NotEquivalent {
  Witness witness;
};

struct Undecided {
  std::string reason;
  double best_overlap = 0.0;
};

using Verdict = std::variant<Equivalent, NotEquivalent, Undecided>;

inline bool is_equivalent(const Verdict& v) {
  return std::holds_alternative<Equivalent>(v);
}
inline bool is_not_equivalent(const Verdict& v) {
  return std::holds_alternative<NotEquivalent>(v);
}
inline bool is_undecided(const Verdict& v) {
  return std::holds_alternative<Undecided>(v);
}

std::string witness_kind(const Witness& w);
std::string describe(const Witness& w);
std::string verdict_label(const Verdict& v);

}  // namespace luq
