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

#include "luq/verdict.hpp"

#include <sstream>

namespace luq {

namespace {

template <typename V>
std::string fmt_vec(const V& v) {
  std::ostringstream os;
  os.precision(12);
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string witness_kind(const Witness& w) {
  return std::visit(
      overloaded{
          [](const SpectrumMismatch&) { return std::string("SpectrumMismatch"); },
          [](const SchmidtMismatch&) { return std::string("SchmidtMismatch"); },
          [](const PhaseInfeasibleAllBranches&) {
            return std::string("PhaseInfeasibleAllBranches");
          },
          [](const ClassMismatch&) { return std::string("ClassMismatch"); },
          [](const BellPairParamMismatch&) {
            return std::string("BellPairParamMismatch");
          },
          [](const NonlocalContentMismatch&) {
            return std::string("NonlocalContentMismatch");
          }},
      w);
}

std::string describe(const Witness& w) {
  std::ostringstream os;
  os.precision(12);
  std::visit(overloaded{
                 [&](const SpectrumMismatch& m) {
                   os << m.what << " differs on subset {";
                   for (std::size_t i = 0; i < m.subset.size(); ++i)
                     os << (i ? "," : "") << m.subset[i] + 1;
                   os << "}: " << fmt_vec(m.lhs) << " vs " << fmt_vec(m.rhs);
                 },
                 [&](const SchmidtMismatch& m) {
                   os << "Schmidt weight differs: " << m.lhs << " vs " << m.rhs;
                 },
                 [&](const PhaseInfeasibleAllBranches& m) {
                   os << "phase system infeasible on all " << m.branch_count
                      << " branches";
                 },
                 [&](const ClassMismatch& m) {
                   os << "class differs: " << m.lhs << " vs " << m.rhs;
                 },
                 [&](const BellPairParamMismatch& m) {
                   os << "Bell-pair parameters differ: " << fmt_vec(m.lhs)
                      << " vs " << fmt_vec(m.rhs);
                 },
                 [&](const NonlocalContentMismatch& m) {
                   os << "nonlocal content differs: " << fmt_vec(m.lhs)
                      << " vs " << fmt_vec(m.rhs);
                 }},
             w);
  return os.str();
}

std::string verdict_label(const Verdict& v) {
  if (is_equivalent(v)) return "Equivalent";
  if (is_not_equivalent(v)) return "NotEquivalent";
  return "Undecided";
}

}  // namespace luq
