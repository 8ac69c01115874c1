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


#include "luq/canonical.hpp"

#include <cmath>

#include "luq/phase_solver.hpp"

namespace luq {

TraceDecomposition trace_decompose(const PureState& psi) {
  TraceDecomposition td;
  td.layer = LocalUnitaryLayer::identity(psi.n);
  td.flagged.assign(psi.n, false);
  for (int q = 0; q < psi.n; ++q) {
    const Mat2c rho = partial_trace(psi, {q});
    const Eig2 e = eigh2(rho);
    if (e.values[0] - e.values[1] <= kDegeneracy) {
      td.flagged[q] = true;
      td.generic = false;
      continue;
    }
    td.layer.units[q] = e.W;
  }
  td.state = apply_local_layer(psi, td.layer);
  return td;
}

namespace {

// Lexicographic order on phases of the nonzero amplitudes, ties within tol.
bool phase_key_less(const CVec& a, const CVec& b,
                    const std::vector<Eigen::Index>& idx) {
  for (Eigen::Index i : idx) {
    const double pa = std::arg(a[i]), pb = std::arg(b[i]);
    if (std::abs(wrap_angle(pa - pb)) <= 1e-7) continue;
    return pa < pb;
  }
  return false;
}

}  // namespace

std::pair<PureState, LocalUnitaryLayer> standard_form(const PureState& psi) {
  const TraceDecomposition td = trace_decompose(psi);
  if (!td.generic)
    throw NonGenericState("standard_form needs every single-qubit marginal "
                          "to be non-maximally mixed");
  const int n = psi.n;
  const CVec& s = td.state.amp;
  const ZeroSupport z = zero_support(s);
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (!z.contains(i)) nonzero.push_back(i);

  // Greedy real-independent selection of augmented bit rows.
  std::vector<Eigen::VectorXd> ortho;
  std::vector<PhaseRow> rows;
  for (Eigen::Index i : nonzero) {
    Eigen::VectorXd v(n + 1);
    v[0] = 1.0;
    for (int k = 0; k < n; ++k) v[k + 1] = bit_of(i, k, n);
    Eigen::VectorXd r = v;
    for (const auto& o : ortho) r -= o.dot(r) * o;
    if (r.norm() <= 1e-9) continue;
    ortho.push_back(r.normalized());
    PhaseRow pr;
    pr.a.resize(n + 1);
    for (int k = 0; k <= n; ++k) pr.a[k] = static_cast<std::int64_t>(v[k]);
    pr.t = -std::arg(s[i]);
    rows.push_back(std::move(pr));
    if (static_cast<int>(ortho.size()) == n + 1) break;
  }
  const auto sols = all_phase_solutions(rows, n + 1);
  if (sols.empty()) throw Error("standard_form: phase system has no solution");

  CVec best;
  std::vector<double> best_x;
  for (const auto& x : sols) {
    PhaseAssignment a;
    a.alpha0 = x[0];
    a.alpha.assign(x.begin() + 1, x.end());
    CVec cand = apply_phases(s, n, a);
    if (best_x.empty() || phase_key_less(cand, best, nonzero)) {
      best = std::move(cand);
      best_x = x;
    }
  }
  LocalUnitaryLayer layer = td.layer;
  layer.global_phase = wrap_2pi(layer.global_phase + best_x[0]);
  for (int k = 0; k < n; ++k)
    layer.units[k] = phase_gate(best_x[k + 1]) * layer.units[k];
  return {PureState(n, best), layer};
}

}  // namespace luq
