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


#include <cmath>
#include <numeric>

#include "decider_internal.hpp"

namespace luq {

using namespace detail;

namespace {

constexpr double kEigenGroup = 1e-8;

// Ranges [begin, end) of equal eigenvalues in a descending spectrum.
std::vector<std::pair<int, int>> eigen_groups(const Eigen::VectorXd& v) {
  std::vector<std::pair<int, int>> g;
  int start = 0;
  for (int k = 1; k <= v.size(); ++k)
    if (k == v.size() || v[k - 1] - v[k] > kEigenGroup) {
      g.emplace_back(start, k);
      start = k;
    }
  return g;
}

std::optional<Verdict> accept_mixed(const DensityMatrix& rho,
                                    const DensityMatrix& sigma, int n,
                                    const LocalUnitaryLayer& l) {
  if ((rho - apply_layer(sigma, n, l)).norm() > kCertificateTol) return std::nullopt;
  LocalUnitaryLayer out = l;
  out.global_phase = 0.0;
  return Equivalent{out};
}

PureState lift(const CMat& vecs, int col, int n) {
  CVec v(Eigen::Index{2} << n);
  v << vecs.col(col), vecs.col(col + 1);
  return PureState(n + 1, v / std::sqrt(2.0));
}

}  // namespace

Verdict decide_lu_mixed(const DensityMatrix& rho, const DensityMatrix& sigma,
                        int n, const DecideOptions& opts, DecisionLog* log) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (rho.rows() != d || sigma.rows() != d)
    throw DimensionError("decide_lu_mixed: matrix size is not 2^n");
  validate_density(rho, 1e-8);
  validate_density(sigma, 1e-8);
  const HermEig er = hermitian_eig(rho), es = hermitian_eig(sigma);
  if ((er.values - es.values).cwiseAbs().maxCoeff() > kEigenGroup) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    return NotEquivalent{SpectrumMismatch{all, er.values, es.values}};
  }
  if (n == 2 && maximally_mixed(partial_trace(rho, 2, {0})) &&
      maximally_mixed(partial_trace(rho, 2, {1}))) {
    if (log) log->route = "2-qubit mixed, maximally mixed marginals";
    return lu_equiv_mixed2(rho, sigma);
  }
  if (log) log->route = "mixed eigenvector";
  const auto groups = eigen_groups(er.values);
  bool tried = false;
  for (const auto& [b, e] : groups) {
    if (e - b != 1) continue;
    tried = true;
    const PureState a = normalized(n, er.vectors.col(b));
    const PureState c = normalized(n, es.vectors.col(b));
    Verdict v = decide_lu(a, c, opts);
    if (is_not_equivalent(v)) return v;
    if (auto* eq = std::get_if<Equivalent>(&v))
      if (auto acc = accept_mixed(rho, sigma, n, eq->certificate)) return *acc;
  }
  if (n + 1 <= kMaxQubits) {
    for (const auto& [b, e] : groups) {
      if (e - b != 2) continue;
      tried = true;
      if (log) log->route = "mixed lifted eigenspace";
      const PureState a = lift(er.vectors, b, n);
      const PureState c = lift(es.vectors, b, n);
      Verdict v = decide_lu(a, c, opts);
      if (is_not_equivalent(v)) {
        note(log, "witness refers to the lifted state, ancilla is qubit 1");
        return v;
      }
      if (auto* eq = std::get_if<Equivalent>(&v)) {
        LocalUnitaryLayer l;
        l.units.assign(eq->certificate.units.begin() + 1,
                       eq->certificate.units.end());
        if (auto acc = accept_mixed(rho, sigma, n, l)) return *acc;
      }
    }
  }
  if (!tried) return Undecided{"UnimplementedDegeneracy", 0.0};
  return Undecided{"eigenvector certificates did not map the mixed state", 0.0};
}

}  // namespace luq
