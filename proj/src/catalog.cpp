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

#include "luq/catalog.hpp"

#include <cmath>

namespace luq {

PureState ghz(int n) {
  if (n < 2) throw DimensionError("ghz needs n >= 2");
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
  return PureState(n, v);
}

Eigen::Vector4cd bell_vector(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (kind) {
    case BellKind::PhiPlus:
      v << s, 0, 0, s;
      break;
    case BellKind::PhiMinus:
      v << s, 0, 0, -s;
      break;
    case BellKind::PsiPlus:
      v << 0, s, s, 0;
      break;
    case BellKind::PsiMinus:
      v << 0, s, -s, 0;
      break;
  }
  return v;
}

PureState bell(BellKind kind) { return PureState(2, bell_vector(kind)); }

PureState w_state(int n) {
  if (n < 2) throw DimensionError("w_state needs n >= 2");
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  for (int q = 0; q < n; ++q) v[Eigen::Index{1} << q] = 1.0;
  return normalized(n, v);
}

PureState lme_phase_state(int n, const Eigen::VectorXd& phases) {
  const Eigen::Index d = Eigen::Index{1} << n;
  if (phases.size() != d)
    throw DimensionError("lme_phase_state needs 2^n phases");
  CVec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = std::polar(1.0, phases[i]);
  return PureState(n, v / std::sqrt(static_cast<double>(d)));
}

PureState controlled_phase_all(int n, double phi) {
  Eigen::VectorXd phases = Eigen::VectorXd::Zero(Eigen::Index{1} << n);
  phases[phases.size() - 1] = phi;
  return lme_phase_state(n, phases);
}

PureState tensor(const PureState& a, const PureState& b) {
  CVec v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    v.segment(i * b.dim(), b.dim()) = a.amp[i] * b.amp;
  return PureState(a.n + b.n, v);
}

PureState bell_pair_phase_state(double lambda, double g1, double g2,
                                double g3) {
  if (lambda > 1.0) throw InputError("bell_pair_phase_state needs lambda <= 1");
  const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus,
                             BellKind::PsiPlus, BellKind::PsiMinus};
  const cd coef[4] = {1.0, std::polar(1.0, g1), std::polar(1.0, g2),
                      std::polar(std::sqrt(1.0 - lambda), g3)};
  CVec v = CVec::Zero(16);
  for (int k = 0; k < 4; ++k) {
    const PureState b = bell(kinds[k]);
    v += coef[k] * tensor(b, b).amp;
  }
  return normalized(4, v);
}

PureState five_qubit_all_pairs_mixed(double alpha) {
  const PureState pp = tensor(bell(BellKind::PhiPlus), bell(BellKind::PhiPlus));
  const PureState sp = tensor(bell(BellKind::PsiPlus), bell(BellKind::PsiPlus));
  const PureState pm =
      tensor(bell(BellKind::PhiMinus), bell(BellKind::PhiMinus));
  const PureState sm =
      tensor(bell(BellKind::PsiMinus), bell(BellKind::PsiMinus));
  const double s = 1.0 / std::sqrt(2.0);
  const PureState plus(1, Eigen::Vector2cd(s, s));
  const PureState minus(1, Eigen::Vector2cd(s, -s));
  CVec v = tensor(plus, PureState(4, pp.amp + sp.amp)).amp +
           std::polar(1.0, alpha) * tensor(minus, PureState(4, pm.amp + sm.amp)).amp;
  return normalized(5, v);
}

DensityMatrix werner_two_qubit(double lambda) {
  if (lambda > 1.0) throw InputError("werner_two_qubit needs lambda <= 1");
  const Eigen::Vector4cd s = bell_vector(BellKind::PsiMinus);
  CMat rho = CMat::Identity(4, 4) - lambda * (s * s.adjoint());
  return rho / (4.0 - lambda);
}

PureState random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVec v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cd(g(rng), g(rng));
  return normalized(n, v);
}

CMat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = cd(g(rng), g(rng)) / std::sqrt(2.0);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(dim, dim);
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const cd d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Mat2c random_unitary2(std::mt19937_64& rng) { return random_unitary(2, rng); }

LocalUnitaryLayer random_layer(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  LocalUnitaryLayer l;
  l.global_phase = u(rng);
  for (int q = 0; q < n; ++q) l.units.push_back(random_unitary2(rng));
  return l;
}

}  // namespace luq
