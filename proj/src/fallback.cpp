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
#include <random>

#include "luq/decider.hpp"

namespace luq {

namespace {

constexpr double kFallbackAccept = 1e-9;
constexpr int kMaxSweeps = 400;

Mat2c haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat2c z;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) z(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Mat2c> qr(z);
  Mat2c q = qr.householderQ();
  const Mat2c r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) q.col(k) *= std::polar(1.0, std::arg(r(k, k)));
  return q;
}

// e(b, a) = sum over the rest of chi(b, rest) conj(psi(a, rest)).
Mat2c environment(const CVec& psi, const CVec& chi, int n, int q) {
  Mat2c e = Mat2c::Zero();
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    const int a = bit_of(i, q, n);
    const Eigen::Index flip = i ^ (Eigen::Index{1} << (n - 1 - q));
    e(a, a) += chi[i] * std::conj(psi[i]);
    e(1 - a, a) += chi[flip] * std::conj(psi[i]);
  }
  return e;
}

class Sweeper {
 public:
  Sweeper(const PureState& psi, const PureState& phi, const ConstraintSet& cs)
      : psi_(psi), phi_(phi), cs_(cs), n_(psi.n) {}

  double run(std::vector<Mat2c>& units) const {
    double last = -1.0;
    for (int s = 0; s < kMaxSweeps; ++s) {
      double cur = 0.0;
      for (int q = 0; q < n_; ++q) {
        CVec chi = phi_.amp;
        for (int k = 0; k < n_; ++k)
          if (k != q) apply_single_inplace<double>(chi, n_, k, units[k]);
        cur = update(units[q], environment(psi_.amp, chi, n_, q), q);
      }
      if (cur >= 1.0 - 1e-13 || cur - last < 1e-13) return cur;
      last = cur;
    }
    return last;
  }

 private:
  double update(Mat2c& u, const Mat2c& e, int q) const {
    if (const Determination* d = cs_.determination(q)) {
      const Mat2c f = d->V * e * d->W.adjoint();
      double best = -1.0;
      for (int k : d->k_set) {
        const cd p = k ? f(1, 0) : f(0, 0);
        const cd r = k ? f(0, 1) : f(1, 1);
        const double val = std::abs(p) + std::abs(r);
        if (val <= best) continue;
        best = val;
        const Mat2c x = k ? pauli_x() : Mat2c::Identity();
        u = d->W.adjoint() * phase_gate(std::arg(p) - std::arg(r)) * x * d->V;
      }
      return best;
    }
    Eigen::JacobiSVD<Mat2c> svd(e, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixV() * svd.matrixU().adjoint();
    return svd.singularValues().sum();
  }

  const PureState& psi_;
  const PureState& phi_;
  const ConstraintSet& cs_;
  int n_;
};

}  // namespace

std::optional<LocalUnitaryLayer> numeric_fallback(const PureState& psi,
                                                  const PureState& phi,
                                                  const ConstraintSet& cs,
                                                  const DecideOptions& opts,
                                                  double* best_overlap) {
  const int n = psi.n;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  const Sweeper sweeper(psi, phi, cs);
  double best = 0.0;
  std::vector<Mat2c> best_units;
  for (int s = 0; s < std::max(1, opts.fallback_starts); ++s) {
    std::vector<Mat2c> units(n);
    for (int q = 0; q < n; ++q) {
      if (const Determination* d = cs.determination(q)) {
        const int k = s == 0 ? d->k_set.front()
                             : d->k_set[rng() % d->k_set.size()];
        const double a = s == 0 ? 0.0 : angle(rng);
        const Mat2c x = k ? pauli_x() : Mat2c::Identity();
        units[q] = d->W.adjoint() * phase_gate(a) * x * d->V;
      } else {
        units[q] = s == 0 ? Mat2c::Identity() : haar_unitary(rng);
      }
    }
    const double ov = sweeper.run(units);
    if (ov > best) {
      best = ov;
      best_units = units;
    }
    if (best >= 1.0 - kFallbackAccept) break;
  }
  if (best_overlap) *best_overlap = best;
  if (best_units.empty()) return std::nullopt;
  LocalUnitaryLayer l;
  l.units = best_units;
  const cd ip = psi.amp.dot(apply_local_layer(phi, l).amp);
  if (best_overlap) *best_overlap = std::abs(ip);
  if (1.0 - std::abs(ip) > kFallbackAccept) return std::nullopt;
  l.global_phase = wrap_2pi(-std::arg(ip));
  return l;
}

}  // namespace luq
