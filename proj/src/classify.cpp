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


#include <algorithm>
#include <array>
#include <cmath>

#include "decider_internal.hpp"
#include "luq/geometry.hpp"
#include "luq/phase_solver.hpp"

namespace luq {

using namespace detail;

namespace {

Eigen::VectorXd single_entropies(const PureState& psi) {
  Eigen::VectorXd e(psi.n);
  for (int q = 0; q < psi.n; ++q) e[q] = entropy(partial_trace(psi, {q}));
  return e;
}

bool all_singles_mixed(const PureState& psi) {
  for (int q = 0; q < psi.n; ++q)
    if (!maximally_mixed(partial_trace(psi, {q}))) return false;
  return true;
}

// First pair (i, j) with rho_ij = 1/4, or empty.
std::vector<int> mixed_pair(const PureState& psi) {
  for (int i = 0; i < psi.n; ++i)
    for (int j = i + 1; j < psi.n; ++j)
      if (maximally_mixed(partial_trace(psi, {i, j}))) return {i, j};
  return {};
}

std::vector<int> complete_perm(const std::vector<int>& front, int n) {
  std::vector<int> perm = front;
  for (int q = 0; q < n; ++q)
    if (std::find(front.begin(), front.end(), q) == front.end()) perm.push_back(q);
  return perm;
}

// Rows index the first pair, columns the second.
Mat4c pair_matrix(const PureState& s) {
  Mat4c m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = s.amp[4 * r + c];
  return m;
}

// psi = layer * choi_state(nc) for psi with rho_{01} = 1/4.
std::pair<NonlocalContent, LocalUnitaryLayer> choi_form(const PureState& psi) {
  const KakDecomposition k = nonlocal_content(2.0 * pair_matrix(psi).transpose());
  LocalUnitaryLayer l;
  l.global_phase = k.phase;
  l.units = {k.c.transpose(), k.d.transpose(), k.a, k.b};
  return {k.nc, l};
}

// Signed Werner parameter of rho_{01} in Bell-diagonal frame, if Werner.
struct WernerFrame {
  Mat2c u1, u2;
  double c = 0.0;
};

std::optional<WernerFrame> werner_frame_of(const DensityMatrix& rho) {
  try {
    const BellDiagonal bd = bell_diagonalize(rho);
    if (std::abs(bd.d[0] - bd.d[1]) > 1e-8 || std::abs(bd.d[1] - bd.d[2]) > 1e-8)
      return std::nullopt;
    if (std::abs(bd.d[0]) <= kInvariantTol) return std::nullopt;
    return WernerFrame{bd.u1, bd.u2, bd.d.mean()};
  } catch (const Error&) {
    return std::nullopt;
  }
}

// First pair with a Werner marginal, given all singles mixed.
std::vector<int> werner_pair(const PureState& psi) {
  for (int j = 1; j < psi.n; ++j)
    if (werner_frame_of(partial_trace(psi, {0, j}))) return {0, j};
  return {};
}

// Magic-basis triplet rotation of u (x) u, indices (0, 1, 3), equals
// kP^T O(u) kP with O(u) the Bloch rotation.
Mat3 triplet_map() {
  Mat3 p;
  p << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  return p;
}

Mat2c unitary_from_triplet(const Mat3& o) {
  const Mat3 p = triplet_map();
  return unitary_from_rotation(p * o * p.transpose());
}

constexpr std::array<int, 3> kTriplet = {0, 1, 3};

// psi (pairs (0,1) and (2,3) in Werner frames) has magic coefficients
// diag(T, m); T / sqrt(w) = q diag(d) z with q, z in SO(3).
struct WernerForm {
  Mat3 q, z;
  Eigen::Vector3cd d;
  cd m;
  double w = 0.0;
};

std::optional<WernerForm> werner_form(const PureState& framed) {
  const Mat4c mb = magic_basis();
  const Mat4c c = mb.adjoint() * pair_matrix(framed) * mb.conjugate();
  Eigen::Matrix3cd t;
  double off = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) t(a, b) = c(kTriplet[a], kTriplet[b]);
    off += std::norm(c(kTriplet[a], 2)) + std::norm(c(2, kTriplet[a]));
  }
  if (off > 1e-12) return std::nullopt;
  WernerForm f;
  f.m = c(2, 2);
  f.w = t.squaredNorm() / 3.0;
  if (f.w <= 1e-12) return std::nullopt;
  const Eigen::Matrix3cd u3 = t / std::sqrt(f.w);
  const Eigen::Matrix3cd s = u3 * u3.transpose();
  const double r = 0.5772156649;
  const SymEig3 e = sym_eig3(s.real() + r * s.imag());
  f.q = e.vectors;
  const Eigen::Matrix3cd dd = f.q.transpose() * s * f.q;
  if ((dd - Eigen::Matrix3cd(dd.diagonal().asDiagonal())).norm() > 1e-7)
    return std::nullopt;
  for (int k = 0; k < 3; ++k) f.d[k] = std::sqrt(dd(k, k));
  if (f.q.determinant() < 0) f.q.col(0) *= -1.0;
  const Eigen::Matrix3cd zc =
      f.d.cwiseInverse().asDiagonal() * (f.q.transpose() * u3);
  if (zc.imag().norm() > 1e-7) return std::nullopt;
  f.z = zc.real();
  if (f.z.determinant() < 0) {
    f.z.row(0) *= -1.0;
    f.d[0] = -f.d[0];
  }
  return f;
}

struct SignedPerm {
  Mat3 r1, r2;  // d_psi = e^{i theta} r1 diag(d_phi) r2
  double theta = 0.0;
};

Mat3 perm_matrix(const std::array<int, 3>& p) {
  Mat3 m = Mat3::Zero();
  for (int k = 0; k < 3; ++k) m(k, p[k]) = 1.0;
  return m;
}

std::optional<SignedPerm> match_forms(const WernerForm& a, const WernerForm& b) {
  std::array<int, 3> p = {0, 1, 2};
  do {
    for (int s = 0; s < 4; ++s) {
      const Vec3 sigma(s & 1 ? -1.0 : 1.0, s & 2 ? -1.0 : 1.0,
                       (s == 1 || s == 2) ? -1.0 : 1.0);
      Eigen::Vector3cd target;
      for (int k = 0; k < 3; ++k) target[k] = sigma[k] * b.d[p[k]];
      double theta = 0.0;
      if (std::abs(a.m) > kInvariantTol && std::abs(b.m) > kInvariantTol)
        theta = std::arg(a.m / b.m);
      else
        theta = std::arg(a.d[0] / target[0]);
      const cd ph = std::polar(1.0, theta);
      if ((a.d - ph * target).norm() > kParamTol * 10) continue;
      if (std::abs(a.m - ph * b.m) > kParamTol * 10) continue;
      Mat3 pi = perm_matrix(p);
      if (pi.determinant() < 0) pi = -pi;
      return SignedPerm{Mat3(sigma.asDiagonal()) * pi, pi.transpose(), theta};
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

BellPairParams canonical_params(const WernerForm& f) {
  BellPairParams best;
  bool have = false;
  std::array<int, 3> p = {0, 1, 2};
  do {
    for (int s = 0; s < 8; ++s) {
      Eigen::Vector3cd dv;
      for (int k = 0; k < 3; ++k) dv[k] = (s >> k & 1 ? -1.0 : 1.0) * f.d[p[k]];
      const cd ph = std::conj(dv[0]) / std::abs(dv[0]);
      dv *= ph;
      BellPairParams c;
      c.lambda = std::clamp(1.0 - std::norm(f.m) / f.w, 0.0, 1.0);
      c.gamma1 = wrap_2pi(std::arg(-dv[1]));
      c.gamma2 = wrap_2pi(std::arg(-dv[2]));
      if (c.gamma1 > 2 * kPi - kParamTol) c.gamma1 = 0.0;
      if (c.gamma2 > 2 * kPi - kParamTol) c.gamma2 = 0.0;
      if (c.gamma1 >= kPi || c.gamma2 >= kPi) continue;
      // Odd sign flips carry an extra global -1 onto the singlet.
      const double odd = (s == 1 || s == 2 || s == 4 || s == 7) ? -1.0 : 1.0;
      c.gamma3 =
          std::abs(f.m) > kInvariantTol ? wrap_2pi(std::arg(odd * ph * f.m)) : 0.0;
      if (c.gamma3 > 2 * kPi - kParamTol) c.gamma3 = 0.0;
      const bool better =
          !have || c.gamma1 < best.gamma1 - kParamTol ||
          (std::abs(c.gamma1 - best.gamma1) <= kParamTol &&
           (c.gamma2 < best.gamma2 - kParamTol ||
            (std::abs(c.gamma2 - best.gamma2) <= kParamTol &&
             c.gamma3 < best.gamma3 - kParamTol)));
      if (better) {
        best = c;
        have = true;
      }
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

// Pair frames for (0,1) and (2,3) of a state with a Werner pair (0,1).
std::optional<LocalUnitaryLayer> werner_frames(const PureState& s) {
  const auto f1 = werner_frame_of(partial_trace(s, {0, 1}));
  const auto f2 = werner_frame_of(partial_trace(s, {2, 3}));
  if (!f1 || !f2) return std::nullopt;
  LocalUnitaryLayer l;
  l.units = {f1->u1, f1->u2, f2->u1, f2->u2};
  return l;
}

std::optional<BellPairParams> werner_params(const PureState& psi,
                                            const std::vector<int>& pair) {
  const PureState s = permute_qubits(psi, complete_perm(pair, 4));
  const auto fr = werner_frames(s);
  if (!fr) return std::nullopt;
  const auto f = werner_form(apply_local_layer(s, *fr));
  if (!f) return std::nullopt;
  BellPairParams bp = canonical_params(*f);
  bp.pair = pair;
  return bp;
}

Verdict nonlocal_route(const PureState& psi, const PureState& phi,
                       const std::vector<int>& pair, DecisionLog* log) {
  if (log) log->route = "4-qubit 2b nonlocal content";
  const std::vector<int> perm = complete_perm(pair, 4);
  const PureState a = permute_qubits(psi, perm), b = permute_qubits(phi, perm);
  const auto [nca, la] = choi_form(a);
  const auto [ncb, lb] = choi_form(b);
  if ((nca.vec() - ncb.vec()).norm() > kParamTol)
    return NotEquivalent{NonlocalContentMismatch{nca.vec(), ncb.vec()}};
  const LocalUnitaryLayer l = unpermute_layer(la.compose(lb.inverse()), perm);
  if (auto acc = accept(psi, phi, l)) return *acc;
  return Undecided{"nonlocal content certificate failed verification",
                   verify_certificate(psi, phi, l)};
}

std::optional<Verdict> werner_route(const PureState& psi, const PureState& phi,
                                    const std::vector<int>& pair,
                                    DecisionLog* log) {
  const std::vector<int> perm = complete_perm(pair, 4);
  const PureState a = permute_qubits(psi, perm), b = permute_qubits(phi, perm);
  const auto fa = werner_frames(a), fb = werner_frames(b);
  if (!fa || !fb) return std::nullopt;
  const auto wa = werner_form(apply_local_layer(a, *fa));
  const auto wb = werner_form(apply_local_layer(b, *fb));
  if (!wa || !wb) return std::nullopt;
  if (log) log->route = "4-qubit 2a Werner pair";
  const auto sp = match_forms(*wa, *wb);
  if (!sp) {
    BellPairParams pa = canonical_params(*wa), pb = canonical_params(*wb);
    return NotEquivalent{BellPairParamMismatch{pa.vec(), pb.vec()}};
  }
  const Mat3 o1 = wa->q * sp->r1 * wb->q.transpose();
  const Mat3 o2 = wa->z.transpose() * sp->r2.transpose() * wb->z;
  const Mat2c u1 = unitary_from_triplet(o1), u2 = unitary_from_triplet(o2);
  LocalUnitaryLayer k;
  k.global_phase = sp->theta;
  k.units = {u1, u1, u2, u2};
  const LocalUnitaryLayer l =
      unpermute_layer(fa->inverse().compose(k).compose(*fb), perm);
  if (auto acc = accept(psi, phi, l)) return *acc;
  note(log, "Werner pair certificate failed verification");
  return std::nullopt;
}

}  // namespace

ThreeQubitClass classify_3(const PureState& psi) {
  if (psi.n != 3) throw DimensionError("classify_3 needs n = 3");
  ThreeQubitClass c;
  c.entropies = single_entropies(psi);
  if (all_singles_mixed(psi)) {
    c.label = "3-1";
    return c;
  }
  if (product_qubit(psi) >= 0) {
    c.label = "3-2";
    return c;
  }
  for (int q = 0; q < 3; ++q) {
    if (maximally_mixed(partial_trace(psi, {q}))) continue;
    const SchmidtSplit s = schmidt_split(psi, q);
    if (maximally_mixed(partial_trace(s.branch0, {0})) &&
        maximally_mixed(partial_trace(s.branch1, {0}))) {
      c.label = "3-3a";
      c.p = s.p;
      c.anchor = q;
      return c;
    }
  }
  c.label = "3-3b";
  return c;
}

FourQubitClass classify_4(const PureState& psi) {
  if (psi.n != 4) throw DimensionError("classify_4 needs n = 4");
  FourQubitClass c;
  c.entropies = single_entropies(psi);
  if (all_singles_mixed(psi)) {
    c.mixed_pair = mixed_pair(psi);
    if (!c.mixed_pair.empty()) {
      c.label = "4-2b";
      const PureState s = permute_qubits(psi, complete_perm(c.mixed_pair, 4));
      c.nc = choi_form(s).first;
      return c;
    }
    c.label = "4-2a";
    const std::vector<int> wp = werner_pair(psi);
    if (!wp.empty()) c.werner = werner_params(psi, wp);
    return c;
  }
  const DensityMatrix half = Mat2c::Identity() / 2.0;
  for (int i = 0; i < 4; ++i) {
    const DensityMatrix ri = partial_trace(psi, {i});
    if (maximally_mixed(ri)) continue;
    for (int j = 0; j < 4; ++j) {
      if (j == i) continue;
      const DensityMatrix rij = partial_trace(psi, {std::min(i, j), std::max(i, j)});
      const CMat prod = i < j ? kron(ri, half) : kron(half, ri);
      if ((rij - prod).norm() > 1e-8) {
        c.label = "4-1a";
        return c;
      }
    }
  }
  c.label = "4-1b";
  return c;
}

Verdict decide_lu_3(const PureState& psi, const PureState& phi,
                    const DecideOptions& opts, DecisionLog* log) {
  if (psi.n != 3 || phi.n != 3) throw DimensionError("decide_lu_3 needs n = 3");
  if (auto v = single_spectra_check(psi, phi)) return *v;
  if (auto v = peel_product(psi, phi, opts, log)) return *v;
  if (auto v = pair_spectra_check(psi, phi)) return *v;
  if (log && log->route.empty())
    log->route = "3-qubit " + classify_3(psi).label + " pin engine";
  return engine_decide(psi, phi, opts, log);
}

Verdict decide_lu_4(const PureState& psi, const PureState& phi,
                    const DecideOptions& opts, DecisionLog* log) {
  if (psi.n != 4 || phi.n != 4) throw DimensionError("decide_lu_4 needs n = 4");
  if (auto v = single_spectra_check(psi, phi)) return *v;
  if (auto v = peel_product(psi, phi, opts, log)) return *v;
  if (all_singles_mixed(psi)) {
    const std::vector<int> pair = mixed_pair(psi);
    if (!pair.empty()) {
      if (!maximally_mixed(partial_trace(phi, pair))) {
        SpectrumMismatch m;
        m.subset = pair;
        m.lhs = marginal_spectrum(psi, pair).values;
        m.rhs = marginal_spectrum(phi, pair).values;
        return NotEquivalent{m};
      }
      return nonlocal_route(psi, phi, pair, log);
    }
  }
  if (auto v = pair_spectra_check(psi, phi)) return *v;
  if (all_singles_mixed(psi)) {
    const std::vector<int> wp = werner_pair(psi);
    if (!wp.empty())
      if (auto v = werner_route(psi, phi, wp, log)) return *v;
  }
  if (log && log->route.empty())
    log->route = "4-qubit " + classify_4(psi).label + " pin engine";
  return engine_decide(psi, phi, opts, log);
}

}  // namespace luq
