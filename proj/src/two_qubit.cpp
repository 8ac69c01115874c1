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

#include "luq/two_qubit.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "luq/geometry.hpp"

namespace luq {

namespace {

const std::array<Axis, 3> kAxes = {Axis::X, Axis::Y, Axis::Z};

void check_dim4(const CMat& m, const char* what) {
  if (m.rows() != 4 || m.cols() != 4)
    throw DimensionError(std::string(what) + " must be 4x4");
}

}  // namespace

Mat4c kron(const Mat2c& a, const Mat2c& b) {
  Mat4c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Mat4c magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const cd i(0, 1);
  Mat4c m = Mat4c::Zero();
  m(0, 0) = s;
  m(3, 0) = s;
  m(0, 1) = -i * s;
  m(3, 1) = i * s;
  m(1, 2) = s;
  m(2, 2) = -s;
  m(1, 3) = -i * s;
  m(2, 3) = -i * s;
  return m;
}

Mat4c ud_matrix(const NonlocalContent& nc) {
  const double c1 = nc.c1, c2 = nc.c2, c3 = nc.c3;
  Eigen::Vector4cd e;
  e << std::polar(1.0, c1 - c2 + c3), std::polar(1.0, -c1 + c2 + c3),
      std::polar(1.0, -c1 - c2 - c3), std::polar(1.0, c1 + c2 - c3);
  const Mat4c mb = magic_basis();
  return mb * e.asDiagonal() * mb.adjoint();
}

CorrelationData correlation_data(const DensityMatrix& rho) {
  check_dim4(rho, "correlation_data input");
  CorrelationData c;
  const Mat2c id = Mat2c::Identity();
  for (int k = 0; k < 3; ++k) {
    c.r[k] = (rho * kron(pauli(kAxes[k]), id)).trace().real();
    c.s[k] = (rho * kron(id, pauli(kAxes[k]))).trace().real();
    for (int l = 0; l < 3; ++l)
      c.lambda(k, l) =
          (rho * kron(pauli(kAxes[k]), pauli(kAxes[l]))).trace().real();
  }
  return c;
}

DensityMatrix from_correlation(const CorrelationData& c) {
  const Mat2c id = Mat2c::Identity();
  Mat4c m = Mat4c::Identity();
  for (int k = 0; k < 3; ++k) {
    m += c.r[k] * kron(pauli(kAxes[k]), id);
    m += c.s[k] * kron(id, pauli(kAxes[k]));
    for (int l = 0; l < 3; ++l)
      m += c.lambda(k, l) * kron(pauli(kAxes[k]), pauli(kAxes[l]));
  }
  return m / 4.0;
}

Mat3 rotation_from_unitary(const Mat2c& u) {
  Mat3 o;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      o(k, l) = 0.5 * (pauli(kAxes[k]) * u * pauli(kAxes[l]) * u.adjoint())
                          .trace()
                          .real();
  return o;
}

Mat2c unitary_from_rotation(const Mat3& o) {
  if ((o * o.transpose() - Mat3::Identity()).norm() > 1e-8)
    throw Error("unitary_from_rotation: matrix is not orthogonal");
  if (o.determinant() < 0)
    throw Error("unitary_from_rotation: determinant is -1");
  Eigen::Vector4d q;  // (q0, q1, q2, q3)
  const double tr = o.trace();
  if (tr >= o(0, 0) && tr >= o(1, 1) && tr >= o(2, 2)) {
    q[0] = 0.5 * std::sqrt(std::max(0.0, 1.0 + tr));
    q[1] = (o(2, 1) - o(1, 2)) / (4 * q[0]);
    q[2] = (o(0, 2) - o(2, 0)) / (4 * q[0]);
    q[3] = (o(1, 0) - o(0, 1)) / (4 * q[0]);
  } else if (o(0, 0) >= o(1, 1) && o(0, 0) >= o(2, 2)) {
    q[1] = 0.5 * std::sqrt(std::max(0.0, 1.0 + o(0, 0) - o(1, 1) - o(2, 2)));
    q[0] = (o(2, 1) - o(1, 2)) / (4 * q[1]);
    q[2] = (o(0, 1) + o(1, 0)) / (4 * q[1]);
    q[3] = (o(0, 2) + o(2, 0)) / (4 * q[1]);
  } else if (o(1, 1) >= o(2, 2)) {
    q[2] = 0.5 * std::sqrt(std::max(0.0, 1.0 - o(0, 0) + o(1, 1) - o(2, 2)));
    q[0] = (o(0, 2) - o(2, 0)) / (4 * q[2]);
    q[1] = (o(0, 1) + o(1, 0)) / (4 * q[2]);
    q[3] = (o(1, 2) + o(2, 1)) / (4 * q[2]);
  } else {
    q[3] = 0.5 * std::sqrt(std::max(0.0, 1.0 - o(0, 0) - o(1, 1) + o(2, 2)));
    q[0] = (o(1, 0) - o(0, 1)) / (4 * q[3]);
    q[1] = (o(0, 2) + o(2, 0)) / (4 * q[3]);
    q[2] = (o(1, 2) + o(2, 1)) / (4 * q[3]);
  }
  q.normalize();
  bool flip = q[0] < 0;
  if (std::abs(q[0]) < 1e-14) {
    for (int k = 1; k < 4; ++k)
      if (std::abs(q[k]) > 1e-14) {
        flip = q[k] < 0;
        break;
      }
  }
  if (flip) q = -q;
  const cd i(0, 1);
  Mat2c u = q[0] * Mat2c::Identity();
  u += -i * (q[1] * pauli(Axis::X) + q[2] * pauli(Axis::Y) +
             q[3] * pauli(Axis::Z));
  return u;
}

std::pair<Mat2c, Mat2c> factor_product(const Mat4c& m, double tol) {
  Mat4c r;
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp)
          r(2 * a + ap, 2 * b + bp) = m(2 * a + b, 2 * ap + bp);
  Eigen::JacobiSVD<Mat4c> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s = svd.singularValues()[0];
  Mat2c a, b;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      a(x, y) = std::sqrt(2.0) * svd.matrixU()(2 * x + y, 0);
      b(x, y) = (s / std::sqrt(2.0)) * std::conj(svd.matrixV()(2 * x + y, 0));
    }
  if ((kron(a, b) - m).norm() > tol * std::max(1.0, m.norm()))
    throw Error("factor_product: matrix is not a product");
  return {a, b};
}

BellDiagonal bell_diagonalize(const DensityMatrix& rho, double tol) {
  check_dim4(rho, "bell_diagonalize input");
  const CMat half = CMat::Identity(2, 2) / 2.0;
  if ((partial_trace(rho, 2, {0}) - half).norm() > tol ||
      (partial_trace(rho, 2, {1}) - half).norm() > tol)
    throw InputError("bell_diagonalize: marginals are not maximally mixed");
  const CorrelationData c = correlation_data(rho);
  SignedSvd sv = signed_svd(c.lambda);
  const double mu = sv.d.cwiseAbs().maxCoeff();
  if (mu > tol && std::abs(mu - std::abs(sv.d[2])) <= tol && sv.d[2] < 0) {
    Mat3 flip = Mat3::Identity();
    flip(0, 0) = flip(1, 1) = -1;
    sv.p = sv.p * flip;
    sv.d = Vec3(-sv.d[0], -sv.d[1], sv.d[2]);
  }
  BellDiagonal out;
  out.u1 = unitary_from_rotation(sv.p.transpose());
  out.u2 = unitary_from_rotation(sv.q.transpose());
  out.d = sv.d;
  return out;
}

CVec condition_on(const CVec& amp, int n, int qubit, int bit) {
  CVec out(amp.size() / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < amp.size(); ++i)
    if (bit_of(i, qubit, n) == bit) out[k++] = amp[i];
  return out;
}

SchmidtSplit schmidt_split(const PureState& psi, int qubit) {
  if (psi.n < 2) throw DimensionError("schmidt_split needs n >= 2");
  if (qubit < 0 || qubit >= psi.n)
    throw DimensionError("qubit index out of range");
  const Mat2c rho = partial_trace(psi, {qubit});
  const Eig2 e = eigh2(rho);
  if (e.values[0] - 0.5 <= kDegeneracy)
    throw DegenerateSplit("reduced state is maximally mixed");
  SchmidtSplit out;
  out.p = std::min(1.0, e.values[0]);
  out.u1 = e.W;
  const PureState rotated = apply_single(psi, qubit, e.W);
  const CVec b0 = condition_on(rotated.amp, psi.n, qubit, 0);
  const CVec b1 = condition_on(rotated.amp, psi.n, qubit, 1);
  out.branch0 = normalized(psi.n - 1, b0);
  if (b1.norm() > 1e-12) {
    out.branch1 = normalized(psi.n - 1, b1);
  } else {
    // Any state orthogonal to branch0.
    CVec v = CVec::Zero(b0.size());
    Eigen::Index k = 0;
    b0.cwiseAbs().minCoeff(&k);
    v[k] = 1.0;
    v -= out.branch0.amp.dot(v) * out.branch0.amp;
    out.branch1 = normalized(psi.n - 1, v);
  }
  return out;
}

namespace {

struct Kak {
  Mat2c a, b, c, d;
  Vec3 cv;
  double phase;

  void shift(int k, int s) {
    cv[k] -= s * kPi / 2;
    c = pauli(kAxes[k]) * c;
    d = pauli(kAxes[k]) * d;
    phase += s * kPi / 2;
  }
  void conj(const Mat2c& v) {
    const Mat3 r = rotation_from_unitary(v);
    Vec3 next = Vec3::Zero();
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) next[k] += r(k, l) * r(k, l) * cv[l];
    cv = next;
    a = a * v.adjoint();
    b = b * v.adjoint();
    c = v * c;
    d = v * d;
  }
  // Negates the two components other than k.
  void flip(int k) {
    const Mat2c p = pauli(kAxes[k]);
    for (int l = 0; l < 3; ++l)
      if (l != k) cv[l] = -cv[l];
    a = a * p;
    c = p * c;
  }
  void swap(int i, int j) {
    const double s = 1.0 / std::sqrt(2.0);
    Mat2c v;
    if (i + j == 1) {
      v = phase_gate(kPi / 2);
    } else if (i + j == 2) {
      v = hadamard();
    } else {
      v << s, cd(0, -s), cd(0, -s), s;
    }
    conj(v);
  }
};

void canonicalize(Kak& k) {
  for (int i = 0; i < 3; ++i) {
    while (k.cv[i] > kPi / 4 + 1e-12) k.shift(i, +1);
    while (k.cv[i] <= -kPi / 4 + 1e-12) k.shift(i, -1);
  }
  for (int pass = 0; pass < 3; ++pass)
    for (int i = 0; i < 2; ++i)
      if (std::abs(k.cv[i]) < std::abs(k.cv[i + 1]) - 1e-14) k.swap(i, i + 1);
  if (k.cv[0] < 0 && k.cv[1] < 0) {
    k.flip(2);
  } else if (k.cv[0] < 0) {
    k.flip(1);
  } else if (k.cv[1] < 0) {
    k.flip(0);
  }
  if (k.cv[0] >= kPi / 4 - 1e-10 && k.cv[2] < 0) {
    k.shift(0, +1);
    k.flip(1);
  }
}

}  // namespace

KakDecomposition nonlocal_content(const Mat4c& u) {
  if (!is_unitary(u, 1e-10))
    throw InputError("nonlocal_content: input is not unitary");
  const cd det = u.determinant();
  const double theta0 = std::arg(det) / 4;
  const Mat4c us = u * std::polar(1.0, -theta0);
  const Mat4c mb = magic_basis();
  const Mat4c up = mb.adjoint() * us * mb;
  const Mat4c m = up.transpose() * up;
  const Eigen::Matrix4d mr = m.real(), mi = m.imag();
  Eigen::Matrix4d o;
  bool ok = false;
  for (double r : {0.6180339887498949, 1.4142135623730951, 2.718281828459045,
                   0.3183098861837907, 5.196152422706632, 0.1234567}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(mr + r * mi);
    o = es.eigenvectors();
    Mat4c t = o.transpose().cast<cd>() * m * o.cast<cd>();
    Mat4c off = t;
    off.diagonal().setZero();
    if (off.norm() <= 1e-10) {
      ok = true;
      break;
    }
  }
  if (!ok) throw Error("nonlocal_content: failed to diagonalize M");
  if (o.determinant() < 0) o.col(0) = -o.col(0);
  const Mat4c t = o.transpose().cast<cd>() * m * o.cast<cd>();
  Eigen::Vector4d th;
  for (int k = 0; k < 4; ++k) th[k] = std::arg(t(k, k)) / 2;
  Eigen::Vector4cd inv;
  for (int k = 0; k < 4; ++k) inv[k] = std::polar(1.0, -th[k]);
  Mat4c k1c = up * o.cast<cd>() * inv.asDiagonal();
  Eigen::Matrix4d k1 = k1c.real();
  if (k1.determinant() < 0) {
    th[0] += kPi;
    k1.col(0) = -k1.col(0);
  }
  const Mat4c left = mb * k1.cast<cd>() * mb.adjoint();
  const Mat4c right = mb * o.transpose().cast<cd>() * mb.adjoint();
  auto [a, b] = factor_product(left, 1e-7);
  auto [c, d] = factor_product(right, 1e-7);
  Kak k;
  k.a = a;
  k.b = b;
  k.c = c;
  k.d = d;
  k.cv = Vec3((th[0] - th[1] - th[2] + th[3]) / 4,
              (-th[0] + th[1] - th[2] + th[3]) / 4,
              (th[0] + th[1] - th[2] - th[3]) / 4);
  k.phase = theta0 + th.sum() / 4;
  canonicalize(k);
  KakDecomposition out;
  out.a = k.a;
  out.b = k.b;
  out.c = k.c;
  out.d = k.d;
  out.nc = NonlocalContent{k.cv[0], k.cv[1], k.cv[2]};
  double ph = std::fmod(k.phase, 2 * kPi);
  if (ph < 0) ph += 2 * kPi;
  out.phase = ph;
  const Mat4c rec = std::polar(1.0, out.phase) * kron(out.a, out.b) *
                    ud_matrix(out.nc) * kron(out.c, out.d);
  if ((rec - u).norm() > 1e-9)
    throw Error("nonlocal_content: reconstruction residual too large");
  return out;
}

namespace {

Eigen::Vector4d realify(const Eigen::Vector4cd& v, const Mat4c& mb,
                        double& phase) {
  const Eigen::Vector4cd t = mb.adjoint() * v;
  cd z = 0;
  for (int k = 0; k < 4; ++k) z += t[k] * t[k];
  phase = std::arg(z) / 2;
  const Eigen::Vector4cd w = t * std::polar(1.0, -phase);
  if (w.imag().norm() > 1e-7)
    throw InputError("max_entangled_basis_map: vector is not maximally entangled");
  return w.real();
}

}  // namespace

BasisMap max_entangled_basis_map(const Mat4c& b1, const Mat4c& b2) {
  for (const Mat4c* b : {&b1, &b2})
    if ((b->adjoint() * *b - Mat4c::Identity()).norm() > 1e-8)
      throw InputError("max_entangled_basis_map: basis is not orthonormal");
  const Mat4c mb = magic_basis();
  Eigen::Matrix4d r1, r2;
  for (int i = 0; i < 4; ++i) {
    double ph = 0;
    r1.col(i) = realify(b1.col(i), mb, ph);
    r2.col(i) = realify(b2.col(i), mb, ph);
  }
  if (r1.determinant() * r2.determinant() < 0) r1.col(0) = -r1.col(0);
  const Eigen::Matrix4d o = r1 * r2.transpose();
  const Mat4c local = mb * o.cast<cd>() * mb.adjoint();
  auto [u1, u2] = factor_product(local, 1e-7);
  BasisMap out;
  out.u1 = u1;
  out.u2 = u2;
  const Mat4c l = kron(u1, u2);
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector4cd img = l * b2.col(i);
    const cd ov = img.dot(b1.col(i));
    out.gammas[i] = std::arg(ov);
    if (std::abs(std::abs(ov) - 1.0) > 1e-9)
      throw Error("max_entangled_basis_map: residual too large");
  }
  return out;
}

PureState choi_state(const NonlocalContent& nc) {
  const Mat4c ud = ud_matrix(nc);
  CVec v(16);
  for (int ij = 0; ij < 4; ++ij)
    for (int kl = 0; kl < 4; ++kl) v[4 * ij + kl] = ud(kl, ij) / 2.0;
  return PureState(4, v);
}

namespace {

struct Group {
  std::vector<int> idx;
  double mu = 0.0;
};

// Orthogonal k x k candidates mapping the first nonzero source onto its
// target, one per determinant class where the class is not forced.
std::vector<Eigen::MatrixXd> align_candidates(
    int k, const std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>& pairs) {
  std::vector<Eigen::MatrixXd> out;
  if (k == 1) {
    out.push_back(Eigen::MatrixXd::Identity(1, 1));
    out.push_back(-Eigen::MatrixXd::Identity(1, 1));
    return out;
  }
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> live;
  for (const auto& p : pairs)
    if (p.first.norm() > 1e-7 || p.second.norm() > 1e-7) live.push_back(p);
  if (k == 2) {
    Eigen::MatrixXd refl = Eigen::MatrixXd::Identity(2, 2);
    refl(1, 1) = -1;
    if (live.empty()) {
      out.push_back(Eigen::MatrixXd::Identity(2, 2));
      out.push_back(refl);
      return out;
    }
    const double ta = std::atan2(live[0].first[1], live[0].first[0]);
    const double tb = std::atan2(live[0].second[1], live[0].second[0]);
    const double t = tb - ta;
    Eigen::MatrixXd rot(2, 2);
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    const double b2 = ta + tb;
    Eigen::MatrixXd ref(2, 2);
    ref << std::cos(b2), std::sin(b2), std::sin(b2), -std::cos(b2);
    out.push_back(rot);
    out.push_back(ref);
    return out;
  }
  if (live.empty()) {
    out.push_back(Eigen::MatrixXd::Identity(3, 3));
    out.push_back(-Eigen::MatrixXd::Identity(3, 3));
    return out;
  }
  Mat3 h = Mat3::Zero();
  for (const auto& p : live) h += Vec3(p.first) * Vec3(p.second).transpose();
  out.push_back(kabsch(h, +1));
  out.push_back(kabsch(h, -1));
  return out;
}

Mat3 embed(const std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>>& blocks) {
  Mat3 m = Mat3::Zero();
  for (const auto& [idx, b] : blocks)
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(idx[i], idx[j]) = b(i, j);
  return m;
}

Eigen::VectorXd pick(const Vec3& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

}  // namespace

Verdict lu_equiv_mixed2(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double tol) {
  check_dim4(rho, "lu_equiv_mixed2 input");
  check_dim4(sigma, "lu_equiv_mixed2 input");
  const double cmp = std::max(tol, 1e-8);
  const Spectrum sr = spectrum(rho), ss = spectrum(sigma);
  if ((sr.values - ss.values).cwiseAbs().maxCoeff() > cmp)
    return NotEquivalent{SpectrumMismatch{{0, 1}, sr.values, ss.values}};
  for (int q = 0; q < 2; ++q) {
    const Spectrum a = spectrum(partial_trace(rho, 2, {q}));
    const Spectrum b = spectrum(partial_trace(sigma, 2, {q}));
    if ((a.values - b.values).cwiseAbs().maxCoeff() > cmp)
      return NotEquivalent{SpectrumMismatch{{q}, a.values, b.values}};
  }
  const CorrelationData cr = correlation_data(rho), cs = correlation_data(sigma);
  const SignedSvd pr = signed_svd(cr.lambda), ps = signed_svd(cs.lambda);
  if ((pr.d - ps.d).cwiseAbs().maxCoeff() > cmp)
    return NotEquivalent{SpectrumMismatch{
        {0, 1}, pr.d, ps.d, "correlation signed singular values"}};
  const Vec3 d = pr.d;
  const Vec3 xr = pr.p.transpose() * cr.r, yr = pr.q.transpose() * cr.s;
  const Vec3 xs = ps.p.transpose() * cs.r, ys = ps.q.transpose() * cs.s;
  const Eigen::Vector3d inv_r(xr.norm(), yr.norm(), xr.dot(d.asDiagonal() * yr));
  const Eigen::Vector3d inv_s(xs.norm(), ys.norm(), xs.dot(d.asDiagonal() * ys));
  const Eigen::Vector2d inv2_r((d.asDiagonal() * yr).norm(),
                               (d.asDiagonal() * xr).norm());
  const Eigen::Vector2d inv2_s((d.asDiagonal() * ys).norm(),
                               (d.asDiagonal() * xs).norm());
  if ((inv_r - inv_s).cwiseAbs().maxCoeff() > 1e-7 ||
      (inv2_r - inv2_s).cwiseAbs().maxCoeff() > 1e-7) {
    Eigen::VectorXd l(5), r(5);
    l << inv_r, inv2_r;
    r << inv_s, inv2_s;
    return NotEquivalent{SpectrumMismatch{{0, 1}, l, r, "correlation invariants"}};
  }

  std::vector<Group> groups;
  const double gtol = 1e-7;
  for (int i = 0; i < 3; ++i) {
    if (!groups.empty() &&
        std::abs(std::abs(d[i]) - groups.back().mu) <= gtol) {
      groups.back().idx.push_back(i);
    } else {
      groups.push_back(Group{{i}, std::abs(d[i])});
    }
  }
  // Per group: list of (O1 block, O2 block) candidates.
  std::vector<std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>>> per;
  for (const Group& g : groups) {
    const int k = static_cast<int>(g.idx.size());
    std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> cands;
    const Eigen::VectorXd gx_s = pick(xs, g.idx), gx_r = pick(xr, g.idx);
    const Eigen::VectorXd gy_s = pick(ys, g.idx), gy_r = pick(yr, g.idx);
    if (g.mu > gtol) {
      Eigen::VectorXd sg(k);
      for (int i = 0; i < k; ++i) sg[i] = d[g.idx[i]] < 0 ? -1.0 : 1.0;
      const Eigen::MatrixXd sm = sg.asDiagonal();
      for (const auto& o1 : align_candidates(
               k, {{gx_s, gx_r}, {sm * gy_s, sm * gy_r}}))
        cands.push_back({o1, sm * o1 * sm});
    } else {
      for (const auto& o1 : align_candidates(k, {{gx_s, gx_r}}))
        for (const auto& o2 : align_candidates(k, {{gy_s, gy_r}}))
          cands.push_back({o1, o2});
    }
    per.push_back(std::move(cands));
  }
  std::vector<std::size_t> pos(per.size(), 0);
  while (true) {
    std::vector<std::pair<std::vector<int>, Eigen::MatrixXd>> b1, b2;
    for (std::size_t g = 0; g < per.size(); ++g) {
      b1.push_back({groups[g].idx, per[g][pos[g]].first});
      b2.push_back({groups[g].idx, per[g][pos[g]].second});
    }
    const Mat3 o1 = embed(b1), o2 = embed(b2);
    if (o1.determinant() > 0 && o2.determinant() > 0) {
      const Mat3 f1 = pr.p * o1 * ps.p.transpose();
      const Mat3 f2 = pr.q * o2 * ps.q.transpose();
      const Mat4c l = kron(unitary_from_rotation(f1), unitary_from_rotation(f2));
      if ((l * sigma * l.adjoint() - rho).norm() <= 1e-8) {
        LocalUnitaryLayer cert;
        cert.units = {unitary_from_rotation(f1), unitary_from_rotation(f2)};
        return Equivalent{cert};
      }
    }
    std::size_t g = 0;
    while (g < per.size() && ++pos[g] == per[g].size()) pos[g++] = 0;
    if (g == per.size()) break;
  }
  return Undecided{"no verified local rotation in the correlation stabilizer", 0.0};
}

}  // namespace luq
