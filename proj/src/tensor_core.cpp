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

#include "luq/tensor_core.hpp"

#include <algorithm>
#include <cmath>

namespace luq {

double wrap_2pi(double a) {
  double r = std::fmod(a, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  if (r >= 2 * kPi) r = 0.0;
  return r;
}

double wrap_angle(double a) {
  double r = std::remainder(a, 2 * kPi);
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

LocalUnitaryLayer LocalUnitaryLayer::identity(int n) {
  LocalUnitaryLayer l;
  l.units.assign(n, Mat2c::Identity());
  return l;
}

LocalUnitaryLayer LocalUnitaryLayer::compose(
    const LocalUnitaryLayer& other) const {
  if (other.size() != size())
    throw DimensionError("layer sizes differ in compose");
  LocalUnitaryLayer out;
  out.global_phase = wrap_2pi(global_phase + other.global_phase);
  out.units.resize(units.size());
  for (std::size_t i = 0; i < units.size(); ++i)
    out.units[i] = units[i] * other.units[i];
  return out;
}

LocalUnitaryLayer LocalUnitaryLayer::inverse() const {
  LocalUnitaryLayer out;
  out.global_phase = wrap_2pi(-global_phase);
  for (const auto& u : units) out.units.push_back(u.adjoint());
  return out;
}

LocalUnitaryLayer LocalUnitaryLayer::conjugate() const {
  LocalUnitaryLayer out;
  out.global_phase = wrap_2pi(-global_phase);
  for (const auto& u : units) out.units.push_back(u.conjugate());
  return out;
}

PureState make_state(int n, const CVec& amp, double tol) {
  PureState s(n, amp);
  const double nrm = amp.norm();
  if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > tol)
    throw InputError("state is not normalized (norm " + std::to_string(nrm) +
                     ")");
  return s;
}

PureState normalized(int n, const CVec& amp) {
  const double nrm = amp.norm();
  if (!(nrm > 0)) throw InputError("zero vector cannot be normalized");
  return PureState(n, amp / nrm);
}

PureState product_state(const std::vector<Eigen::Vector2cd>& factors) {
  CVec v = CVec::Ones(1);
  for (const auto& f : factors) {
    CVec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * f[0];
      next[2 * i + 1] = v[i] * f[1];
    }
    v = std::move(next);
  }
  return normalized(static_cast<int>(factors.size()), v);
}

PureState basis_state(int n, Eigen::Index index) {
  CVec v = CVec::Zero(Eigen::Index{1} << n);
  v[index] = 1.0;
  return PureState(n, v);
}

Mat2c pauli(Axis a) {
  Mat2c m;
  switch (a) {
    case Axis::X:
      m << 0, 1, 1, 0;
      break;
    case Axis::Y:
      m << 0, cd(0, -1), cd(0, 1), 0;
      break;
    case Axis::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

Mat2c phase_gate(double alpha) {
  Mat2c m = Mat2c::Identity();
  m(1, 1) = std::polar(1.0, alpha);
  return m;
}

Mat2c pauli_x() { return pauli(Axis::X); }

Mat2c hadamard() {
  Mat2c m;
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Mat2c su2_from_angles(double a, double b, double c) {
  auto rz = [](double t) {
    Mat2c m = Mat2c::Zero();
    m(0, 0) = std::polar(1.0, -t / 2);
    m(1, 1) = std::polar(1.0, t / 2);
    return m;
  };
  Mat2c ry;
  ry << std::cos(b / 2), -std::sin(b / 2), std::sin(b / 2), std::cos(b / 2);
  return rz(a) * ry * rz(c);
}

bool is_unitary(const CMat& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u * u.adjoint() - CMat::Identity(u.rows(), u.cols())).norm() <= tol;
}

PureState apply_single(const PureState& state, int qubit, const Mat2c& u) {
  if (qubit < 0 || qubit >= state.n)
    throw DimensionError("qubit index out of range");
  CVec amp = state.amp;
  apply_single_inplace<double>(amp, state.n, qubit, u);
  return PureState(state.n, std::move(amp));
}

PureState apply_local_layer(const PureState& state,
                            const LocalUnitaryLayer& layer) {
  if (layer.size() != state.n)
    throw DimensionError("layer length does not match qubit count");
  CVec amp = state.amp;
  for (int q = 0; q < state.n; ++q)
    apply_single_inplace<double>(amp, state.n, q, layer.units[q]);
  if (layer.global_phase != 0.0) amp *= std::polar(1.0, layer.global_phase);
  return PureState(state.n, std::move(amp));
}

void validate_subset(const std::vector<int>& keep, int n) {
  if (keep.empty()) throw InvalidSubset("subset is empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw InvalidSubset("qubit index out of range in subset");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw InvalidSubset("subset is not strictly increasing");
  }
}

namespace {

// Splits each basis index into (kept bits in keep order, remaining bits).
void split_indices(int n, const std::vector<int>& keep,
                   std::vector<Eigen::Index>& row,
                   std::vector<Eigen::Index>& col) {
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
  const Eigen::Index d = Eigen::Index{1} << n;
  row.resize(d);
  col.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index r = 0;
    for (int q : keep) r = (r << 1) | bit_of(i, q, n);
    Eigen::Index c = 0;
    for (int q : rest) c = (c << 1) | bit_of(i, q, n);
    row[i] = r;
    col[i] = c;
  }
}

}  // namespace

DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep) {
  validate_subset(keep, state.n);
  const int k = static_cast<int>(keep.size());
  std::vector<Eigen::Index> row, col;
  split_indices(state.n, keep, row, col);
  CMat a = CMat::Zero(Eigen::Index{1} << k, Eigen::Index{1} << (state.n - k));
  for (Eigen::Index i = 0; i < state.dim(); ++i) a(row[i], col[i]) = state.amp[i];
  CMat rho = a * a.adjoint();
  return (rho + rho.adjoint()) / 2.0;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int n,
                            const std::vector<int>& keep) {
  validate_subset(keep, n);
  if (rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows())
    throw DimensionError("density matrix dimension is not 2^n");
  const int k = static_cast<int>(keep.size());
  std::vector<Eigen::Index> row, col;
  split_indices(n, keep, row, col);
  const Eigen::Index d = rho.rows();
  CMat out = CMat::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (col[i] == col[j]) out(row[i], row[j]) += rho(i, j);
  return out;
}

DensityMatrix projector(const PureState& state) {
  return state.amp * state.amp.adjoint();
}

Eig2 eigh2(const Mat2c& h) {
  const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  Vec3 a(h(0, 1).real(), -h(0, 1).imag(),
         0.5 * (h(0, 0).real() - h(1, 1).real()));
  const double r = a.norm();
  Eig2 out;
  out.values << a0 + r, a0 - r;
  out.W = r > 0 ? rotate_axis_to_z(a) : Mat2c::Identity();
  return out;
}

Mat2c rotate_axis_to_z(const Vec3& nvec) {
  const double r = nvec.norm();
  if (!(r > 0)) throw Error("rotate_axis_to_z needs a nonzero axis");
  const Vec3 n = nvec / r;
  cd a, b;
  if (n.z() >= 0) {
    a = 1.0 + n.z();
    b = cd(n.x(), n.y());
  } else {
    a = cd(n.x(), -n.y());
    b = 1.0 - n.z();
  }
  const double nrm = std::sqrt(std::norm(a) + std::norm(b));
  a /= nrm;
  b /= nrm;
  Mat2c w;
  w << std::conj(a), std::conj(b), -b, a;
  return w;
}

HermEig hermitian_eig(const CMat& h) {
  const CMat hs = (h + h.adjoint()) / 2.0;
  HermEig out;
  if (hs.rows() == 2) {
    Eig2 e = eigh2(hs);
    out.values = e.values;
    out.vectors = e.W.adjoint();
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(hs);
  const Eigen::Index d = hs.rows();
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    out.values[i] = es.eigenvalues()[d - 1 - i];
    out.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return out;
}

Spectrum spectrum(const DensityMatrix& rho) {
  return Spectrum{hermitian_eig(rho).values};
}

Spectrum marginal_spectrum(const PureState& state,
                           const std::vector<int>& keep) {
  return spectrum(partial_trace(state, keep));
}

double entropy(const DensityMatrix& rho) {
  const Spectrum s = spectrum(rho);
  double h = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    const double l = s.values[i];
    if (l > 0) h -= l * std::log2(l);
  }
  return std::max(0.0, h);
}

double pauli_expectation(const PureState& state, int qubit, Axis axis) {
  const PureState t = apply_single(state, qubit, pauli(axis));
  return state.amp.dot(t.amp).real();
}

PureState conjugate_state(const PureState& psi) {
  return conjugate_state_t<double>(psi);
}

cd inner(const PureState& psi, const PureState& phi) {
  if (psi.n != phi.n) throw DimensionError("states have different n");
  return psi.amp.dot(phi.amp);
}

bool state_equal_up_to_phase(const PureState& psi, const PureState& phi,
                             double tol) {
  return 1.0 - std::abs(inner(psi, phi)) <= tol;
}

Vec3 bloch(const Mat2c& rho) {
  return Vec3(2 * rho(0, 1).real(), -2 * rho(0, 1).imag(),
              (rho(0, 0) - rho(1, 1)).real());
}

Mat2c from_bloch(const Vec3& r) {
  Mat2c m = Mat2c::Identity();
  m += r.x() * pauli(Axis::X) + r.y() * pauli(Axis::Y) + r.z() * pauli(Axis::Z);
  return m / 2.0;
}

void validate_density(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix not square");
  const Eigen::Index d = rho.rows();
  if (d < 2 || (d & (d - 1)) != 0)
    throw DimensionError("density matrix dimension is not a power of two");
  if ((rho - rho.adjoint()).norm() > tol)
    throw InputError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cd(1.0)) > tol)
    throw InputError("density matrix trace is not 1");
  const Spectrum s = spectrum(rho);
  if (s.values[d - 1] < -tol)
    throw InputError("density matrix is not positive semidefinite");
}

}  // namespace luq
