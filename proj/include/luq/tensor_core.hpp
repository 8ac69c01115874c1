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

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace luq {

// Qubits are 0-based in the library API. Qubit 0 is the most significant bit
// of a basis index, so index i encodes bits (i_0 ... i_{n-1}) big-endian.

template <typename S>
using CVecT = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, 1>;
template <typename S>
using CMatT = Eigen::Matrix<std::complex<S>, Eigen::Dynamic, Eigen::Dynamic>;

using cd = std::complex<double>;
using CVec = CVecT<double>;
using CMat = CMatT<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using DensityMatrix = CMat;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTolNorm = 1e-9;
constexpr double kTol = 1e-9;
constexpr double kDegeneracy = 1e-9;
constexpr int kMaxQubits = 12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DimensionError : public Error {
 public:
  using Error::Error;
};
class InvalidSubset : public Error {
 public:
  using Error::Error;
};
class InputError : public Error {
 public:
  using Error::Error;
};
class NonGenericState : public Error {
 public:
  using Error::Error;
};
class DegenerateSplit : public Error {
 public:
  using Error::Error;
};
class NotApplicable : public Error {
 public:
  using Error::Error;
};
class ProductObstruction : public Error {
 public:
  using Error::Error;
};

template <typename S>
struct BasicPureState {
  int n = 0;
  CVecT<S> amp;

  BasicPureState() = default;
  BasicPureState(int n_, CVecT<S> amp_) : n(n_), amp(std::move(amp_)) {
    if (n < 1 || n > kMaxQubits)
      throw DimensionError("qubit count out of range: " + std::to_string(n));
    if (amp.size() != (Eigen::Index{1} << n))
      throw DimensionError("amplitude vector length is not 2^n");
  }

  Eigen::Index dim() const { return amp.size(); }
};

using PureState = BasicPureState<double>;

struct LocalUnitaryLayer {
  double global_phase = 0.0;
  std::vector<Mat2c> units;

  static LocalUnitaryLayer identity(int n);
  int size() const { return static_cast<int>(units.size()); }
  // (this * other) applies other first.
  LocalUnitaryLayer compose(const LocalUnitaryLayer& other) const;
  LocalUnitaryLayer inverse() const;
  LocalUnitaryLayer conjugate() const;
};

struct Spectrum {
  Eigen::VectorXd values;
};

enum class Axis { X, Y, Z };

struct Eig2 {
  Eigen::Vector2d values;  // descending
  Mat2c W;                 // W H W^dagger = diag(values)
};

struct HermEig {
  Eigen::VectorXd values;  // descending
  CMat vectors;            // columns, matching values
};

inline int bit_of(Eigen::Index index, int qubit, int n) {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1);
}

// Validates dimension and norm (|norm - 1| <= tol).
PureState make_state(int n, const CVec& amp, double tol = kTolNorm);
PureState normalized(int n, const CVec& amp);
PureState product_state(const std::vector<Eigen::Vector2cd>& factors);
PureState basis_state(int n, Eigen::Index index);

Mat2c pauli(Axis a);
Mat2c phase_gate(double alpha);  // diag(1, e^{i alpha})
Mat2c pauli_x();
Mat2c hadamard();
Mat2c su2_from_angles(double a, double b, double c);
bool is_unitary(const CMat& u, double tol = 1e-10);

template <typename S>
void apply_single_inplace(CVecT<S>& amp, int n, int qubit,
                          const Eigen::Matrix<std::complex<S>, 2, 2>& u) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - qubit);
  const Eigen::Index d = amp.size();
  for (Eigen::Index base = 0; base < d; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = base + off;
      const Eigen::Index i1 = i0 + stride;
      const std::complex<S> a0 = amp[i0];
      const std::complex<S> a1 = amp[i1];
      amp[i0] = u(0, 0) * a0 + u(0, 1) * a1;
      amp[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

template <typename S>
BasicPureState<S> conjugate_state_t(const BasicPureState<S>& psi) {
  return BasicPureState<S>(psi.n, psi.amp.conjugate());
}

PureState apply_local_layer(const PureState& state,
                            const LocalUnitaryLayer& layer);
PureState apply_single(const PureState& state, int qubit, const Mat2c& u);

// Reduced state on keep (strictly increasing, 0-based), ordered as in keep.
DensityMatrix partial_trace(const PureState& state,
                            const std::vector<int>& keep);
DensityMatrix partial_trace(const DensityMatrix& rho, int n,
                            const std::vector<int>& keep);
DensityMatrix projector(const PureState& state);

Spectrum marginal_spectrum(const PureState& state,
                           const std::vector<int>& keep);
Spectrum spectrum(const DensityMatrix& rho);
double entropy(const DensityMatrix& rho);
double pauli_expectation(const PureState& state, int qubit, Axis axis);
PureState conjugate_state(const PureState& psi);
cd inner(const PureState& psi, const PureState& phi);
bool state_equal_up_to_phase(const PureState& psi, const PureState& phi,
                             double tol = kTol);

Eig2 eigh2(const Mat2c& h);
HermEig hermitian_eig(const CMat& h);
Vec3 bloch(const Mat2c& rho);
Mat2c from_bloch(const Vec3& r);
// Unitary W with W (n.sigma) W^dagger = |n| sigma_z; n must be nonzero.
Mat2c rotate_axis_to_z(const Vec3& n);

double wrap_angle(double a);  // into (-pi, pi]
double wrap_2pi(double a);    // into [0, 2 pi)

void validate_subset(const std::vector<int>& keep, int n);
void validate_density(const DensityMatrix& rho, double tol = 1e-10);

}  // namespace luq
