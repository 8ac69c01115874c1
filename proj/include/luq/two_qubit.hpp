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

#include <utility>

#include "luq/tensor_core.hpp"
#include "luq/verdict.hpp"

namespace luq {

// rho = (1/4)(1 + r.sigma x 1 + 1 x s.sigma + sum_kl lambda_kl sigma_k x
// sigma_l)
struct CorrelationData {
  Vec3 r = Vec3::Zero();
  Vec3 s = Vec3::Zero();
  Mat3 lambda = Mat3::Zero();
};

// Canonical phases of exp(i(c1 XX + c2 YY + c3 ZZ)).
struct NonlocalContent {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  Vec3 vec() const { return Vec3(c1, c2, c3); }
};

// U = e^{i phase} (a x b) U_d(nc) (c x d)
struct KakDecomposition {
  Mat2c a, b, c, d;
  NonlocalContent nc;
  double phase = 0.0;
};

// (u1 x u2) rho (u1 x u2)^dagger = (1/4)(1 + sum_k d_k sigma_k x sigma_k)
struct BellDiagonal {
  Mat2c u1 = Mat2c::Identity();
  Mat2c u2 = Mat2c::Identity();
  Vec3 d = Vec3::Zero();
};

// Rotation of qubit to its Schmidt frame, then
// psi' = sqrt(p)|0>|branch0> + sqrt(1-p)|1>|branch1>.
struct SchmidtSplit {
  double p = 1.0;
  PureState branch0;
  PureState branch1;
  Mat2c u1 = Mat2c::Identity();
};

// b1.col(i) = e^{i gammas(i)} (u1 x u2) b2.col(i)
struct BasisMap {
  Mat2c u1 = Mat2c::Identity();
  Mat2c u2 = Mat2c::Identity();
  Eigen::Vector4d gammas = Eigen::Vector4d::Zero();
};

Mat4c kron(const Mat2c& a, const Mat2c& b);
// Columns: Phi+, -i Phi-, Psi-, -i Psi+.
Mat4c magic_basis();
Mat4c ud_matrix(const NonlocalContent& nc);

CorrelationData correlation_data(const DensityMatrix& rho);
DensityMatrix from_correlation(const CorrelationData& c);

Mat3 rotation_from_unitary(const Mat2c& u);
Mat2c unitary_from_rotation(const Mat3& o);

// Splits a product 4x4 matrix into a x b with a unitary; throws if not
// product within tol.
std::pair<Mat2c, Mat2c> factor_product(const Mat4c& m, double tol = 1e-8);

BellDiagonal bell_diagonalize(const DensityMatrix& rho, double tol = 1e-9);
SchmidtSplit schmidt_split(const PureState& psi, int qubit);
Verdict lu_equiv_mixed2(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double tol = 1e-9);
KakDecomposition nonlocal_content(const Mat4c& u);
BasisMap max_entangled_basis_map(const Mat4c& b1, const Mat4c& b2);
PureState choi_state(const NonlocalContent& nc);

// Unnormalized <bit|_qubit psi on the remaining qubits.
CVec condition_on(const CVec& amp, int n, int qubit, int bit);

}  // namespace luq
