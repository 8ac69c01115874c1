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

#include "luq/geometry.hpp"

namespace luq {

SignedSvd signed_svd(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SignedSvd out;
  out.p = svd.matrixU();
  out.q = svd.matrixV();
  out.d = svd.singularValues();
  if (out.p.determinant() < 0) {
    out.p.col(2) = -out.p.col(2);
    out.d[2] = -out.d[2];
  }
  if (out.q.determinant() < 0) {
    out.q.col(2) = -out.q.col(2);
    out.d[2] = -out.d[2];
  }
  return out;
}

Mat3 kabsch(const Mat3& h, int det_sign) {
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU(), v = svd.matrixV();
  Mat3 s = Mat3::Identity();
  const double base = (v * u.transpose()).determinant() < 0 ? -1.0 : 1.0;
  s(2, 2) = det_sign * base;
  return v * s * u.transpose();
}

SymEig3 sym_eig3(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es((m + m.transpose()) / 2);
  SymEig3 out;
  for (int i = 0; i < 3; ++i) {
    out.values[i] = es.eigenvalues()[2 - i];
    out.vectors.col(i) = es.eigenvectors().col(2 - i);
  }
  return out;
}

}  // namespace luq
