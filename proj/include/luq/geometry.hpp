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

#include "luq/tensor_core.hpp"

namespace luq {

// m = p diag(d) q^T with p, q in SO(3) and d0 >= d1 >= |d2|.
struct SignedSvd {
  Mat3 p;
  Mat3 q;
  Vec3 d;
};

SignedSvd signed_svd(const Mat3& m);

// Orthogonal r with det r = det_sign maximizing tr(r^T sum to from^T),
// where h = sum from to^T.
Mat3 kabsch(const Mat3& h, int det_sign);

struct SymEig3 {
  Vec3 values;   // descending
  Mat3 vectors;  // columns
};

SymEig3 sym_eig3(const Mat3& m);

}  // namespace luq
