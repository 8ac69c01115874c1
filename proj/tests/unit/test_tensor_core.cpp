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


#include "doctest.h"
#include "luq/tensor_core.hpp"
#include "oracles.hpp"

using namespace luq;

TEST_CASE("partial trace matches explicit index sums") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    const CVec v = oracle::random_vector(n, rng);
    const PureState s(n, v);
    for (int mask = 1; mask < (1 << n); ++mask) {
      std::vector<int> keep;
      for (int q = 0; q < n; ++q)
        if (mask >> (n - 1 - q) & 1) keep.push_back(q);
      CHECK((partial_trace(s, keep) - oracle::reduce(v, n, keep)).norm() < 1e-12);
    }
  }
}

TEST_CASE("mixed partial trace agrees with the pure one") {
  std::mt19937_64 rng(12);
  const CVec v = oracle::random_vector(3, rng);
  const CMat rho = v * v.adjoint();
  CHECK((partial_trace(rho, 3, {0, 2}) - oracle::reduce(v, 3, {0, 2})).norm() < 1e-12);
}

TEST_CASE("local layer equals the Kronecker product operator") {
  std::mt19937_64 rng(13);
  for (int n = 1; n <= 5; ++n) {
    const CVec v = oracle::random_vector(n, rng);
    LocalUnitaryLayer l;
    l.global_phase = 0.37;
    l.units = oracle::haar_layer(n, rng);
    const CVec want = std::polar(1.0, 0.37) * oracle::apply(l.units, v);
    CHECK((apply_local_layer(PureState(n, v), l).amp - want).norm() < 1e-12);
  }
}

TEST_CASE("layer compose, inverse and conjugate") {
  std::mt19937_64 rng(14);
  const int n = 3;
  LocalUnitaryLayer a, b;
  a.global_phase = 0.2;
  b.global_phase = -1.1;
  a.units = oracle::haar_layer(n, rng);
  b.units = oracle::haar_layer(n, rng);
  const PureState s(n, oracle::random_vector(n, rng));
  const PureState ab = apply_local_layer(s, a.compose(b));
  const PureState seq = apply_local_layer(apply_local_layer(s, b), a);
  CHECK((ab.amp - seq.amp).norm() < 1e-12);
  const PureState back = apply_local_layer(apply_local_layer(s, a), a.inverse());
  CHECK((back.amp - s.amp).norm() < 1e-12);
  const PureState c = apply_local_layer(conjugate_state(s), a.conjugate());
  CHECK((c.amp - apply_local_layer(s, a).amp.conjugate()).norm() < 1e-12);
}

TEST_CASE("bloch vector and axis rotation") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20; ++t) {
    const CVec v = oracle::random_vector(2, rng);
    const Mat2c rho = oracle::reduce(v, 2, {0});
    const Vec3 r = bloch(rho);
    CHECK((from_bloch(r) - rho).norm() < 1e-12);
    const Mat2c w = rotate_axis_to_z(r);
    const Mat2c d = w * rho * w.adjoint();
    CHECK(std::abs(d(0, 1)) < 1e-12);
    CHECK(d(0, 0).real() >= d(1, 1).real() - 1e-12);
  }
}

TEST_CASE("eigen helpers are descending and reconstruct") {
  std::mt19937_64 rng(16);
  const CVec v = oracle::random_vector(3, rng);
  const CMat rho = oracle::reduce(v, 3, {0, 1});
  const HermEig e = hermitian_eig(rho);
  for (Eigen::Index k = 1; k < e.values.size(); ++k) CHECK(e.values[k - 1] >= e.values[k]);
  CHECK((e.vectors * e.values.cast<cd>().asDiagonal() * e.vectors.adjoint() - rho).norm() < 1e-12);
  const Eig2 e2 = eigh2(oracle::reduce(v, 3, {2}));
  const Mat2c d = e2.W * oracle::reduce(v, 3, {2}) * e2.W.adjoint();
  CHECK(std::abs(d(0, 0).real() - e2.values[0]) < 1e-12);
  CHECK(std::abs(d(1, 0)) < 1e-12);
}

TEST_CASE("entropy of product and maximally entangled marginals") {
  CVec bell = CVec::Zero(4);
  bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
  CHECK(entropy(partial_trace(PureState(2, bell), {0})) == doctest::Approx(1.0));
  CHECK(entropy(partial_trace(basis_state(2, 1), {1})) == doctest::Approx(0.0));
}

TEST_CASE("pauli expectations") {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState plus(1, Eigen::Vector2cd(s, s));
  const PureState plus_i(1, Eigen::Vector2cd(s, cd(0, s)));
  CHECK(pauli_expectation(plus, 0, Axis::X) == doctest::Approx(1.0));
  CHECK(pauli_expectation(plus_i, 0, Axis::Y) == doctest::Approx(1.0));
  CHECK(pauli_expectation(basis_state(1, 1), 0, Axis::Z) == doctest::Approx(-1.0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(make_state(2, CVec::Ones(4)), InputError);
  CHECK_THROWS_AS(PureState(2, CVec::Ones(3)), DimensionError);
  CHECK_THROWS_AS(PureState(0, CVec::Ones(1)), DimensionError);
  CHECK_THROWS_AS(validate_subset({1, 0}, 2), InvalidSubset);
  CHECK_THROWS_AS(validate_subset({2}, 2), InvalidSubset);
  CHECK_THROWS_AS(partial_trace(basis_state(2, 0), {0, 0}), InvalidSubset);
  CHECK_NOTHROW(make_state(1, Eigen::Vector2cd(1.0, 1e-12)));
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_2pi(-0.5) == doctest::Approx(2 * kPi - 0.5));
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
}

TEST_CASE("state equality up to phase") {
  std::mt19937_64 rng(17);
  const PureState s(3, oracle::random_vector(3, rng));
  CHECK(state_equal_up_to_phase(s, PureState(3, std::polar(1.0, 2.0) * s.amp)));
  CHECK_FALSE(state_equal_up_to_phase(s, PureState(3, oracle::random_vector(3, rng))));
}
