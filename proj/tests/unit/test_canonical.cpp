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
#include "luq/canonical.hpp"
#include "luq/catalog.hpp"
#include "oracles.hpp"

using namespace luq;

TEST_CASE("trace decomposition diagonalizes and sorts every marginal") {
  std::mt19937_64 rng(51);
  for (int n = 2; n <= 5; ++n) {
    const PureState s(n, oracle::random_vector(n, rng));
    const TraceDecomposition td = trace_decompose(s);
    CHECK(td.generic);
    CHECK(td.sorted);
    CHECK((apply_local_layer(s, td.layer).amp - td.state.amp).norm() < 1e-12);
    for (int q = 0; q < n; ++q) {
      const CMat r = oracle::reduce(td.state.amp, n, {q});
      CHECK(std::abs(r(0, 1)) < 1e-10);
      CHECK(r(0, 0).real() > r(1, 1).real());
    }
  }
  const TraceDecomposition g = trace_decompose(ghz(3));
  CHECK_FALSE(g.generic);
  CHECK(g.flagged[0]);
}

TEST_CASE("standard form is an orbit invariant") {
  std::mt19937_64 rng(52);
  for (int n = 2; n <= 5; ++n) {
    const PureState s(n, oracle::random_vector(n, rng));
    LocalUnitaryLayer l;
    l.global_phase = 1.3;
    l.units = oracle::haar_layer(n, rng);
    const PureState t = apply_local_layer(s, l);
    const auto [fs, ls] = standard_form(s);
    const auto [ft, lt] = standard_form(t);
    CHECK((fs.amp - ft.amp).norm() < 1e-7);
    CHECK((apply_local_layer(s, ls).amp - fs.amp).norm() < 1e-10);
    CHECK((apply_local_layer(t, lt).amp - ft.amp).norm() < 1e-10);
  }
}

TEST_CASE("standard forms of inequivalent states differ") {
  std::mt19937_64 rng(53);
  const auto a = standard_form(PureState(3, oracle::random_vector(3, rng))).first;
  const auto b = standard_form(PureState(3, oracle::random_vector(3, rng))).first;
  CHECK((a.amp - b.amp).norm() > 1e-3);
  const PureState c = controlled_phase_all(3, kPi / 2);
  const auto fc = standard_form(c).first;
  const auto fcc = standard_form(conjugate_state(c)).first;
  CHECK((fc.amp - fcc.amp).norm() > 1e-3);
}

TEST_CASE("standard form needs a generic state") {
  CHECK_THROWS_AS(standard_form(ghz(3)), NonGenericState);
}

TEST_CASE("lme trace decomposition angle") {
  // cot(phi_i) = <X_i> / <Y_i> = cot(phi) + 3 csc(phi) for the 3-qubit gate.
  for (double phi : {kPi / 2, 0.7, 2.1}) {
    const PureState s = controlled_phase_all(3, phi);
    const TraceDecomposition td = trace_decompose(s);
    const CMat r = oracle::reduce(s.amp, 3, {0});
    const double x = 2 * r(0, 1).real(), y = -2 * r(0, 1).imag();
    CHECK(std::abs(x / y - (1 / std::tan(phi) + 3 / std::sin(phi))) < 1e-10);
    // The decomposing unitary sends the (x, y, z) axis to z.
    Mat2c sx, sy, sz;
    sx << 0, 1, 1, 0;
    sy << 0, cd(0, -1), cd(0, 1), 0;
    sz << 1, 0, 0, -1;
    const double z = (r(0, 0) - r(1, 1)).real();
    const Mat2c axis = (x * sx + y * sy + z * sz) / std::sqrt(x * x + y * y + z * z);
    const Mat2c w = td.layer.units[0];
    CHECK((w * axis * w.adjoint() - sz).norm() < 1e-10);
  }
}
