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
#include "luq/catalog.hpp"
#include "luq/decider.hpp"
#include "oracles.hpp"

using namespace luq;

namespace {

PureState dressed(const PureState& s, std::mt19937_64& rng) {
  return PureState(s.n, oracle::apply(oracle::haar_layer(s.n, rng), s.amp));
}

void check_certificate(const PureState& a, const PureState& b, const Verdict& v) {
  REQUIRE(is_equivalent(v));
  const LocalUnitaryLayer& l = std::get<Equivalent>(v).certificate;
  const CVec img = std::polar(1.0, l.global_phase) * oracle::apply(l.units, b.amp);
  CHECK((img - a.amp).norm() < 2e-4);
  CHECK(oracle::overlap(a.amp, img) >= 1 - 1e-9);
}

PureState hadamard_all(const PureState& s) {
  Mat2c h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  return PureState(s.n, oracle::apply(std::vector<Mat2c>(s.n, h), s.amp));
}

PureState bell_sum(double p) {
  const PureState pp = bell(BellKind::PhiPlus), pm = bell(BellKind::PhiMinus);
  const PureState sp = bell(BellKind::PsiPlus), sm = bell(BellKind::PsiMinus);
  CVec v = std::sqrt(p / 2) * (tensor(basis_state(2, 0), pp).amp + tensor(basis_state(2, 1), pm).amp) +
           std::sqrt((1 - p) / 2) *
               (tensor(basis_state(2, 2), sp).amp + tensor(basis_state(2, 3), sm).amp);
  return PureState(4, v);
}

}  // namespace

TEST_CASE("ghz and its hadamard image") {
  for (int n = 3; n <= 5; ++n) {
    const PureState g = ghz(n), h = hadamard_all(g);
    check_certificate(g, h, decide_lu(g, h));
  }
}

TEST_CASE("random orbits are equivalent") {
  std::mt19937_64 rng(71);
  for (int n = 1; n <= 6; ++n)
    for (int t = 0; t < 3; ++t) {
      const PureState s(n, oracle::random_vector(n, rng));
      const PureState d = dressed(s, rng);
      check_certificate(d, s, decide_lu(d, s));
    }
}

TEST_CASE("conjugate controlled phase states are not equivalent") {
  for (int n = 3; n <= 6; ++n) {
    const PureState s = controlled_phase_all(n, kPi / 2);
    DecisionLog log;
    const Verdict v = decide_lu(s, conjugate_state(s), {}, &log);
    REQUIRE(is_not_equivalent(v));
    CHECK(witness_kind(std::get<NotEquivalent>(v).witness) == "PhaseInfeasibleAllBranches");
    CHECK_FALSE(log.branches.empty());
  }
}

TEST_CASE("two qubit decisions") {
  check_certificate(bell(BellKind::PhiPlus), bell(BellKind::PsiMinus),
                    decide_lu_2(bell(BellKind::PhiPlus), bell(BellKind::PsiMinus)));
  const PureState a(2, Eigen::Vector4cd(std::sqrt(0.8), 0, 0, std::sqrt(0.2)));
  const PureState b(2, Eigen::Vector4cd(std::sqrt(0.7), 0, 0, std::sqrt(0.3)));
  const Verdict v = decide_lu_2(a, b);
  REQUIRE(is_not_equivalent(v));
  CHECK(witness_kind(std::get<NotEquivalent>(v).witness) == "SchmidtMismatch");
  std::mt19937_64 rng(72);
  const PureState r(2, oracle::random_vector(2, rng));
  const PureState dr = dressed(r, rng);
  check_certificate(dr, r, decide_lu(dr, r));
}

TEST_CASE("ghz versus w") {
  const Verdict v = decide_lu(ghz(3), w_state(3));
  REQUIRE(is_not_equivalent(v));
  const auto& m = std::get<SpectrumMismatch>(std::get<NotEquivalent>(v).witness);
  CHECK(m.lhs[0] == doctest::Approx(0.5));
  CHECK(m.rhs[0] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("input errors") {
  CHECK_THROWS_AS(decide_lu(ghz(3), ghz(4)), DimensionError);
  CHECK_THROWS_AS(decide_lu(PureState(1, Eigen::Vector2cd(1, 1)), basis_state(1, 0)), InputError);
}

TEST_CASE("three qubit classes") {
  CHECK(classify_3(ghz(3)).label == "3-1");
  CHECK(classify_3(tensor(basis_state(1, 0), bell(BellKind::PhiPlus))).label == "3-2");
  const double p = 0.7;
  const CVec a = std::sqrt(p) * tensor(basis_state(1, 0), bell(BellKind::PhiPlus)).amp +
                 std::sqrt(1 - p) * tensor(basis_state(1, 1), bell(BellKind::PhiMinus)).amp;
  const ThreeQubitClass c = classify_3(PureState(3, a));
  CHECK(c.label == "3-3a");
  CHECK(c.p == doctest::Approx(p));
  CHECK(c.anchor == 0);
  CHECK(classify_3(w_state(3)).label == "3-3b");
}

TEST_CASE("three qubit decisions") {
  std::mt19937_64 rng(73);
  const PureState pb = tensor(basis_state(1, 0), bell(BellKind::PhiPlus));
  const PureState d1 = dressed(pb, rng);
  check_certificate(d1, pb, decide_lu_3(d1, pb));
  const PureState g = ghz(3), dg = dressed(g, rng);
  check_certificate(dg, g, decide_lu_3(dg, g));
}

TEST_CASE("four qubit classes") {
  const FourQubitClass c = classify_4(choi_state({0.3, 0.2, 0.1}));
  CHECK(c.label == "4-2b");
  REQUIRE(c.nc.has_value());
  CHECK((c.nc->vec() - Vec3(0.3, 0.2, 0.1)).norm() < 1e-9);
  const FourQubitClass b = classify_4(bell_pair_phase_state(0.3, 0.4, 1.1, 0.7));
  CHECK(b.label == "4-2a");
  REQUIRE(b.werner.has_value());
  CHECK((b.werner->vec() - Eigen::Vector4d(0.3, 0.4, 1.1, 0.7)).norm() < 1e-8);
  std::mt19937_64 rng(74);
  CHECK(classify_4(PureState(4, oracle::random_vector(4, rng))).label == "4-1a");
  const PureState s = bell_sum(0.8);
  bool product_pairs = true;
  const CMat r1 = oracle::reduce(s.amp, 4, {0});
  for (int j = 1; j < 4; ++j)
    product_pairs &= (oracle::reduce(s.amp, 4, {0, j}) - oracle::kron(r1, Mat2c::Identity() / 2.0)).norm() < 1e-12;
  CHECK(classify_4(s).label == (product_pairs ? "4-1b" : "4-1a"));
}

TEST_CASE("four qubit decisions") {
  std::mt19937_64 rng(75);
  const PureState c = choi_state({0.3, 0.2, 0.1});
  const PureState dc = dressed(c, rng);
  check_certificate(dc, c, decide_lu_4(dc, c));
  const Verdict nc = decide_lu_4(dressed(choi_state({0.31, 0.2, 0.1}), rng), c);
  REQUIRE(is_not_equivalent(nc));
  CHECK(witness_kind(std::get<NotEquivalent>(nc).witness) == "NonlocalContentMismatch");
  const PureState b = bell_pair_phase_state(0.3, 0.4, 1.1, 0.7);
  const PureState swapped = bell_pair_phase_state(0.3, 1.1, 0.4, 0.7);
  const PureState ds = dressed(swapped, rng);
  check_certificate(ds, b, decide_lu_4(ds, b));
  const PureState s = bell_sum(0.8), d = dressed(s, rng);
  check_certificate(d, s, decide_lu_4(d, s));
}

TEST_CASE("bell pair state with flipped singlet sign") {
  const PureState a = bell_pair_phase_state(0.3, 0.4, 1.1, 0.7);
  const PureState b = bell_pair_phase_state(0.3, 0.4, 1.1, 0.7 + kPi);
  const Verdict v = decide_lu_4(a, b);
  REQUIRE(is_not_equivalent(v));
  const std::string k = witness_kind(std::get<NotEquivalent>(v).witness);
  CHECK((k == "BellPairParamMismatch" || k == "SpectrumMismatch"));
}

TEST_CASE("conjugate class and locc comparability") {
  CHECK(conjugate_class(ghz(3)).flag == ConjugateFlag::Zero);
  CHECK(conjugate_class(controlled_phase_all(3, kPi / 2)).flag == ConjugateFlag::One);
  std::mt19937_64 rng(76);
  CVec real = oracle::random_vector(3, rng).real().cast<cd>();
  real /= real.norm();
  CHECK(conjugate_class(PureState(3, real)).flag == ConjugateFlag::Zero);
  const PureState s = controlled_phase_all(4, kPi / 2);
  CHECK(locc_comparability(s, conjugate_state(s)) == LoccRelation::LOCCIncomparable);
  CHECK(locc_comparability(ghz(3), w_state(3)) == LoccRelation::Unknown);
  CHECK(locc_comparability(ghz(3), hadamard_all(ghz(3))) == LoccRelation::Equivalent);
}

TEST_CASE("numeric fallback recovers orbits with rules disabled") {
  std::mt19937_64 rng(77);
  const PureState s(3, oracle::random_vector(3, rng));
  const PureState d = dressed(s, rng);
  DecideOptions o;
  o.fast_paths = false;
  o.rules = PropagateOptions{false, false, false, false, false, false, false, 5};
  DecisionLog log;
  const Verdict v = decide_lu(d, s, o, &log);
  check_certificate(d, s, v);
  CHECK(log.fallback_used);
  const PureState other(3, oracle::random_vector(3, rng));
  const ConstraintSet cs = propagate(d, other, o.rules);
  double best = 0;
  CHECK_FALSE(numeric_fallback(d, other, cs, o, &best).has_value());
  CHECK(best < 1 - 1e-6);
}

TEST_CASE("fallback disabled gives undecided") {
  DecideOptions o;
  o.fast_paths = false;
  o.allow_fallback = false;
  o.rules = PropagateOptions{false, false, false, false, false, false, false, 5};
  CHECK(is_undecided(decide_lu(ghz(3), hadamard_all(ghz(3)), o)));
}

TEST_CASE("mixed state decisions") {
  std::mt19937_64 rng(78);
  const CVec a = oracle::random_vector(3, rng);
  CVec b = oracle::random_vector(3, rng);
  b = (b - a.dot(b) * a).normalized();
  const CMat rho = 0.7 * a * a.adjoint() + 0.3 * b * b.adjoint();
  const std::vector<Mat2c> u = oracle::haar_layer(3, rng);
  const CMat uu = oracle::kron_all(u);
  const CMat sig = uu * rho * uu.adjoint();
  const Verdict v = decide_lu_mixed(sig, rho, 3);
  REQUIRE(is_equivalent(v));
  const CMat ll = oracle::kron_all(std::get<Equivalent>(v).certificate.units);
  CHECK((ll * rho * ll.adjoint() - sig).norm() < 1e-8);
  const CMat other = 0.6 * a * a.adjoint() + 0.4 * b * b.adjoint();
  CHECK(is_not_equivalent(decide_lu_mixed(other, rho, 3)));
  // Two-fold degenerate spectrum routes through the lifted state.
  const CMat deg = 0.5 * a * a.adjoint() + 0.5 * b * b.adjoint();
  DecisionLog log;
  const Verdict dv = decide_lu_mixed(uu * deg * uu.adjoint(), deg, 3, {}, &log);
  CHECK(is_equivalent(dv));
  CHECK(log.route == "mixed lifted eigenspace");
  const CMat w = werner_two_qubit(0.3);
  const CMat u2 = oracle::kron(oracle::haar2(rng), oracle::haar2(rng));
  CHECK(is_equivalent(decide_lu_mixed(u2 * w * u2.adjoint(), w, 2)));
}

TEST_CASE("apply layer to a density matrix") {
  std::mt19937_64 rng(79);
  const CVec a = oracle::random_vector(2, rng);
  LocalUnitaryLayer l;
  l.units = oracle::haar_layer(2, rng);
  const CMat u = oracle::kron_all(l.units);
  CHECK((apply_layer(a * a.adjoint(), 2, l) - u * a * a.adjoint() * u.adjoint()).norm() < 1e-12);
}
