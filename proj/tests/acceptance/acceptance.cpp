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


// One PASS/FAIL line per acceptance criterion. Reference values come from
// the test-side oracles in tests/oracles.hpp.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "luq/canonical.hpp"
#include "luq/catalog.hpp"
#include "luq/decider.hpp"
#include "luq/phase_solver.hpp"
#include "oracles.hpp"

using namespace luq;

namespace {

constexpr double kOrbitOverlap = 1e-9;
constexpr double kAuditOverlap = 1e-8;

struct Audit {
  int equivalent = 0;
  int bad_certificates = 0;
  int orbit_pairs = 0;
  int orbit_false_negatives = 0;

  // a = L b by construction when orbit is true.
  void pure(const PureState& a, const PureState& b, const Verdict& v, bool orbit) {
    if (orbit) {
      ++orbit_pairs;
      if (is_not_equivalent(v)) ++orbit_false_negatives;
    }
    if (const auto* e = std::get_if<Equivalent>(&v)) {
      ++equivalent;
      const CVec img = oracle::apply(e->certificate.units, b.amp);
      if (oracle::overlap(a.amp, img) < 1 - kAuditOverlap) ++bad_certificates;
    }
  }

  void mixed(const CMat& a, const CMat& b, const Verdict& v, bool orbit) {
    if (orbit) {
      ++orbit_pairs;
      if (is_not_equivalent(v)) ++orbit_false_negatives;
    }
    if (const auto* e = std::get_if<Equivalent>(&v)) {
      ++equivalent;
      const CMat u = oracle::kron_all(e->certificate.units);
      if ((u * b * u.adjoint() - a).norm() > kAuditOverlap) ++bad_certificates;
    }
  }
};

Audit audit;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const std::string& name, const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = f();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s [%d] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str(), s);
  std::fflush(stdout);
}

PureState dressed(const PureState& s, std::mt19937_64& rng) {
  return PureState(s.n, oracle::apply(oracle::haar_layer(s.n, rng), s.amp));
}

double certificate_overlap(const PureState& a, const PureState& b, const Verdict& v) {
  if (!is_equivalent(v)) return 0.0;
  return oracle::overlap(a.amp, oracle::apply(std::get<Equivalent>(v).certificate.units, b.amp));
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Mat2c pm(int k) {
  Mat2c m;
  if (k == 0) m << 0, 1, 1, 0;
  if (k == 1) m << 0, cd(0, -1), cd(0, 1), 0;
  if (k == 2) m << 1, 0, 0, -1;
  return m;
}

Mat4c ud_oracle(const Vec3& c) {
  Mat4c h = Mat4c::Zero();
  for (int k = 0; k < 3; ++k) h += c[k] * oracle::kron(pm(k), pm(k));
  Eigen::SelfAdjointEigenSolver<Mat4c> es(h);
  Eigen::Vector4cd e;
  for (int k = 0; k < 4; ++k) e[k] = std::polar(1.0, es.eigenvalues()[k]);
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

double kak_residual(const Mat4c& u) {
  const KakDecomposition k = nonlocal_content(u);
  const Mat4c r = std::polar(1.0, k.phase) * oracle::kron(k.a, k.b) * ud_oracle(k.nc.vec()) *
                  oracle::kron(k.c, k.d);
  return (r - u).norm();
}

Outcome orbit_completeness() {
  std::mt19937_64 rng(101);
  int ok = 0;
  double worst = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 5;
    const PureState s(n, oracle::random_vector(n, rng));
    const PureState d = dressed(s, rng);
    const Verdict v = decide_lu(d, s);
    audit.pure(d, s, v, true);
    const double ov = certificate_overlap(d, s, v);
    worst = std::min(worst, ov);
    if (is_equivalent(v) && ov >= 1 - kOrbitOverlap) ++ok;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {ok == 200 && secs < 60.0,
          fmt("%.0f/200 equivalent, min overlap 1-%.1e, %.2f s", ok, 1 - worst, secs)};
}

Outcome conjugate_reproduction() {
  bool pass = true;
  std::string d;
  for (int n = 3; n <= 6; ++n) {
    const PureState s = controlled_phase_all(n, kPi / 2);
    const PureState c = conjugate_state(s);
    const Verdict v = decide_lu(s, c);
    audit.pure(s, c, v, false);
    double spec_gap = 0, closed_gap = 0;
    const double p = oracle::closed_form_marginal(n);
    for (int q = 0; q < n; ++q) {
      const Spectrum a = spectrum(oracle::reduce(s.amp, n, {q}));
      const Spectrum b = spectrum(oracle::reduce(c.amp, n, {q}));
      spec_gap = std::max(spec_gap, (a.values - b.values).cwiseAbs().maxCoeff());
      closed_gap = std::max(closed_gap, std::abs(a.values[0] - p) + std::abs(a.values[1] - (1 - p)));
    }
    const bool locc = locc_comparability(s, c) == LoccRelation::LOCCIncomparable;
    const bool ok = is_not_equivalent(v) && spec_gap <= 1e-12 && closed_gap <= 1e-10 && locc;
    pass &= ok;
    d += "n=" + std::to_string(n) + (ok ? " ok; " : " bad; ");
  }
  // Angle of the trace decomposition axis at n = 3.
  const PureState s3 = controlled_phase_all(3, kPi / 2);
  const Mat2c w = trace_decompose(s3).layer.units[0];
  const Mat2c axis = w.adjoint() * pm(2) * w;
  const double cot = axis(0, 1).real() / -axis(0, 1).imag();
  const bool angle = std::abs(cot - 3.0) <= 1e-10;
  pass &= angle;
  d += fmt("cot(phi_i) = %.12f", cot);
  return {pass, d};
}

Outcome ghz_class() {
  std::mt19937_64 rng(103);
  const PureState g = ghz(3);
  int ok = 0, structured = 0;
  for (int t = 0; t < 50; ++t) {
    for (int q = 0; q < 3; ++q)
      if (!oracle::reduce(g.amp, 3, {q}).isApprox(Mat2c::Identity() / 2.0)) return {false, "marginal"};
    const std::vector<Mat2c> layer = oracle::haar_layer(3, rng);
    const PureState d(3, oracle::apply(layer, g.amp));
    DecisionLog log;
    const Verdict v = decide_lu(d, g, {}, &log);
    audit.pure(d, g, v, true);
    if (!is_equivalent(v)) continue;
    if (certificate_overlap(d, g, v) >= 1 - kOrbitOverlap) ++ok;
    // Log bits are relative to per-qubit frames of unknown X orientation, so
    // k1 = k2 = k3 shows up as exactly one complementary pair {k, k ^ 111}.
    std::vector<std::string> feasible;
    for (const BranchRecord& b : log.branches)
      if (b.feasible) feasible.push_back(b.bits);
    bool pair = feasible.size() == 2;
    for (int q = 0; pair && q < 3; ++q) pair &= feasible[0][q] != feasible[1][q];
    // In the GHZ frame each layer^dagger * certificate is Z(a) X^k with one k.
    const auto& units = std::get<Equivalent>(v).certificate.units;
    int k_first = -1;
    bool same_k = true;
    for (int q = 0; q < 3; ++q) {
      const Mat2c r = layer[q].adjoint() * units[q];
      const double diag = std::abs(r(0, 1)) + std::abs(r(1, 0));
      const double anti = std::abs(r(0, 0)) + std::abs(r(1, 1));
      const int k = diag < 1e-6 ? 0 : anti < 1e-6 ? 1 : -2;
      if (k < 0) same_k = false;
      if (k_first == -1) k_first = k;
      same_k &= k == k_first;
    }
    if (pair && same_k) ++structured;
  }
  return {ok == 50 && structured == 50,
          fmt("%.0f/50 equivalent, %.0f/50 with k1=k2=k3 (complementary feasible pair in the log, "
              "common X power in the GHZ frame)",
              ok, structured)};
}

Outcome nonlocal_class() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(0, 1);
  int eq = 0, flipped = 0;
  for (int t = 0; t < 50; ++t) {
    const double c1 = 0.05 + u(rng) * (kPi / 4 - 0.08);
    const double c2 = 0.02 + u(rng) * (c1 - 0.04);
    const double c3 = (2 * u(rng) - 1) * (c2 - 0.02);
    const PureState s = choi_state({c1, c2, c3});
    const PureState a = dressed(s, rng), b = dressed(s, rng);
    const Verdict v = decide_lu(a, b);
    audit.pure(a, b, v, true);
    if (is_equivalent(v) && certificate_overlap(a, b, v) >= 1 - kOrbitOverlap) ++eq;
    const PureState p = dressed(choi_state({c1 + 1e-2, c2, c3}), rng);
    const Verdict w = decide_lu(p, b);
    audit.pure(p, b, w, false);
    if (is_not_equivalent(w) &&
        witness_kind(std::get<NotEquivalent>(w).witness) == "NonlocalContentMismatch")
      ++flipped;
  }
  double worst = 0;
  for (int t = 0; t < 200; ++t) worst = std::max(worst, kak_residual(oracle::haar(4, rng)));
  Mat4c cnot = Mat4c::Zero(), swap = Mat4c::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1;
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1;
  const Mat4c id = Mat4c::Identity();
  bool named = true;
  const std::pair<Mat4c, Vec3> cases[3] = {{cnot, Vec3(kPi / 4, 0, 0)},
                                           {swap, Vec3(kPi / 4, kPi / 4, kPi / 4)},
                                           {id, Vec3(0, 0, 0)}};
  for (const auto& [g, want] : cases) {
    const Mat4c dg = oracle::kron(oracle::haar2(rng), oracle::haar2(rng)) * g *
                     oracle::kron(oracle::haar2(rng), oracle::haar2(rng));
    named &= kak_residual(g) <= 1e-9 && (nonlocal_content(g).nc.vec() - want).norm() <= 1e-9 &&
             (nonlocal_content(dg).nc.vec() - want).norm() <= 1e-9;
  }
  return {eq == 50 && flipped == 50 && worst <= 1e-9 && named,
          fmt("%.0f/50 equivalent, %.0f/50 flipped with NonlocalContentMismatch, ", eq, flipped) +
              fmt("max reconstruction residual %.1e, named gates ", worst) + (named ? "ok" : "bad")};
}

Outcome nonexistence() {
  double best = 1e9;
  const int steps = 16;  // pi/64 spacing on [0, pi/4]
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= i; ++j)
      for (int k = -j; k <= j; ++k) {
        const double h = kPi / 64;
        const PureState s = choi_state({i * h, j * h, k * h});
        double worst = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = a + 1; b < 4; ++b)
            worst = std::max(worst, (oracle::reduce(s.amp, 4, {a, b}) - CMat::Identity(4, 4) / 4.0).norm());
        best = std::min(best, worst);
      }
  return {best > 1e-6, fmt("min over grid of max_ij |rho_ij - 1/4|_F = %.4f", best)};
}

Outcome five_qubit_family() {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  CMat xxx = oracle::kron(oracle::kron(pm(0), pm(0)), pm(0));
  const CMat want = (CMat::Identity(8, 8) + xxx) / 8.0;
  double pair_gap = 0, triple_gap = 0;
  int ok = 0;
  for (int t = 0; t < 10; ++t) {
    const PureState s = five_qubit_all_pairs_mixed(u(rng));
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        pair_gap = std::max(pair_gap, (oracle::reduce(s.amp, 5, {a, b}) - CMat::Identity(4, 4) / 4.0).norm());
    triple_gap = std::max(triple_gap, (oracle::reduce(s.amp, 5, {0, 1, 2}) - want).norm());
    const PureState a = dressed(s, rng), b = dressed(s, rng);
    DecisionLog log;
    const Verdict v = decide_lu(a, b, {}, &log);
    audit.pure(a, b, v, true);
    if (is_equivalent(v) && !log.fallback_used && certificate_overlap(a, b, v) >= 1 - kOrbitOverlap) ++ok;
  }
  return {pair_gap <= 1e-12 && triple_gap <= 1e-12 && ok == 10,
          fmt("pair gap %.1e, triple gap %.1e, %.0f/10 equivalent without fallback", pair_gap,
              triple_gap, ok)};
}

Outcome phase_cross_oracle() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  int agree = 0, literal = 0, literal_total = 0, expected = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + (t / 2) % 4;
    const CVec v = oracle::random_vector(n, rng);
    CVec w = v;
    const double a0 = u(rng);
    std::vector<double> a(n);
    for (double& x : a) x = u(rng);
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      double ph = a0;
      for (int k = 0; k < n; ++k)
        if ((i >> (n - 1 - k)) & 1) ph += a[k];
      w[i] *= std::polar(1.0, ph);
    }
    const bool orbit = t % 2 == 0;
    if (!orbit) w[static_cast<Eigen::Index>(rng() % w.size())] *= -1.0;
    const PureState ps(n, w), ph(n, v);
    const bool pc = product_condition_route(ps, ph);
    const bool qr = quotient_route(ps, ph).has_value();
    if (pc == qr) ++agree;
    if (pc == orbit) ++expected;
    if (n <= 3) {
      ++literal_total;
      if (oracle::literal_phase_gate_related(w, v, n, 1e-9) == pc) ++literal;
    }
  }
  return {agree == 500 && literal == literal_total && expected == 500,
          fmt("routes agree %.0f/500, match construction %.0f/500, ", agree, expected) +
              fmt("four-copy oracle agrees %.0f/%.0f", literal, literal_total)};
}

CMat bell_diagonal(const Eigen::Vector4d& p) {
  const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
                             BellKind::PsiMinus};
  CMat rho = CMat::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd b = bell_vector(kinds[k]);
    rho += p[k] * b * b.adjoint();
  }
  return rho;
}

Outcome two_qubit_mixed() {
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  int eq = 0, ne = 0;
  for (int t = 0; t < 100; ++t) {
    Eigen::Vector4d p;
    for (int k = 0; k < 4; ++k) p[k] = u(rng);
    p /= p.sum();
    const CMat rho = bell_diagonal(p);
    const CMat u1 = oracle::kron(oracle::haar2(rng), oracle::haar2(rng));
    const CMat u2 = oracle::kron(oracle::haar2(rng), oracle::haar2(rng));
    const CMat a = u1 * rho * u1.adjoint(), b = u2 * rho * u2.adjoint();
    const Verdict v = lu_equiv_mixed2(a, b);
    audit.mixed(a, b, v, true);
    if (const auto* e = std::get_if<Equivalent>(&v)) {
      const CMat l = oracle::kron(e->certificate.units[0], e->certificate.units[1]);
      if ((l * b * l.adjoint() - a).norm() <= 1e-8) ++eq;
    }
    Eigen::Vector4d q = p;
    q[0] += 2e-3;
    q[1] -= 2e-3;
    const CMat c = u2 * bell_diagonal(q) * u2.adjoint();
    const Verdict w = lu_equiv_mixed2(a, c);
    audit.mixed(a, c, w, false);
    if (is_not_equivalent(w)) ++ne;
  }
  return {eq == 100 && ne == 100, fmt("%.0f/100 orbits equivalent and verified, %.0f/100 perturbed not equivalent", eq, ne)};
}

Outcome mixed_reduction() {
  std::mt19937_64 rng(109);
  int eq = 0, lifted = 0;
  for (int t = 0; t < 50; ++t) {
    CMat rho = CMat::Zero(8, 8);
    double w = 0;
    for (int k = 0; k < 8; ++k) {
      const CVec v = oracle::random_vector(3, rng);
      const double c = 1.0 + k + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
      rho += c * v * v.adjoint();
      w += c;
    }
    rho /= w;
    const CMat l = oracle::kron_all(oracle::haar_layer(3, rng));
    const CMat sig = l * rho * l.adjoint();
    const Verdict v = decide_lu_mixed(sig, rho, 3);
    audit.mixed(sig, rho, v, true);
    if (is_equivalent(v)) ++eq;
  }
  for (int t = 0; t < 10; ++t) {
    // Equal weight on orthonormal a, b: the only nonzero eigenvalue is two-fold.
    CMat g(8, 2);
    for (int k = 0; k < 2; ++k) g.col(k) = oracle::random_vector(3, rng);
    const CMat q = Eigen::HouseholderQR<CMat>(g).householderQ() * CMat::Identity(8, 2);
    const CVec a = q.col(0), b = q.col(1);
    const CMat rho = 0.5 * (a * a.adjoint() + b * b.adjoint());
    const CMat l = oracle::kron_all(oracle::haar_layer(3, rng));
    const CMat sig = l * rho * l.adjoint();
    DecisionLog log;
    const Verdict v = decide_lu_mixed(sig, rho, 3, {}, &log);
    audit.mixed(sig, rho, v, true);
    if (is_equivalent(v) && log.route == "mixed lifted eigenspace") ++lifted;
  }
  return {eq == 50 && lifted == 10,
          fmt("%.0f/50 nondegenerate orbits equivalent, %.0f/10 degenerate orbits via lifted path", eq, lifted)};
}

Outcome soundness() {
  std::mt19937_64 rng(110);
  const std::vector<PureState> families = {
      ghz(4), ghz(5), w_state(3), w_state(4), controlled_phase_all(4, kPi / 2),
      bell_pair_phase_state(0.3, 0.4, 1.1, 0.7), choi_state({0.4, 0.2, 0.05}),
      five_qubit_all_pairs_mixed(0.3), tensor(bell(BellKind::PhiPlus), bell(BellKind::PsiMinus)),
      tensor(ghz(3), bell(BellKind::PhiPlus))};
  for (int t = 0; t < 100; ++t) {
    const PureState& s = families[t % families.size()];
    const PureState a = dressed(s, rng), b = dressed(s, rng);
    audit.pure(a, b, decide_lu(a, b), true);
  }
  return {audit.bad_certificates == 0 && audit.orbit_false_negatives == 0 && audit.orbit_pairs >= 500,
          fmt("%.0f equivalent verdicts, %.0f below 1-1e-8; ", audit.equivalent, audit.bad_certificates) +
              fmt("%.0f orbit pairs, %.0f not equivalent", audit.orbit_pairs, audit.orbit_false_negatives)};
}

}  // namespace

// --expect-fail ID marks a criterion recorded as unattainable: the exit code
// is 0 only if the failing set equals the expected set exactly.
int main(int argc, char** argv) {
  std::set<int> expected, failed;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--expect-fail") expected.insert(std::stoi(argv[++i]));
  auto run = [&](int id, const std::string& name, const std::function<Outcome()>& f) {
    report(id, name, [&] {
      Outcome o = f();
      if (!o.pass) failed.insert(id);
      return o;
    });
  };
  run(1, "orbit completeness", orbit_completeness);
  run(2, "conjugate phase states", conjugate_reproduction);
  run(3, "ghz class", ghz_class);
  run(4, "nonlocal content class", nonlocal_class);
  run(5, "no four-qubit state with all pairs mixed", nonexistence);
  run(6, "five-qubit all-pairs-mixed family", five_qubit_family);
  run(7, "phase-gate cross oracle", phase_cross_oracle);
  run(8, "two-qubit mixed states", two_qubit_mixed);
  run(9, "mixed-state reduction", mixed_reduction);
  run(10, "soundness audit", soundness);
  std::printf("%zu failed", failed.size());
  for (int id : failed) std::printf(" [%d]", id);
  std::printf(", %zu expected", expected.size());
  for (int id : expected) std::printf(" [%d]", id);
  std::printf("\n");
  return failed == expected ? 0 : 1;
}
