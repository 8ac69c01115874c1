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


#include "luq/decider.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "decider_internal.hpp"
#include "luq/phase_solver.hpp"

namespace luq {

namespace detail {

void note(DecisionLog* log, const std::string& s) {
  if (log) log->notes.push_back(s);
}

PureState permute_qubits(const PureState& s, const std::vector<int>& perm) {
  const int n = s.n;
  CVec out(s.dim());
  for (Eigen::Index i = 0; i < s.dim(); ++i) {
    Eigen::Index j = 0;
    for (int p = 0; p < n; ++p) j = (j << 1) | bit_of(i, perm[p], n);
    out[j] = s.amp[i];
  }
  return PureState(n, out);
}

LocalUnitaryLayer unpermute_layer(const LocalUnitaryLayer& l,
                                  const std::vector<int>& perm) {
  LocalUnitaryLayer out = l;
  for (std::size_t p = 0; p < perm.size(); ++p) out.units[perm[p]] = l.units[p];
  return out;
}

Witness remap_witness(Witness w, const std::vector<int>& map) {
  if (auto* m = std::get_if<SpectrumMismatch>(&w)) {
    for (int& q : m->subset) q = map[q];
    std::sort(m->subset.begin(), m->subset.end());
  }
  return w;
}

Verdict remap_verdict(Verdict v, const std::vector<int>& map) {
  if (auto* ne = std::get_if<NotEquivalent>(&v))
    ne->witness = remap_witness(ne->witness, map);
  return v;
}

namespace {

std::optional<Verdict> spectra_check(const PureState& psi, const PureState& phi,
                                     const std::vector<int>& subset) {
  const Spectrum a = marginal_spectrum(psi, subset);
  const Spectrum b = marginal_spectrum(phi, subset);
  if ((a.values - b.values).norm() > kInvariantTol) {
    SpectrumMismatch m;
    m.subset = subset;
    m.lhs = a.values;
    m.rhs = b.values;
    return NotEquivalent{m};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Verdict> single_spectra_check(const PureState& psi,
                                            const PureState& phi) {
  for (int q = 0; q < psi.n; ++q)
    if (auto v = spectra_check(psi, phi, {q})) return v;
  return std::nullopt;
}

std::optional<Verdict> pair_spectra_check(const PureState& psi,
                                          const PureState& phi) {
  for (int i = 0; i < psi.n; ++i)
    for (int j = i + 1; j < psi.n; ++j)
      if (auto v = spectra_check(psi, phi, {i, j})) return v;
  return std::nullopt;
}

std::optional<Verdict> accept(const PureState& psi, const PureState& phi,
                              const LocalUnitaryLayer& layer) {
  const PureState img = apply_local_layer(phi, layer);
  const cd ip = psi.amp.dot(img.amp);
  if (1.0 - std::abs(ip) > kCertificateTol) return std::nullopt;
  LocalUnitaryLayer l = layer;
  l.global_phase = wrap_2pi(l.global_phase - std::arg(ip));
  return Equivalent{l};
}

bool maximally_mixed(const DensityMatrix& rho, double tol) {
  const Eigen::Index d = rho.rows();
  return (rho - CMat::Identity(d, d) / static_cast<double>(d)).norm() <= tol;
}

int product_qubit(const PureState& s) {
  for (int q = 0; q < s.n; ++q)
    if (1.0 - bloch(partial_trace(s, {q})).norm() <= 1e-10) return q;
  return -1;
}

std::optional<Verdict> peel_product(const PureState& psi, const PureState& phi,
                                    const DecideOptions& opts,
                                    DecisionLog* log) {
  if (psi.n < 2) return std::nullopt;
  for (int q = 0; q < psi.n; ++q) {
    const Vec3 a = bloch(partial_trace(psi, {q}));
    const Vec3 b = bloch(partial_trace(phi, {q}));
    if (1.0 - a.norm() > 1e-10 || 1.0 - b.norm() > 1e-10) continue;
    const Mat2c w = rotate_axis_to_z(a), v = rotate_axis_to_z(b);
    const PureState pa = apply_single(psi, q, w), pb = apply_single(phi, q, v);
    const PureState ra = normalized(psi.n - 1, condition_on(pa.amp, psi.n, q, 0));
    const PureState rb = normalized(psi.n - 1, condition_on(pb.amp, psi.n, q, 0));
    note(log, "qubit " + std::to_string(q + 1) + " is a product factor");
    std::vector<int> map;
    for (int k = 0; k < psi.n; ++k)
      if (k != q) map.push_back(k);
    Verdict sub = decide_lu(ra, rb, opts, log);
    if (auto* eq = std::get_if<Equivalent>(&sub)) {
      LocalUnitaryLayer l;
      l.global_phase = eq->certificate.global_phase;
      l.units.resize(psi.n);
      l.units[q] = w.adjoint() * v;
      for (std::size_t r = 0; r < map.size(); ++r)
        l.units[map[r]] = eq->certificate.units[r];
      if (auto acc = accept(psi, phi, l)) return acc;
      return Undecided{"product split certificate failed verification", 0.0};
    }
    return remap_verdict(std::move(sub), map);
  }
  return std::nullopt;
}

Verdict engine_decide(const PureState& psi, const PureState& phi,
                      const DecideOptions& opts, DecisionLog* log) {
  const int n = psi.n;
  const ConstraintSet cs = propagate(psi, phi, opts.rules);
  if (log) log->rules.insert(log->rules.end(), cs.log.begin(), cs.log.end());
  if (cs.mismatch) return NotEquivalent{*cs.mismatch};

  LocalUnitaryLayer lw = LocalUnitaryLayer::identity(n);
  LocalUnitaryLayer lv = LocalUnitaryLayer::identity(n);
  std::vector<std::vector<int>> ksets(n, std::vector<int>{0});
  for (int q = 0; q < n; ++q)
    if (const Determination* d = cs.determination(q)) {
      lw.units[q] = d->W;
      lv.units[q] = d->V;
      ksets[q] = d->k_set;
    }

  if (cs.all_determined()) {
    const PureState fa = apply_local_layer(psi, lw);
    const PureState fb = apply_local_layer(phi, lv);
    std::size_t total = 1;
    for (const auto& k : ksets) total *= k.size();
    const bool full_log = total <= 64;
    std::optional<Verdict> found;
    bool unsound = false;
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t b = 0; b < total; ++b) {
      std::size_t rem = b;
      for (int q = n - 1; q >= 0; --q) {
        idx[q] = rem % ksets[q].size();
        rem /= ksets[q].size();
      }
      BranchRecord rec;
      CVec amp = fb.amp;
      for (int q = 0; q < n; ++q) {
        const int k = ksets[q][idx[q]];
        rec.bits.push_back(k ? '1' : '0');
        if (k) apply_single_inplace<double>(amp, n, q, pauli_x());
      }
      const PureState fk(n, amp);
      rec.moduli_ok =
          (fa.amp.cwiseAbs() - fk.amp.cwiseAbs()).cwiseAbs().maxCoeff() <=
          kModuliTol;
      if (rec.moduli_ok) {
        const PhaseSolve ps = solve_phases(fa, fk);
        if (ps.status == PhaseStatus::Feasible) {
          LocalUnitaryLayer l;
          l.global_phase = ps.assignment.alpha0;
          l.units.resize(n);
          for (int q = 0; q < n; ++q) {
            Mat2c x = ksets[q][idx[q]] ? pauli_x() : Mat2c::Identity();
            l.units[q] = lw.units[q].adjoint() *
                         phase_gate(ps.assignment.alpha[q]) * x * lv.units[q];
          }
          auto acc = accept(psi, phi, l);
          rec.feasible = acc.has_value();
          if (!acc) unsound = true;
          if (acc && !found) found = acc;
        } else if (ps.status == PhaseStatus::Unverified) {
          unsound = true;
        }
      }
      if (log) log->branches.push_back(rec);
      if (found && !full_log) break;
    }
    if (found) return *found;
    if (!unsound)
      return NotEquivalent{PhaseInfeasibleAllBranches{static_cast<int>(total)}};
    note(log, "a phase branch failed numerical verification");
  }

  if (!opts.allow_fallback)
    return Undecided{"free qubits remain and the fallback is disabled", 0.0};
  if (log) log->fallback_used = true;
  double best = 0.0;
  if (auto l = numeric_fallback(psi, phi, cs, opts, &best))
    if (auto acc = accept(psi, phi, *l)) return *acc;
  std::ostringstream os;
  os << "numeric fallback failed (" << opts.fallback_starts
     << " starts, seed " << opts.seed << ", " << cs.free_count()
     << " free qubits)";
  return Undecided{os.str(), best};
}

}  // namespace detail

using namespace detail;

double verify_certificate(const PureState& psi, const PureState& phi,
                          const LocalUnitaryLayer& layer) {
  return std::abs(psi.amp.dot(apply_local_layer(phi, layer).amp));
}

DensityMatrix apply_layer(const DensityMatrix& rho, int n,
                          const LocalUnitaryLayer& layer) {
  auto left = [&](const CMat& m) {
    CMat out = m;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      CVec col = m.col(c);
      for (int q = 0; q < n; ++q)
        apply_single_inplace<double>(col, n, q, layer.units[q]);
      out.col(c) = col;
    }
    return out;
  };
  const CMat x = left(rho);
  return left(x.adjoint());
}

Verdict decide_lu_2(const PureState& psi, const PureState& phi,
                    DecisionLog* log) {
  if (psi.n != 2 || phi.n != 2) throw DimensionError("decide_lu_2 needs n = 2");
  if (log) log->route = "2-qubit Schmidt";
  auto reshape = [](const PureState& s) {
    Mat2c m;
    m << s.amp[0], s.amp[1], s.amp[2], s.amp[3];
    return m;
  };
  Eigen::JacobiSVD<Mat2c> sa(reshape(psi), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::JacobiSVD<Mat2c> sb(reshape(phi), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double pa = sa.singularValues()[0] * sa.singularValues()[0];
  const double pb = sb.singularValues()[0] * sb.singularValues()[0];
  if (std::abs(pa - pb) > kInvariantTol) return NotEquivalent{SchmidtMismatch{pa, pb}};
  LocalUnitaryLayer l;
  l.units = {sa.matrixU() * sb.matrixU().adjoint(),
             sa.matrixV().conjugate() * sb.matrixV().transpose()};
  if (auto acc = accept(psi, phi, l)) return *acc;
  return Undecided{"Schmidt certificate failed verification", verify_certificate(psi, phi, l)};
}

Verdict decide_lu(const PureState& psi, const PureState& phi,
                  const DecideOptions& opts, DecisionLog* log) {
  if (psi.n != phi.n) throw DimensionError("decide_lu: qubit counts differ");
  for (const PureState* s : {&psi, &phi})
    if (std::abs(s->amp.norm() - 1.0) > 1e-8)
      throw InputError("decide_lu: input state is not normalized");
  const int n = psi.n;
  if (n == 1) {
    auto basis = [](const PureState& s) {
      Mat2c m;
      m << s.amp[0], -std::conj(s.amp[1]), s.amp[1], std::conj(s.amp[0]);
      return m;
    };
    LocalUnitaryLayer l;
    l.units = {basis(psi) * basis(phi).adjoint()};
    if (log) log->route = "1-qubit";
    if (auto acc = accept(psi, phi, l)) return *acc;
    return Undecided{"single-qubit certificate failed verification", 0.0};
  }
  if (auto v = single_spectra_check(psi, phi)) return *v;
  if (n == 2) return decide_lu_2(psi, phi, log);
  if (opts.fast_paths && n == 3) return decide_lu_3(psi, phi, opts, log);
  if (opts.fast_paths && n == 4) return decide_lu_4(psi, phi, opts, log);
  if (auto v = pair_spectra_check(psi, phi)) return *v;
  if (auto v = peel_product(psi, phi, opts, log)) return *v;
  if (log && log->route.empty()) log->route = "pin engine";
  return engine_decide(psi, phi, opts, log);
}

ConjugateResult conjugate_class(const PureState& psi, const DecideOptions& opts) {
  ConjugateResult r;
  r.verdict = decide_lu(psi, conjugate_state(psi), opts);
  if (is_equivalent(r.verdict)) {
    r.flag = ConjugateFlag::Zero;
  } else if (is_not_equivalent(r.verdict)) {
    r.flag = ConjugateFlag::One;
  }
  return r;
}

LoccRelation locc_comparability(const PureState& psi, const PureState& phi,
                                const DecideOptions& opts) {
  if (psi.n != phi.n) throw DimensionError("locc_comparability: qubit counts differ");
  for (int q = 0; q < psi.n; ++q) {
    const Spectrum a = marginal_spectrum(psi, {q});
    const Spectrum b = marginal_spectrum(phi, {q});
    if ((a.values - b.values).norm() > 1e-8) return LoccRelation::Unknown;
  }
  const Verdict v = decide_lu(psi, phi, opts);
  if (is_equivalent(v)) return LoccRelation::Equivalent;
  if (is_not_equivalent(v)) return LoccRelation::LOCCIncomparable;
  return LoccRelation::Unknown;
}

std::string to_string(ConjugateFlag f) {
  switch (f) {
    case ConjugateFlag::Zero:
      return "0";
    case ConjugateFlag::One:
      return "1";
    default:
      return "unknown";
  }
}

std::string to_string(LoccRelation r) {
  switch (r) {
    case LoccRelation::Equivalent:
      return "Equivalent";
    case LoccRelation::LOCCIncomparable:
      return "LOCCIncomparable";
    default:
      return "Unknown";
  }
}

}  // namespace luq
