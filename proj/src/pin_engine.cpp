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


#include "luq/pin_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "luq/geometry.hpp"
#include "luq/two_qubit.hpp"

namespace luq {

bool ConstraintSet::all_determined() const {
  return std::all_of(qubits.begin(), qubits.end(), [](const auto& c) {
    return std::holds_alternative<Determination>(c);
  });
}

int ConstraintSet::free_count() const {
  return static_cast<int>(std::count_if(qubits.begin(), qubits.end(),
                                        [](const auto& c) {
                                          return !std::holds_alternative<
                                              Determination>(c);
                                        }));
}

const Determination* ConstraintSet::determination(int q) const {
  return std::get_if<Determination>(&qubits.at(q));
}

Eigen::VectorXd correlation_tensor(const PureState& psi,
                                   const std::vector<int>& subset) {
  const DensityMatrix rho = partial_trace(psi, subset);
  const int m = static_cast<int>(subset.size());
  const Eigen::Index d = Eigen::Index{1} << m;
  const Eigen::Index count = Eigen::Index{1} << (2 * m);
  Eigen::VectorXd t(count);
  for (Eigen::Index mu = 0; mu < count; ++mu) {
    Eigen::Index flip = 0;
    std::vector<int> digit(m);
    for (int p = 0; p < m; ++p) {
      digit[p] = static_cast<int>((mu >> (2 * (m - 1 - p))) & 3);
      if (digit[p] == 1 || digit[p] == 2) flip |= Eigen::Index{1} << (m - 1 - p);
    }
    cd acc = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      cd f = 1.0;
      for (int p = 0; p < m; ++p) {
        const int b = static_cast<int>((i >> (m - 1 - p)) & 1);
        if (digit[p] == 2) f *= b ? cd(0, -1) : cd(0, 1);
        if (digit[p] == 3 && b) f = -f;
      }
      acc += rho(i, i ^ flip) * f;
    }
    t[mu] = acc.real();
  }
  return t;
}

namespace {

std::string subset_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i] + 1;
  os << "}";
  return os.str();
}

std::vector<std::vector<int>> combinations(const std::vector<int>& pool,
                                           int size) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(pool.size());
  if (size > n || size < 1) return out;
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    std::vector<int> c;
    for (int i : idx) c.push_back(pool[i]);
    out.push_back(std::move(c));
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

[[noreturn]] void mismatch(std::vector<int> subset, Eigen::VectorXd a,
                           Eigen::VectorXd b, const std::string& what) {
  SpectrumMismatch m;
  m.subset = std::move(subset);
  m.lhs = std::move(a);
  m.rhs = std::move(b);
  m.what = what;
  throw InvariantMismatch(std::move(m));
}

// Signed covariant vectors: a -> O a under the qubit's unitary.
std::optional<Determination> from_vectors(const Vec3& a, const Vec3& b,
                                          const std::vector<int>& subset,
                                          const std::string& what,
                                          const std::string& provenance) {
  const double na = a.norm(), nb = b.norm();
  const double scale = std::max({1.0, na, nb});
  if (std::abs(na - nb) > kInvariantTol * scale)
    mismatch(subset, Eigen::VectorXd::Constant(1, na),
             Eigen::VectorXd::Constant(1, nb), what + " norm");
  if (std::min(na, nb) < kPinFire) return std::nullopt;
  Determination d;
  d.W = rotate_axis_to_z(a);
  d.V = rotate_axis_to_z(b);
  d.k_set = {0};
  d.provenance = provenance;
  return d;
}

// Symmetric covariants G -> O G O^T; an isolated eigenvalue gives the axis up
// to sign.
std::optional<Determination> from_gram(const Mat3& ga, const Mat3& gb,
                                       const std::vector<int>& subset,
                                       const std::string& what,
                                       const std::string& provenance) {
  const SymEig3 ea = sym_eig3((ga + ga.transpose()) / 2);
  const SymEig3 eb = sym_eig3((gb + gb.transpose()) / 2);
  const double scale = std::max(1.0, std::abs(ea.values[0]));
  if ((ea.values - eb.values).norm() > kInvariantTol * scale)
    mismatch(subset, ea.values, eb.values, what + " spectrum");
  const Vec3& g = ea.values;
  if (g[0] < kPinFire) return std::nullopt;
  const double gap = kPinGap * scale;
  int idx = -1;
  if (g[0] - g[1] >= gap) {
    idx = 0;
  } else if (g[1] - g[2] >= gap) {
    idx = 2;
  }
  if (idx < 0) return std::nullopt;
  Determination d;
  d.W = rotate_axis_to_z(ea.vectors.col(idx));
  d.V = rotate_axis_to_z(eb.vectors.col(idx));
  d.k_set = {0, 1};
  d.provenance = provenance;
  return d;
}

struct Unfolding {
  Eigen::MatrixXd m;   // 3 x 4^{|others|}
  Eigen::VectorXd t0;  // mu_l = 0 slice
  std::vector<int> subset;
};

Unfolding unfold(const PureState& s, const std::vector<int>& others, int l) {
  Unfolding u;
  u.subset = others;
  u.subset.push_back(l);
  std::sort(u.subset.begin(), u.subset.end());
  const Eigen::VectorXd t = correlation_tensor(s, u.subset);
  const int m = static_cast<int>(u.subset.size());
  const int pos = static_cast<int>(
      std::find(u.subset.begin(), u.subset.end(), l) - u.subset.begin());
  const Eigen::Index cols = Eigen::Index{1} << (2 * (m - 1));
  u.m = Eigen::MatrixXd::Zero(3, cols);
  u.t0 = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index mu = 0; mu < t.size(); ++mu) {
    int ml = 0;
    Eigen::Index rest = 0;
    for (int p = 0; p < m; ++p) {
      const int dgt = static_cast<int>((mu >> (2 * (m - 1 - p))) & 3);
      if (p == pos) {
        ml = dgt;
      } else {
        rest = (rest << 2) | dgt;
      }
    }
    if (ml == 0) {
      u.t0[rest] = t[mu];
    } else {
      u.m(ml - 1, rest) = t[mu];
    }
  }
  return u;
}

// Blocks M_{b,b'} of rho_{fixed + j}: <b|rho|b'> on the fixed qubits.
struct Blocks {
  int m = 0;
  std::vector<Mat2c> block;  // index b * 2^m + b'

  const Mat2c& at(Eigen::Index b, Eigen::Index bp) const {
    return block[static_cast<std::size_t>((b << m) + bp)];
  }
};

Blocks conditional_blocks(const PureState& s, const std::vector<int>& fixed,
                          int j) {
  std::vector<int> keep = fixed;
  keep.push_back(j);
  std::sort(keep.begin(), keep.end());
  const DensityMatrix rho = partial_trace(s, keep);
  const int k = static_cast<int>(keep.size());
  const int pos = static_cast<int>(std::find(keep.begin(), keep.end(), j) -
                                   keep.begin());
  Blocks out;
  out.m = k - 1;
  const Eigen::Index nb = Eigen::Index{1} << out.m;
  out.block.assign(static_cast<std::size_t>(nb * nb), Mat2c::Zero());
  auto split = [&](Eigen::Index r, Eigen::Index& b, int& x) {
    b = 0;
    x = 0;
    for (int p = 0; p < k; ++p) {
      const int bit = static_cast<int>((r >> (k - 1 - p)) & 1);
      if (p == pos) {
        x = bit;
      } else {
        b = (b << 1) | bit;
      }
    }
  };
  for (Eigen::Index r = 0; r < rho.rows(); ++r) {
    Eigen::Index b;
    int x;
    split(r, b, x);
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      Eigen::Index bp;
      int y;
      split(c, bp, y);
      out.block[static_cast<std::size_t>((b << out.m) + bp)](x, y) = rho(r, c);
    }
  }
  return out;
}

Eigen::Vector3cd pauli_components(const Mat2c& m) {
  Eigen::Vector3cd v;
  v << (m * pauli(Axis::X)).trace() / 2.0, (m * pauli(Axis::Y)).trace() / 2.0,
      (m * pauli(Axis::Z)).trace() / 2.0;
  return v;
}

Vec3 hermitian_vector(const Mat2c& h) { return pauli_components(h).real(); }

Vec3 cross_im(const Eigen::Vector3cd& m) {
  return m.conjugate().cross(m).imag();
}

std::pair<PureState, PureState> frames(const PureState& psi,
                                       const PureState& phi,
                                       const ConstraintSet& cs,
                                       bool with_links = false) {
  LocalUnitaryLayer lw = LocalUnitaryLayer::identity(psi.n);
  LocalUnitaryLayer lv = LocalUnitaryLayer::identity(psi.n);
  for (int q = 0; q < psi.n; ++q) {
    if (const Determination* d = cs.determination(q)) {
      lw.units[q] = d->W;
      lv.units[q] = d->V;
    } else if (const auto* w = std::get_if<WernerLink>(&cs.qubits[q]);
               w && with_links) {
      lw.units[q] = w->W;
      lv.units[q] = w->V;
    }
  }
  return {apply_local_layer(psi, lw), apply_local_layer(phi, lv)};
}

// Conditional rule on frame states; signed when every fixed qubit has k = 0.
std::optional<Determination> conditional_pin(const PureState& psi,
                                             const PureState& phi,
                                             const std::vector<int>& fixed,
                                             int j, bool signed_ok,
                                             const std::string& rule) {
  const Blocks a = conditional_blocks(psi, fixed, j);
  const Blocks b = conditional_blocks(phi, fixed, j);
  std::vector<int> subset = fixed;
  subset.push_back(j);
  std::sort(subset.begin(), subset.end());
  const Eigen::Index nb = Eigen::Index{1} << a.m;
  const std::string where = rule + " on " + subset_str(fixed) + " -> " +
                            std::to_string(j + 1);
  if (signed_ok) {
    for (Eigen::Index x = 0; x < nb; ++x)
      for (Eigen::Index y = x; y < nb; ++y) {
        std::vector<std::pair<Vec3, Vec3>> cands;
        if (x == y) {
          cands.emplace_back(hermitian_vector(a.at(x, x)),
                             hermitian_vector(b.at(x, x)));
        } else {
          const Mat2c& ma = a.at(x, y);
          const Mat2c& mb = b.at(x, y);
          cands.emplace_back(cross_im(pauli_components(ma)),
                             cross_im(pauli_components(mb)));
          cands.emplace_back(hermitian_vector(ma * ma.adjoint()),
                             hermitian_vector(mb * mb.adjoint()));
          cands.emplace_back(hermitian_vector(ma.adjoint() * ma),
                             hermitian_vector(mb.adjoint() * mb));
        }
        for (const auto& [va, vb] : cands) {
          auto d = from_vectors(va, vb, subset, "conditional vector",
                                where + " (signed)");
          if (d) return d;
        }
      }
  }
  for (Eigen::Index dd = 0; dd < nb; ++dd) {
    Mat3 ga = Mat3::Zero(), gb = Mat3::Zero();
    for (Eigen::Index x = 0; x < nb; ++x) {
      const Eigen::Vector3cd ma = pauli_components(a.at(x, x ^ dd));
      const Eigen::Vector3cd mb = pauli_components(b.at(x, x ^ dd));
      ga += (ma * ma.adjoint()).real();
      gb += (mb * mb.adjoint()).real();
    }
    auto d = from_gram(ga, gb, subset, "conditional Gram",
                       where + " (pattern " + std::to_string(dd) + ")");
    if (d) return d;
  }
  return std::nullopt;
}

std::vector<int> others_of(int n, int l) {
  std::vector<int> o;
  for (int q = 0; q < n; ++q)
    if (q != l) o.push_back(q);
  return o;
}

}  // namespace

std::optional<Determination> pin_from_single_marginal(const PureState& psi,
                                                      const PureState& phi,
                                                      int i) {
  const Vec3 a = bloch(partial_trace(psi, {i}));
  const Vec3 b = bloch(partial_trace(phi, {i}));
  return from_vectors(a, b, {i}, "marginal spectrum",
                      "single marginal " + std::to_string(i + 1));
}

std::optional<Determination> pin_from_weighted_marginal(const PureState& psi,
                                                        const PureState& phi,
                                                        int anchor, int i) {
  const Unfolding ua = unfold(psi, {anchor}, i);
  const Unfolding ub = unfold(phi, {anchor}, i);
  return from_vectors(ua.m * ua.t0, ub.m * ub.t0, ua.subset,
                      "weighted marginal",
                      "weighted marginal " + std::to_string(anchor + 1) +
                          " -> " + std::to_string(i + 1));
}

std::optional<Determination> pin_from_orthogonal_pair(const PureState& psi,
                                                      const PureState& phi,
                                                      int anchor, int i) {
  auto da = pin_from_single_marginal(psi, phi, anchor);
  if (!da) throw NotApplicable("anchor marginal is maximally mixed");
  ConstraintSet cs;
  cs.qubits.assign(psi.n, FreeQubit{});
  cs.qubits[anchor] = *da;
  const auto [fa, fb] = frames(psi, phi, cs);
  const Blocks a = conditional_blocks(fa, {anchor}, i);
  if (a.at(0, 1).norm() <= kDegeneracy)
    throw NotApplicable("off-diagonal block vanishes");
  const Blocks b = conditional_blocks(fb, {anchor}, i);
  const std::string where = "orthogonal pair " + std::to_string(anchor + 1) +
                            " -> " + std::to_string(i + 1);
  std::vector<int> subset{std::min(anchor, i), std::max(anchor, i)};
  const Mat2c& ma = a.at(0, 1);
  const Mat2c& mb = b.at(0, 1);
  const Eigen::Vector3cd pa = pauli_components(ma), pb = pauli_components(mb);
  if (auto d = from_vectors(hermitian_vector(ma * ma.adjoint()),
                            hermitian_vector(mb * mb.adjoint()), subset,
                            "orthogonal pair", where))
    return d;
  if (auto d = from_vectors(hermitian_vector(ma.adjoint() * ma),
                            hermitian_vector(mb.adjoint() * mb), subset,
                            "orthogonal pair", where))
    return d;
  if (auto d = from_vectors(cross_im(pa), cross_im(pb), subset,
                            "orthogonal pair", where))
    return d;
  return from_gram((pa * pa.adjoint()).real(), (pb * pb.adjoint()).real(),
                   subset, "orthogonal pair", where + " (axis)");
}

std::vector<WitnessMatrix> witness_matrices(const PureState& psi,
                                            const std::vector<int>& fixed,
                                            int k) {
  const Blocks bl = conditional_blocks(psi, fixed, k);
  const Eigen::Index nb = Eigen::Index{1} << bl.m;
  std::vector<WitnessMatrix> out;
  for (Eigen::Index i = 0; i < nb; ++i)
    for (Eigen::Index j = i; j < nb; ++j) {
      WitnessMatrix b;
      b.i = i;
      b.j = j;
      b.kind = WitnessKind::B;
      b.m = i == j ? Mat2c(2.0 * bl.at(i, i)) : Mat2c(bl.at(j, i) + bl.at(i, j));
      out.push_back(b);
      if (i != j) {
        WitnessMatrix c = b;
        c.kind = WitnessKind::C;
        c.m = cd(0, 1) * bl.at(j, i) - cd(0, 1) * bl.at(i, j);
        out.push_back(c);
      }
    }
  return out;
}

bool witnesses_trivial(const std::vector<WitnessMatrix>& w, double tol) {
  for (const auto& x : w) {
    const Mat2c t = x.m - (x.m.trace() / 2.0) * Mat2c::Identity();
    if (t.norm() > tol) return false;
  }
  return true;
}

std::optional<Determination> pin_from_pair_witness(
    const PureState& psi, const PureState& phi, const ConstraintSet& cs,
    const std::vector<int>& fixed, int k) {
  bool signed_ok = true;
  for (int q : fixed) {
    const Determination* d = cs.determination(q);
    if (!d) throw NotApplicable("fixed qubit is not determined");
    if (d->k_set.size() != 1) signed_ok = false;
  }
  const auto [fa, fb] = frames(psi, phi, cs);
  if (witnesses_trivial(witness_matrices(fa, fixed, k)))
    throw NotApplicable("all witness matrices are proportional to identity");
  return conditional_pin(fa, fb, fixed, k, signed_ok, "pair witness");
}

std::optional<Determination> pin_from_subset_gram(
    const PureState& psi, const PureState& phi, const std::vector<int>& others,
    int l) {
  const Unfolding ua = unfold(psi, others, l);
  const Unfolding ub = unfold(phi, others, l);
  return from_gram(ua.m * ua.m.transpose(), ub.m * ub.m.transpose(), ua.subset,
                   "correlation Gram",
                   "correlation Gram " + subset_str(others) + " -> " +
                       std::to_string(l + 1));
}

std::optional<Determination> pin_from_triple(const PureState& psi,
                                             const PureState& phi, int i,
                                             int j, int l) {
  return pin_from_subset_gram(psi, phi, {std::min(i, j), std::max(i, j)}, l);
}

namespace {

struct WernerFrame {
  double lambda = 0.0;
  Mat2c wj = Mat2c::Identity();
};

std::optional<WernerFrame> werner_frame(const PureState& s, int i, int j) {
  const CorrelationData c = correlation_data(partial_trace(s, {i, j}));
  if (c.r.norm() > kDegeneracy || c.s.norm() > kDegeneracy) return std::nullopt;
  Eigen::JacobiSVD<Mat3> svd(c.lambda);
  const Vec3 sv = svd.singularValues();
  if (sv[0] < kPinFire || sv[0] - sv[2] > kDegeneracy) return std::nullopt;
  const double sign = c.lambda.determinant() < 0 ? -1.0 : 1.0;
  WernerFrame f;
  f.lambda = sign * sv.mean();
  f.wj = unitary_from_rotation(c.lambda / f.lambda);
  return f;
}

}  // namespace

std::optional<WernerLink> detect_werner_link(const PureState& psi,
                                             const PureState& phi, int i,
                                             int j) {
  const auto a = werner_frame(psi, i, j);
  if (!a) return std::nullopt;
  const auto b = werner_frame(phi, i, j);
  if (!b) return std::nullopt;
  if (std::abs(a->lambda - b->lambda) > kInvariantTol)
    mismatch({i, j}, Eigen::VectorXd::Constant(1, a->lambda),
             Eigen::VectorXd::Constant(1, b->lambda), "Werner weight");
  WernerLink w;
  w.other = i;
  w.W = a->wj;
  w.V = b->wj;
  w.lambda = a->lambda;
  return w;
}

std::pair<PureState, PureState> singlet_projection(const PureState& psi,
                                                   const PureState& phi, int i,
                                                   int j) {
  if (psi.n < 3) throw ProductObstruction("projection needs at least 3 qubits");
  auto project = [&](const PureState& s) {
    const int n = s.n;
    CVec out = CVec::Zero(Eigen::Index{1} << (n - 2));
    for (Eigen::Index idx = 0; idx < s.dim(); ++idx) {
      const int a = bit_of(idx, i, n), b = bit_of(idx, j, n);
      if (a == b) continue;
      Eigen::Index r = 0;
      for (int q = 0; q < n; ++q)
        if (q != i && q != j) r = (r << 1) | bit_of(idx, q, n);
      out[r] += (a == 0 ? 1.0 : -1.0) / std::sqrt(2.0) * s.amp[idx];
    }
    if (out.norm() < kPinFire)
      throw ProductObstruction("singlet projection vanishes");
    return normalized(n - 2, out);
  };
  return {project(psi), project(phi)};
}

namespace {

class Propagator {
 public:
  Propagator(const PureState& psi, const PureState& phi,
             const PropagateOptions& o)
      : psi_(psi), phi_(phi), opts_(o), n_(psi.n) {
    cs_.qubits.assign(n_, FreeQubit{});
  }

  ConstraintSet run() {
    try {
      while (step()) {
      }
    } catch (const InvariantMismatch& e) {
      cs_.mismatch = e.mismatch;
      cs_.log.push_back("mismatch: " + describe(Witness(e.mismatch)));
    }
    return std::move(cs_);
  }

 private:
  bool is_free(int q) const {
    return !std::holds_alternative<Determination>(cs_.qubits[q]);
  }

  void record(int q, Determination d) {
    cs_.log.push_back("q" + std::to_string(q + 1) + ": " + d.provenance +
                      " k=" + (d.k_set.size() == 1 ? "{0}" : "{0,1}"));
    cs_.qubits[q] = std::move(d);
  }

  int max_others() const {
    return std::min(opts_.max_subset - 1, n_ - 2);
  }

  std::vector<int> determined() const {
    std::vector<int> d;
    for (int q = 0; q < n_; ++q)
      if (!is_free(q)) d.push_back(q);
    return d;
  }

  template <typename F>
  bool try_each_free(F&& f) {
    for (int q = 0; q < n_; ++q) {
      if (!is_free(q)) continue;
      std::optional<Determination> d;
      try {
        d = f(q);
      } catch (const NotApplicable&) {
        d.reset();
      } catch (const ProductObstruction&) {
        d.reset();
      }
      if (d) {
        record(q, std::move(*d));
        return true;
      }
    }
    return false;
  }

  bool step() {
    if (opts_.single &&
        try_each_free([&](int q) { return pin_from_single_marginal(psi_, phi_, q); }))
      return true;
    if (opts_.weighted && try_each_free([&](int q) {
          for (int size = 1; size <= max_others(); ++size)
            for (const auto& s : combinations(others_of(n_, q), size)) {
              const Unfolding ua = unfold(psi_, s, q), ub = unfold(phi_, s, q);
              auto d = from_vectors(
                  ua.m * ua.t0, ub.m * ub.t0, ua.subset, "weighted marginal",
                  "weighted marginal " + subset_str(s) + " -> " +
                      std::to_string(q + 1));
              if (d) return d;
            }
          return std::optional<Determination>{};
        }))
      return true;
    if (opts_.orthogonal_pair && try_each_free([&](int q) {
          for (int a : determined()) {
            if (cs_.determination(a)->provenance.rfind("single", 0) != 0) continue;
            try {
              if (auto d = pin_from_orthogonal_pair(psi_, phi_, a, q)) return d;
            } catch (const NotApplicable&) {
            }
          }
          return std::optional<Determination>{};
        }))
      return true;
    if (opts_.pair_witness && try_each_free([&](int q) {
          const std::vector<int> det = determined();
          for (int size = 1; size <= std::min<int>(2, det.size()); ++size)
            for (const auto& s : combinations(det, size)) {
              try {
                if (auto d = pin_from_pair_witness(psi_, phi_, cs_, s, q)) return d;
              } catch (const NotApplicable&) {
              }
            }
          return std::optional<Determination>{};
        }))
      return true;
    if (opts_.triple && try_each_free([&](int q) {
          for (int size = 1; size <= max_others(); ++size)
            for (const auto& s : combinations(others_of(n_, q), size))
              if (auto d = pin_from_subset_gram(psi_, phi_, s, q)) return d;
          return std::optional<Determination>{};
        }))
      return true;
    if (opts_.werner && link_werner()) return true;
    if (opts_.singlet && project_singlets()) return true;
    return false;
  }

  bool link_werner() {
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        if (!std::holds_alternative<FreeQubit>(cs_.qubits[i]) ||
            !std::holds_alternative<FreeQubit>(cs_.qubits[j]))
          continue;
        auto w = detect_werner_link(psi_, phi_, i, j);
        if (!w) continue;
        WernerLink wi;
        wi.other = j;
        wi.lambda = w->lambda;
        WernerLink wj = *w;
        wj.other = i;
        cs_.qubits[i] = wi;
        cs_.qubits[j] = wj;
        cs_.log.push_back("q" + std::to_string(i + 1) + ", q" +
                          std::to_string(j + 1) + ": Werner link");
        return true;
      }
    return false;
  }

  bool project_singlets() {
    if (n_ < 3) return false;
    for (int i = 0; i < n_; ++i) {
      const auto* w = std::get_if<WernerLink>(&cs_.qubits[i]);
      if (!w || w->other < i) continue;
      const int j = w->other;
      if (projected_.count({i, j})) continue;
      projected_.insert({i, j});
      const auto [fa, fb] = frames(psi_, phi_, cs_, true);
      std::pair<PureState, PureState> pr;
      try {
        pr = singlet_projection(fa, fb, i, j);
      } catch (const ProductObstruction&) {
        continue;
      }
      ConstraintSet sub = propagate(pr.first, pr.second, opts_);
      std::vector<int> map;
      for (int q = 0; q < n_; ++q)
        if (q != i && q != j) map.push_back(q);
      if (sub.mismatch) {
        SpectrumMismatch m = *sub.mismatch;
        for (int& q : m.subset) q = map[q];
        m.what = "singlet-projected " + m.what;
        throw InvariantMismatch(std::move(m));
      }
      bool any = false;
      for (int r = 0; r < static_cast<int>(map.size()); ++r) {
        const Determination* d = sub.determination(r);
        const int q = map[r];
        if (!d || !is_free(q)) continue;
        const Determination* cur = cs_.determination(q);
        Determination nd = *d;
        if (cur) continue;
        if (const auto* lk = std::get_if<WernerLink>(&cs_.qubits[q])) {
          nd.W = d->W * lk->W;
          nd.V = d->V * lk->V;
        }
        nd.provenance = "singlet projection on " +
                        subset_str({i, j}) + ": " + d->provenance;
        record(q, std::move(nd));
        any = true;
      }
      if (any) return true;
    }
    return false;
  }

  const PureState& psi_;
  const PureState& phi_;
  PropagateOptions opts_;
  int n_;
  ConstraintSet cs_;
  std::set<std::pair<int, int>> projected_;
};

}  // namespace

ConstraintSet propagate(const PureState& psi, const PureState& phi,
                        const PropagateOptions& opts) {
  if (psi.n != phi.n) throw DimensionError("propagate: qubit counts differ");
  return Propagator(psi, phi, opts).run();
}

}  // namespace luq
