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

#include "luq/phase_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace luq {

bool ZeroSupport::contains(Eigen::Index i) const {
  return std::binary_search(zeros.begin(), zeros.end(), i);
}

ZeroSupport zero_support(const CVec& v, double rel_tol) {
  ZeroSupport z;
  const double mx = v.cwiseAbs().maxCoeff();
  z.threshold = rel_tol * mx;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a <= z.threshold) {
      z.zeros.push_back(i);
    } else if (a <= 10 * z.threshold) {
      z.fragile.push_back(i);
    }
  }
  return z;
}

ZeroSupport zero_support(const PureState& psi, double rel_tol) {
  return zero_support(psi.amp, rel_tol);
}

namespace {

double phase_of(const PhaseAssignment& a, Eigen::Index i, int n) {
  double t = a.alpha0;
  for (int k = 0; k < n; ++k)
    if (bit_of(i, k, n)) t += a.alpha[k];
  return t;
}

struct Row {
  std::vector<std::int64_t> a;
  double t = 0.0;
  double err = 0.0;
};

// Incremental integer echelon basis for rows a.x = t (mod 2 pi).
class PhaseSystem {
 public:
  explicit PhaseSystem(int cols) : cols_(cols), basis_(cols) {}

  // Returns false if the row reduces to an inconsistent zero row.
  bool insert(Row row) {
    while (true) {
      int c = 0;
      while (c < cols_ && row.a[c] == 0) ++c;
      if (c == cols_) {
        return std::abs(wrap_angle(row.t)) <= 1e-6 + 10 * row.err;
      }
      if (!basis_[c]) {
        normalize(row, c);
        basis_[c] = std::move(row);
        return true;
      }
      Row p = *basis_[c];
      while (row.a[c] != 0) {
        const std::int64_t q = p.a[c] / row.a[c];
        for (int j = 0; j < cols_; ++j) p.a[j] -= q * row.a[j];
        p.t = wrap_angle(p.t - static_cast<double>(q) * row.t);
        p.err += std::abs(static_cast<double>(q)) * row.err;
        std::swap(p, row);
      }
      normalize(p, c);
      basis_[c] = std::move(p);
    }
  }

  // Solutions for every choice of branch t/g + 2 pi j/g at each pivot.
  void solve_all(int c, std::vector<double>& x,
                 std::vector<std::vector<double>>& out,
                 std::size_t cap) const {
    if (out.size() > cap) return;
    if (c < 0) {
      out.push_back(x);
      return;
    }
    if (!basis_[c]) {
      x[c] = 0.0;
      solve_all(c - 1, x, out, cap);
      return;
    }
    const Row& r = *basis_[c];
    double t = r.t;
    for (int j = c + 1; j < cols_; ++j) t -= static_cast<double>(r.a[j]) * x[j];
    const double g = static_cast<double>(r.a[c]);
    for (std::int64_t j = 0; j < r.a[c]; ++j) {
      x[c] = wrap_2pi((wrap_angle(t) + 2 * kPi * static_cast<double>(j)) / g);
      solve_all(c - 1, x, out, cap);
    }
  }

  std::vector<double> solve() const {
    std::vector<double> x(cols_, 0.0);
    for (int c = cols_ - 1; c >= 0; --c) {
      if (!basis_[c]) continue;
      const Row& r = *basis_[c];
      double t = r.t;
      for (int j = c + 1; j < cols_; ++j) t -= static_cast<double>(r.a[j]) * x[j];
      x[c] = wrap_angle(t) / static_cast<double>(r.a[c]);
    }
    return x;
  }

 private:
  static void normalize(Row& r, int c) {
    if (r.a[c] < 0) {
      for (auto& v : r.a) v = -v;
      r.t = -r.t;
    }
  }

  int cols_;
  std::vector<std::optional<Row>> basis_;
};

}  // namespace

std::vector<std::vector<double>> all_phase_solutions(
    const std::vector<PhaseRow>& rows, int cols, std::size_t max_solutions) {
  PhaseSystem sys(cols);
  for (const PhaseRow& pr : rows) {
    if (static_cast<int>(pr.a.size()) != cols)
      throw DimensionError("all_phase_solutions: row length mismatch");
    Row r;
    r.a = pr.a;
    r.t = pr.t;
    r.err = 1e-9;
    if (!sys.insert(std::move(r))) return {};
  }
  std::vector<std::vector<double>> out;
  std::vector<double> x(cols, 0.0);
  sys.solve_all(cols - 1, x, out, max_solutions);
  if (out.size() > max_solutions) return {};
  return out;
}

CVec apply_phases(const CVec& v, int n, const PhaseAssignment& a) {
  CVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out[i] = v[i] * std::polar(1.0, phase_of(a, i, n));
  return out;
}

CVec pad_state(const PureState& psi) {
  const ZeroSupport z = zero_support(psi);
  CVec out = psi.amp;
  for (Eigen::Index k : z.zeros) out[k] = 2.0;
  return out;
}

CVec pad_state_with_phases(const PureState& phi, const PhaseAssignment& trial) {
  const ZeroSupport z = zero_support(phi);
  CVec out = phi.amp;
  for (Eigen::Index k : z.zeros)
    out[k] = 2.0 * std::polar(1.0, -phase_of(trial, k, phi.n));
  return out;
}

QuotientVector hadamard_quotient(const CVec& psi, const CVec& phi) {
  if (psi.size() != phi.size())
    throw DimensionError("hadamard_quotient: length mismatch");
  QuotientVector q;
  q.q = psi.cwiseQuotient(phi);
  return q;
}

std::optional<std::vector<Eigen::Vector2cd>> is_product_state(const CVec& v,
                                                              int n,
                                                              double tol) {
  const double total = v.norm();
  if (!(total > 0)) return std::nullopt;
  std::vector<Eigen::Vector2cd> factors;
  CVec rest = v;
  for (int q = 0; q < n - 1; ++q) {
    const Eigen::Index half = rest.size() / 2;
    CMat m(2, half);
    m.row(0) = rest.head(half).transpose();
    m.row(1) = rest.tail(half).transpose();
    Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() > 1 && s[1] > tol * s[0]) return std::nullopt;
    factors.push_back(svd.matrixU().col(0));
    rest = s[0] * svd.matrixV().col(0).conjugate();
  }
  factors.push_back(rest);
  CVec prod = CVec::Ones(1);
  for (const auto& f : factors) {
    CVec next(prod.size() * 2);
    for (Eigen::Index i = 0; i < prod.size(); ++i) {
      next[2 * i] = prod[i] * f[0];
      next[2 * i + 1] = prod[i] * f[1];
    }
    prod = std::move(next);
  }
  if ((prod - v).norm() > 10 * tol * total) return std::nullopt;
  return factors;
}

std::optional<PhaseAssignment> extract_phases(const QuotientVector& q, int n,
                                              double tol) {
  for (Eigen::Index i = 0; i < q.q.size(); ++i)
    if (std::abs(std::abs(q.q[i]) - 1.0) > 1e-7) return std::nullopt;
  const auto f = is_product_state(q.q, n, tol);
  if (!f) return std::nullopt;
  PhaseAssignment a;
  a.alpha0 = wrap_2pi(std::arg(q.q[0]));
  for (int k = 0; k < n; ++k)
    a.alpha.push_back(wrap_2pi(std::arg((*f)[k][1] / (*f)[k][0])));
  for (Eigen::Index i = 0; i < q.q.size(); ++i)
    if (std::abs(q.q[i] - std::polar(1.0, phase_of(a, i, n))) > 1e-7)
      return std::nullopt;
  return a;
}

PhaseSolve solve_phases(const PureState& psi, const PureState& phi) {
  if (psi.n != phi.n) throw DimensionError("solve_phases: qubit counts differ");
  const int n = psi.n;
  const ZeroSupport zp = zero_support(psi), zf = zero_support(phi);
  PhaseSolve out;
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    const double a = std::abs(psi.amp[i]), b = std::abs(phi.amp[i]);
    const bool za = a <= zp.threshold, zb = b <= zf.threshold;
    if (za != zb) {
      const bool fragile = za ? b <= 10 * zf.threshold : a <= 10 * zp.threshold;
      if (!fragile) {
        out.reason = "zero supports differ";
        return out;
      }
      continue;
    }
    if (std::abs(a - b) > kModuliTol) {
      out.reason = "moduli differ";
      return out;
    }
    if (!za) support.push_back(i);
  }
  std::stable_sort(support.begin(), support.end(),
                   [&](Eigen::Index x, Eigen::Index y) {
                     return std::min(std::abs(psi.amp[x]), std::abs(phi.amp[x])) >
                            std::min(std::abs(psi.amp[y]), std::abs(phi.amp[y]));
                   });
  PhaseSystem sys(n + 1);
  for (Eigen::Index i : support) {
    Row r;
    r.a.assign(n + 1, 0);
    r.a[0] = 1;
    for (int k = 0; k < n; ++k) r.a[k + 1] = bit_of(i, k, n);
    r.t = std::arg(psi.amp[i] * std::conj(phi.amp[i]));
    const double m = std::min(std::abs(psi.amp[i]), std::abs(phi.amp[i]));
    r.err = 1e-10 / m;
    if (!sys.insert(std::move(r))) {
      out.reason = "phase system inconsistent";
      return out;
    }
  }
  const std::vector<double> x = sys.solve();
  out.assignment.alpha0 = wrap_2pi(x[0]);
  for (int k = 0; k < n; ++k) out.assignment.alpha.push_back(wrap_2pi(x[k + 1]));
  const CVec img = apply_phases(phi.amp, n, out.assignment);
  const double res = (img - psi.amp).cwiseAbs().maxCoeff();
  if (res <= kPhaseVerifyTol) {
    out.status = PhaseStatus::Feasible;
  } else {
    out.status = PhaseStatus::Unverified;
    out.reason = "phase solution failed verification";
  }
  return out;
}

std::optional<PhaseAssignment> phase_gate_feasible(const PureState& psi,
                                                   const PureState& phi) {
  const PhaseSolve s = solve_phases(psi, phi);
  if (s.status != PhaseStatus::Feasible) return std::nullopt;
  return s.assignment;
}

namespace {

// Padded pair for the cross-check routes, or nullopt if the zero supports
// differ or the support system has no solution.
std::optional<std::pair<CVec, CVec>> padded_pair(const PureState& psi,
                                                 const PureState& phi) {
  const ZeroSupport zp = zero_support(psi), zf = zero_support(phi);
  if (zp.zeros != zf.zeros) return std::nullopt;
  PhaseAssignment trial;
  trial.alpha.assign(psi.n, 0.0);
  if (!zp.zeros.empty()) {
    const PhaseSolve s = solve_phases(psi, phi);
    if (s.status == PhaseStatus::Infeasible) return std::nullopt;
    trial = s.assignment;
  }
  return std::make_pair(pad_state(psi), pad_state_with_phases(phi, trial));
}

}  // namespace

bool product_condition_route(const PureState& psi, const PureState& phi,
                             double tol) {
  if (psi.n != phi.n) throw DimensionError("qubit counts differ");
  const auto pp = padded_pair(psi, phi);
  if (!pp) return false;
  const CVec& a = pp->first;
  const CVec& b = pp->second;
  const int n = psi.n;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::abs(std::abs(a[i]) - std::abs(b[i])) > kModuliTol) return false;
  const Eigen::Index rest = a.size() / 2;
  for (int q = 0; q < n; ++q) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    auto full = [&](Eigen::Index r, int bit) {
      const Eigen::Index hi = (r / stride) * 2 * stride;
      return hi + bit * stride + r % stride;
    };
    for (Eigen::Index k = 0; k < rest; ++k)
      for (Eigen::Index l = 0; l < rest; ++l) {
        const cd lhs = a[full(k, 0)] * a[full(l, 1)] * b[full(k, 1)] * b[full(l, 0)];
        const cd rhs = a[full(k, 1)] * a[full(l, 0)] * b[full(k, 0)] * b[full(l, 1)];
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        if (std::abs(lhs - rhs) > tol * scale) return false;
      }
  }
  return true;
}

std::optional<PhaseAssignment> quotient_route(const PureState& psi,
                                              const PureState& phi,
                                              double tol) {
  if (psi.n != phi.n) throw DimensionError("qubit counts differ");
  const auto pp = padded_pair(psi, phi);
  if (!pp) return std::nullopt;
  const QuotientVector q = hadamard_quotient(pp->first, pp->second);
  auto a = extract_phases(q, psi.n, tol);
  if (!a) return std::nullopt;
  const CVec img = apply_phases(phi.amp, psi.n, *a);
  if ((img - psi.amp).cwiseAbs().maxCoeff() > kPhaseVerifyTol) return std::nullopt;
  return a;
}

}  // namespace luq
