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


#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "luq/canonical.hpp"
#include "luq/catalog.hpp"
#include "luq/decider.hpp"
#include "luq/version.hpp"
#include "state_io.hpp"

using namespace luq;
using io::json;

namespace {

enum Exit { kEquivalent = 0, kNotEquivalent = 1, kUndecided = 2, kInputError = 3 };

struct Common {
  bool json_out = false;
  double tol = 1e-9;
  int starts = 32;
  std::uint64_t seed = 0x6c7571;
};

PureState load(const std::string& path) {
  io::StateFile f = io::read_state(path);
  if (f.renormalized)
    std::cerr << "warning: " << path << " renormalized (norm deviation "
              << f.norm_deviation << ")\n";
  return f.state;
}

DecideOptions options(const Common& c) {
  DecideOptions o;
  o.tol = c.tol;
  o.fallback_starts = c.starts;
  o.seed = c.seed;
  return o;
}

std::string fmt(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os.precision(12);
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str();
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_decide(const Common& c, const std::string& a, const std::string& b,
               const std::string& out) {
  const PureState psi = load(a), phi = load(b);
  if (psi.n != phi.n) throw InputError("states have different qubit counts");
  DecisionLog log;
  const Verdict v = decide_lu(psi, phi, options(c), &log);
  json j;
  j["verdict"] = verdict_label(v);
  j["log"] = io::log_json(log);
  std::ostringstream t;
  t << "verdict: " << verdict_label(v) << "\n";
  if (!log.route.empty()) t << "route: " << log.route << "\n";
  for (const auto& r : log.rules) t << "rule: " << r << "\n";
  for (const auto& br : log.branches)
    t << "branch " << br.bits << ": moduli " << (br.moduli_ok ? "ok" : "differ")
      << ", " << (br.feasible ? "feasible" : "infeasible") << "\n";
  if (log.fallback_used) t << "numeric fallback used\n";
  for (const auto& n : log.notes) t << "note: " << n << "\n";
  int code = kUndecided;
  if (const auto* e = std::get_if<Equivalent>(&v)) {
    code = kEquivalent;
    json meta = {{"tool_version", kVersion},
                 {"tolerance", c.tol},
                 {"overlap", verify_certificate(psi, phi, e->certificate)},
                 {"log", io::log_json(log)}};
    const json cert = io::certificate_json(e->certificate, meta);
    j["certificate"] = cert;
    if (!out.empty()) {
      io::write_json(out, cert);
      t << "certificate written to " << out << "\n";
    } else {
      t << "certificate:\n" << cert.dump(2) << "\n";
    }
  } else if (const auto* ne = std::get_if<NotEquivalent>(&v)) {
    code = kNotEquivalent;
    j["witness"] = io::witness_json(ne->witness);
    t << "witness: " << witness_kind(ne->witness) << ": " << describe(ne->witness)
      << "\n";
  } else if (const auto* u = std::get_if<Undecided>(&v)) {
    j["reason"] = u->reason;
    j["best_overlap"] = u->best_overlap;
    t << "reason: " << u->reason << "\nbest overlap: " << u->best_overlap << "\n";
  }
  emit(c, j, t.str());
  return code;
}

int cmd_classify(const Common& c, const std::string& a) {
  const PureState psi = load(a);
  json j;
  std::ostringstream t;
  t.precision(12);
  if (psi.n == 2) {
    const Spectrum s = marginal_spectrum(psi, {0});
    j["label"] = "2";
    j["schmidt_weights"] = to_std(s.values);
    t << "class: 2\nschmidt weights: " << fmt(s.values) << "\n";
  } else if (psi.n == 3) {
    const ThreeQubitClass k = classify_3(psi);
    j["label"] = k.label;
    j["entropies"] = to_std(k.entropies);
    t << "class: " << k.label << "\nentropies: " << fmt(k.entropies) << "\n";
    if (k.anchor >= 0) {
      j["anchor"] = k.anchor + 1;
      j["p"] = k.p;
      t << "anchor: " << k.anchor + 1 << "\np: " << k.p << "\n";
    }
  } else if (psi.n == 4) {
    const FourQubitClass k = classify_4(psi);
    j["label"] = k.label;
    j["entropies"] = to_std(k.entropies);
    t << "class: " << k.label << "\nentropies: " << fmt(k.entropies) << "\n";
    if (k.nc) {
      j["nonlocal_content"] = to_std(k.nc->vec());
      j["pair"] = {k.mixed_pair[0] + 1, k.mixed_pair[1] + 1};
      t << "nonlocal content: " << fmt(k.nc->vec()) << "\n";
    }
    if (k.werner) {
      j["bell_pair_params"] = to_std(k.werner->vec());
      j["pair"] = {k.werner->pair[0] + 1, k.werner->pair[1] + 1};
      t << "bell pair params (lambda g1 g2 g3): " << fmt(k.werner->vec()) << "\n";
    }
  } else {
    j["label"] = nullptr;
    j["notice"] = "classes are defined for n = 2, 3, 4 only";
    t << "unsupported: classes are defined for n = 2, 3, 4 only\n";
  }
  emit(c, j, t.str());
  return 0;
}

int cmd_nonlocal(const Common& c, const std::string& a) {
  const json in = io::read_json(a);
  Mat4c u;
  if (in.contains("unitary")) {
    u = io::parse_matrix(in["unitary"], 4, 4);
  } else {
    const PureState psi = io::parse_state(in).state;
    if (psi.n != 4) throw InputError("nonlocal-content needs a 4x4 unitary or a 4-qubit state");
    if ((partial_trace(psi, {0, 1}) - CMat::Identity(4, 4) / 4.0).norm() > 1e-8)
      throw InputError("qubits 1,2 of the state are not maximally mixed");
    Mat4c m;
    for (int r = 0; r < 4; ++r)
      for (int col = 0; col < 4; ++col) m(r, col) = psi.amp[4 * r + col];
    u = 2.0 * m.transpose();
  }
  const KakDecomposition k = nonlocal_content(u);
  json j = {{"nonlocal_content", to_std(k.nc.vec())}};
  emit(c, j, "nonlocal content: " + fmt(k.nc.vec()) + "\n");
  return 0;
}

int cmd_conjugate(const Common& c, const std::string& a) {
  const ConjugateResult r = conjugate_class(load(a), options(c));
  json j = {{"flag", to_string(r.flag)}, {"verdict", verdict_label(r.verdict)}};
  emit(c, j, "I1: " + to_string(r.flag) + " (" + verdict_label(r.verdict) + ")\n");
  return r.flag == ConjugateFlag::Unknown ? kUndecided : 0;
}

int cmd_locc(const Common& c, const std::string& a, const std::string& b) {
  const PureState psi = load(a), phi = load(b);
  if (psi.n != phi.n) throw InputError("states have different qubit counts");
  const LoccRelation r = locc_comparability(psi, phi, options(c));
  emit(c, {{"relation", to_string(r)}}, "relation: " + to_string(r) + "\n");
  return r == LoccRelation::Unknown ? kUndecided : 0;
}

std::vector<int> parse_subset(const std::string& s, int n) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoi(tok) - 1);
    } catch (const std::exception&) {
      throw InputError("bad subset entry: " + tok);
    }
  }
  validate_subset(out, n);
  return out;
}

int cmd_marginals(const Common& c, const std::string& a, const std::string& subset) {
  const PureState psi = load(a);
  std::vector<std::vector<int>> subsets;
  if (!subset.empty()) {
    subsets.push_back(parse_subset(subset, psi.n));
  } else {
    for (int q = 0; q < psi.n; ++q) subsets.push_back({q});
  }
  json j = json::array();
  std::ostringstream t;
  t.precision(12);
  for (const auto& s : subsets) {
    const DensityMatrix rho = partial_trace(psi, s);
    json e;
    json sub = json::array();
    for (int q : s) sub.push_back(q + 1);
    e["subset"] = sub;
    e["spectrum"] = to_std(spectrum(rho).values);
    e["entropy"] = entropy(rho);
    e["matrix"] = io::matrix_json(rho);
    j.push_back(e);
    t << "subset " << sub.dump() << "\nspectrum: " << fmt(spectrum(rho).values)
      << "\nentropy: " << entropy(rho) << "\n" << rho << "\n";
  }
  emit(c, j, t.str());
  return 0;
}

PureState make_family(const std::string& family, const std::vector<double>& p,
                      std::uint64_t seed) {
  auto need = [&](std::size_t k) {
    if (p.size() != k)
      throw InputError(family + " takes " + std::to_string(k) + " parameters");
  };
  auto count = [&](double x) {
    if (x != std::floor(x) || x < 1) throw InputError("qubit count must be a positive integer");
    return static_cast<int>(x);
  };
  if (family == "ghz") {
    need(1);
    return ghz(count(p[0]));
  }
  if (family == "w") {
    need(1);
    return w_state(count(p[0]));
  }
  if (family == "bell") {
    need(1);
    static const BellKind kinds[4] = {BellKind::PhiPlus, BellKind::PhiMinus,
                                      BellKind::PsiPlus, BellKind::PsiMinus};
    const int k = static_cast<int>(p[0]);
    if (k < 0 || k > 3) throw InputError("bell index is 0..3 (Phi+, Phi-, Psi+, Psi-)");
    return bell(kinds[k]);
  }
  if (family == "controlled-phase") {
    need(2);
    return controlled_phase_all(count(p[0]), p[1]);
  }
  if (family == "bell-pair") {
    need(4);
    return bell_pair_phase_state(p[0], p[1], p[2], p[3]);
  }
  if (family == "five-qubit") {
    need(1);
    return five_qubit_all_pairs_mixed(p[0]);
  }
  if (family == "choi") {
    need(3);
    return choi_state({p[0], p[1], p[2]});
  }
  if (family == "lme") {
    if (p.empty()) throw InputError("lme takes 2^n phases");
    int n = 0;
    while ((std::size_t{1} << n) < p.size()) ++n;
    if ((std::size_t{1} << n) != p.size()) throw InputError("lme takes 2^n phases");
    return lme_phase_state(n, Eigen::Map<const Eigen::VectorXd>(p.data(), p.size()));
  }
  if (family == "random") {
    need(1);
    std::mt19937_64 rng(seed);
    return random_state(count(p[0]), rng);
  }
  throw InputError("unknown family: " + family);
}

int cmd_make(const Common& c, const std::string& family,
             const std::vector<double>& params, const std::string& out,
             bool dress) {
  PureState s = make_family(family, params, c.seed);
  if (dress) {
    std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ULL);
    s = apply_local_layer(s, random_layer(s.n, rng));
  }
  const json j = io::state_json(s, family);
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_json(out, j);
  return 0;
}

int cmd_verify(const Common& c, const std::string& a, const std::string& b,
               const std::string& cert) {
  const PureState psi = load(a), phi = load(b);
  const LocalUnitaryLayer l = io::read_certificate(cert);
  if (l.size() != psi.n || psi.n != phi.n)
    throw InputError("certificate size does not match the states");
  const double ov = verify_certificate(psi, phi, l);
  const bool ok = ov >= 1.0 - 1e-9;
  std::ostringstream t;
  t.precision(15);
  t << "overlap: " << ov << "\n" << (ok ? "verified" : "not verified") << "\n";
  emit(c, {{"overlap", ov}, {"verified", ok}}, t.str());
  return ok ? 0 : kNotEquivalent;
}

int cmd_standard_form(const Common& c, const std::string& a, const std::string& out) {
  const auto [s, l] = standard_form(load(a));
  json j = {{"state", io::state_json(s, "standard form")},
            {"layer", io::certificate_json(l, {{"tool_version", kVersion}})}};
  if (!out.empty()) io::write_json(out, io::state_json(s, "standard form"));
  std::ostringstream t;
  t << "standard form:\n" << io::state_json(s).dump(2) << "\nlayer:\n"
    << j["layer"].dump(2) << "\n";
  emit(c, j, t.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"luq: local-unitary equivalence of multi-qubit pure states"};
  app.require_subcommand(1);
  Common c;
  if (const char* env = std::getenv("LUQ_SEED")) {
    try {
      c.seed = std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      std::cerr << "error: LUQ_SEED is not an integer\n";
      return kInputError;
    }
  }
  app.add_flag("--json", c.json_out, "Machine-readable output");
  std::string a, b, cert, out, subset, family;
  std::vector<double> params;
  bool dress = false;

  auto* decide = app.add_subcommand("decide", "Decide LU equivalence of two states");
  decide->add_option("A", a, "First state file")->required();
  decide->add_option("B", b, "Second state file")->required();
  decide->add_option("--tol", c.tol, "Numerical tolerance");
  decide->add_option("--fallback-starts", c.starts, "Numeric fallback starts");
  decide->add_option("--seed", c.seed, "Fallback seed (default LUQ_SEED)");
  decide->add_option("-o,--out", out, "Certificate output file");

  auto* classify = app.add_subcommand("classify", "Class label and parameters (n = 2, 3, 4)");
  classify->add_option("A", a, "State file")->required();

  auto* nonlocal = app.add_subcommand("nonlocal-content",
                                      "Nonlocal content of a 4x4 unitary or its 4-qubit state");
  nonlocal->add_option("FILE", a, "Unitary file {\"unitary\": ...} or state file")->required();

  auto* conj = app.add_subcommand("conjugate", "Is the state LU-equivalent to its conjugate");
  conj->add_option("A", a, "State file")->required();
  conj->add_option("--seed", c.seed, "Fallback seed");

  auto* locc = app.add_subcommand("locc", "LOCC comparability of two states");
  locc->add_option("A", a, "First state file")->required();
  locc->add_option("B", b, "Second state file")->required();
  locc->add_option("--seed", c.seed, "Fallback seed");

  auto* marg = app.add_subcommand("marginals", "Reduced states and spectra");
  marg->add_option("A", a, "State file")->required();
  marg->add_option("--subset", subset, "Comma-separated 1-based qubits");

  auto* make = app.add_subcommand("make", "Write a catalog state");
  make->add_option("FAMILY", family,
                   "ghz, w, bell, controlled-phase, bell-pair, five-qubit, choi, lme, random")
      ->required();
  make->add_option("PARAMS", params, "Family parameters");
  make->add_option("-o,--out", out, "Output file");
  make->add_option("--seed", c.seed, "Seed for random and --dress");
  make->add_flag("--dress", dress, "Apply a random local layer");

  auto* verify = app.add_subcommand("verify", "Check a certificate: A = L B");
  verify->add_option("A", a, "First state file")->required();
  verify->add_option("B", b, "Second state file")->required();
  verify->add_option("CERT", cert, "Certificate file")->required();

  auto* sf = app.add_subcommand("standard-form", "Phase-fixed sorted trace decomposition");
  sf->add_option("A", a, "State file")->required();
  sf->add_option("-o,--out", out, "Output state file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*decide) return cmd_decide(c, a, b, out);
    if (*classify) return cmd_classify(c, a);
    if (*nonlocal) return cmd_nonlocal(c, a);
    if (*conj) return cmd_conjugate(c, a);
    if (*locc) return cmd_locc(c, a, b);
    if (*marg) return cmd_marginals(c, a, subset);
    if (*make) return cmd_make(c, family, params, out, dress);
    if (*verify) return cmd_verify(c, a, b, cert);
    if (*sf) return cmd_standard_form(c, a, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
