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


#include "state_io.hpp"

#include <cmath>
#include <fstream>

namespace luq::io {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

cd parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

CMat parse_matrix(const json& j, Eigen::Index rows, Eigen::Index cols) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw InputError("matrix has the wrong number of rows");
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw InputError("matrix has the wrong number of columns");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = parse_complex(row[c]);
  }
  return m;
}

StateFile parse_state(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("amplitudes"))
    throw InputError("state file needs n and amplitudes");
  if (!j["n"].is_number_integer()) throw InputError("n must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1 || n > kMaxQubits) throw InputError("n out of range");
  const json& a = j["amplitudes"];
  const Eigen::Index d = Eigen::Index{1} << n;
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != d)
    throw InputError("amplitudes must have length 2^n");
  CVec amp(d);
  for (Eigen::Index i = 0; i < d; ++i) amp[i] = parse_complex(a[i]);
  for (Eigen::Index i = 0; i < d; ++i)
    if (!std::isfinite(amp[i].real()) || !std::isfinite(amp[i].imag()))
      throw InputError("amplitudes must be finite");
  StateFile f;
  f.norm_deviation = std::abs(amp.norm() - 1.0);
  if (f.norm_deviation > kAcceptNorm)
    throw InputError("state norm deviates from 1 by " +
                     std::to_string(f.norm_deviation));
  f.renormalized = f.norm_deviation > kWarnNorm;
  f.state = PureState(n, f.renormalized ? CVec(amp / amp.norm()) : amp);
  if (j.contains("label") && j["label"].is_string()) f.label = j["label"];
  return f;
}

StateFile read_state(const std::string& path) { return parse_state(read_json(path)); }

json state_json(const PureState& s, const std::string& label) {
  json j;
  j["n"] = s.n;
  json a = json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) a.push_back(complex_json(s.amp[i]));
  j["amplitudes"] = a;
  if (!label.empty()) j["label"] = label;
  return j;
}

json certificate_json(const LocalUnitaryLayer& l, const json& metadata) {
  json j;
  j["global_phase"] = l.global_phase;
  json u = json::array();
  for (const Mat2c& m : l.units) u.push_back(matrix_json(m));
  j["units"] = u;
  j["metadata"] = metadata;
  return j;
}

LocalUnitaryLayer parse_certificate(const json& j) {
  if (!j.is_object() || !j.contains("global_phase") || !j.contains("units") ||
      !j["global_phase"].is_number() || !j["units"].is_array())
    throw InputError("certificate needs global_phase and units");
  LocalUnitaryLayer l;
  l.global_phase = j["global_phase"].get<double>();
  for (const json& u : j["units"]) {
    const Mat2c m = parse_matrix(u, 2, 2);
    if (!is_unitary(m, 1e-8)) throw InputError("certificate unit is not unitary");
    l.units.push_back(m);
  }
  return l;
}

LocalUnitaryLayer read_certificate(const std::string& path) {
  return parse_certificate(read_json(path));
}

namespace {

json vec_json(const Eigen::VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

json subset_json(const std::vector<int>& s) {
  json j = json::array();
  for (int q : s) j.push_back(q + 1);
  return j;
}

}  // namespace

json witness_json(const Witness& w) {
  json j;
  j["kind"] = witness_kind(w);
  j["description"] = describe(w);
  if (const auto* m = std::get_if<SpectrumMismatch>(&w)) {
    j["subset"] = subset_json(m->subset);
    j["lhs"] = vec_json(m->lhs);
    j["rhs"] = vec_json(m->rhs);
  } else if (const auto* m = std::get_if<SchmidtMismatch>(&w)) {
    j["lhs"] = m->lhs;
    j["rhs"] = m->rhs;
  } else if (const auto* m = std::get_if<PhaseInfeasibleAllBranches>(&w)) {
    j["branch_count"] = m->branch_count;
  } else if (const auto* m = std::get_if<ClassMismatch>(&w)) {
    j["lhs"] = m->lhs;
    j["rhs"] = m->rhs;
  } else if (const auto* m = std::get_if<BellPairParamMismatch>(&w)) {
    j["lhs"] = vec_json(m->lhs);
    j["rhs"] = vec_json(m->rhs);
  } else if (const auto* m = std::get_if<NonlocalContentMismatch>(&w)) {
    j["lhs"] = vec_json(m->lhs);
    j["rhs"] = vec_json(m->rhs);
  }
  return j;
}

json log_json(const DecisionLog& log) {
  json j;
  j["route"] = log.route;
  j["rules"] = log.rules;
  json b = json::array();
  for (const BranchRecord& r : log.branches)
    b.push_back({{"bits", r.bits}, {"moduli_ok", r.moduli_ok}, {"feasible", r.feasible}});
  j["branches"] = b;
  j["fallback_used"] = log.fallback_used;
  j["notes"] = log.notes;
  return j;
}

}  // namespace luq::io
