// Copyright 2026 The paroforge Authors
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

#include "paroforge/json_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "paroforge/error.hpp"

namespace paro {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::kSchema, "schema: field '" + path + "' " + what);
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "must be an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path.empty() ? key : path + "." + key, "is missing");
  return *it;
}

int read_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long>() < 0) schema_error(path, "must be a non-negative integer");
  return j.get<int>();
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "must be a number");
  return j.get<double>();
}

Eigen::VectorXd read_vector(const Json& j, long size, const std::string& path) {
  if (!j.is_array()) schema_error(path, "must be an array");
  if (static_cast<long>(j.size()) != size)
    schema_error(path, "has length " + std::to_string(j.size()) + ", expected " + std::to_string(size));
  Eigen::VectorXd v(size);
  for (long i = 0; i < size; ++i) v(i) = read_number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

Eigen::MatrixXd read_matrix(const Json& j, long rows, long cols, const std::string& path) {
  if (!j.is_array()) schema_error(path, "must be an array");
  if (static_cast<long>(j.size()) != rows)
    schema_error(path, "has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i)
    m.row(i) = read_vector(j[i], cols, path + "[" + std::to_string(i) + "]").transpose();
  return m;
}

// Matrix with a free row count (uncertainty.H).
Eigen::MatrixXd read_rows(const Json& j, long cols, const std::string& path) {
  if (!j.is_array()) schema_error(path, "must be an array");
  return read_matrix(j, static_cast<long>(j.size()), cols, path);
}

Json vector_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (long i = 0; i < m.rows(); ++i) out.push_back(vector_json(m.row(i).transpose()));
  return out;
}

Json to_json(const TwoStageProblem& p) {
  Json j;
  j["n_x"] = p.n_x;
  j["n_y"] = p.n_y;
  j["m"] = p.m;
  j["L"] = p.L;
  j["c0"] = vector_json(p.c0);
  j["C"] = matrix_json(p.C);
  j["d"] = vector_json(p.d);
  j["A0"] = matrix_json(p.A0);
  Json a = Json::array();
  for (const auto& al : p.A) a.push_back(matrix_json(al));
  j["A"] = a;
  j["B"] = matrix_json(p.B);
  j["r0"] = vector_json(p.r0);
  j["R"] = matrix_json(p.R);
  Json integ = Json::array();
  for (bool b : p.integrality) integ.push_back(b);
  j["integrality"] = integ;
  Json u;
  u["H"] = matrix_json(p.uncertainty.H);
  u["h"] = vector_json(p.uncertainty.h);
  if (p.uncertainty.vertices) {
    Json vs = Json::array();
    for (const auto& v : *p.uncertainty.vertices) vs.push_back(vector_json(v));
    u["vertices"] = vs;
  }
  if (p.uncertainty.nominal) u["nominal"] = vector_json(*p.uncertainty.nominal);
  j["uncertainty"] = u;
  return j;
}

TwoStageProblem from_json(const Json& j) {
  if (!j.is_object()) schema_error("", "document must be an object");
  const int n_x = read_int(field(j, "n_x", ""), "n_x");
  const int n_y = read_int(field(j, "n_y", ""), "n_y");
  const int m = read_int(field(j, "m", ""), "m");
  const int L = read_int(field(j, "L", ""), "L");
  TwoStageProblem p = TwoStageProblem::zeros(n_x, n_y, m, L);
  p.c0 = read_vector(field(j, "c0", ""), n_x, "c0");
  p.C = read_matrix(field(j, "C", ""), n_x, L, "C");
  p.d = read_vector(field(j, "d", ""), n_y, "d");
  p.A0 = read_matrix(field(j, "A0", ""), m, n_x, "A0");
  if (j.contains("A")) {
    const Json& a = j["A"];
    if (!a.is_array() || static_cast<int>(a.size()) != L) schema_error("A", "must hold L matrices");
    for (int l = 0; l < L; ++l) p.A[l] = read_matrix(a[l], m, n_x, "A[" + std::to_string(l) + "]");
  }
  p.B = read_matrix(field(j, "B", ""), m, n_y, "B");
  p.r0 = read_vector(field(j, "r0", ""), m, "r0");
  if (j.contains("R")) p.R = read_matrix(j["R"], m, L, "R");
  if (j.contains("integrality")) {
    const Json& b = j["integrality"];
    if (!b.is_array() || static_cast<int>(b.size()) != n_x)
      schema_error("integrality", "must be a boolean array of length n_x");
    for (int i = 0; i < n_x; ++i) {
      if (!b[i].is_boolean()) schema_error("integrality[" + std::to_string(i) + "]", "must be a boolean");
      p.integrality[i] = b[i].get<bool>();
    }
  }
  const Json& u = field(j, "uncertainty", "");
  p.uncertainty.H = read_rows(field(u, "H", "uncertainty"), L, "uncertainty.H");
  p.uncertainty.h = read_vector(field(u, "h", "uncertainty"), p.uncertainty.H.rows(), "uncertainty.h");
  if (u.contains("vertices")) {
    const Json& vs = u["vertices"];
    if (!vs.is_array()) schema_error("uncertainty.vertices", "must be an array");
    std::vector<Scenario> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      vertices.push_back(read_vector(vs[i], L, "uncertainty.vertices[" + std::to_string(i) + "]"));
    p.uncertainty.vertices = vertices;
  }
  if (u.contains("nominal")) p.uncertainty.nominal = read_vector(u["nominal"], L, "uncertainty.nominal");
  return p;
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kSchema, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

TwoStageProblem parse_problem(const std::string& text, bool run_validation) {
  TwoStageProblem p = from_json(parse_text(text));
  if (run_validation) {
    const auto report = validate(p);
    if (!report.ok()) {
      std::string msg = "invalid problem:";
      for (const auto& v : report.violations) msg += " " + v + ";";
      throw Error(ErrorKind::kInvalidArgument, msg);
    }
  }
  return p;
}

std::string serialize_problem(const TwoStageProblem& problem, int indent) {
  return to_json(problem).dump(indent);
}

std::string canonical_form(const std::string& text, int indent) {
  // Works on the document itself: reorders keys, turns numbers into floats
  // and fills in the optional blocks.
  const Json doc = parse_text(text);
  std::function<Json(const Json&)> floats = [&](const Json& j) -> Json {
    if (j.is_array()) {
      Json out = Json::array();
      for (const auto& e : j) out.push_back(floats(e));
      return out;
    }
    if (j.is_number()) return Json(j.get<double>());
    return j;
  };
  const int n_x = read_int(field(doc, "n_x", ""), "n_x");
  const int m = read_int(field(doc, "m", ""), "m");
  const int L = read_int(field(doc, "L", ""), "L");
  auto zeros = [](int rows, int cols) {
    Json out = Json::array();
    for (int i = 0; i < rows; ++i) out.push_back(Json(std::vector<double>(cols, 0.0)));
    return out;
  };
  Json out;
  for (const char* key : {"n_x", "n_y", "m", "L"}) out[key] = doc[key];
  for (const char* key : {"c0", "C", "d", "A0"}) out[key] = floats(field(doc, key, ""));
  if (doc.contains("A")) {
    out["A"] = floats(doc["A"]);
  } else {
    Json a = Json::array();
    for (int l = 0; l < L; ++l) a.push_back(zeros(m, n_x));
    out["A"] = a;
  }
  out["B"] = floats(field(doc, "B", ""));
  out["r0"] = floats(field(doc, "r0", ""));
  out["R"] = doc.contains("R") ? floats(doc["R"]) : zeros(m, L);
  out["integrality"] = doc.contains("integrality") ? doc["integrality"] : Json(std::vector<bool>(n_x, false));
  const Json& u = field(doc, "uncertainty", "");
  Json cu;
  cu["H"] = floats(field(u, "H", "uncertainty"));
  cu["h"] = floats(field(u, "h", "uncertainty"));
  if (u.contains("vertices")) cu["vertices"] = floats(u["vertices"]);
  if (u.contains("nominal")) cu["nominal"] = floats(u["nominal"]);
  out["uncertainty"] = cu;
  return out.dump(indent);
}

TwoStageProblem load_problem(const std::string& path, bool run_validation) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), run_validation);
}

void save_problem(const std::string& path, const TwoStageProblem& problem) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << serialize_problem(problem) << "\n";
}

}  // namespace paro
