// Copyright 2026 The qmaxent Authors
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

#include "qmaxent/cli/problem_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qmaxent::cli {
namespace {

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

RealMatrix real_rows(const json& rows, const char* what) {
  if (!rows.is_array() || rows.empty()) fail(std::string(what) + ": expected a non-empty array of rows");
  const std::size_t n_rows = rows.size();
  const std::size_t n_cols = rows.front().is_array() ? rows.front().size() : 0;
  if (n_cols == 0) fail(std::string(what) + ": rows must be non-empty arrays");
  RealMatrix out(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols));
  for (std::size_t i = 0; i < n_rows; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n_cols) fail(std::string(what) + ": ragged matrix");
    for (std::size_t k = 0; k < n_cols; ++k) {
      if (!row[k].is_number()) fail(std::string(what) + ": non-numeric entry");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  return out;
}

RealVector real_list(const json& items, const char* what) {
  if (!items.is_array() || items.empty()) fail(std::string(what) + ": expected a non-empty array");
  RealVector out(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].is_number()) fail(std::string(what) + ": non-numeric entry");
    out(static_cast<Eigen::Index>(i)) = items[i].get<double>();
  }
  return out;
}

Vector parse_ket(const json& j) {
  if (j.is_array()) return real_list(j, "ket").cast<Complex>();
  if (!j.is_object() || !j.contains("re")) fail("ket: expected an array or {re, im}");
  const RealVector re = real_list(j.at("re"), "ket.re");
  RealVector im = RealVector::Zero(re.size());
  if (j.contains("im")) im = real_list(j.at("im"), "ket.im");
  if (im.size() != re.size()) fail("ket: re and im differ in length");
  Vector v(re.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) v(k) = Complex(re(k), im(k));
  return v;
}

json real_matrix_json(const RealMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Recursive-descent reader for operator expressions.
class ExpressionParser {
 public:
  ExpressionParser(const std::string& text, const DensityMatrix* state) : text_(text), state_(state) {}

  HermitianOperator parse() {
    std::optional<Matrix> sum;
    skip();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = take() == '-';
    while (true) {
      Matrix term = parse_term();
      if (negative) term = -term;
      if (sum && sum->rows() != term.rows()) fail("operator expression '" + text_ + "': terms of unequal dimension");
      sum = sum ? Matrix(*sum + term) : term;
      skip();
      if (at_end()) break;
      const char c = take();
      if (c != '+' && c != '-') fail("operator expression '" + text_ + "': unexpected '" + std::string(1, c) + "'");
      negative = c == '-';
    }
    return HermitianOperator(*sum);
  }

 private:
  Matrix parse_term() {
    skip();
    double coeff = 1.0;
    if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      coeff = std::strtod(begin, &end);
      if (end == begin) fail("operator expression '" + text_ + "': bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      skip();
      if (peek() == '*') {
        ++pos_;
      } else {
        fail("operator expression '" + text_ + "': expected '*' after coefficient");
      }
    }
    Matrix out = parse_factor();
    while (true) {
      skip();
      if (text_.compare(pos_, 3, "(x)") != 0) break;
      pos_ += 3;
      out = kron(out, parse_factor());
    }
    return coeff * out;
  }

  Matrix parse_factor() {
    skip();
    if (text_.compare(pos_, 4, "rhoT") == 0) {
      pos_ += 4;
      return need_state().matrix().transpose();
    }
    if (text_.compare(pos_, 3, "rho") == 0) {
      pos_ += 3;
      return need_state().matrix();
    }
    std::optional<Matrix> out;
    while (!at_end() && std::string("IXYZ").find(peek()) != std::string::npos) {
      const Matrix p = pauli(take()).matrix();
      out = out ? kron(*out, p) : p;
    }
    if (!out) fail("operator expression '" + text_ + "': expected a Pauli string, rho or rhoT");
    return *out;
  }

  const DensityMatrix& need_state() const {
    if (!state_) fail("operator expression '" + text_ + "': rho used without a state");
    return *state_;
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  char take() { return text_[pos_++]; }

  const std::string& text_;
  const DensityMatrix* state_;
  std::size_t pos_ = 0;
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail(where + ": unknown key '" + item.key() + "'");
  }
}

SolverOptions parse_solver(const json& j) {
  if (!j.is_object()) fail("solver: expected an object");
  check_keys(j,
             {"grad_tol", "max_iter", "multiplier_cap", "boundary_tol", "cptp_tol", "armijo", "shrink",
              "max_backtracks", "max_step"},
             "solver");
  SolverOptions o;
  if (j.contains("grad_tol")) o.grad_tol = j.at("grad_tol").get<double>();
  if (j.contains("max_iter")) o.max_iter = j.at("max_iter").get<int>();
  if (j.contains("multiplier_cap")) o.multiplier_cap = j.at("multiplier_cap").get<double>();
  if (j.contains("boundary_tol")) o.boundary_tol = j.at("boundary_tol").get<double>();
  if (j.contains("cptp_tol")) o.cptp_tol = j.at("cptp_tol").get<double>();
  if (j.contains("armijo")) o.line_search.armijo = j.at("armijo").get<double>();
  if (j.contains("shrink")) o.line_search.shrink = j.at("shrink").get<double>();
  if (j.contains("max_backtracks")) o.line_search.max_backtracks = j.at("max_backtracks").get<int>();
  if (j.contains("max_step")) o.line_search.max_step = j.at("max_step").get<double>();
  try {
    o.validate();
  } catch (const InvariantViolation& e) {
    fail(e.what());
  }
  return o;
}

ProcessMeasurementSpec parse_spec(const json& c, int d, std::size_t index) {
  if (!c.is_object()) fail("constraint " + std::to_string(index) + ": expected an object");
  check_keys(c, {"kind", "state", "observable", "mean", "label", "ancilla_dim"}, "constraint " + std::to_string(index));
  const std::string label = c.contains("label") ? c.at("label").get<std::string>() : "c" + std::to_string(index);
  const std::string kind = c.contains("kind") ? c.at("kind").get<std::string>() : "ancilla_free";
  if (!c.contains("observable")) fail("constraint '" + label + "': missing observable");
  std::optional<double> mean;
  if (c.contains("mean") && !c.at("mean").is_null()) {
    if (!c.at("mean").is_number()) fail("constraint '" + label + "': mean must be a number");
    mean = c.at("mean").get<double>();
  }
  try {
    if (kind == "ancilla_free") {
      if (!c.contains("state")) fail("constraint '" + label + "': missing state");
      const DensityMatrix rho = parse_state(c.at("state"), d);
      HermitianOperator f = parse_observable(c.at("observable"), d, &rho);
      return {AncillaFree{rho, std::move(f)}, mean, label};
    }
    if (kind == "ancilla_assisted") {
      const int anc = c.contains("ancilla_dim") ? c.at("ancilla_dim").get<int>() : d;
      if (anc < 1) fail("constraint '" + label + "': ancilla_dim must be positive");
      if (!c.contains("state")) fail("constraint '" + label + "': missing state");
      const DensityMatrix omega = parse_state(c.at("state"), anc * d);
      HermitianOperator f = parse_observable(c.at("observable"), anc * d, &omega);
      return {AncillaAssisted{omega, std::move(f), anc}, mean, label};
    }
    if (kind == "raw") {
      std::optional<DensityMatrix> rho;
      if (c.contains("state")) rho = parse_state(c.at("state"), d);
      HermitianOperator x = parse_observable(c.at("observable"), d * d, rho ? &*rho : nullptr);
      return {RawOperator{std::move(x)}, mean, label};
    }
  } catch (const InvariantViolation& e) {
    fail("constraint '" + label + "': " + e.what());
  }
  fail("constraint '" + label + "': unknown kind '" + kind + "'");
}

}  // namespace

Matrix parse_matrix(const json& j) {
  if (j.is_array()) return real_rows(j, "matrix").cast<Complex>();
  if (!j.is_object() || !j.contains("re")) fail("matrix: expected [[..]] or {re, im}");
  const RealMatrix re = real_rows(j.at("re"), "matrix.re");
  RealMatrix im = RealMatrix::Zero(re.rows(), re.cols());
  if (j.contains("im")) im = real_rows(j.at("im"), "matrix.im");
  if (im.rows() != re.rows() || im.cols() != re.cols()) fail("matrix: re and im differ in shape");
  Matrix out(re.rows(), re.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

json matrix_to_json(const Matrix& m) {
  return {{"re", real_matrix_json(m.real())}, {"im", real_matrix_json(m.imag())}};
}

HermitianOperator parse_operator_expression(const std::string& text, const DensityMatrix* state) {
  try {
    return ExpressionParser(text, state).parse();
  } catch (const InvariantViolation& e) {
    fail("operator expression '" + text + "': " + e.what());
  }
}

HermitianOperator parse_observable(const json& j, int dim, const DensityMatrix* state) {
  HermitianOperator op = [&] {
    if (j.is_string()) return parse_operator_expression(j.get<std::string>(), state);
    try {
      return HermitianOperator(parse_matrix(j));
    } catch (const InvariantViolation& e) {
      fail(std::string("observable: ") + e.what());
    }
  }();
  if (op.dim() != dim) {
    fail("observable has dimension " + std::to_string(op.dim()) + ", expected " + std::to_string(dim));
  }
  return op;
}

DensityMatrix parse_state(const json& j, int dim) {
  try {
    std::optional<DensityMatrix> rho;
    if (j.is_object() && j.contains("bloch")) {
      rho = BlochVector(real_list(j.at("bloch"), "state.bloch")).to_density();
    } else if (j.is_object() && j.contains("ket")) {
      rho = DensityMatrix::pure(parse_ket(j.at("ket")));
    } else {
      rho = DensityMatrix(parse_matrix(j));
    }
    if (rho->dim() != dim) {
      fail("state has dimension " + std::to_string(rho->dim()) + ", expected " + std::to_string(dim));
    }
    return *rho;
  } catch (const InvariantViolation& e) {
    fail(std::string("state: ") + e.what());
  } catch (const InvalidDimension& e) {
    fail(std::string("state: ") + e.what());
  } catch (const DimensionMismatch& e) {
    fail(std::string("state: ") + e.what());
  }
}

ChoiState parse_channel(const json& j, int dimension_hint) {
  if (!j.is_object()) fail("channel: expected an object");
  int d = dimension_hint;
  if (j.contains("dimension")) d = j.at("dimension").get<int>();
  if (j.contains("choi")) {
    const Matrix m = parse_matrix(j.at("choi"));
    if (d == 0) d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
    if (m.rows() != m.cols() || m.rows() != static_cast<Eigen::Index>(d) * d) {
      fail("channel: Choi matrix must be d^2 x d^2");
    }
    try {
      return ChoiState(d, HermitianOperator(m));
    } catch (const InvariantViolation& e) {
      throw NotAChannel(std::string("channel: ") + e.what());
    }
  }
  if (j.contains("kraus")) {
    const json& list = j.at("kraus");
    if (!list.is_array() || list.empty()) fail("channel: kraus must be a non-empty array");
    std::vector<Matrix> ops;
    for (const json& k : list) ops.push_back(parse_matrix(k));
    if (d != 0 && ops.front().rows() != d) fail("channel: Kraus operators must be d x d");
    try {
      return choi_from_kraus(KrausSet(std::move(ops)));
    } catch (const DimensionMismatch& e) {
      fail(std::string("channel: ") + e.what());
    } catch (const InvariantViolation& e) {
      throw NotAChannel(std::string("channel: ") + e.what());
    }
  }
  fail("channel: expected a 'choi' or 'kraus' entry");
}

ProblemFile parse_problem(const json& j) {
  try {
    if (!j.is_object()) fail("problem: expected an object");
    check_keys(j, {"dimension", "constraints", "include_tp", "prior", "solver", "seed", "description"}, "problem");
    ProblemFile p;
    if (!j.contains("dimension")) fail("problem: missing dimension");
    p.dimension = j.at("dimension").get<int>();
    if (p.dimension < 2 || p.dimension > 8) fail("problem: dimension must lie in [2, 8]");
    if (j.contains("constraints")) {
      const json& list = j.at("constraints");
      if (!list.is_array()) fail("problem: constraints must be an array");
      for (std::size_t i = 0; i < list.size(); ++i) p.specs.push_back(parse_spec(list[i], p.dimension, i));
    }
    if (j.contains("include_tp")) p.include_tp = j.at("include_tp").get<bool>();
    if (j.contains("prior")) {
      const json& prior = j.at("prior");
      const std::string kind = prior.at("kind").get<std::string>();
      if (kind == "choi") {
        p.prior = parse_channel(json{{"choi", prior.at("data")}}, p.dimension);
      } else if (kind == "kraus") {
        p.prior = parse_channel(json{{"kraus", prior.at("data")}}, p.dimension);
      } else if (kind != "none") {
        fail("prior: unknown kind '" + kind + "'");
      }
    }
    if (j.contains("solver")) p.solver = parse_solver(j.at("solver"));
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    return p;
  } catch (const json::exception& e) {
    fail(std::string("problem: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write to '" + path + "' failed");
}

std::vector<Constraint> build_constraints(const ProblemFile& problem) {
  std::vector<Constraint> out;
  out.reserve(problem.specs.size());
  for (const ProcessMeasurementSpec& s : problem.specs) {
    if (!s.mean) fail("constraint '" + s.label + "': missing mean");
    out.push_back(to_constraint(s, problem.dimension));
  }
  return out;
}

ObservationLevel build_level(const ProblemFile& problem) {
  return ObservationLevel(problem.dimension, build_constraints(problem), problem.include_tp);
}

json solution_to_json(const MaxEntSolution& s, const std::string& mode) {
  json out;
  out["tool"] = kToolName;
  out["version"] = kToolVersion;
  out["mode"] = mode;
  out["dimension"] = s.choi.d();
  out["choi"] = matrix_to_json(s.choi.matrix());
  out["entropy_bits"] = s.entropy_bits;
  out["log_partition"] = s.log_partition;
  json multipliers = json::array();
  json residuals = json::array();
  for (std::size_t k = 0; k < s.labels.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    multipliers.push_back({{"label", s.labels[k]}, {"value", s.multipliers(i)}});
    residuals.push_back({{"label", s.labels[k]}, {"value", s.residuals(i)}});
  }
  out["multipliers"] = std::move(multipliers);
  out["residuals"] = std::move(residuals);
  if (s.choi.d() == 2) {
    const QubitAffineMap map = bloch_affine_map(s.choi);
    RealMatrix linear = map.linear();
    json translation = json::array();
    for (int k = 0; k < 3; ++k) translation.push_back(map.translation()(k));
    out["bloch_map"] = {{"linear", real_matrix_json(linear)}, {"translation", std::move(translation)}};
  }
  json kraus = json::array();
  const KrausSet kraus_set = kraus_from_choi(s.choi);
  for (const Matrix& a : kraus_set.operators()) kraus.push_back(matrix_to_json(a));
  out["kraus"] = std::move(kraus);
  out["diagnostics"] = {{"iterations", s.iterations}, {"boundary", s.boundary_flag}, {"max_residual", s.max_residual()}};
  return out;
}

}  // namespace qmaxent::cli
