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

#include "qmaxent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qmaxent/errors.hpp"

namespace qmaxent::oracles {
namespace {

Matrix sigma_dot(const Eigen::Vector3d& n) {
  return n.x() * pauli_x().matrix() + n.y() * pauli_y().matrix() + n.z() * pauli_z().matrix();
}

// Bloch vector of rho^T.
Eigen::Vector3d transposed(const Eigen::Vector3d& r) { return {r.x(), -r.y(), r.z()}; }

Matrix projector(int k) {
  Matrix p = Matrix::Zero(2, 2);
  p(k, k) = 1.0;
  return p;
}

double logcosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

// ln Z up to a constant of the collinear ansatz splits into these two block
// weights; p for output |0>, q for output |1>.
struct Collinear {
  double lambda;
  double p;
  double q;
  double t_plus;   // tanh((lambda + d) r)
  double t_minus;  // tanh((lambda - d) r)
};

// lambda(d) solves the trace-preservation equation exactly:
// tanh(lambda r) = tanh(d r) tanh(d).
Collinear collinear_at(double r, double d) {
  Collinear c{};
  c.lambda = (logcosh(d * (1.0 + r)) - logcosh(d * (1.0 - r))) / (2.0 * r);
  const double ap = (c.lambda + d) * r;
  const double am = (c.lambda - d) * r;
  c.p = -d + logcosh(ap);
  c.q = d + logcosh(am);
  c.t_plus = std::tanh(ap);
  c.t_minus = std::tanh(am);
  return c;
}

double block_share(const Collinear& c) { return 1.0 / (1.0 + std::exp(c.q - c.p)); }

// Measured <2 rho^T (x) sigma_z> as a function of d.
double measured(double r, double d) {
  const Collinear c = collinear_at(r, d);
  const double w0 = block_share(c);
  return w0 * (1.0 - r * c.t_plus) - (1.0 - w0) * (1.0 - r * c.t_minus);
}

double tp_residual(const Collinear& c) {
  const double w0 = block_share(c);
  return w0 * c.t_plus + (1.0 - w0) * c.t_minus;
}

Matrix collinear_choi(const Collinear& c, const Eigen::Vector3d& n_t) {
  const double w0 = block_share(c);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix s = sigma_dot(n_t);
  return 0.5 * (w0 * kron(Matrix(id - c.t_plus * s), projector(0)) +
                (1.0 - w0) * kron(Matrix(id - c.t_minus * s), projector(1)));
}

ChoiState checked(const Matrix& omega, const char* who) {
  const double lmin = eigh(HermitianOperator(omega)).values(0);
  if (lmin < -1e-12) {
    std::ostringstream msg;
    msg << who << ": parameters give a non-positive Choi matrix (min eigenvalue " << lmin << ")";
    throw Infeasible(msg.str());
  }
  return ChoiState(2, HermitianOperator(omega));
}

void require_unit(const Eigen::Vector3d& v, const char* who) {
  if (std::abs(v.norm() - 1.0) > 1e-12) throw InvariantViolation(std::string(who) + ": direction must be a unit vector");
}

ProcessMeasurementSpec probe(const Eigen::Vector3d& r, const HermitianOperator& f, double mean, std::string label) {
  const DensityMatrix rho = BlochVector(RealVector(r)).to_density();
  return {AncillaFree{rho, f}, mean, std::move(label)};
}

ObservationLevel level_of(const std::vector<ProcessMeasurementSpec>& specs) {
  std::vector<Constraint> cons;
  cons.reserve(specs.size());
  for (const auto& s : specs) cons.push_back(to_constraint(s, 2));
  return ObservationLevel(2, std::move(cons));
}

}  // namespace

OracleResult o1_mixed(double m) {
  if (!(std::abs(m) <= 1.0)) throw InvariantViolation("o1_mixed: |m| must not exceed 1");
  const Matrix omega = 0.25 * kron(Matrix::Identity(2, 2), Matrix(Matrix::Identity(2, 2) + m * pauli_z().matrix()));
  std::optional<CollinearMultipliers> mult;
  if (std::abs(m) < 1.0) mult = CollinearMultipliers{0.0, -std::atanh(m)};
  return {checked(omega, "o1_mixed"), mult, std::nullopt,
          QubitAffineMap(Eigen::Matrix3d::Zero(), Eigen::Vector3d(0.0, 0.0, m)), 1};
}

OracleResult o1_pure(double m, const Eigen::Vector3d& r_hat) {
  require_unit(r_hat, "o1_pure");
  if (!(std::abs(m) < 1.0)) {
    throw OracleFailure("o1_pure: |m| = 1 is a boundary case; the estimate is the limit map "
                        "t -> (0, 0, +-(1 + t.r)/2), see o1_pure_limit_map");
  }
  const double d = 0.25 * std::log((1.0 - m) / (1.0 + m));
  const double lambda = 0.5 * std::log(std::cosh(2.0 * d));
  const double z = 2.0 * (std::exp(lambda) + std::exp(-lambda) * std::cosh(2.0 * d));
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix s = sigma_dot(transposed(r_hat));
  const Matrix up = std::exp(-d) * (std::cosh(lambda + d) * id - std::sinh(lambda + d) * s);
  const Matrix down = std::exp(d) * (std::cosh(lambda - d) * id - std::sinh(lambda - d) * s);
  const Matrix omega = (kron(up, projector(0)) + kron(down, projector(1))) / z;
  Eigen::Matrix3d linear = Eigen::Matrix3d::Zero();
  linear.row(2) = 0.5 * m * r_hat.transpose();
  return {checked(omega, "o1_pure"), CollinearMultipliers{lambda, d}, std::nullopt,
          QubitAffineMap(linear, Eigen::Vector3d(0.0, 0.0, 0.5 * m)), 1};
}

QubitAffineMap o1_pure_limit_map(int sign, const Eigen::Vector3d& r_hat) {
  require_unit(r_hat, "o1_pure_limit_map");
  if (sign != 1 && sign != -1) throw InvariantViolation("o1_pure_limit_map: sign must be +1 or -1");
  Eigen::Matrix3d linear = Eigen::Matrix3d::Zero();
  linear.row(2) = 0.5 * sign * r_hat.transpose();
  return QubitAffineMap(linear, Eigen::Vector3d(0.0, 0.0, 0.5 * sign));
}

OracleResult o1_transcendental(double r, double m, const Eigen::Vector3d& direction) {
  require_unit(direction, "o1_transcendental");
  if (!(r > 0.0 && r < 1.0)) throw InvariantViolation("o1_transcendental: need 0 < r < 1");
  if (!(std::abs(m) < 1.0)) throw InvariantViolation("o1_transcendental: need |m| < 1");

  // Scan a sinh-spaced grid in d for sign changes, then bisect each bracket.
  const auto f = [&](double d) { return measured(r, d) - m; };
  constexpr int kGrid = 4000;
  const double umax = std::asinh(400.0);
  std::vector<double> roots;
  double prev_d = std::sinh(-umax);
  double prev_f = f(prev_d);
  for (int k = 1; k <= kGrid; ++k) {
    const double d = std::sinh(-umax + 2.0 * umax * k / kGrid);
    const double fd = f(d);
    if (fd == 0.0) {
      roots.push_back(d);
    } else if ((prev_f < 0.0) != (fd < 0.0) && prev_f != 0.0) {
      double lo = prev_d;
      double hi = d;
      double flo = prev_f;
      for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_d = d;
    prev_f = fd;
  }
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "o1_transcendental: no root bracketed for r = " << r << ", m = " << m;
    throw OracleFailure(msg.str());
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());

  const double d = roots.front();
  const Collinear c = collinear_at(r, d);
  if (std::abs(tp_residual(c)) > 1e-12 || std::abs(f(d)) > 1e-12) {
    throw OracleFailure("o1_transcendental: root residual above 1e-12");
  }
  ChoiState choi = checked(collinear_choi(c, transposed(direction)), "o1_transcendental");
  QubitAffineMap map = bloch_affine_map(choi);
  return {std::move(choi), CollinearMultipliers{c.lambda, d}, std::nullopt, map, static_cast<int>(roots.size())};
}

OracleResult o3(const Eigen::Vector3d& m_vec) {
  const double norm = m_vec.norm();
  if (norm > 1.0 + 1e-12) throw InvariantViolation("o3: |m| must not exceed 1");
  const Matrix omega = 0.25 * kron(Matrix::Identity(2, 2), Matrix(Matrix::Identity(2, 2) + sigma_dot(m_vec)));
  std::optional<Eigen::Vector3d> mu;
  if (norm == 0.0) {
    mu = Eigen::Vector3d::Zero();
  } else if (norm < 1.0) {
    mu = -std::atanh(norm) * m_vec / norm;
  }
  return {checked(omega, "o3"), std::nullopt, mu, QubitAffineMap(Eigen::Matrix3d::Zero(), m_vec), 1};
}

OracleResult o4(double z, const Eigen::Vector3d& zeta) {
  const Eigen::Vector3d zp = zeta - Eigen::Vector3d::Constant(z);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix sz = pauli_z().matrix();
  const Matrix omega = 0.25 * (kron(id, id) + z * kron(id, sz) + kron(sigma_dot(transposed(zp)), sz));
  Eigen::Matrix3d linear = Eigen::Matrix3d::Zero();
  linear.row(2) = zp.transpose();
  ChoiState choi = checked(omega, "o4");
  return {std::move(choi), std::nullopt, std::nullopt, QubitAffineMap(linear, Eigen::Vector3d(0.0, 0.0, z)), 1};
}

ObservationLevel o1_level(const Eigen::Vector3d& r, double m) {
  return level_of({probe(r, pauli_z(), m, "m")});
}

ObservationLevel o3_level(const Eigen::Vector3d& m_vec) {
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  return level_of({probe(zero, pauli_x(), m_vec.x(), "m_x"), probe(zero, pauli_y(), m_vec.y(), "m_y"),
                   probe(zero, pauli_z(), m_vec.z(), "m_z")});
}

ObservationLevel o4_level(double z, const Eigen::Vector3d& zeta) {
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  return level_of({probe(zero, pauli_z(), z, "z"), probe(Eigen::Vector3d::UnitX(), pauli_z(), zeta.x(), "zeta_x"),
                   probe(Eigen::Vector3d::UnitY(), pauli_z(), zeta.y(), "zeta_y"),
                   probe(Eigen::Vector3d::UnitZ(), pauli_z(), zeta.z(), "zeta_z")});
}

CollinearMultipliers collinear_projection(const MaxEntSolution& solution, const Eigen::Vector3d& r) {
  Eigen::Vector3d tp = Eigen::Vector3d::Zero();
  std::optional<double> d;
  for (std::size_t j = 0; j < solution.labels.size(); ++j) {
    const std::string& label = solution.labels[j];
    const double value = solution.multipliers(static_cast<Eigen::Index>(j));
    if (label == "tp_x") {
      tp.x() = value;
    } else if (label == "tp_y") {
      tp.y() = value;
    } else if (label == "tp_z") {
      tp.z() = value;
    } else if (!d) {
      d = value;
    }
  }
  if (!d) throw InvariantViolation("collinear_projection: solution has no measurement multiplier");
  const Eigen::Vector3d rt = transposed(r);
  return {tp.dot(rt) / rt.squaredNorm(), *d};
}

}  // namespace qmaxent::oracles
