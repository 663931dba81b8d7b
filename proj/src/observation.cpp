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

#include "qmaxent/observation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmaxent {
namespace {

constexpr double kRangeTol = 1e-9;

std::pair<double, double> spectral_range(const HermitianOperator& op) {
  const RealVector v = eigh(op).values;
  return {v(0), v(v.size() - 1)};
}

void check_target(const Constraint& c) {
  const auto [lo, hi] = spectral_range(c.op());
  const double t = c.target();
  if (!std::isfinite(t) || t < lo - kRangeTol || t > hi + kRangeTol || t < c.lower() - kRangeTol ||
      t > c.upper() + kRangeTol) {
    std::ostringstream msg;
    msg << "constraint '" << c.label() << "': target " << t << " outside attainable range [" << c.lower()
        << ", " << c.upper() << "]";
    throw Infeasible(msg.str(), c.label());
  }
}

Vector flatten(const HermitianOperator& op) {
  return Eigen::Map<const Vector>(op.matrix().data(), op.matrix().size());
}

}  // namespace

Constraint::Constraint(HermitianOperator op, double target, std::string label)
    : op_(op), target_(target), label_(std::move(label)), normalizer_(HermitianOperator::identity(op.dim())) {
  std::tie(lower_, upper_) = spectral_range(op_);
  check_target(*this);
}

Constraint::Constraint(HermitianOperator op, double target, std::string label, HermitianOperator normalizer,
                       double lower, double upper)
    : op_(std::move(op)),
      target_(target),
      label_(std::move(label)),
      normalizer_(std::move(normalizer)),
      lower_(lower),
      upper_(upper) {
  if (normalizer_.dim() != op_.dim()) throw DimensionMismatch("Constraint: normalizer dimension");
  if (lower_ > upper_) throw InvariantViolation("Constraint: lower bound above upper bound");
  check_target(*this);
}

Constraint Constraint::with_target(double target) const {
  return Constraint(op_, target, label_, normalizer_, lower_, upper_);
}

HermitianOperator reduce_ancilla_free(const DensityMatrix& rho, const HermitianOperator& f) {
  if (rho.dim() != f.dim()) {
    std::ostringstream msg;
    msg << "reduce_ancilla_free: test state dimension " << rho.dim() << " vs observable dimension " << f.dim();
    throw DimensionMismatch(msg.str());
  }
  return static_cast<double>(rho.dim()) * kron(transpose(rho.op()), f);
}

namespace {

// Kraus operators A_k : H_d -> H_anc of the map with (A (x) I)[Psi+] = Omega.
std::vector<Matrix> preparation_kraus(const DensityMatrix& omega, int ancilla_dim, int d) {
  const Spectrum s = eigh(omega.op());
  const double cutoff = kDefaultSupportTol * std::max(s.values.maxCoeff(), 0.0);
  std::vector<Matrix> ops;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    const double p = s.values(k);
    if (p <= cutoff) continue;
    Matrix a(ancilla_dim, d);
    for (int alpha = 0; alpha < ancilla_dim; ++alpha) {
      for (int j = 0; j < d; ++j) a(alpha, j) = std::sqrt(d * p) * s.vectors(alpha * d + j, k);
    }
    ops.push_back(std::move(a));
  }
  return ops;
}

int probe_dim(int total, int ancilla_dim, const char* what) {
  if (ancilla_dim < 1 || total % ancilla_dim != 0 || total / ancilla_dim < 2) {
    std::ostringstream msg;
    msg << what << ": dimension " << total << " does not factor as " << ancilla_dim << " x d with d >= 2";
    throw DimensionMismatch(msg.str());
  }
  return total / ancilla_dim;
}

Matrix heisenberg(const std::vector<Matrix>& kraus, const Matrix& f, int d) {
  const Matrix id = Matrix::Identity(d, d);
  Matrix x = Matrix::Zero(d * d, d * d);
  for (const Matrix& a : kraus) {
    const Matrix lifted = kron(a, id);
    x += lifted.adjoint() * f * lifted;
  }
  return x;
}

}  // namespace

HermitianOperator reduce_ancilla_assisted(const DensityMatrix& omega, const HermitianOperator& f,
                                          int ancilla_dim) {
  const int d = probe_dim(omega.dim(), ancilla_dim, "reduce_ancilla_assisted");
  if (f.dim() != omega.dim()) throw DimensionMismatch("reduce_ancilla_assisted: observable dimension");
  return HermitianOperator(heisenberg(preparation_kraus(omega, ancilla_dim, d), f.matrix(), d));
}

ReducedMeasurement reduce(const ProcessMeasurementSpec& spec, int d) {
  return std::visit(
      [d](const auto& m) -> ReducedMeasurement {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, AncillaFree>) {
          if (m.state.dim() != d) throw DimensionMismatch("ancilla-free test state dimension != d");
          const auto [lo, hi] = spectral_range(m.observable);
          return {reduce_ancilla_free(m.state, m.observable),
                  reduce_ancilla_free(m.state, HermitianOperator::identity(d)), lo, hi};
        } else if constexpr (std::is_same_v<T, AncillaAssisted>) {
          if (m.state.dim() != m.ancilla_dim * d) {
            throw DimensionMismatch("ancilla-assisted test state dimension != D * d");
          }
          const auto kraus = preparation_kraus(m.state, m.ancilla_dim, d);
          if (m.observable.dim() != m.state.dim()) {
            throw DimensionMismatch("ancilla-assisted observable dimension != D * d");
          }
          const auto [lo, hi] = spectral_range(m.observable);
          const Matrix id = Matrix::Identity(m.state.dim(), m.state.dim());
          return {HermitianOperator(heisenberg(kraus, m.observable.matrix(), d)),
                  HermitianOperator(heisenberg(kraus, id, d)), lo, hi};
        } else {
          if (m.op.dim() != d * d) throw DimensionMismatch("raw constraint operator dimension != d^2");
          const auto [lo, hi] = spectral_range(m.op);
          return {m.op, HermitianOperator::identity(d * d), lo, hi};
        }
      },
      spec.kind);
}

Constraint to_constraint(const ProcessMeasurementSpec& spec, int d) {
  if (!spec.mean) throw InvariantViolation("measurement '" + spec.label + "' has no mean");
  ReducedMeasurement r = reduce(spec, d);
  return Constraint(std::move(r.op), *spec.mean, spec.label, std::move(r.normalizer), r.lower, r.upper);
}

std::vector<Constraint> tp_constraints(int d) {
  const auto basis = hermitian_basis(d);
  const HermitianOperator id = HermitianOperator::identity(d);
  std::vector<Constraint> out;
  out.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::string label = d == 2 ? std::string("tp_") + "xyz"[k] : "tp_" + std::to_string(k);
    out.emplace_back(kron(basis[k], id), 0.0, std::move(label));
  }
  return out;
}

std::optional<std::vector<std::size_t>> find_dependence(const std::vector<HermitianOperator>& ops, double tol) {
  if (ops.empty()) return std::nullopt;
  const int n = ops.front().dim();
  // Columns: normalized identity, then the accepted operators.
  std::vector<Vector> columns{flatten(HermitianOperator::identity(n)) / std::sqrt(static_cast<double>(n))};
  std::vector<std::size_t> owner{static_cast<std::size_t>(-1)};
  std::vector<Vector> ortho{columns.front()};
  for (std::size_t j = 0; j < ops.size(); ++j) {
    if (ops[j].dim() != n) throw DimensionMismatch("find_dependence: operators of unequal dimension");
    const double norm = ops[j].matrix().norm();
    if (norm == 0.0) return std::vector<std::size_t>{j};
    const Vector v = flatten(ops[j]) / norm;
    Vector r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : ortho) r -= q.dot(r) * q;
    }
    // Gram-matrix eigenvalue scale: residual^2 against tol.
    if (r.squaredNorm() < tol) {
      Matrix a(v.size(), static_cast<Eigen::Index>(columns.size()));
      for (std::size_t c = 0; c < columns.size(); ++c) a.col(static_cast<Eigen::Index>(c)) = columns[c];
      const Vector coeff = a.colPivHouseholderQr().solve(v);
      std::vector<std::size_t> involved;
      for (std::size_t c = 1; c < columns.size(); ++c) {
        if (std::abs(coeff(static_cast<Eigen::Index>(c))) > 1e-8) involved.push_back(owner[c]);
      }
      involved.push_back(j);
      return involved;
    }
    columns.push_back(v);
    owner.push_back(j);
    ortho.push_back(r / r.norm());
  }
  return std::nullopt;
}

ObservationLevel::ObservationLevel(int d, std::vector<Constraint> constraints, bool include_tp)
    : d_(d), user_(std::move(constraints)), include_tp_(include_tp) {
  if (d < 2) throw InvalidDimension("ObservationLevel: d < 2");
  for (const Constraint& c : user_) {
    if (c.op().dim() != d * d) {
      std::ostringstream msg;
      msg << "constraint '" << c.label() << "': operator dimension " << c.op().dim() << " != d^2 = " << d * d;
      throw DimensionMismatch(msg.str());
    }
  }
  const std::vector<Constraint> all = all_constraints();
  // Check TP first so a dependence is blamed on the user constraint.
  std::vector<HermitianOperator> ops;
  std::vector<std::size_t> position;
  const std::size_t n_user = user_.size();
  for (std::size_t k = n_user; k < all.size(); ++k) {
    ops.push_back(all[k].op());
    position.push_back(k);
  }
  for (std::size_t k = 0; k < n_user; ++k) {
    ops.push_back(all[k].op());
    position.push_back(k);
  }
  if (auto dep = find_dependence(ops)) {
    std::vector<std::size_t> idx;
    std::ostringstream msg;
    msg << "linearly dependent constraints:";
    for (std::size_t i : *dep) {
      idx.push_back(position[i]);
      msg << " '" << all[position[i]].label() << "'";
    }
    throw DependentConstraints(msg.str(), std::move(idx));
  }
}

std::vector<Constraint> ObservationLevel::all_constraints() const {
  std::vector<Constraint> all = user_;
  if (include_tp_) {
    for (Constraint& c : tp_constraints(d_)) all.push_back(std::move(c));
  }
  return all;
}

ObservationLevel simulate_means(const ChoiState& channel, const std::vector<ProcessMeasurementSpec>& specs) {
  const int d = channel.d();
  std::vector<Constraint> constraints;
  constraints.reserve(specs.size());
  for (const ProcessMeasurementSpec& spec : specs) {
    ReducedMeasurement r = reduce(spec, d);
    double mean = (r.op.matrix() * channel.matrix()).trace().real();
    mean = std::clamp(mean, r.lower, r.upper);
    constraints.emplace_back(std::move(r.op), mean, spec.label, std::move(r.normalizer), r.lower, r.upper);
  }
  return ObservationLevel(d, std::move(constraints));
}

double ShotSampler::sample(double mean, long long shots) {
  if (!(std::abs(mean) <= 1.0)) {
    std::ostringstream msg;
    msg << "sample_shots: |mean| = " << std::abs(mean) << " > 1";
    throw InvariantViolation(msg.str());
  }
  if (shots < 1) throw InvariantViolation("sample_shots: shots must be positive");
  std::binomial_distribution<long long> plus(shots, 0.5 * (1.0 + mean));
  const long long k = plus(engine_);
  return static_cast<double>(2 * k - shots) / static_cast<double>(shots);
}

double sample_shots(double mean, long long shots, std::uint64_t seed) {
  return ShotSampler(seed).sample(mean, shots);
}

}  // namespace qmaxent
