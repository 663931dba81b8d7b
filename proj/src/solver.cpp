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

#include "qmaxent/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

namespace qmaxent {
namespace {

// Kernel of a pinned face operator, relative to its largest eigenvalue.
constexpr double kFaceKernelTol = 1e-9;
// Eigenvalues of a diverging iterate below this fraction of the largest are
// taken to lie outside the face.
constexpr double kSupportCutTol = 1e-7;
constexpr int kMaxFaceRounds = 8;

// exp(base - sum_a lambda_a ops_a) / Z on span(basis), with targets t_a.
struct ReducedProblem {
  Matrix basis;
  Matrix base;
  std::vector<Matrix> ops;
  RealVector targets;
};

struct DualPoint {
  double value = 0.0;
  double log_z = 0.0;
  RealVector grad;
  Matrix omega;
};

DualPoint evaluate(const ReducedProblem& p, const RealVector& lambda) {
  Matrix h = p.base;
  for (std::size_t j = 0; j < p.ops.size(); ++j) h -= lambda(static_cast<Eigen::Index>(j)) * p.ops[j];
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();
  const double shift = ev.maxCoeff();
  const RealVector w = (ev.array() - shift).exp();
  const double zt = w.sum();
  DualPoint out;
  out.omega = es.eigenvectors() * (w / zt).cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  out.log_z = shift + std::log(zt);
  out.grad.resize(static_cast<Eigen::Index>(p.ops.size()));
  for (std::size_t j = 0; j < p.ops.size(); ++j) {
    const double mean = (out.omega.array() * p.ops[j].transpose().array()).sum().real();
    out.grad(static_cast<Eigen::Index>(j)) = p.targets(static_cast<Eigen::Index>(j)) - mean;
  }
  out.value = out.log_z + lambda.dot(p.targets);
  return out;
}

double inf_norm(const RealVector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

enum class Status { Converged, Capped, Stalled, MaxIter };

struct DualRun {
  RealVector lambda;
  DualPoint at;
  int iterations = 0;
  Status status = Status::MaxIter;
};

// Quasi-Newton (BFGS, inverse-Hessian form) with backtracking Armijo search.
DualRun minimize_dual(const ReducedProblem& p, const SolverOptions& opts, double tol) {
  const auto n = static_cast<Eigen::Index>(p.ops.size());
  const LineSearchOptions& ls = opts.line_search;
  DualRun run;
  run.lambda = RealVector::Zero(n);
  run.at = evaluate(p, run.lambda);
  RealMatrix hinv = RealMatrix::Identity(n, n);
  bool scaled = false;
  bool reset_tried = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    run.iterations = it;
    const double gnorm = inf_norm(run.at.grad);
    if (gnorm <= tol) {
      run.status = Status::Converged;
      return run;
    }
    if (inf_norm(run.lambda) > opts.multiplier_cap) {
      run.status = Status::Capped;
      return run;
    }
    RealVector dir = -(hinv * run.at.grad);
    double slope = run.at.grad.dot(dir);
    if (!(slope < 0.0)) {
      hinv.setIdentity();
      scaled = false;
      dir = -run.at.grad;
      slope = -run.at.grad.squaredNorm();
    }
    const double longest = inf_norm(dir);
    if (longest > ls.max_step) {
      dir *= ls.max_step / longest;
      slope *= ls.max_step / longest;
    }
    // Near the optimum dual values differ below rounding; fall back to the gradient norm.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + std::abs(run.at.log_z) + std::abs(run.lambda.dot(p.targets)));
    double alpha = 1.0;
    bool accepted = false;
    RealVector next;
    DualPoint trial;
    for (int b = 0; b < ls.max_backtracks; ++b) {
      next = run.lambda + alpha * dir;
      trial = evaluate(p, next);
      if (trial.value <= run.at.value + ls.armijo * alpha * slope ||
          (std::abs(trial.value - run.at.value) <= noise && trial.grad.norm() < run.at.grad.norm())) {
        accepted = true;
        break;
      }
      alpha *= ls.shrink;
    }
    if (!accepted) {
      if (!reset_tried) {
        reset_tried = true;
        hinv.setIdentity();
        scaled = false;
        continue;
      }
      run.status = Status::Stalled;
      return run;
    }
    reset_tried = false;
    const RealVector s = next - run.lambda;
    const RealVector y = trial.grad - run.at.grad;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm() && sy > 0.0) {
      if (!scaled) {
        hinv *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const RealVector hy = hinv * y;
      hinv += -rho * (s * hy.transpose() + hy * s.transpose()) + (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
    }
    run.lambda = next;
    run.at = std::move(trial);
  }
  run.iterations = opts.max_iter;
  run.status = inf_norm(run.at.grad) <= tol ? Status::Converged : Status::MaxIter;
  return run;
}

bool settled(const DualRun& run, double tol) {
  return run.status == Status::Converged || (run.status == Status::Stalled && inf_norm(run.at.grad) <= 10.0 * tol);
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// Columns of `basis` spanning the kernel of basis^dagger W basis, W >= 0.
Matrix kernel_within(const Matrix& basis, const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(basis.adjoint() * w * basis));
  const RealVector& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) <= kFaceKernelTol * scale) keep.push_back(k);
  }
  Matrix out(basis.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = basis * es.eigenvectors().col(keep[c]);
  }
  return out;
}

// Columns of `basis` spanning the numerical support of the reduced state.
Matrix support_within(const Matrix& basis, const Matrix& reduced_state) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(reduced_state));
  const RealVector& ev = es.eigenvalues();
  const double cutoff = kSupportCutTol * ev.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > cutoff) keep.push_back(k);
  }
  Matrix out(basis.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = basis * es.eigenvectors().col(keep[c]);
  }
  return out;
}

bool at_upper(const Constraint& c, double tol) { return std::abs(c.target() - c.upper()) <= tol; }
bool at_lower(const Constraint& c, double tol) { return std::abs(c.target() - c.lower()) <= tol; }

bool any_at_bound(const std::vector<Constraint>& cons, double tol) {
  return std::any_of(cons.begin(), cons.end(), [tol](const Constraint& c) { return at_upper(c, tol) || at_lower(c, tol); });
}

// Intersects span(basis) with the faces pinned by targets on their bounds.
Matrix pin_faces(Matrix basis, const std::vector<Constraint>& cons, double tol) {
  for (const Constraint& c : cons) {
    const Matrix& x = c.op().matrix();
    const Matrix& nrm = c.normalizer().matrix();
    if (at_upper(c, tol)) basis = kernel_within(basis, c.upper() * nrm - x);
    if (at_lower(c, tol)) basis = kernel_within(basis, x - c.lower() * nrm);
    if (basis.cols() == 0) {
      throw Infeasible("empty face: no state attains the bound of constraint '" + c.label() + "'", c.label());
    }
  }
  return basis;
}

RealVector residuals_of(const Matrix& omega, const std::vector<Constraint>& cons) {
  RealVector r(static_cast<Eigen::Index>(cons.size()));
  for (std::size_t j = 0; j < cons.size(); ++j) {
    const double mean = (omega.array() * cons[j].op().matrix().transpose().array()).sum().real();
    r(static_cast<Eigen::Index>(j)) = std::abs(mean - cons[j].target());
  }
  return r;
}

std::vector<std::string> labels_of(const std::vector<Constraint>& cons) {
  std::vector<std::string> out;
  out.reserve(cons.size());
  for (const Constraint& c : cons) out.push_back(c.label());
  return out;
}

[[noreturn]] void throw_worst(const Matrix& omega, const std::vector<Constraint>& cons, const std::string& why) {
  const RealVector r = residuals_of(omega, cons);
  Eigen::Index worst = 0;
  r.maxCoeff(&worst);
  const std::string& label = cons[static_cast<std::size_t>(worst)].label();
  std::ostringstream msg;
  msg << why << "; constraint '" << label << "' misses its target by " << r(worst);
  throw Infeasible(msg.str(), label);
}

MaxEntSolution make_solution(int d, const Matrix& omega, RealVector multipliers, double log_partition,
                             const std::vector<Constraint>& cons, int iterations, bool boundary,
                             const SolverOptions& opts) {
  ChoiState choi(d, HermitianOperator(hermitize(omega)), opts.cptp_tol);
  const double entropy = process_entropy(choi);
  RealVector residuals = residuals_of(choi.matrix(), cons);
  return {std::move(choi), std::move(multipliers), labels_of(cons), log_partition, entropy, std::move(residuals),
          iterations, boundary};
}

// Tr(omega C_j) = 0 for all j is impossible when sum_j a_j C_j = I on the
// face, since Tr(omega I) = 1. Names the first constraint taking part.
void throw_if_identity_in_span(const std::vector<Matrix>& restricted, const Eigen::SelfAdjointEigenSolver<RealMatrix>& ges,
                               const std::vector<Eigen::Index>& kept, const std::vector<Constraint>& cons) {
  if (restricted.empty()) return;
  const auto m = static_cast<Eigen::Index>(restricted.size());
  const double r = static_cast<double>(restricted.front().rows());
  RealVector b(m);
  for (Eigen::Index j = 0; j < m; ++j) b(j) = restricted[static_cast<std::size_t>(j)].trace().real();
  RealVector alpha = RealVector::Zero(m);
  for (Eigen::Index a : kept) {
    const RealVector u = ges.eigenvectors().col(a);
    alpha += (u.dot(b) / ges.eigenvalues()(a)) * u;
  }
  if (r - alpha.dot(b) > 1e-10 * r) return;
  const double scale = alpha.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(alpha(j)) > 1e-8 * scale) {
      const std::string& label = cons[static_cast<std::size_t>(j)].label();
      throw Infeasible("constraint '" + label + "' cannot be met by any state on the admissible support", label);
    }
  }
}

struct FaceFrame {
  std::vector<Matrix> restricted;  // P X_j P - x_j P in face coordinates
  Eigen::SelfAdjointEigenSolver<RealMatrix> gram;
  std::vector<Eigen::Index> kept;  // Gram eigenvectors above the rank cutoff
  double widest = 0.0;
};

FaceFrame restrict_to(const Matrix& basis, const std::vector<Constraint>& cons) {
  FaceFrame f;
  const Eigen::Index r = basis.cols();
  const Matrix id = Matrix::Identity(r, r);
  f.restricted.reserve(cons.size());
  for (const Constraint& c : cons) {
    f.restricted.push_back(hermitize(basis.adjoint() * c.op().matrix() * basis) - c.target() * id);
    f.widest = std::max(f.widest, f.restricted.back().norm());
  }
  const auto m = static_cast<Eigen::Index>(f.restricted.size());
  RealMatrix gram(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      gram(i, j) = (f.restricted[static_cast<std::size_t>(i)].array() *
                    f.restricted[static_cast<std::size_t>(j)].transpose().array()).sum().real();
    }
  }
  f.gram.compute(gram);
  const double gmax = std::max(1.0, m ? f.gram.eigenvalues().maxCoeff() : 0.0);
  for (Eigen::Index a = 0; a < m; ++a) {
    if (f.gram.eigenvalues()(a) > 1e-11 * gmax) f.kept.push_back(a);
  }
  return f;
}

// Entropy (or relative entropy, through `log_prior`) optimum over states on
// span(basis). The homogeneous constraints C_j = P X_j P - x_j P are
// orthonormalized first, since restriction to a face may make them dependent.
MaxEntSolution solve_on_face(int d, const std::vector<Constraint>& cons, Matrix basis, const Matrix& log_prior,
                             const SolverOptions& opts, int prior_iterations) {
  const Eigen::Index start_rank = basis.cols();
  basis = pin_faces(std::move(basis), cons, opts.boundary_tol);
  int iterations = prior_iterations;
  for (int round = 0; round < kMaxFaceRounds; ++round) {
    const Eigen::Index r = basis.cols();
    const FaceFrame frame = restrict_to(basis, cons);
    const std::vector<Matrix>& restricted = frame.restricted;
    const auto& ges = frame.gram;
    const std::vector<Eigen::Index>& kept = frame.kept;
    const double widest = frame.widest;
    const auto m = static_cast<Eigen::Index>(restricted.size());
    throw_if_identity_in_span(restricted, ges, kept, cons);
    ReducedProblem problem;
    problem.basis = basis;
    problem.base = hermitize(basis.adjoint() * log_prior * basis);
    problem.targets = RealVector::Zero(static_cast<Eigen::Index>(kept.size()));
    RealMatrix back(m, static_cast<Eigen::Index>(kept.size()));  // lambda_j = back * nu
    for (std::size_t a = 0; a < kept.size(); ++a) {
      const double g = ges.eigenvalues()(kept[a]);
      const RealVector u = ges.eigenvectors().col(kept[a]);
      Matrix op = Matrix::Zero(r, r);
      for (Eigen::Index j = 0; j < m; ++j) op += (u(j) / std::sqrt(g)) * restricted[static_cast<std::size_t>(j)];
      problem.ops.push_back(std::move(op));
      back.col(static_cast<Eigen::Index>(a)) = u / std::sqrt(g);
    }
    const double tol = opts.grad_tol / (1.0 + widest * std::sqrt(static_cast<double>(kept.size())));
    DualRun run = minimize_dual(problem, opts, tol);
    iterations += run.iterations;
    if (run.status == Status::MaxIter) {
      throw NonConvergence("dual iteration limit reached on a face of rank " + std::to_string(r),
                           back * run.lambda, inf_norm(run.at.grad), iterations);
    }
    if (!settled(run, tol)) {
      Matrix smaller = support_within(basis, run.at.omega);
      if (smaller.cols() == basis.cols() || smaller.cols() == 0) {
        throw_worst(basis * run.at.omega * basis.adjoint(), cons, "dual diverges with no face left to cut");
      }
      basis = std::move(smaller);
      continue;
    }
    const Matrix omega = basis * run.at.omega * basis.adjoint();
    const RealVector residuals = residuals_of(omega, cons);
    if (residuals.size() && residuals.maxCoeff() > 10.0 * opts.grad_tol) {
      throw_worst(omega, cons, "constraints cannot be met on the admissible support");
    }
    RealVector lambda = back * run.lambda;
    RealVector targets(m);
    for (Eigen::Index j = 0; j < m; ++j) targets(j) = cons[static_cast<std::size_t>(j)].target();
    const double log_partition = run.at.log_z - lambda.dot(targets);
    return make_solution(d, omega, std::move(lambda), log_partition, cons, iterations, basis.cols() < start_rank,
                         opts);
  }
  throw Infeasible("face reduction did not terminate");
}

ReducedProblem full_problem(int n, const std::vector<Constraint>& cons) {
  ReducedProblem p;
  p.basis = Matrix::Identity(n, n);
  p.base = Matrix::Zero(n, n);
  p.targets.resize(static_cast<Eigen::Index>(cons.size()));
  for (std::size_t j = 0; j < cons.size(); ++j) {
    p.ops.push_back(cons[j].op().matrix());
    p.targets(static_cast<Eigen::Index>(j)) = cons[j].target();
  }
  return p;
}

void check_face(const std::vector<Constraint>& cons, const Matrix& start, double boundary_tol) {
  const Matrix basis = pin_faces(start, cons, boundary_tol);
  const FaceFrame frame = restrict_to(basis, cons);
  throw_if_identity_in_span(frame.restricted, frame.gram, frame.kept, cons);
}

}  // namespace

void check_feasibility(const ObservationLevel& obs, const PriorChannel* prior, const SolverOptions& opts) {
  opts.validate();
  const int n = obs.d() * obs.d();
  if (prior && prior->choi().d() != obs.d()) {
    throw DimensionMismatch("check_feasibility: prior dimension differs from observation level");
  }
  check_face(obs.all_constraints(), prior ? prior->support_basis() : Matrix(Matrix::Identity(n, n)), opts.boundary_tol);
}

void SolverOptions::validate() const {
  if (!(grad_tol > 0.0)) throw InvariantViolation("SolverOptions: grad_tol must be positive");
  if (max_iter < 1) throw InvariantViolation("SolverOptions: max_iter must be >= 1");
  if (!(multiplier_cap > 0.0)) throw InvariantViolation("SolverOptions: multiplier_cap must be positive");
  if (!(boundary_tol >= 0.0)) throw InvariantViolation("SolverOptions: boundary_tol must be non-negative");
  if (!(cptp_tol > 0.0)) throw InvariantViolation("SolverOptions: cptp_tol must be positive");
  if (!(line_search.armijo > 0.0 && line_search.armijo < 1.0)) {
    throw InvariantViolation("SolverOptions: Armijo constant must lie in (0, 1)");
  }
  if (!(line_search.shrink > 0.0 && line_search.shrink < 1.0)) {
    throw InvariantViolation("SolverOptions: backtracking factor must lie in (0, 1)");
  }
  if (line_search.max_backtracks < 1 || !(line_search.max_step > 0.0)) {
    throw InvariantViolation("SolverOptions: invalid line-search limits");
  }
}

PriorChannel::PriorChannel(ChoiState choi, double support_tol)
    : choi_(std::move(choi)),
      support_(HermitianOperator::identity(2)),
      log_(HermitianOperator::identity(2)),
      rank_(0) {
  SupportLog sl = matrix_log(choi_.state(), support_tol);
  support_ = sl.support;
  log_ = sl.log;
  rank_ = sl.rank;
  const Spectrum s = eigh(support_);
  basis_.resize(support_.dim(), rank_);
  int c = 0;
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    if (s.values(k) > 0.5) basis_.col(c++) = s.vectors.col(k);
  }
  const Matrix& p = support_.matrix();
  if ((p * choi_.matrix() * p - choi_.matrix()).norm() > 1e-10) {
    throw InvariantViolation("PriorChannel: support projector does not contain the prior");
  }
}

DualValue dual_eval(const RealVector& lambda, const std::vector<Constraint>& constraints) {
  if (constraints.empty()) throw InvariantViolation("dual_eval: no constraints");
  if (lambda.size() != static_cast<Eigen::Index>(constraints.size())) {
    throw DimensionMismatch("dual_eval: one multiplier per constraint required");
  }
  if (!lambda.allFinite()) throw InvariantViolation("dual_eval: non-finite multipliers");
  const int n = constraints.front().op().dim();
  const DualPoint p = evaluate(full_problem(n, constraints), lambda);
  return {p.value, p.grad, DensityMatrix(hermitize(p.omega)), p.log_z};
}

MaxEntSolution solve_maxent(const ObservationLevel& obs, const SolverOptions& opts) {
  opts.validate();
  const std::vector<Constraint> cons = obs.all_constraints();
  if (any_at_bound(cons, opts.boundary_tol)) return boundary_resolve(obs, opts);
  const int n = obs.d() * obs.d();
  const DualRun run = minimize_dual(full_problem(n, cons), opts, opts.grad_tol);
  if (settled(run, opts.grad_tol)) {
    return make_solution(obs.d(), run.at.omega, run.lambda, run.at.log_z, cons, run.iterations, false, opts);
  }
  const Matrix zero = Matrix::Zero(n, n);
  if (run.status == Status::MaxIter) {
    // Slow but not divergent; retry once in the orthonormal frame, which also
    // cuts a support that is numerically rank-deficient.
    return solve_on_face(obs.d(), cons, Matrix::Identity(n, n), zero, opts, run.iterations);
  }
  // Multipliers ran off towards infinity: the optimum sits on a face, or nowhere.
  MaxEntSolution sol = solve_on_face(obs.d(), cons, Matrix::Identity(n, n), zero, opts, run.iterations);
  sol.boundary_flag = true;
  return sol;
}

MaxEntSolution boundary_resolve(const ObservationLevel& obs, const SolverOptions& opts) {
  opts.validate();
  const int n = obs.d() * obs.d();
  const Matrix zero = Matrix::Zero(n, n);
  return solve_on_face(obs.d(), obs.all_constraints(), Matrix::Identity(n, n), zero, opts, 0);
}

MaxEntSolution solve_biased(const ObservationLevel& obs, const PriorChannel& prior, const SolverOptions& opts) {
  opts.validate();
  if (prior.choi().d() != obs.d()) throw DimensionMismatch("solve_biased: prior dimension differs from observation level");
  return solve_on_face(obs.d(), obs.all_constraints(), prior.support_basis(), prior.log_on_support().matrix(), opts, 0);
}

StateMaxEntSolution maximize_state_entropy(const std::vector<HermitianOperator>& observables,
                                           const std::vector<double>& targets, const SolverOptions& opts) {
  opts.validate();
  if (observables.empty()) throw InvariantViolation("maximize_state_entropy: no observables");
  if (observables.size() != targets.size()) throw DimensionMismatch("maximize_state_entropy: one target per observable");
  if (auto dep = find_dependence(observables)) {
    throw DependentConstraints("maximize_state_entropy: linearly dependent observables", *dep);
  }
  const int n = observables.front().dim();
  std::vector<Constraint> cons;
  for (std::size_t j = 0; j < observables.size(); ++j) {
    cons.emplace_back(observables[j], targets[j], "f" + std::to_string(j));
  }
  // Same orthonormal frame as the channel path; raw observables can be nearly collinear.
  const FaceFrame frame = restrict_to(Matrix::Identity(n, n), cons);
  throw_if_identity_in_span(frame.restricted, frame.gram, frame.kept, cons);
  const auto m = static_cast<Eigen::Index>(cons.size());
  ReducedProblem p;
  p.basis = Matrix::Identity(n, n);
  p.base = Matrix::Zero(n, n);
  p.targets = RealVector::Zero(static_cast<Eigen::Index>(frame.kept.size()));
  RealMatrix back(m, static_cast<Eigen::Index>(frame.kept.size()));
  for (std::size_t a = 0; a < frame.kept.size(); ++a) {
    const double g = frame.gram.eigenvalues()(frame.kept[a]);
    const RealVector u = frame.gram.eigenvectors().col(frame.kept[a]);
    Matrix op = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < m; ++j) op += (u(j) / std::sqrt(g)) * frame.restricted[static_cast<std::size_t>(j)];
    p.ops.push_back(std::move(op));
    back.col(static_cast<Eigen::Index>(a)) = u / std::sqrt(g);
  }
  const double tol = opts.grad_tol / (1.0 + frame.widest * std::sqrt(static_cast<double>(m)));
  const DualRun run = minimize_dual(p, opts, tol);
  if (!settled(run, tol)) {
    if (run.status == Status::MaxIter) {
      throw NonConvergence("maximize_state_entropy: iteration limit", back * run.lambda, inf_norm(run.at.grad),
                           run.iterations);
    }
    throw Infeasible("maximize_state_entropy: targets are not attained by any full-rank state");
  }
  const RealVector lambda = back * run.lambda;
  const double log_z = run.at.log_z - lambda.dot(RealVector::Map(targets.data(), m));
  DensityMatrix rho(hermitize(run.at.omega));
  const double s = von_neumann_entropy(rho);
  return {std::move(rho), lambda, log_z, s, run.iterations};
}

}  // namespace qmaxent
