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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "levels.hpp"
#include "qmaxent/errors.hpp"
#include "qmaxent/oracles.hpp"
#include "qmaxent/solver.hpp"
#include "random.hpp"

namespace qmaxent {
namespace {

using testing::frobenius;

// Distance of h from span{ops}, with everything flattened column-wise.
double distance_from_span(const Matrix& h, const std::vector<Matrix>& ops) {
  const Eigen::Index n = h.size();
  Matrix a(n, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t j = 0; j < ops.size(); ++j) a.col(j) = ops[j].reshaped();
  const Vector v = h.reshaped();
  const Vector coeffs = a.completeOrthogonalDecomposition().solve(v);
  return (a * coeffs - v).norm();
}

std::vector<Matrix> span_with_identity(const ObservationLevel& obs) {
  const int n = obs.d() * obs.d();
  std::vector<Matrix> ops{Matrix::Identity(n, n)};
  for (const Constraint& c : obs.all_constraints()) ops.push_back(c.op().matrix());
  return ops;
}

TEST(SolveMaxent, EmptyLevelIsTotalContraction) {
  const MaxEntSolution s = solve_maxent(ObservationLevel(2, {}));
  EXPECT_LT(frobenius(s.choi.matrix(), 0.25 * Matrix::Identity(4, 4)), 1e-12);
  EXPECT_NEAR(s.entropy_bits, 2.0, 1e-12);
  EXPECT_FALSE(s.boundary_flag);
  const MaxEntSolution s3 = solve_maxent(ObservationLevel(3, {}));
  EXPECT_NEAR(s3.entropy_bits, 2.0 * std::log2(3.0), 1e-12);
}

TEST(SolveMaxent, MixedProbeGivesConstantOutput) {
  for (double m : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const MaxEntSolution s = solve_maxent(oracles::o1_level(Eigen::Vector3d::Zero(), m));
    const QubitAffineMap map = bloch_affine_map(s.choi);
    EXPECT_LT(map.linear().norm(), 1e-9) << m;
    EXPECT_LT((map.translation() - Eigen::Vector3d(0, 0, m)).norm(), 1e-9) << m;
    EXPECT_LT(frobenius(s.choi.matrix(), oracles::o1_mixed(m).choi.matrix()), 1e-9);
  }
}

TEST(SolveMaxent, PureProbeMatchesOracle) {
  testing::Random rng(31);
  for (double m : {-0.6, 0.2, 0.6, 0.95}) {
    const Eigen::Vector3d r = rng.unit_vector();
    const MaxEntSolution s = solve_maxent(oracles::o1_level(r, m));
    const oracles::OracleResult o = oracles::o1_pure(m, r);
    EXPECT_LT(frobenius(s.choi.matrix(), o.choi.matrix()), 1e-8) << m;
    const oracles::CollinearMultipliers got = oracles::collinear_projection(s, r);
    EXPECT_NEAR(got.d, o.collinear->d, 1e-7);
    EXPECT_NEAR(got.lambda, o.collinear->lambda, 1e-7);
  }
}

TEST(SolveMaxent, OutputOnlyLevel) {
  testing::Random rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Vector3d m = rng.ball(0.95);
    const MaxEntSolution s = solve_maxent(oracles::o3_level(m));
    EXPECT_LT(frobenius(s.choi.matrix(), oracles::o3(m).choi.matrix()), 1e-9);
  }
}

TEST(SolveMaxent, ZAndZetaLevel) {
  const MaxEntSolution s = solve_maxent(oracles::o4_level(0.1, {0.3, 0.1, 0.5}));
  const oracles::OracleResult o = oracles::o4(0.1, {0.3, 0.1, 0.5});
  EXPECT_LT(frobenius(s.choi.matrix(), o.choi.matrix()), 1e-8);
  const QubitAffineMap map = bloch_affine_map(s.choi);
  EXPECT_NEAR(map.translation().z(), 0.1, 1e-8);
}

TEST(SolveMaxent, ResidualsAndCptp) {
  testing::Random rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const ObservationLevel obs = testing::random_level(rng);
    const SolverOptions opts;
    const MaxEntSolution s = solve_maxent(obs, opts);
    EXPECT_EQ(s.multipliers.size(), static_cast<Eigen::Index>(obs.all_constraints().size()));
    EXPECT_EQ(s.labels.size(), obs.all_constraints().size());
    EXPECT_LE(s.max_residual(), 10.0 * opts.grad_tol);
    const CptpReport report = is_cptp(s.choi.state().op());
    EXPECT_TRUE(report.positive && report.trace_preserving);
  }
}

TEST(DualEval, ZeroMultipliers) {
  testing::Random rng(34);
  const ObservationLevel obs = testing::random_level(rng);
  const auto cs = obs.all_constraints();
  const DualValue dv = dual_eval(RealVector::Zero(static_cast<Eigen::Index>(cs.size())), cs);
  EXPECT_NEAR(dv.value, std::log(4.0), 1e-14);
  EXPECT_LT(frobenius(dv.omega.matrix(), 0.25 * Matrix::Identity(4, 4)), 1e-14);
  for (std::size_t j = 0; j < cs.size(); ++j)
    EXPECT_NEAR(dv.gradient(j), cs[j].target() - cs[j].op().matrix().trace().real() / 4.0, 1e-14);
}

TEST(DualEval, TwoLevelScalar) {
  for (double lambda : {-2.0, -0.3, 0.0, 0.7, 3.0}) {
    const double x = 0.25;
    const DualValue dv = dual_eval(RealVector::Constant(1, lambda), {Constraint(pauli_z(), x, "z")});
    EXPECT_NEAR(dv.value, std::log(2.0 * std::cosh(lambda)) + lambda * x, 1e-13);
    EXPECT_NEAR(dv.gradient(0), x + std::tanh(lambda), 1e-13);
  }
}

TEST(DualEval, LargeMultipliersStayFinite) {
  const DualValue dv = dual_eval(RealVector::Constant(1, 800.0), {Constraint(pauli_z(), 0.0, "z")});
  EXPECT_TRUE(std::isfinite(dv.value));
  EXPECT_NEAR(dv.value, 800.0, 1e-9);
}

TEST(DualEval, GradientMatchesFiniteDifferences) {
  testing::Random rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cs = testing::random_level(rng).all_constraints();
    const Eigen::Index n = static_cast<Eigen::Index>(cs.size());
    RealVector lambda(n);
    for (Eigen::Index j = 0; j < n; ++j) lambda(j) = 0.5 * rng.normal();
    const DualValue dv = dual_eval(lambda, cs);
    const double h = 1e-5;
    for (Eigen::Index j = 0; j < n; ++j) {
      RealVector up = lambda;
      RealVector down = lambda;
      up(j) += h;
      down(j) -= h;
      const double fd = (dual_eval(up, cs).value - dual_eval(down, cs).value) / (2 * h);
      EXPECT_NEAR(fd, dv.gradient(j), 1e-6 * std::max(1.0, std::abs(dv.gradient(j))));
    }
  }
}

TEST(DualEval, MidpointConvex) {
  testing::Random rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cs = testing::random_level(rng).all_constraints();
    const Eigen::Index n = static_cast<Eigen::Index>(cs.size());
    RealVector a(n);
    RealVector b(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      a(j) = 2.0 * rng.normal();
      b(j) = 2.0 * rng.normal();
    }
    const double mid = dual_eval(0.5 * (a + b), cs).value;
    EXPECT_LE(mid, 0.5 * (dual_eval(a, cs).value + dual_eval(b, cs).value) + 1e-9);
  }
}

TEST(SolveMaxent, PermutationEquivariance) {
  testing::Random rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const ObservationLevel obs = testing::random_level(rng);
    std::vector<Constraint> shuffled = obs.user_constraints();
    std::reverse(shuffled.begin(), shuffled.end());
    const MaxEntSolution a = solve_maxent(obs);
    const MaxEntSolution b = solve_maxent(ObservationLevel(2, shuffled));
    EXPECT_LT(frobenius(a.choi.matrix(), b.choi.matrix()), 1e-10);
    const std::size_t k = shuffled.size();
    for (std::size_t j = 0; j < k; ++j) {
      EXPECT_EQ(a.labels[j], b.labels[k - 1 - j]);
      EXPECT_NEAR(a.multipliers(j), b.multipliers(k - 1 - j), 1e-6);
    }
  }
}

TEST(SolveMaxent, RedundantConstraintKeepsSolution) {
  testing::Random rng(38);
  for (int trial = 0; trial < 5; ++trial) {
    const ObservationLevel obs = testing::random_level(rng, 4);
    const MaxEntSolution a = solve_maxent(obs);
    std::vector<Constraint> more = obs.user_constraints();
    const DensityMatrix probe = rng.state(2);
    const HermitianOperator f = rng.hermitian(2);
    const double mean = (reduce_ancilla_free(probe, f).matrix() * a.choi.matrix()).trace().real();
    more.push_back(to_constraint({AncillaFree{probe, f}, mean, "extra"}, 2));
    const MaxEntSolution b = solve_maxent(ObservationLevel(2, more));
    EXPECT_LT(frobenius(a.choi.matrix(), b.choi.matrix()), 1e-8);
  }
}

TEST(SolveMaxent, CompleteInformationRecoversChannel) {
  testing::Random rng(39);
  // Fewer than four Kraus operators make the Choi matrix rank-deficient.
  for (int trial = 0; trial < 8; ++trial) {
    const ChoiState e = rng.channel(2, 1 + trial % 4);
    const MaxEntSolution s = solve_maxent(simulate_means(e, testing::complete_qubit_design()));
    EXPECT_LT(frobenius(s.choi.matrix(), e.matrix()), 1e-7);
  }
}

TEST(SolveMaxent, ExponentialFamilyForm) {
  testing::Random rng(40);
  for (int trial = 0; trial < 5; ++trial) {
    const ObservationLevel obs = testing::random_level(rng);
    const MaxEntSolution s = solve_maxent(obs);
    const Matrix log_omega = matrix_log(s.choi.state()).log.matrix();
    EXPECT_LT(distance_from_span(log_omega, span_with_identity(obs)), 1e-7);
  }
}

TEST(SolveMaxent, FeasiblePerturbationsLowerEntropy) {
  testing::Random rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    const ObservationLevel obs = testing::random_level(rng);
    const MaxEntSolution s = solve_maxent(obs);
    const std::vector<Matrix> ops = span_with_identity(obs);
    Matrix a(16, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t j = 0; j < ops.size(); ++j) a.col(j) = ops[j].reshaped();
    const auto qr = a.completeOrthogonalDecomposition();
    const double floor = eigh(s.choi.state().op()).values.minCoeff();
    for (int probe = 0; probe < 50; ++probe) {
      const Matrix h = rng.hermitian(4).matrix();
      const Vector v = h.reshaped();
      Matrix dir = (v - a * qr.solve(v)).reshaped(4, 4);
      dir = 0.5 * (dir + dir.adjoint()).eval();
      const Matrix moved = s.choi.matrix() + 0.5 * floor / dir.norm() * dir;
      EXPECT_GE(s.entropy_bits, von_neumann_entropy(DensityMatrix(moved)) - 1e-9);
    }
  }
}

TEST(SolveMaxent, BoundaryPureMaps) {
  const Eigen::Vector3d r(0.6, 0.0, 0.8);
  for (int sign : {1, -1}) {
    const MaxEntSolution s = solve_maxent(oracles::o1_level(r, sign));
    EXPECT_TRUE(s.boundary_flag);
    const QubitAffineMap map = bloch_affine_map(s.choi);
    const QubitAffineMap want = oracles::o1_pure_limit_map(sign, r);
    EXPECT_LT((map.linear() - want.linear()).norm(), 1e-8);
    EXPECT_LT((map.translation() - want.translation()).norm(), 1e-8);
    EXPECT_LT(map.apply(-r).norm(), 1e-8);
    EXPECT_LT((map.apply(r) - Eigen::Vector3d(0, 0, sign)).norm(), 1e-8);
  }
}

TEST(BoundaryResolve, LimitOfInteriorSolutions) {
  const Eigen::Vector3d r(0.0, 0.6, 0.8);
  const MaxEntSolution face = boundary_resolve(oracles::o1_level(r, 1.0));
  double last = 1.0;
  for (int k : {2, 4, 6}) {
    const MaxEntSolution s = solve_maxent(oracles::o1_level(r, 1.0 - std::pow(10.0, -k)));
    const double gap = frobenius(s.choi.matrix(), face.choi.matrix());
    EXPECT_LT(gap, last);
    last = gap;
  }
  EXPECT_LT(last, 1e-3);
}

TEST(SolveMaxent, BoundaryOfMixedProbe) {
  const MaxEntSolution s = solve_maxent(oracles::o1_level(Eigen::Vector3d::Zero(), 1.0));
  EXPECT_LT(frobenius(s.choi.matrix(), oracles::o1_mixed(1.0).choi.matrix()), 1e-9);
  EXPECT_NEAR(s.entropy_bits, 1.0, 1e-9);
}

TEST(SolveMaxent, JointlyInfeasibleTargets) {
  // |0> must go to |0>, so its X mean is forced to zero.
  const DensityMatrix zero = testing::bloch_state(Eigen::Vector3d::UnitZ());
  std::vector<Constraint> cs;
  cs.push_back(to_constraint({AncillaFree{zero, pauli_z()}, 1.0, "z"}, 2));
  cs.push_back(to_constraint({AncillaFree{zero, pauli_x()}, 0.5, "x"}, 2));
  const ObservationLevel obs(2, cs);
  EXPECT_THROW(solve_maxent(obs), Infeasible);
  EXPECT_THROW(check_feasibility(obs), Infeasible);
}

TEST(SolveMaxent, IterationLimit) {
  SolverOptions opts;
  opts.max_iter = 1;
  EXPECT_THROW(solve_maxent(oracles::o1_level({0.6, 0.0, 0.8}, 0.6), opts), NonConvergence);
}

TEST(SolverOptions, Validation) {
  SolverOptions bad;
  bad.grad_tol = 0.0;
  EXPECT_THROW(bad.validate(), InvariantViolation);
  bad = SolverOptions{};
  bad.max_iter = 0;
  EXPECT_THROW(bad.validate(), InvariantViolation);
  bad = SolverOptions{};
  bad.multiplier_cap = -1.0;
  EXPECT_THROW(bad.validate(), InvariantViolation);
  EXPECT_NO_THROW(SolverOptions{}.validate());
}

TEST(SolveBiased, ReferencePriors) {
  const ChoiState identity = unitary_choi(Matrix::Identity(2, 2));
  const ChoiState dephasing = testing::dephasing_choi();
  const ObservationLevel keep = testing::basis_map_level(false);
  EXPECT_LT(frobenius(solve_biased(keep, PriorChannel(identity)).choi.matrix(), identity.matrix()), 1e-7);
  EXPECT_LT(frobenius(solve_biased(keep, PriorChannel(dephasing)).choi.matrix(), dephasing.matrix()), 1e-7);
  EXPECT_LT(frobenius(solve_biased(keep, PriorChannel(testing::identity_x_mixture_choi())).choi.matrix(),
                      identity.matrix()),
            1e-7);
}

TEST(SolveBiased, OffSupportIsInfeasible) {
  const ObservationLevel flip = testing::basis_map_level(true);
  try {
    solve_biased(flip, PriorChannel(unitary_choi(Matrix::Identity(2, 2))));
    FAIL() << "expected Infeasible";
  } catch (const Infeasible& e) {
    EXPECT_EQ(e.constraint_label(), "z");
  }
  EXPECT_THROW(solve_biased(flip, PriorChannel(testing::dephasing_choi())), Infeasible);
  const PriorChannel dephasing(testing::dephasing_choi());
  EXPECT_THROW(check_feasibility(flip, &dephasing), Infeasible);
  // The mixture prior contains the X unitary, which does map |0> to |1>.
  const MaxEntSolution s = solve_biased(flip, PriorChannel(testing::identity_x_mixture_choi()));
  EXPECT_LT(frobenius(s.choi.matrix(), unitary_choi(pauli_x().matrix()).matrix()), 1e-7);
}

TEST(SolveBiased, UniformPriorMatchesMaxent) {
  testing::Random rng(42);
  const PriorChannel uniform(ChoiState(2, Matrix(0.25 * Matrix::Identity(4, 4))));
  for (int trial = 0; trial < 5; ++trial) {
    const ObservationLevel obs = testing::random_level(rng);
    EXPECT_LT(frobenius(solve_biased(obs, uniform).choi.matrix(), solve_maxent(obs).choi.matrix()), 1e-8);
  }
}

TEST(PriorChannel, SupportRank) {
  EXPECT_EQ(PriorChannel(unitary_choi(Matrix::Identity(2, 2))).rank(), 1);
  EXPECT_EQ(PriorChannel(testing::dephasing_choi()).rank(), 2);
  EXPECT_EQ(PriorChannel(testing::identity_x_mixture_choi()).rank(), 2);
}

TEST(StateMaxent, TwoLevelTarget) {
  const StateMaxEntSolution s = maximize_state_entropy({pauli_z()}, {0.5});
  Matrix want = Matrix::Zero(2, 2);
  want(0, 0) = 0.75;
  want(1, 1) = 0.25;
  EXPECT_LT(frobenius(s.state.matrix(), want), 1e-10);
  EXPECT_NEAR(s.multipliers(0), -std::atanh(0.5), 1e-8);
  EXPECT_THROW(maximize_state_entropy({pauli_z(), pauli_z()}, {0.5, 0.5}), DependentConstraints);
}

TEST(StateMaxent, NearlyCollinearObservables) {
  // Z and Z + 1e-3 X: only the small X component pins the second direction.
  const HermitianOperator tilted = pauli_z() + 1e-3 * pauli_x();
  const DensityMatrix target = testing::bloch_state({0.2, 0.0, 0.5});
  const StateMaxEntSolution s =
      maximize_state_entropy({pauli_z(), tilted}, {expectation(target, pauli_z()), expectation(target, tilted)});
  EXPECT_NEAR(expectation(s.state, pauli_x()), 0.2, 1e-6);
  EXPECT_NEAR(expectation(s.state, pauli_z()), 0.5, 1e-9);
}

}  // namespace
}  // namespace qmaxent
