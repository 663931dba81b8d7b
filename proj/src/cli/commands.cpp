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

#include "qmaxent/cli/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <spdlog/spdlog.h>

#include "qmaxent/cli/problem_io.hpp"

namespace qmaxent::cli {
namespace {

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void row(std::ostream& out, const std::string& stage, bool pass, const std::string& detail = {}) {
  out << std::left << std::setw(28) << stage << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) out << "  " << detail;
  out << '\n';
}

}  // namespace

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  const auto report = [&err](const char* kind, const std::exception& e) { err << "qmaxent: " << kind << ": " << e.what() << '\n'; };
  try {
    return body();
  } catch (const ParseError& e) {
    report("parse error", e);
    return kExitUsage;
  } catch (const DependentConstraints& e) {
    report("dependent constraints", e);
    return kExitDependent;
  } catch (const Infeasible& e) {
    report("infeasible", e);
    return kExitInfeasible;
  } catch (const NotAChannel& e) {
    report("invalid channel", e);
    return kExitInfeasible;
  } catch (const NonConvergence& e) {
    report("no convergence", e);
    return kExitNonConvergence;
  } catch (const InvariantViolation& e) {
    report("invalid input", e);
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    report("invalid input", e);
    return kExitUsage;
  } catch (const InvalidDimension& e) {
    report("invalid input", e);
    return kExitUsage;
  } catch (const std::exception& e) {
    report("error", e);
    return kExitInternal;
  }
}

int cmd_estimate(const std::string& problem_path, const std::string& output_path,
                 const std::optional<std::string>& prior_path, std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&] {
        const ProblemFile problem = parse_problem(read_json_file(problem_path));
        const ObservationLevel level = build_level(problem);
        std::optional<ChoiState> prior = problem.prior;
        if (prior_path) prior = parse_channel(read_json_file(*prior_path), problem.dimension);
        if (prior && prior->d() != problem.dimension) throw ParseError("prior dimension differs from problem");
        spdlog::debug("estimate: d = {}, {} constraints, {}", problem.dimension, level.user_constraints().size(),
                      prior ? "biased" : "unbiased");
        const MaxEntSolution s =
            prior ? solve_biased(level, PriorChannel(*prior), problem.solver) : solve_maxent(level, problem.solver);
        spdlog::info("estimate: {} iterations, max residual {:.3e}, boundary {}", s.iterations, s.max_residual(),
                     s.boundary_flag);
        write_json_file(output_path, solution_to_json(s, prior ? "biased" : "maxent"));
        out << "entropy_bits " << num(s.entropy_bits) << '\n'
            << "iterations " << s.iterations << '\n'
            << "boundary " << (s.boundary_flag ? "yes" : "no") << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_simulate(const std::string& channel_path, const std::string& design_path, const std::string& output_path,
                 std::optional<long long> shots, std::optional<std::uint64_t> seed, std::ostream& out,
                 std::ostream& err) {
  return run_guarded(
      [&] {
        const ChoiState channel = parse_channel(read_json_file(channel_path));
        json design = read_json_file(design_path);
        const ProblemFile problem = parse_problem(design);
        if (problem.dimension != channel.d()) throw ParseError("design dimension differs from channel dimension");
        if (shots && *shots < 1) throw ParseError("--shots must be positive");
        ShotSampler sampler(seed.value_or(problem.seed.value_or(0)));
        for (std::size_t i = 0; i < problem.specs.size(); ++i) {
          const ReducedMeasurement r = reduce(problem.specs[i], channel.d());
          double mean = std::clamp((r.op.matrix() * channel.matrix()).trace().real(), r.lower, r.upper);
          if (shots && r.upper > r.lower) {
            // Two outcomes at the attainable extremes reproduce the mean.
            const double mid = 0.5 * (r.upper + r.lower);
            const double half = 0.5 * (r.upper - r.lower);
            const double u = std::clamp((mean - mid) / half, -1.0, 1.0);
            mean = mid + half * sampler.sample(u, *shots);
          }
          design["constraints"][i]["mean"] = mean;
        }
        write_json_file(output_path, design);
        out << "simulated " << problem.specs.size() << " means"
            << (shots ? " from " + std::to_string(*shots) + " shots each" : std::string(" (exact)")) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_entropy(const std::string& channel_path, std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&] {
        const json j = read_json_file(channel_path);
        if (j.is_object() && j.contains("choi")) {
          const HermitianOperator omega(parse_matrix(j.at("choi")));
          const CptpReport report = is_cptp(omega, kDefaultCptpTol);
          if (!report.ok()) {
            out << "cptp positive=" << (report.positive ? "yes" : "no")
                << " trace_preserving=" << (report.trace_preserving ? "yes" : "no")
                << " min_eigenvalue=" << num(report.min_eigenvalue) << " tp_deficit=" << num(report.tp_deficit)
                << '\n';
          }
        }
        const ChoiState channel = parse_channel(j);
        const CptpReport report = is_cptp(channel.state().op(), kDefaultCptpTol);
        out << "process_entropy_bits " << num(process_entropy(channel)) << '\n'
            << "choi_purity " << num(choi_purity(channel)) << '\n'
            << "cptp positive=yes trace_preserving=yes min_eigenvalue=" << num(report.min_eigenvalue)
            << " tp_deficit=" << num(report.tp_deficit) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int cmd_check(const std::string& problem_path, std::ostream& out, std::ostream& err) {
  std::string stage = "parse";
  const int code = run_guarded(
      [&] {
        const ProblemFile problem = parse_problem(read_json_file(problem_path));
        row(out, "parse", true, "d = " + std::to_string(problem.dimension));
        std::vector<Constraint> constraints;
        for (const ProcessMeasurementSpec& spec : problem.specs) {
          stage = "constraint '" + spec.label + "'";
          if (!spec.mean) throw ParseError("constraint '" + spec.label + "': missing mean");
          constraints.push_back(to_constraint(spec, problem.dimension));
          const Constraint& c = constraints.back();
          row(out, stage, true, num(c.target()) + " in [" + num(c.lower()) + ", " + num(c.upper()) + "]");
        }
        stage = "independence";
        const ObservationLevel level(problem.dimension, std::move(constraints), problem.include_tp);
        row(out, stage, true);
        stage = "support";
        std::optional<PriorChannel> prior;
        if (problem.prior) prior.emplace(*problem.prior);
        check_feasibility(level, prior ? &*prior : nullptr, problem.solver);
        row(out, stage, true, prior ? "prior rank " + std::to_string(prior->rank()) : "no prior");
        return static_cast<int>(kExitOk);
      },
      err);
  if (code != kExitOk) row(out, stage, false);
  return code;
}

}  // namespace qmaxent::cli
