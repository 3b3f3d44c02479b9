#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcsp/archive.hpp"
#include "hcsp/instance.hpp"
#include "hcsp/solution.hpp"

namespace hcsp {

// ---------------------------------------------------------------------------
// Mixed-integer model of the full problem, solver-neutral. Emitted as LP
// format text; no solver library is linked.
// ---------------------------------------------------------------------------

struct MilpVar {
  std::string name;
  char type = 'C';  // 'B' binary, 'C' continuous
  double lb = 0.0;
  double ub = 0.0;
};

struct MilpTerm {
  int var = 0;
  double coeff = 0.0;
};

struct MilpRow {
  std::string name;
  std::vector<MilpTerm> terms;
  char sense = 'L';  // 'L' <=, 'G' >=, 'E' =
  double rhs = 0.0;
};

struct MilpModel {
  const Instance* instance = nullptr;
  ObjectiveWeights weights;
  double epsilon_strict = 1.0;  // strictness constant of the unpaid-break threshold

  std::vector<MilpVar> vars;
  std::vector<MilpRow> rows;
  std::vector<MilpTerm> cost_objective;
  std::vector<MilpTerm> welfare_objective;

  // Variable index lookups; end dummy is encoded as service id n+1.
  int end_dummy() const { return instance->num_services() + 1; }
  int x(int cg, int day, int from, int to) const;
  int t(int cg, int day, int node) const;  // node: 0 start dummy, 1..n, n+1 end dummy
  int y(int cg, int day, int from, int to) const;
  int ybar(int cg, int day) const;
  int u(int cg, int day) const;
  int r(int cg, int day) const;
  int rhat(int cg, int day) const;
  int z(int cg) const;
  int v_start(int service) const;
  int v_end(int service) const;

  // flat index helpers (filled by build_milp)
  std::vector<int> x_index, t_index, y_index, ybar_index, u_index, r_index, rhat_index, z_index,
      vs_index, ve_index;
};

MilpModel build_milp(const Instance& instance, const ObjectiveWeights& weights);

enum class LpObjective { Cost, Welfare };

struct LpEmitOptions {
  LpObjective objective = LpObjective::Cost;
  std::optional<double> pin_cost;        // equality pin on the cost objective
  std::optional<double> pin_welfare;     // equality pin on the welfare objective
  std::optional<double> welfare_cap;     // upper bound row on the welfare objective
};

// Deterministic LP-format emission (identical bytes for identical models).
void emit_model(const MilpModel& model, const std::filesystem::path& path,
                const LpEmitOptions& options = {});

// The epsilon-constraint subproblem: min cost - (eps/range)*slack subject to
// welfare + slack = cap, slack >= 0.
void emit_epsilon_subproblem(const MilpModel& model, const std::filesystem::path& path,
                             std::int64_t welfare_cap, double eps_augm, std::int64_t range);

// variable=value lines; '#' comments and blank lines ignored.
std::map<std::string, double> parse_solution_file(const std::filesystem::path& path);

// Reads the routing/start-time variables out of an assignment and rebuilds
// the Solution. Throws on structurally broken assignments.
Solution decode_assignment(const MilpModel& model, const std::map<std::string, double>& values);

// Full variable assignment (including break/overtime/deviation variables)
// representing a feasible Solution.
std::map<std::string, double> encode_solution(const MilpModel& model, const Solution& solution);

// Names of all rows the assignment violates (1e-6 tolerance); missing
// variables count as zero.
std::vector<std::string> check_assignment(const MilpModel& model,
                                          const std::map<std::string, double>& values);

double objective_value(const std::vector<MilpTerm>& objective,
                       const std::vector<MilpVar>& vars,
                       const std::map<std::string, double>& values);

// ---------------------------------------------------------------------------
// Exact search backends.
// ---------------------------------------------------------------------------

class ExactBackend {
 public:
  virtual ~ExactBackend() = default;
  // Lexicographic optimum, or nullopt when infeasible.
  virtual std::optional<EvaluatedSolution> lexicographic(LexDirection direction) = 0;
  // min cost subject to welfare <= cap, ties toward lower welfare.
  virtual std::optional<EvaluatedSolution> constrained(std::int64_t welfare_cap) = 0;
};

class SizeBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exhaustive search over all assignments, orders and start times on a
// fixed-step time grid. The oracle backend for desk-scale instances.
class EnumerationBackend : public ExactBackend {
 public:
  EnumerationBackend(const Instance& instance, int time_step, int max_services = 6);

  std::optional<EvaluatedSolution> lexicographic(LexDirection direction) override;
  std::optional<EvaluatedSolution> constrained(std::int64_t welfare_cap) override;

  // The exact Pareto front of the discretized problem, cost ascending.
  const std::vector<EvaluatedSolution>& pareto_solutions();

 private:
  void enumerate();
  const Instance& instance_;
  ObjectiveWeights weights_;
  int time_step_;
  int max_services_;
  bool done_ = false;
  std::vector<EvaluatedSolution> pareto_;
};

// LP-file/subprocess adapter: emits the subproblem, runs `command` with {lp}
// and {sol} placeholders substituted, reads the solution file back.
class ExternalSolverBackend : public ExactBackend {
 public:
  ExternalSolverBackend(const Instance& instance, const ObjectiveWeights& weights,
                        std::string command, std::filesystem::path workdir);

  std::optional<EvaluatedSolution> lexicographic(LexDirection direction) override;
  std::optional<EvaluatedSolution> constrained(std::int64_t welfare_cap) override;

 private:
  std::optional<std::map<std::string, double>> run_solver(const std::filesystem::path& lp) const;
  const Instance& instance_;
  ObjectiveWeights weights_;
  MilpModel model_;
  std::string command_;
  std::filesystem::path workdir_;
  int counter_ = 0;
};

EvaluatedSolution lexicographic_solve(ExactBackend& backend, LexDirection direction);

struct EpsilonSweepTrace {
  std::int64_t welfare_upper = 0;  // welfare of the cost-lexicographic solution
  std::int64_t welfare_lower = 0;  // welfare of the welfare-lexicographic solution
  std::int64_t range = 0;
  int grid_points_solved = 0;
  long long grid_points_skipped = 0;
  std::vector<Json> steps;
};

// Augmented epsilon-constraint sweep over the welfare objective with the
// bypass rule. With the enumeration backend and full grid resolution
// (g2 = range) the result is the exact Pareto front. `grid_hook`, when set,
// is called with (grid index, welfare cap, welfare range) for every grid
// point about to be solved.
ParetoArchive<EvaluatedSolution> augmecon2(
    ExactBackend& backend, int g2, double eps_augm, EpsilonSweepTrace* trace = nullptr,
    const std::function<void(long long, std::int64_t, std::int64_t)>& grid_hook = {});

// Exhaustive Pareto front of the discretized problem; the oracle that the
// sweep is validated against.
ParetoArchive<EvaluatedSolution> brute_force_front(const Instance& instance, int time_step,
                                                   int max_services = 6);

}  // namespace hcsp
