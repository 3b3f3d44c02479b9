#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hcsp/bialns.hpp"
#include "hcsp/exact.hpp"
#include "hcsp/generator.hpp"
#include "hcsp/indicators.hpp"
#include "hcsp/instance.hpp"
#include "hcsp/report_io.hpp"

namespace fs = std::filesystem;
using namespace hcsp;

namespace {

fs::path default_out() {
  if (const char* env = std::getenv("HCSP_OUT")) return fs::path(env);
  return fs::path("hcsp_out");
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

struct ManifestWriter {
  Json j = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ManifestWriter(const std::string& command, int argc, char** argv) {
    j["version"] = 1;
    j["command"] = command;
    Json args = Json::array();
    for (int i = 0; i < argc; ++i) args.push_back(argv[i]);
    j["argv"] = std::move(args);
    j["started_utc"] = timestamp_utc();
  }

  void finish(const fs::path& out_dir) {
    j["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::ofstream os(out_dir / "manifest.json", std::ios::binary);
    os << j.dump(2) << "\n";
  }
};

// Writes archive solutions plus the front CSV; returns the front path.
fs::path export_front(const fs::path& out_dir, const ParetoArchive<EvaluatedSolution>& archive,
                      const std::string& instance_name) {
  fs::create_directories(out_dir / "solutions");
  std::vector<std::string> files;
  for (std::size_t i = 0; i < archive.entries().size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "sol_%04zu.json", i + 1);
    const std::string rel = std::string("solutions/") + name;
    std::ofstream os(out_dir / rel, std::ios::binary);
    os << solution_to_json(archive.entries()[i].payload, instance_name).dump(2) << "\n";
    files.push_back(rel);
  }
  const fs::path front = out_dir / "front.csv";
  write_front_csv(front, archive, files);
  return front;
}

int cmd_generate(int count, int services, int caregivers, std::uint64_t seed,
                 const std::string& profile_name, bool suite, const fs::path& out_dir,
                 ManifestWriter& manifest) {
  fs::create_directories(out_dir);
  Json files = Json::array();

  const auto emit = [&](const GeneratorProfile& profile, int n_svc, int n_cg,
                        std::uint64_t s, int index) {
    Instance inst = generate_instance(n_svc, n_cg, s, profile);
    char name[96];
    std::snprintf(name, sizeof(name), "inst_%s_s%02d_c%02d_seed%llu_%02d.json",
                  profile.name.c_str(), n_svc, n_cg, static_cast<unsigned long long>(s), index);
    save_instance(inst, out_dir / name);
    files.push_back(name);
  };

  if (suite) {
    for (int i = 0; i < count; ++i)
      emit(GeneratorProfile::by_name("solomon10"), 10, caregivers, seed + static_cast<std::uint64_t>(i), i);
    for (int i = 0; i < count; ++i)
      emit(GeneratorProfile::by_name("solomon15"), 15, caregivers, seed + static_cast<std::uint64_t>(i), i);
  } else {
    const GeneratorProfile profile = GeneratorProfile::by_name(profile_name);
    for (int i = 0; i < count; ++i)
      emit(profile, services, caregivers, seed + static_cast<std::uint64_t>(i), i);
  }

  manifest.j["config"] = {{"services", services}, {"caregivers", caregivers},
                          {"seed", seed},         {"count", count},
                          {"profile", profile_name}, {"suite", suite}};
  manifest.j["artifacts"] = {{"instances", files}};
  manifest.finish(out_dir);
  std::cout << "wrote " << files.size() << " instance(s) to " << out_dir.string() << "\n";
  return 0;
}

int cmd_solve(const fs::path& instance_path, BialnsConfig config, const fs::path& out_dir,
              ManifestWriter& manifest) {
  fs::create_directories(out_dir);
  const Instance instance = load_instance(instance_path);

  BialnsResult result = bialns(instance, config);

  const fs::path front = export_front(out_dir, result.front, instance_path.filename().string());
  {
    std::ofstream os(out_dir / "run_log.jsonl", std::ios::binary);
    for (const Json& line : result.log) os << line.dump() << "\n";
  }
  manifest.j["instance"] = instance_path.string();
  manifest.j["config"] = config.to_json();
  manifest.j["artifacts"] = {{"front", "front.csv"},
                             {"run_log", "run_log.jsonl"},
                             {"solutions", result.front.size()}};
  manifest.finish(out_dir);
  std::cout << "front size " << result.front.size() << ", route pool " << result.pool.size()
            << ", front written to " << front.string() << "\n";
  return 0;
}

int cmd_exact(const fs::path& instance_path, int g2, bool full_grid, double eps, int time_step,
              int max_services, bool emit_lp, const std::string& solver_cmd,
              const fs::path& out_dir, ManifestWriter& manifest) {
  fs::create_directories(out_dir);
  const Instance instance = load_instance(instance_path);
  const ObjectiveWeights weights = ObjectiveWeights::for_instance(instance);

  std::unique_ptr<ExactBackend> backend;
  if (!solver_cmd.empty())
    backend = std::make_unique<ExternalSolverBackend>(instance, weights, solver_cmd,
                                                      out_dir / "solver_work");
  else
    backend = std::make_unique<EnumerationBackend>(instance, time_step, max_services);

  if (full_grid) {
    const auto cw = backend->lexicographic(LexDirection::CostWelfare);
    const auto wc = backend->lexicographic(LexDirection::WelfareCost);
    if (cw && wc)
      g2 = static_cast<int>(std::max<std::int64_t>(
          1, cw->objectives().welfare - wc->objectives().welfare));
  }

  std::function<void(long long, std::int64_t, std::int64_t)> hook;
  MilpModel model;
  if (emit_lp) {
    fs::create_directories(out_dir / "lp");
    model = build_milp(instance, weights);
    hook = [&](long long i2, std::int64_t cap, std::int64_t range) {
      char name[48];
      std::snprintf(name, sizeof(name), "grid_%05lld.lp", i2);
      emit_epsilon_subproblem(model, out_dir / "lp" / name, cap, eps, range);
    };
    emit_model(model, out_dir / "lp" / "model_cost.lp", {LpObjective::Cost, {}, {}, {}});
    emit_model(model, out_dir / "lp" / "model_welfare.lp", {LpObjective::Welfare, {}, {}, {}});
  }

  EpsilonSweepTrace trace;
  ParetoArchive<EvaluatedSolution> archive = augmecon2(*backend, g2, eps, &trace, hook);

  const fs::path front = export_front(out_dir, archive, instance_path.filename().string());
  manifest.j["instance"] = instance_path.string();
  manifest.j["config"] = {{"g2", g2},
                          {"full_grid", full_grid},
                          {"eps_augm", eps},
                          {"time_step", time_step},
                          {"max_services", max_services},
                          {"solver_cmd", solver_cmd}};
  manifest.j["trace"] = {{"welfare_upper", trace.welfare_upper},
                         {"welfare_lower", trace.welfare_lower},
                         {"range", trace.range},
                         {"grid_points_solved", trace.grid_points_solved},
                         {"grid_points_skipped", trace.grid_points_skipped}};
  manifest.j["artifacts"] = {{"front", "front.csv"}};
  manifest.finish(out_dir);
  std::cout << "exact front size " << archive.size() << " (solved " << trace.grid_points_solved
            << " grid points, skipped " << trace.grid_points_skipped << "), written to "
            << front.string() << "\n";
  return 0;
}

int cmd_compare(const std::vector<fs::path>& fronts, std::string labels_arg,
                const fs::path& out_dir, ManifestWriter& manifest) {
  fs::create_directories(out_dir);
  std::vector<std::vector<Point2>> points;
  std::vector<std::string> labels;
  for (const fs::path& p : fronts) points.push_back(read_front_points(p));

  if (!labels_arg.empty()) {
    std::istringstream is(labels_arg);
    std::string label;
    while (std::getline(is, label, ',')) labels.push_back(label);
  }
  while (labels.size() < fronts.size())
    labels.push_back("front" + std::to_string(labels.size() + 1));

  const NormalizedFronts context = normalize_fronts(points);
  std::vector<FrontReport> reports;
  for (std::size_t i = 0; i < points.size(); ++i) reports.push_back(report_front(context, i));

  write_indicator_report(out_dir / "report.csv", labels, reports);
  for (std::size_t i = 0; i < points.size(); ++i)
    write_plot_data(out_dir / ("plot_" + labels[i] + ".csv"), points[i]);
  write_plot_data(out_dir / "plot_reference.csv", context.reference_raw);

  manifest.j["config"] = {{"fronts", Json::array()}, {"labels", labels}};
  for (const fs::path& p : fronts) manifest.j["config"]["fronts"].push_back(p.string());
  manifest.j["artifacts"] = {{"report", "report.csv"}};
  manifest.finish(out_dir);
  std::cout << "indicator report written to " << (out_dir / "report.csv").string() << "\n";
  return 0;
}

int cmd_eval(const fs::path& instance_path, const fs::path& solution_path) {
  const Instance instance = load_instance(instance_path);
  std::ifstream in(solution_path);
  if (!in) throw std::runtime_error("cannot open solution file: " + solution_path.string());
  Json j;
  in >> j;
  const Solution solution = solution_from_json(j, instance);

  Json out;
  const auto violations = check_feasibility(solution, instance);
  out["feasible"] = violations.empty();
  Json vs = Json::array();
  for (const Violation& v : violations)
    vs.push_back(Json{{"constraint", v.constraint}, {"message", v.message}});
  out["violations"] = std::move(vs);
  if (violations.empty()) {
    const ObjectiveWeights weights = ObjectiveWeights::for_instance(instance);
    const ObjectivePair obj = evaluate(solution, instance, weights);
    out["objectives"] = {{"cost", obj.cost}, {"welfare", obj.welfare}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biobjective home care scheduling solver suite"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate synthetic instances");
  int g_services = 10, g_caregivers = 3, g_count = 1;
  std::uint64_t g_seed = 1;
  std::string g_profile = "default";
  bool g_suite = false;
  fs::path g_out = default_out();
  gen->add_option("--services", g_services, "services per instance")->check(CLI::PositiveNumber);
  gen->add_option("--caregivers", g_caregivers, "caregivers per instance")
      ->check(CLI::PositiveNumber);
  gen->add_option("--seed", g_seed, "base seed (instance i uses seed+i)");
  gen->add_option("--count", g_count, "number of instances")->check(CLI::PositiveNumber);
  gen->add_option("--profile", g_profile, "default | tiny | solomon10 | solomon15");
  gen->add_flag("--suite", g_suite, "benchmark suite layout: count instances each of 10 and 15 services");
  gen->add_option("--out", g_out, "output directory");

  // solve
  auto* solve = app.add_subcommand("solve", "approximate the Pareto front");
  fs::path s_instance;
  std::string s_preset = "default";
  std::uint64_t s_seed = 0;
  fs::path s_out = default_out();
  std::optional<int> s_n, s_nroutes, s_nalns;
  std::optional<long long> s_nsols;
  std::optional<std::string> s_p, s_pr;
  std::optional<double> s_tl;
  solve->add_option("instance", s_instance, "instance file")->required();
  solve->add_option("--preset", s_preset, "default | solomon-10 | solomon-15 | real-week | smoke");
  solve->add_option("--seed", s_seed, "random seed");
  solve->add_option("--n", s_n, "step-1 iterations");
  solve->add_option("--p", s_p, "step-1 destroy proportion, e.g. auto_100% or 5%");
  solve->add_option("--nroutes", s_nroutes, "step-2 iterations");
  solve->add_option("--nalns", s_nalns, "step-2 inner iterations");
  solve->add_option("--pr", s_pr, "step-2 destroy proportion");
  solve->add_option("--nsols", s_nsols, "step-3 iterations");
  solve->add_option("--time-limit-step1", s_tl, "step-1 wall clock limit in seconds");
  solve->add_option("--out", s_out, "output directory");

  // exact
  auto* exact = app.add_subcommand("exact", "exact front via the epsilon-constraint sweep");
  fs::path e_instance;
  int e_g2 = 100, e_step = 15, e_max = 6;
  double e_eps = 1e-4;
  bool e_full = false, e_emit = false;
  std::string e_solver;
  fs::path e_out = default_out();
  exact->add_option("instance", e_instance, "instance file")->required();
  exact->add_option("--g2", e_g2, "grid interval count")->check(CLI::PositiveNumber);
  exact->add_flag("--full-grid", e_full, "grid step of one welfare unit (exact front)");
  exact->add_option("--eps", e_eps, "augmentation epsilon in [1e-6, 1e-3]");
  exact->add_option("--time-step", e_step, "internal search grid in minutes");
  exact->add_option("--max-services", e_max, "internal search size bound");
  exact->add_flag("--emit-lp", e_emit, "write LP files per grid point");
  exact->add_option("--solver-cmd", e_solver,
                    "external MILP solver command with {lp} and {sol} placeholders");
  exact->add_option("--out", e_out, "output directory");

  // compare
  auto* compare = app.add_subcommand("compare", "front quality indicators");
  std::vector<fs::path> c_fronts;
  std::string c_labels;
  fs::path c_out = default_out();
  compare->add_option("fronts", c_fronts, "front CSV files")->required()->expected(-2);
  compare->add_option("--labels", c_labels, "comma-separated labels");
  compare->add_option("--out", c_out, "output directory");

  // eval
  auto* eval = app.add_subcommand("eval", "feasibility and objectives of a solution file");
  fs::path v_instance, v_solution;
  eval->add_option("instance", v_instance, "instance file")->required();
  eval->add_option("solution", v_solution, "solution file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      ManifestWriter manifest("generate", argc, argv);
      return cmd_generate(g_count, g_services, g_caregivers, g_seed, g_profile, g_suite, g_out,
                          manifest);
    }
    if (solve->parsed()) {
      ManifestWriter manifest("solve", argc, argv);
      BialnsConfig config = BialnsConfig::preset(s_preset);
      config.seed = s_seed;
      if (s_n) config.init_iterations = *s_n;
      if (s_p) config.init_proportion = DestroyProportion::parse(*s_p);
      if (s_nroutes) config.route_iterations = *s_nroutes;
      if (s_nalns) config.inner_iterations = *s_nalns;
      if (s_pr) config.inner_proportion = DestroyProportion::parse(*s_pr);
      if (s_nsols) config.schedule_iterations = *s_nsols;
      if (s_tl) config.init_time_limit_sec = *s_tl;
      return cmd_solve(s_instance, config, s_out, manifest);
    }
    if (exact->parsed()) {
      ManifestWriter manifest("exact", argc, argv);
      return cmd_exact(e_instance, e_g2, e_full, e_eps, e_step, e_max, e_emit, e_solver, e_out,
                       manifest);
    }
    if (compare->parsed()) {
      ManifestWriter manifest("compare", argc, argv);
      return cmd_compare(c_fronts, c_labels, c_out, manifest);
    }
    if (eval->parsed()) return cmd_eval(v_instance, v_solution);
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
