#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aigsynth/harness.hpp"
#include "aigsynth/strategy.hpp"
#include "aigsynth/verify.hpp"

namespace fs = std::filesystem;
using namespace aigsynth;

namespace {

struct SolverFlags {
  bool no_and_exists = false;
  bool no_reorder = false;
  bool no_eager_deref = false;
  double timeout = 0;
  std::size_t max_nodes = 0;

  game::Options options() const {
    game::Options o;
    o.use_and_exists = !no_and_exists;
    o.auto_reorder = !no_reorder;
    o.eager_deref = !no_eager_deref;
    return o;
  }
  bdd::Manager::Options manager() const {
    bdd::Manager::Options m;
    m.max_nodes = max_nodes;
    if (timeout > 0)
      m.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
    return m;
  }
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
  app->add_flag("--no-and-exists", f.no_and_exists, "Quantify after the conjunction instead of during it");
  app->add_flag("--no-reorder", f.no_reorder, "Disable dynamic variable reordering");
  app->add_flag("--no-eager-deref", f.no_eager_deref, "Keep intermediate BDDs alive");
  app->add_option("--timeout", f.timeout, "Give up after this many seconds");
  app->add_option("--max-nodes", f.max_nodes, "Give up beyond this many live BDD nodes");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_solve(const std::string& spec_path, const SolverFlags& flags) {
  auto spec = aiger::read_file(spec_path);
  try {
    auto solved = game::solve_spec(spec, flags.options(), flags.manager());
    std::cout << (solved.result.realizable ? "REALIZABLE" : "UNREALIZABLE") << '\n';
    return 0;
  } catch (const bdd::ResourceExhausted& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  }
}

int cmd_synth(const std::string& spec_path, const std::string& out, const std::string& witness, bool minimize,
              const SolverFlags& flags) {
  auto spec = aiger::read_file(spec_path);
  strategy::ExtractOptions extract;
  extract.minimize = minimize;
  strategy::SynthesisResult r;
  try {
    r = strategy::synthesize(spec, flags.options(), extract, flags.manager());
  } catch (const bdd::ResourceExhausted& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 2;
  }
  std::cout << (r.realizable ? "REALIZABLE" : "UNREALIZABLE") << '\n';
  if (!r.solution) return 0;
  const std::string wpath = witness.empty() ? fs::path(out).replace_extension(".witness.aag").string() : witness;
  aiger::write_file(r.solution->witness, wpath);
  const fs::path rel = fs::absolute(wpath).lexically_relative(fs::absolute(out).parent_path());
  r.solution->circuit.comments.push_back(strategy::witness_comment(rel.empty() ? wpath : rel.string()));
  aiger::write_file(r.solution->circuit, out);
  return 0;
}

int cmd_verify(const std::string& spec_path, const std::string& sol_path, const std::string& witness_arg,
               double timeout) {
  auto spec = aiger::read_file(spec_path);
  auto sol = aiger::read_file(sol_path);
  std::optional<aiger::AigCircuit> witness;
  std::string wpath = witness_arg;
  if (wpath.empty())
    if (auto ref = strategy::witness_reference(sol)) {
      fs::path p(*ref);
      wpath = (p.is_relative() ? fs::path(sol_path).parent_path() / p : p).string();
    }
  if (!wpath.empty()) witness = aiger::read_file(wpath);
  verify::Limits limits;
  if (timeout > 0)
    limits.time = std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(timeout));
  verify::Verdict v;
  try {
    v = verify::verify_solution(spec, sol, witness ? &*witness : nullptr, limits);
  } catch (const std::invalid_argument& e) {
    v = verify::Verdict::inconclusive(e.what());
  }
  switch (v.kind) {
    case verify::Verdict::Kind::verified:
      std::cout << "Verified\n";
      return 0;
    case verify::Verdict::Kind::falsified:
      std::cout << "Falsified" << (v.reason.empty() ? "" : ": " + v.reason) << '\n' << verify::format_trace(sol, v);
      return 1;
    case verify::Verdict::Kind::inconclusive:
      std::cout << "Inconclusive: " << v.reason << '\n';
      return 2;
  }
  return 2;
}

struct RunFlags {
  std::string configs;
  std::string benchmarks;
  harness::Limits limits;
  std::string work_dir = "aigsynth-work";
  std::string output = "records.csv";
  bool select_reference = false;
  std::uint64_t seed = 0;
};

int cmd_run(RunFlags f, bool wall_given) {
  if (!wall_given) f.limits.wall_limit = f.limits.cpu_limit;
  auto configs = harness::load_configs(f.configs);
  auto library = harness::load_library(f.benchmarks);
  auto selected = f.select_reference ? harness::select_benchmarks(library, harness::reference_quotas(), f.seed) : library;
  std::cerr << "running " << configs.size() << " configuration(s) on " << selected.size() << " benchmark(s)\n";
  auto runs = harness::run_matrix(configs, selected, f.limits, f.work_dir);
  verify::Limits vlimits;
  vlimits.time = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(std::max(f.limits.cpu_limit, f.limits.wall_limit)));
  auto judged = harness::judge(runs, library, harness::default_verifier(vlimits), f.limits);
  std::ofstream out(f.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + f.output);
  out << harness::records_csv(judged);
  std::cout << harness::scoreboard_csv(harness::score(judged));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safety synthesis from AIGER specifications"};
  app.require_subcommand(1);

  SolverFlags solver;
  std::string spec, sol, out, witness, records, report_dir;
  bool minimize = false;
  double verify_timeout = 0;

  auto* solve = app.add_subcommand("solve", "Decide realizability");
  solve->add_option("spec", spec, "Specification (.aag)")->required();
  add_solver_flags(solve, solver);

  auto* synth = app.add_subcommand("synth", "Synthesize a controller circuit");
  synth->add_option("spec", spec, "Specification (.aag)")->required();
  synth->add_option("-o,--output", out, "Solution file")->required();
  synth->add_option("--witness", witness, "Winning-region witness file");
  synth->add_flag("--minimize", minimize, "Minimize controller functions over their don't-cares");
  add_solver_flags(synth, solver);

  auto* ver = app.add_subcommand("verify", "Check a solution against its specification");
  ver->add_option("spec", spec, "Specification (.aag)")->required();
  ver->add_option("solution", sol, "Solution (.aag)")->required();
  ver->add_option("--witness", witness, "Winning-region witness");
  ver->add_option("--timeout", verify_timeout, "Give up after this many seconds");

  RunFlags run;
  auto* runc = app.add_subcommand("run", "Run solver configurations over a benchmark library");
  runc->add_option("--configs", run.configs, "Configuration file (JSON)")->required();
  runc->add_option("--benchmarks", run.benchmarks, "Benchmark directory")->required();
  runc->add_option("--cpu-limit", run.limits.cpu_limit, "CPU seconds per run (sequential mode)")
      ->capture_default_str();
  auto* wall = runc->add_option("--wall-limit", run.limits.wall_limit, "Wall seconds per run (parallel mode)");
  runc->add_option("--memory-mb", run.limits.memory_mb, "Address-space limit per worker");
  runc->add_option("--work-dir", run.work_dir, "Directory for logs and solutions")->capture_default_str();
  runc->add_option("-o,--output", run.output, "Judged records CSV")->capture_default_str();
  runc->add_flag("--select-reference", run.select_reference, "Select with the reference category quotas");
  runc->add_option("--seed", run.seed, "Selection seed");

  auto* scorec = app.add_subcommand("score", "Print the scoreboard of judged records");
  scorec->add_option("records", records, "Judged records CSV")->required();

  auto* report = app.add_subcommand("report", "Write CSV reports from judged records");
  report->add_option("records", records, "Judged records CSV")->required();
  report->add_option("-o,--output", report_dir, "Report directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(spec, solver);
    if (*synth) return cmd_synth(spec, out, witness, minimize, solver);
    if (*ver) return cmd_verify(spec, sol, witness, verify_timeout);
    if (*runc) return cmd_run(run, wall->count() > 0);
    if (*scorec) {
      std::cout << harness::scoreboard_csv(harness::score(harness::parse_records_csv(slurp(records))));
      return 0;
    }
    if (*report) {
      auto judged = harness::parse_records_csv(slurp(records));
      harness::emit_report(judged, harness::score(judged), report_dir);
      return 0;
    }
  } catch (const aiger::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
