#include <fcntl.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/stat.h>
#include <sys/time.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "aigsynth/harness.hpp"
#include "aigsynth/strategy.hpp"
#include "json.hpp"

namespace aigsynth::harness {

namespace fs = std::filesystem;

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::answered: return "answered";
    case Outcome::timeout: return "timeout";
    case Outcome::crash: return "crash";
  }
  return "crash";
}

double Limits::wall_guard(Mode m) const {
  if (m == Mode::parallel) return wall_limit;
  // Sequential runs are limited on CPU time; the wall guard only catches
  // workers that hang without consuming CPU.
  return 1.5 * std::max(cpu_limit, wall_limit) + 1.0;
}

std::vector<SolverConfig> load_configs(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config file " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config file " + file.string() + ": " + e.what());
  }
  const nlohmann::json& list = j.is_array() ? j : j.at("configs");
  std::vector<SolverConfig> out;
  for (const auto& e : list) {
    SolverConfig c;
    c.name = e.at("name").get<std::string>();
    c.mode = parse_mode(e.value("mode", std::string("sequential")));
    c.synthesize = e.value("synthesize", false);
    if (e.contains("builtin")) {
      const auto& b = e.at("builtin");
      BuiltinSolver s;
      s.options.use_and_exists = b.value("and_exists", true);
      s.options.auto_reorder = b.value("reorder", true);
      s.options.eager_deref = b.value("eager_deref", true);
      s.minimize = b.value("minimize", false);
      c.builtin = s;
    } else {
      c.command = e.at("command").get<std::vector<std::string>>();
      if (c.command.empty()) throw std::runtime_error("config '" + c.name + "' has an empty command");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<bool> parse_answer(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    std::string_view t = std::string_view(line).substr(b);
    if (t == "REALIZABLE") return true;
    if (t == "UNREALIZABLE") return false;
  }
  return std::nullopt;
}

namespace {

std::string substitute(std::string arg, const std::string& key, const std::string& value) {
  for (std::size_t pos = arg.find(key); pos != std::string::npos; pos = arg.find(key, pos + value.size()))
    arg.replace(pos, key.size(), value);
  return arg;
}

std::string safe_name(const std::string& s) {
  std::string out;
  for (char ch : s) out += std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '.' ? ch : '_';
  return out;
}

// Child-side body of a built-in configuration. Returns the exit status.
int run_builtin(const BuiltinSolver& solver, bool synthesize, const std::string& input, const std::string& output,
                const std::string& witness) {
  try {
    auto spec = aiger::read_file(input);
    strategy::ExtractOptions extract;
    extract.minimize = solver.minimize;
    if (!synthesize) {
      auto solved = game::solve_spec(spec, solver.options);
      std::cout << (solved.result.realizable ? "REALIZABLE" : "UNREALIZABLE") << std::endl;
      return 0;
    }
    auto r = strategy::synthesize(spec, solver.options, extract);
    std::cout << (r.realizable ? "REALIZABLE" : "UNREALIZABLE") << std::endl;
    if (r.solution) {
      aiger::write_file(r.solution->witness, witness);
      r.solution->circuit.comments.push_back(strategy::witness_comment(fs::path(witness).filename().string()));
      aiger::write_file(r.solution->circuit, output);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}

}  // namespace

RunRecord run_one(const SolverConfig& config, const BenchmarkRecord& bench, const Limits& limits,
                  const fs::path& work_dir) {
  RunRecord rec;
  rec.config = config.name;
  rec.benchmark = bench.path;
  rec.mode = config.mode;

  const fs::path dir = work_dir / safe_name(config.name);
  fs::create_directories(dir);
  const std::string stem = safe_name(fs::path(bench.path).replace_extension().relative_path().string());
  const fs::path out_path = dir / (stem + ".sol.aag");
  const fs::path wit_path = dir / (stem + ".wit.aag");
  const fs::path log_path = dir / (stem + ".log");
  const fs::path err_path = dir / (stem + ".err");
  fs::remove(out_path);
  fs::remove(wit_path);

  std::vector<std::string> argv;
  for (const auto& a : config.command)
    argv.push_back(substitute(substitute(substitute(a, "{input}", bench.path), "{output}", out_path.string()),
                              "{witness}", wit_path.string()));

  std::cout.flush();
  std::cerr.flush();
  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    rec.outcome = Outcome::crash;
    return rec;
  }
  if (pid == 0) {
    setpgid(0, 0);
    if (config.mode == Mode::sequential) {
      rlim_t secs = static_cast<rlim_t>(std::ceil(limits.cpu_limit));
      rlimit cpu{secs, secs + 1};
      setrlimit(RLIMIT_CPU, &cpu);
    }
    if (limits.memory_mb > 0) {
      rlim_t bytes = static_cast<rlim_t>(limits.memory_mb) << 20;
      rlimit mem{bytes, bytes};
      setrlimit(RLIMIT_AS, &mem);
    }
    int out_fd = open(log_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    int err_fd = open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (out_fd >= 0) dup2(out_fd, STDOUT_FILENO);
    if (err_fd >= 0) dup2(err_fd, STDERR_FILENO);
    if (config.builtin)
      _exit(run_builtin(*config.builtin, config.synthesize, bench.path, out_path.string(), wit_path.string()));
    std::vector<char*> cargv;
    for (auto& a : argv) cargv.push_back(a.data());
    cargv.push_back(nullptr);
    execvp(cargv[0], cargv.data());
    _exit(127);
  }

  int status = 0;
  rusage usage{};
  bool killed_by_guard = false;
  const double guard = limits.wall_guard(config.mode);
  for (;;) {
    pid_t r = wait4(pid, &status, WNOHANG, &usage);
    if (r == pid) break;
    if (r < 0 && errno != EINTR) break;
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!killed_by_guard && elapsed > guard) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      killed_by_guard = true;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.cpu_seconds = static_cast<double>(usage.ru_utime.tv_sec + usage.ru_stime.tv_sec) +
                    static_cast<double>(usage.ru_utime.tv_usec + usage.ru_stime.tv_usec) / 1e6;
  // Reap anything the worker left behind in its process group.
  kill(-pid, SIGKILL);

  const bool over_limit = rec.time_for_mode() >= limits.limit_for(config.mode);
  const bool cpu_signal = WIFSIGNALED(status) && (WTERMSIG(status) == SIGXCPU || WTERMSIG(status) == SIGKILL);
  if (killed_by_guard || over_limit || (config.mode == Mode::sequential && cpu_signal &&
                                        rec.cpu_seconds >= limits.cpu_limit - 0.05)) {
    rec.outcome = Outcome::timeout;
    return rec;
  }

  std::ifstream log(log_path);
  std::stringstream text;
  text << log.rdbuf();
  rec.realizable = parse_answer(text.str());
  if (!rec.realizable) {
    rec.outcome = Outcome::crash;
    return rec;
  }
  rec.outcome = Outcome::answered;
  if (fs::exists(out_path)) rec.solution_path = out_path.string();
  if (fs::exists(wit_path)) rec.witness_path = wit_path.string();
  return rec;
}

std::vector<RunRecord> run_matrix(const std::vector<SolverConfig>& configs,
                                  const std::vector<BenchmarkRecord>& benchmarks, const Limits& limits,
                                  const fs::path& work_dir) {
  std::vector<RunRecord> out;
  out.reserve(configs.size() * benchmarks.size());
  for (const auto& c : configs)
    for (const auto& b : benchmarks) out.push_back(run_one(c, b, limits, work_dir));
  return out;
}

}  // namespace aigsynth::harness
