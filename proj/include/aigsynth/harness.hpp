// Benchmark campaigns: selection, isolated execution under time limits,
// judging, competition scoring and CSV reports.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aigsynth/game.hpp"
#include "aigsynth/verify.hpp"

namespace aigsynth::harness {

/// Per-benchmark time limit, in seconds, used unless overridden.
inline constexpr double kDefaultTimeLimitSeconds = 3600.0;
/// Points won by a correct answer and lost by a wrong one.
inline constexpr int kPointsCorrect = 1;
inline constexpr int kPenaltyWrong = 4;

enum class Status { realizable, unrealizable, unknown };
enum class Mode { sequential, parallel };

const char* to_string(Status s);
const char* to_string(Mode m);
Status parse_status(const std::string& s);
Mode parse_mode(const std::string& s);

struct BenchmarkRecord {
  std::string path;
  std::string category;
  Status known_status = Status::unknown;
  // Fraction of earlier solvers that solved the instance.
  double difficulty = 0.0;
};

/// Reads a `benchmarks.toml` manifest: a sequence of `[[benchmark]]` tables
/// with keys path, category, status and difficulty. Relative paths are
/// resolved against the manifest's directory.
std::vector<BenchmarkRecord> load_manifest(const std::filesystem::path& manifest);

/// Metadata from a benchmark's own comment block (`STATUS : ...`,
/// `SOLVED_BY : k/n`). Category defaults to the parent directory name.
BenchmarkRecord import_benchmark(const std::filesystem::path& aag);

/// Manifest if the directory has one, otherwise every `*.aag` below it.
std::vector<BenchmarkRecord> load_library(const std::filesystem::path& dir);

/// Per-category selection quotas used for the reference campaign (234 in total).
const std::map<std::string, std::size_t>& reference_quotas();

/// Picks `quota[c]` instances of every category c, spread evenly over
/// difficulty quantiles. Deterministic for a fixed seed. Throws
/// std::invalid_argument when a quota exceeds what the library offers.
std::vector<BenchmarkRecord> select_benchmarks(const std::vector<BenchmarkRecord>& library,
                                               const std::map<std::string, std::size_t>& quota,
                                               std::uint64_t seed);

struct BuiltinSolver {
  game::Options options;
  bool minimize = false;
};

struct SolverConfig {
  std::string name;
  Mode mode = Mode::sequential;
  bool synthesize = false;
  // argv with `{input}`, `{output}` and `{witness}` placeholders.
  std::vector<std::string> command;
  std::optional<BuiltinSolver> builtin;
};

/// JSON config file: {"configs": [{"name", "mode", "synthesize",
/// "command": [...]} or {"name", ..., "builtin": {...}}]}.
std::vector<SolverConfig> load_configs(const std::filesystem::path& file);

struct Limits {
  double cpu_limit = kDefaultTimeLimitSeconds;
  double wall_limit = kDefaultTimeLimitSeconds;
  std::size_t memory_mb = 0;

  /// Time the scored limit applies to in the given mode.
  double limit_for(Mode m) const { return m == Mode::sequential ? cpu_limit : wall_limit; }
  /// Wall-clock point at which a worker is killed regardless of mode.
  double wall_guard(Mode m) const;
};

enum class Outcome { answered, timeout, crash };
const char* to_string(Outcome o);

struct RunRecord {
  std::string config;
  std::string benchmark;
  Mode mode = Mode::sequential;
  double cpu_seconds = 0;
  double wall_seconds = 0;
  Outcome outcome = Outcome::crash;
  std::optional<bool> realizable;
  std::optional<std::string> solution_path;
  std::optional<std::string> witness_path;

  double time_for_mode() const { return mode == Mode::sequential ? cpu_seconds : wall_seconds; }
};

/// Runs one configuration on one benchmark in a separate worker process.
/// Never throws for tool failures; they become crash records.
RunRecord run_one(const SolverConfig& config, const BenchmarkRecord& bench, const Limits& limits,
                  const std::filesystem::path& work_dir);

std::vector<RunRecord> run_matrix(const std::vector<SolverConfig>& configs,
                                  const std::vector<BenchmarkRecord>& benchmarks, const Limits& limits,
                                  const std::filesystem::path& work_dir);

/// First stdout line that is exactly REALIZABLE or UNREALIZABLE.
std::optional<bool> parse_answer(const std::string& stdout_text);

enum class Judgement { correct, wrong, unsolved };
const char* to_string(Judgement j);

struct JudgedRecord {
  RunRecord run;
  std::string category;
  Judgement judgement = Judgement::unsolved;
  std::optional<verify::Verdict::Kind> verdict;
  std::optional<std::size_t> strategy_size;
};

using Verifier = std::function<verify::Verdict(const BenchmarkRecord&, const RunRecord&)>;

/// Invariant check with the run's witness, forward model checking fallback.
Verifier default_verifier(const verify::Limits& limits = {});

/// AND gates the run's solution adds to its specification, if both parse.
std::optional<std::size_t> measure_strategy(const BenchmarkRecord& bench, const RunRecord& run);

std::vector<JudgedRecord> judge(const std::vector<RunRecord>& records, const std::vector<BenchmarkRecord>& library,
                                const Verifier& verifier, const Limits& limits = {});

struct ConfigScore {
  std::string config;
  Mode mode = Mode::sequential;
  std::size_t solved = 0;
  std::size_t unique = 0;
  std::size_t wrong = 0;
  long points = 0;
};

struct Scoreboard {
  std::vector<ConfigScore> configs;  // sorted by name
  std::map<std::pair<std::string, std::string>, std::size_t> categories;
  std::map<std::string, std::vector<double>> cactus;
  struct Size {
    std::string config;
    std::string benchmark;
    std::size_t strategy_size;
  };
  std::vector<Size> sizes;
};

Scoreboard score(const std::vector<JudgedRecord>& judged);

std::string scoreboard_csv(const Scoreboard& board);

/// Writes results.csv, scoreboard.csv, cactus.csv, categories.csv and sizes.csv.
void emit_report(const std::vector<JudgedRecord>& judged, const Scoreboard& board,
                 const std::filesystem::path& out_dir);

std::string records_csv(const std::vector<JudgedRecord>& judged);
std::vector<JudgedRecord> parse_records_csv(const std::string& text);

}  // namespace aigsynth::harness
