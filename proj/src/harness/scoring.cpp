#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "aigsynth/harness.hpp"
#include "aigsynth/strategy.hpp"

namespace aigsynth::harness {

namespace fs = std::filesystem;

const char* to_string(Judgement j) {
  switch (j) {
    case Judgement::correct: return "correct";
    case Judgement::wrong: return "wrong";
    case Judgement::unsolved: return "unsolved";
  }
  return "unsolved";
}

namespace {

std::optional<aiger::AigCircuit> try_read(const std::string& path) {
  try {
    return aiger::read_file(path);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<std::string> witness_for(const RunRecord& run, const aiger::AigCircuit& solution) {
  if (run.witness_path) return run.witness_path;
  if (auto ref = strategy::witness_reference(solution)) {
    fs::path p(*ref);
    if (p.is_relative() && run.solution_path) p = fs::path(*run.solution_path).parent_path() / p;
    return p.string();
  }
  return std::nullopt;
}

bool answered_in_time(const RunRecord& r, const Limits& limits) {
  return r.outcome == Outcome::answered && r.realizable && r.time_for_mode() < limits.limit_for(r.mode);
}

}  // namespace

Verifier default_verifier(const verify::Limits& limits) {
  return [limits](const BenchmarkRecord& bench, const RunRecord& run) -> verify::Verdict {
    if (!run.solution_path) return verify::Verdict::inconclusive("no solution");
    auto spec = try_read(bench.path);
    auto sol = try_read(*run.solution_path);
    if (!spec || !sol) return verify::Verdict::inconclusive("unreadable specification or solution");
    std::optional<aiger::AigCircuit> witness;
    if (auto wp = witness_for(run, *sol)) witness = try_read(*wp);
    try {
      return verify::verify_solution(*spec, *sol, witness ? &*witness : nullptr, limits);
    } catch (const std::exception& e) {
      return verify::Verdict::inconclusive(e.what());
    }
  };
}

std::optional<std::size_t> measure_strategy(const BenchmarkRecord& bench, const RunRecord& run) {
  if (!run.solution_path) return std::nullopt;
  auto spec = try_read(bench.path);
  auto sol = try_read(*run.solution_path);
  if (!spec || !sol) return std::nullopt;
  return strategy::strategy_size(*spec, *sol);
}

std::vector<JudgedRecord> judge(const std::vector<RunRecord>& records, const std::vector<BenchmarkRecord>& library,
                                const Verifier& verifier, const Limits& limits) {
  std::map<std::string, const BenchmarkRecord*> by_path;
  for (const auto& b : library) by_path.emplace(b.path, &b);

  // Ground truth: stored status, else a strict majority of in-time answers.
  std::map<std::string, std::pair<std::size_t, std::size_t>> votes;  // (realizable, unrealizable)
  for (const auto& r : records)
    if (answered_in_time(r, limits)) (*r.realizable ? votes[r.benchmark].first : votes[r.benchmark].second)++;
  auto truth = [&](const std::string& path) -> Status {
    auto it = by_path.find(path);
    if (it != by_path.end() && it->second->known_status != Status::unknown) return it->second->known_status;
    auto [yes, no] = votes[path];
    if (yes > no) return Status::realizable;
    if (no > yes) return Status::unrealizable;
    return Status::unknown;
  };

  std::vector<JudgedRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    JudgedRecord j;
    j.run = r;
    auto it = by_path.find(r.benchmark);
    BenchmarkRecord bench = it != by_path.end() ? *it->second : BenchmarkRecord{r.benchmark, "", Status::unknown, 0};
    j.category = bench.category;
    if (!answered_in_time(r, limits)) {
      out.push_back(std::move(j));
      continue;
    }
    const Status t = truth(r.benchmark);
    if (t == Status::unknown) {
      out.push_back(std::move(j));
      continue;
    }
    const bool says_realizable = *r.realizable;
    if (says_realizable != (t == Status::realizable)) {
      j.judgement = Judgement::wrong;
      out.push_back(std::move(j));
      continue;
    }
    if (says_realizable && r.solution_path) {
      verify::Verdict v = verifier(bench, r);
      j.verdict = v.kind;
      if (v.kind == verify::Verdict::Kind::verified) {
        j.judgement = Judgement::correct;
        j.strategy_size = measure_strategy(bench, r);
      }
    } else {
      j.judgement = Judgement::correct;
    }
    out.push_back(std::move(j));
  }
  return out;
}

Scoreboard score(const std::vector<JudgedRecord>& judged) {
  Scoreboard board;
  std::map<std::string, ConfigScore> per;
  std::map<std::string, std::set<std::string>> solvers_of;  // benchmark -> configs that solved it
  for (const auto& j : judged) {
    ConfigScore& s = per[j.run.config];
    s.config = j.run.config;
    s.mode = j.run.mode;
    auto& cat = board.categories[{j.run.config, j.category}];
    board.cactus[j.run.config];
    if (j.judgement == Judgement::correct) {
      ++s.solved;
      ++cat;
      solvers_of[j.run.benchmark].insert(j.run.config);
      board.cactus[j.run.config].push_back(j.run.time_for_mode());
      if (j.strategy_size) board.sizes.push_back({j.run.config, j.run.benchmark, *j.strategy_size});
    } else if (j.judgement == Judgement::wrong) {
      ++s.wrong;
    }
  }
  for (const auto& [bench, configs] : solvers_of)
    if (configs.size() == 1) ++per[*configs.begin()].unique;
  for (auto& [name, s] : per) {
    s.points = kPointsCorrect * static_cast<long>(s.solved) - kPenaltyWrong * static_cast<long>(s.wrong);
    board.configs.push_back(s);
  }
  for (auto& [name, times] : board.cactus) std::sort(times.begin(), times.end());
  std::sort(board.sizes.begin(), board.sizes.end(), [](const auto& a, const auto& b) {
    return std::tie(a.config, a.benchmark) < std::tie(b.config, b.benchmark);
  });
  return board;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string seconds(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", t);
  return buf;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    any = true;
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (quoted) throw std::runtime_error("CSV: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* kRecordsHeader =
    "config,mode,benchmark,category,outcome,answer,cpu_seconds,wall_seconds,verdict,judgement,strategy_size";

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + p.string());
}

}  // namespace

std::string records_csv(const std::vector<JudgedRecord>& judged) {
  std::ostringstream os;
  os << kRecordsHeader << '\n';
  for (const auto& j : judged) {
    const RunRecord& r = j.run;
    std::string answer = r.realizable ? (*r.realizable ? "realizable" : "unrealizable") : "";
    os << csv_field(r.config) << ',' << to_string(r.mode) << ',' << csv_field(r.benchmark) << ','
       << csv_field(j.category) << ',' << to_string(r.outcome) << ',' << answer << ',' << seconds(r.cpu_seconds)
       << ',' << seconds(r.wall_seconds) << ',' << (j.verdict ? verify::to_string(*j.verdict) : "na") << ','
       << to_string(j.judgement) << ',' << (j.strategy_size ? std::to_string(*j.strategy_size) : "") << '\n';
  }
  return os.str();
}

std::vector<JudgedRecord> parse_records_csv(const std::string& text) {
  auto rows = parse_csv(text);
  if (rows.empty()) throw std::runtime_error("records CSV: missing header");
  std::vector<std::string> header;
  {
    std::istringstream is(kRecordsHeader);
    std::string h;
    while (std::getline(is, h, ',')) header.push_back(h);
  }
  if (rows.front() != header) throw std::runtime_error("records CSV: unexpected header");
  std::vector<JudgedRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != header.size())
      throw std::runtime_error("records CSV row " + std::to_string(i + 1) + ": expected " +
                               std::to_string(header.size()) + " fields");
    JudgedRecord j;
    j.run.config = f[0];
    j.run.mode = parse_mode(f[1]);
    j.run.benchmark = f[2];
    j.category = f[3];
    if (f[4] == "answered") j.run.outcome = Outcome::answered;
    else if (f[4] == "timeout") j.run.outcome = Outcome::timeout;
    else if (f[4] == "crash") j.run.outcome = Outcome::crash;
    else throw std::runtime_error("records CSV row " + std::to_string(i + 1) + ": bad outcome '" + f[4] + "'");
    if (f[5] == "realizable") j.run.realizable = true;
    else if (f[5] == "unrealizable") j.run.realizable = false;
    j.run.cpu_seconds = std::stod(f[6]);
    j.run.wall_seconds = std::stod(f[7]);
    if (f[8] == "verified") j.verdict = verify::Verdict::Kind::verified;
    else if (f[8] == "falsified") j.verdict = verify::Verdict::Kind::falsified;
    else if (f[8] == "inconclusive") j.verdict = verify::Verdict::Kind::inconclusive;
    if (f[9] == "correct") j.judgement = Judgement::correct;
    else if (f[9] == "wrong") j.judgement = Judgement::wrong;
    else if (f[9] == "unsolved") j.judgement = Judgement::unsolved;
    else throw std::runtime_error("records CSV row " + std::to_string(i + 1) + ": bad judgement '" + f[9] + "'");
    if (!f[10].empty()) j.strategy_size = std::stoul(f[10]);
    out.push_back(std::move(j));
  }
  return out;
}

std::string scoreboard_csv(const Scoreboard& board) {
  std::ostringstream os;
  os << "config,mode,solved,unique,wrong,points\n";
  for (const auto& s : board.configs)
    os << csv_field(s.config) << ',' << to_string(s.mode) << ',' << s.solved << ',' << s.unique << ',' << s.wrong
       << ',' << s.points << '\n';
  return os.str();
}

void emit_report(const std::vector<JudgedRecord>& judged, const Scoreboard& board, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw std::runtime_error("cannot create report directory " + out_dir.string());

  write_text(out_dir / "results.csv", records_csv(judged));
  write_text(out_dir / "scoreboard.csv", scoreboard_csv(board));

  std::ostringstream cactus;
  cactus << "config,rank,time\n";
  for (const auto& [config, times] : board.cactus)
    for (std::size_t i = 0; i < times.size(); ++i)
      cactus << csv_field(config) << ',' << i + 1 << ',' << seconds(times[i]) << '\n';
  write_text(out_dir / "cactus.csv", cactus.str());

  std::ostringstream cats;
  cats << "config,category,solved\n";
  for (const auto& [key, n] : board.categories)
    cats << csv_field(key.first) << ',' << csv_field(key.second) << ',' << n << '\n';
  write_text(out_dir / "categories.csv", cats.str());

  std::ostringstream sizes;
  sizes << "config,benchmark,strategy_size\n";
  for (const auto& s : board.sizes)
    sizes << csv_field(s.config) << ',' << csv_field(s.benchmark) << ',' << s.strategy_size << '\n';
  write_text(out_dir / "sizes.csv", sizes.str());
}

}  // namespace aigsynth::harness
