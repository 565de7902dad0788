#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "aigsynth/aiger.hpp"
#include "aigsynth/harness.hpp"

namespace aigsynth::harness {

namespace fs = std::filesystem;

const char* to_string(Status s) {
  switch (s) {
    case Status::realizable: return "realizable";
    case Status::unrealizable: return "unrealizable";
    case Status::unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(Mode m) { return m == Mode::sequential ? "sequential" : "parallel"; }

Status parse_status(const std::string& s) {
  std::string t;
  for (char ch : s) t += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "realizable") return Status::realizable;
  if (t == "unrealizable") return Status::unrealizable;
  if (t.empty() || t == "unknown") return Status::unknown;
  throw std::invalid_argument("unknown realizability status '" + s + "'");
}

Mode parse_mode(const std::string& s) {
  if (s == "sequential" || s == "seq") return Mode::sequential;
  if (s == "parallel" || s == "par") return Mode::parallel;
  throw std::invalid_argument("unknown execution mode '" + s + "'");
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Value of `key = value` in the supported TOML subset: basic strings,
// numbers and bare words.
std::string toml_value(std::string_view raw, std::size_t lineno) {
  std::string v = trim(raw);
  if (v.empty()) throw std::runtime_error("manifest line " + std::to_string(lineno) + ": missing value");
  if (v.front() != '"') {
    if (auto hash = v.find('#'); hash != std::string::npos) v = trim(v.substr(0, hash));
    return v;
  }
  std::string out;
  for (std::size_t i = 1; i < v.size(); ++i) {
    char ch = v[i];
    if (ch == '"') {
      std::string rest = trim(std::string_view(v).substr(i + 1));
      if (!rest.empty() && rest.front() != '#')
        throw std::runtime_error("manifest line " + std::to_string(lineno) + ": trailing characters after string");
      return out;
    }
    if (ch == '\\' && i + 1 < v.size()) {
      char esc = v[++i];
      switch (esc) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: out += esc;
      }
      continue;
    }
    out += ch;
  }
  throw std::runtime_error("manifest line " + std::to_string(lineno) + ": unterminated string");
}

}  // namespace

std::vector<BenchmarkRecord> load_manifest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw std::runtime_error("cannot open manifest " + manifest.string());
  std::vector<BenchmarkRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool in_table = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == "[[benchmark]]") {
      out.emplace_back();
      in_table = true;
      continue;
    }
    if (t.front() == '[') throw std::runtime_error("manifest line " + std::to_string(lineno) + ": unsupported table " + t);
    auto eq = t.find('=');
    if (eq == std::string::npos || !in_table)
      throw std::runtime_error("manifest line " + std::to_string(lineno) + ": expected key = value inside [[benchmark]]");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = toml_value(std::string_view(t).substr(eq + 1), lineno);
    BenchmarkRecord& b = out.back();
    if (key == "path") {
      fs::path p(value);
      b.path = (p.is_absolute() ? p : manifest.parent_path() / p).lexically_normal().string();
    } else if (key == "category") {
      b.category = value;
    } else if (key == "status") {
      b.known_status = parse_status(value);
    } else if (key == "difficulty") {
      try {
        b.difficulty = std::stod(value);
      } catch (const std::exception&) {
        throw std::runtime_error("manifest line " + std::to_string(lineno) + ": bad difficulty '" + value + "'");
      }
      if (b.difficulty < 0.0 || b.difficulty > 1.0)
        throw std::runtime_error("manifest line " + std::to_string(lineno) + ": difficulty outside [0,1]");
    } else {
      throw std::runtime_error("manifest line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  for (const auto& b : out)
    if (b.path.empty()) throw std::runtime_error("manifest entry without a path in " + manifest.string());
  return out;
}

BenchmarkRecord import_benchmark(const fs::path& aag) {
  BenchmarkRecord b;
  b.path = aag.string();
  b.category = aag.parent_path().filename().string();
  if (b.category.empty()) b.category = "default";
  aiger::AigCircuit c = aiger::read_file(aag.string());
  for (const auto& line : c.comments) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = trim(std::string_view(line).substr(0, colon));
    std::string value = trim(std::string_view(line).substr(colon + 1));
    if (key == "STATUS") {
      b.known_status = parse_status(value);
    } else if (key == "SOLVED_BY") {
      // "k/n", possibly followed by solver names.
      std::istringstream is(value);
      std::size_t k = 0, n = 0;
      char slash = 0;
      if (is >> k >> slash >> n && slash == '/' && n > 0 && k <= n)
        b.difficulty = static_cast<double>(k) / static_cast<double>(n);
    }
  }
  return b;
}

std::vector<BenchmarkRecord> load_library(const fs::path& dir) {
  if (fs::exists(dir / "benchmarks.toml")) return load_manifest(dir / "benchmarks.toml");
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".aag") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<BenchmarkRecord> out;
  for (const auto& f : files) out.push_back(import_benchmark(f));
  return out;
}

const std::map<std::string, std::size_t>& reference_quotas() {
  static const std::map<std::string, std::size_t> quotas = {
      {"AMBA", 16},
      {"Cycle Scheduling", 16},
      {"Demo (LTL2AIG)", 16},
      {"Driver Synthesis", 16},
      {"Factory Assembly Line", 15},
      {"Genbuf", 16},
      {"HWMCC", 16},
      {"HyperLTL", 16},
      {"Load Balancer (LTL2AIG)", 16},
      {"LTL2DBA/LTL2DPA", 16},
      {"Moving Obstacle", 16},
      {"Matrix Multiplication", 16},
      {"Genbuf (LTL2AIG)", 8},
      {"Add", 5},
      {"Count", 5},
      {"Bitshift", 5},
      {"Mult", 5},
      {"Mv/Mvs", 5},
      {"Stay", 5},
      {"Huffman Encoder", 5},
  };
  return quotas;
}

std::vector<BenchmarkRecord> select_benchmarks(const std::vector<BenchmarkRecord>& library,
                                               const std::map<std::string, std::size_t>& quota,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BenchmarkRecord> out;
  for (const auto& [category, want] : quota) {
    std::vector<BenchmarkRecord> pool;
    for (const auto& b : library)
      if (b.category == category) pool.push_back(b);
    if (want > pool.size())
      throw std::invalid_argument("quota " + std::to_string(want) + " for category '" + category + "' exceeds the " +
                                  std::to_string(pool.size()) + " available instances");
    if (want == 0) continue;
    // Library order must not matter: canonicalize, then break difficulty ties randomly.
    std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    std::shuffle(pool.begin(), pool.end(), rng);
    std::stable_sort(pool.begin(), pool.end(),
                     [](const auto& a, const auto& b) { return a.difficulty < b.difficulty; });

    const std::size_t buckets = want;
    std::vector<std::vector<BenchmarkRecord>> bucket(buckets);
    for (std::size_t i = 0; i < buckets; ++i) {
      const std::size_t lo = i * pool.size() / buckets, hi = (i + 1) * pool.size() / buckets;
      bucket[i].assign(pool.begin() + static_cast<std::ptrdiff_t>(lo), pool.begin() + static_cast<std::ptrdiff_t>(hi));
      std::shuffle(bucket[i].begin(), bucket[i].end(), rng);
    }
    std::size_t taken = 0;
    for (std::size_t round = 0; taken < want; ++round)
      for (std::size_t i = 0; i < buckets && taken < want; ++i)
        if (round < bucket[i].size()) {
          out.push_back(bucket[i][round]);
          ++taken;
        }
  }
  return out;
}

}  // namespace aigsynth::harness
