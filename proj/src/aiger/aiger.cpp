#include "aigsynth/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace aigsynth::aiger {

namespace {

enum class Section { header, input, latch, output, gate };

struct Violation {
  Section section;
  std::size_t index;
  std::string message;
};

enum class DefKind : std::uint8_t { none, input, latch, gate };

std::string lit_str(Literal l) { return std::to_string(l.value); }

// Shared structural check. `stop_at_first` lets the parser bail early.
std::vector<Violation> check_structure(const AigCircuit& c, bool stop_at_first) {
  std::vector<Violation> out;
  auto report = [&](Section s, std::size_t i, std::string msg) {
    out.push_back({s, i, std::move(msg)});
    return stop_at_first;
  };
  const std::uint64_t max_lit = 2ull * c.max_var + 1;
  std::vector<DefKind> def(static_cast<std::size_t>(c.max_var) + 1, DefKind::none);
  std::vector<std::size_t> gate_of(def.size(), 0);

  auto define = [&](Section s, std::size_t i, Literal l, DefKind kind) -> bool {
    if (l.value > max_lit)
      return report(s, i, "literal " + lit_str(l) + " exceeds maximum " + std::to_string(max_lit));
    if (l.negated()) return report(s, i, "odd literal " + lit_str(l) + " where an even one is required");
    if (l.var() == 0) return report(s, i, "constant literal cannot be defined");
    if (def[l.var()] != DefKind::none)
      return report(s, i, "duplicate definition of variable " + std::to_string(l.var()));
    def[l.var()] = kind;
    return false;
  };

  for (std::size_t i = 0; i < c.inputs.size(); ++i)
    if (define(Section::input, i, c.inputs[i], DefKind::input)) return out;
  for (std::size_t i = 0; i < c.latches.size(); ++i)
    if (define(Section::latch, i, c.latches[i].current, DefKind::latch)) return out;
  for (std::size_t i = 0; i < c.ands.size(); ++i) {
    if (define(Section::gate, i, c.ands[i].lhs, DefKind::gate)) return out;
    if (c.ands[i].lhs.value <= max_lit) gate_of[c.ands[i].lhs.var()] = i;
  }

  auto use = [&](Section s, std::size_t i, Literal l) -> bool {
    if (l.value > max_lit)
      return report(s, i, "literal " + lit_str(l) + " exceeds maximum " + std::to_string(max_lit));
    if (l.var() != 0 && def[l.var()] == DefKind::none)
      return report(s, i, "literal " + lit_str(l) + " uses undefined variable");
    return false;
  };
  for (std::size_t i = 0; i < c.latches.size(); ++i) {
    const Latch& la = c.latches[i];
    if (use(Section::latch, i, la.next)) return out;
    if (la.reset.value > 1 && la.reset != la.current)
      if (report(Section::latch, i, "invalid reset " + lit_str(la.reset))) return out;
  }
  for (std::size_t i = 0; i < c.outputs.size(); ++i)
    if (use(Section::output, i, c.outputs[i])) return out;
  for (std::size_t i = 0; i < c.ands.size(); ++i) {
    if (use(Section::gate, i, c.ands[i].rhs0)) return out;
    if (use(Section::gate, i, c.ands[i].rhs1)) return out;
  }
  if (!out.empty()) return out;

  // Cycle detection over gate definitions (iterative DFS, 0 white 1 grey 2 black).
  std::vector<std::uint8_t> color(c.ands.size(), 0);
  for (std::size_t root = 0; root < c.ands.size(); ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<std::size_t, int>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [g, child] = stack.back();
      if (child == 2) {
        color[g] = 2;
        stack.pop_back();
        continue;
      }
      Literal rhs = child == 0 ? c.ands[g].rhs0 : c.ands[g].rhs1;
      ++child;
      if (rhs.var() == 0 || def[rhs.var()] != DefKind::gate) continue;
      std::size_t next = gate_of[rhs.var()];
      if (color[next] == 1) {
        if (report(Section::gate, next, "cyclic AND definition through variable " + std::to_string(rhs.var())))
          return out;
        continue;
      }
      if (color[next] == 0) {
        color[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
  return out;
}

std::string describe(const Violation& v) {
  switch (v.section) {
    case Section::header: return v.message;
    case Section::input: return "input " + std::to_string(v.index) + ": " + v.message;
    case Section::latch: return "latch " + std::to_string(v.index) + ": " + v.message;
    case Section::output: return "output " + std::to_string(v.index) + ": " + v.message;
    case Section::gate: return "and " + std::to_string(v.index) + ": " + v.message;
  }
  return v.message;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint32_t parse_number(std::string_view tok, std::size_t line) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty())
    throw ParseError(line, "non-numeric token '" + std::string(tok) + "'");
  return v;
}

std::vector<std::uint32_t> parse_numbers(std::string_view text, std::size_t line, std::size_t min_count,
                                         std::size_t max_count, const char* what) {
  auto toks = tokens(text);
  if (toks.size() < min_count || toks.size() > max_count)
    throw ParseError(line, std::string("malformed ") + what + " line");
  std::vector<std::uint32_t> out;
  out.reserve(toks.size());
  for (auto t : toks) out.push_back(parse_number(t, line));
  return out;
}

}  // namespace

AigCircuit parse_ascii(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ParseError(1, "empty input, expected header 'aag'");

  auto header = tokens(lines[0]);
  if (header.empty() || header[0] != "aag") throw ParseError(1, "malformed header: expected 'aag M I L O A'");
  if (header.size() != 6) {
    if (header.size() > 6) throw ParseError(1, "unsupported header extension (B C J F sections)");
    throw ParseError(1, "malformed header: expected 'aag M I L O A'");
  }
  std::uint32_t counts[5];
  for (int k = 0; k < 5; ++k) counts[k] = parse_number(header[k + 1], 1);
  const auto [m, ni, nl, no, na] = counts;

  AigCircuit c;
  c.max_var = m;
  c.inputs.reserve(ni);
  c.latches.reserve(nl);
  c.outputs.reserve(no);
  c.ands.reserve(na);

  std::size_t idx = 1;  // index into `lines`; line number is idx + 1
  auto next_line = [&](const char* what, std::size_t expected) -> std::string_view {
    if (idx >= lines.size())
      throw ParseError(idx + 1, std::string("count mismatch: expected ") + std::to_string(expected) + " " + what +
                                    " lines, file ended");
    return lines[idx++];
  };

  for (std::uint32_t k = 0; k < ni; ++k) {
    auto text = next_line("input", ni);
    auto v = parse_numbers(text, idx, 1, 1, "input");
    c.inputs.emplace_back(v[0]);
  }
  for (std::uint32_t k = 0; k < nl; ++k) {
    auto text = next_line("latch", nl);
    auto v = parse_numbers(text, idx, 2, 3, "latch");
    Latch la{Literal(v[0]), Literal(v[1]), Literal(0)};
    if (v.size() == 3) la.reset = Literal(v[2]);
    c.latches.push_back(la);
  }
  for (std::uint32_t k = 0; k < no; ++k) {
    auto text = next_line("output", no);
    auto v = parse_numbers(text, idx, 1, 1, "output");
    c.outputs.emplace_back(v[0]);
  }
  for (std::uint32_t k = 0; k < na; ++k) {
    auto text = next_line("and", na);
    auto v = parse_numbers(text, idx, 3, 3, "and");
    c.ands.push_back({Literal(v[0]), Literal(v[1]), Literal(v[2])});
  }

  auto violations = check_structure(c, true);
  if (!violations.empty()) {
    const Violation& v = violations.front();
    std::size_t line = 1;
    switch (v.section) {
      case Section::header: line = 1; break;
      case Section::input: line = 2 + v.index; break;
      case Section::latch: line = 2 + ni + v.index; break;
      case Section::output: line = 2 + ni + nl + v.index; break;
      case Section::gate: line = 2 + ni + nl + no + v.index; break;
    }
    throw ParseError(line, v.message);
  }

  // Symbol table, then the optional comment section.
  for (; idx < lines.size(); ++idx) {
    std::string_view line = lines[idx];
    const std::size_t lineno = idx + 1;
    if (line == "c") {
      for (++idx; idx < lines.size(); ++idx) c.comments.emplace_back(lines[idx]);
      break;
    }
    if (line.empty()) throw ParseError(lineno, "unexpected empty line in symbol table");
    char kind = line[0];
    std::map<std::size_t, std::string>* table = nullptr;
    std::size_t limit = 0;
    switch (kind) {
      case 'i': table = &c.input_names; limit = ni; break;
      case 'l': table = &c.latch_names; limit = nl; break;
      case 'o': table = &c.output_names; limit = no; break;
      default: throw ParseError(lineno, "malformed symbol line");
    }
    std::size_t space = line.find(' ');
    if (space == std::string_view::npos || space == 1) throw ParseError(lineno, "malformed symbol line");
    std::uint32_t pos = parse_number(line.substr(1, space - 1), lineno);
    if (pos >= limit)
      throw ParseError(lineno, "symbol index " + std::to_string(pos) + " out of range");
    if (!table->emplace(pos, std::string(line.substr(space + 1))).second)
      throw ParseError(lineno, "duplicate symbol for index " + std::to_string(pos));
  }
  return c;
}

AigCircuit read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ascii(ss.str());
}

std::string serialize_ascii(const AigCircuit& c) {
  std::ostringstream os;
  os << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << ' ' << c.outputs.size()
     << ' ' << c.ands.size() << '\n';
  for (Literal l : c.inputs) os << l.value << '\n';
  for (const Latch& la : c.latches) {
    os << la.current.value << ' ' << la.next.value;
    if (la.reset.value != 0) os << ' ' << la.reset.value;
    os << '\n';
  }
  for (Literal l : c.outputs) os << l.value << '\n';
  for (const AndGate& g : c.ands) os << g.lhs.value << ' ' << g.rhs0.value << ' ' << g.rhs1.value << '\n';
  for (const auto& [k, name] : c.input_names) os << 'i' << k << ' ' << name << '\n';
  for (const auto& [k, name] : c.latch_names) os << 'l' << k << ' ' << name << '\n';
  for (const auto& [k, name] : c.output_names) os << 'o' << k << ' ' << name << '\n';
  if (!c.comments.empty()) {
    os << "c\n";
    for (const auto& line : c.comments) os << line << '\n';
  }
  return os.str();
}

void write_file(const AigCircuit& c, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << serialize_ascii(c);
  if (!out) throw std::runtime_error("write failed for " + path);
}

InputPartition partition_inputs(const AigCircuit& c) {
  InputPartition p;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) {
    auto it = c.input_names.find(k);
    bool controllable = it != c.input_names.end() && it->second.starts_with(kControllablePrefix);
    (controllable ? p.controllable : p.uncontrollable).push_back(k);
  }
  return p;
}

std::vector<std::string> structural_violations(const AigCircuit& c) {
  std::vector<std::string> out;
  for (const auto& v : check_structure(c, false)) out.push_back(describe(v));
  auto check_names = [&](const std::map<std::size_t, std::string>& names, std::size_t limit, const char* what) {
    for (const auto& [k, name] : names)
      if (k >= limit) out.push_back(std::string(what) + " symbol index " + std::to_string(k) + " out of range");
  };
  check_names(c.input_names, c.inputs.size(), "input");
  check_names(c.latch_names, c.latches.size(), "latch");
  check_names(c.output_names, c.outputs.size(), "output");
  return out;
}

std::vector<std::string> validate_spec(const AigCircuit& c) {
  std::vector<std::string> out;
  if (c.outputs.size() != 1)
    out.push_back("output count " + std::to_string(c.outputs.size()) + ", expected 1");
  for (std::size_t k = 0; k < c.latches.size(); ++k) {
    const Latch& la = c.latches[k];
    if (la.reset.value == 0) continue;
    if (la.reset == la.current)
      out.push_back("latch " + std::to_string(k) + ": unsupported nondeterministic reset");
    else
      out.push_back("latch " + std::to_string(k) + ": unsupported reset " + std::to_string(la.reset.value) +
                    ", expected 0");
  }
  auto structural = structural_violations(c);
  out.insert(out.end(), structural.begin(), structural.end());
  return out;
}

std::vector<AndGate> topological_ands(const AigCircuit& c) {
  std::vector<std::optional<std::size_t>> gate_of(static_cast<std::size_t>(c.max_var) + 1);
  for (std::size_t i = 0; i < c.ands.size(); ++i) {
    auto v = c.ands[i].lhs.var();
    if (v >= gate_of.size()) throw std::invalid_argument("AND lhs out of range");
    gate_of[v] = i;
  }
  std::vector<std::uint8_t> state(c.ands.size(), 0);
  std::vector<AndGate> order;
  order.reserve(c.ands.size());
  for (std::size_t root = 0; root < c.ands.size(); ++root) {
    if (state[root] != 0) continue;
    std::vector<std::pair<std::size_t, int>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [g, child] = stack.back();
      if (child == 2) {
        state[g] = 2;
        order.push_back(c.ands[g]);
        stack.pop_back();
        continue;
      }
      Literal rhs = child == 0 ? c.ands[g].rhs0 : c.ands[g].rhs1;
      ++child;
      if (rhs.var() >= gate_of.size() || !gate_of[rhs.var()]) continue;
      std::size_t next = *gate_of[rhs.var()];
      if (state[next] == 1) throw std::invalid_argument("cyclic AND definitions");
      if (state[next] == 0) {
        state[next] = 1;
        stack.emplace_back(next, 0);
      }
    }
  }
  return order;
}

std::string input_name(const AigCircuit& c, std::size_t k) {
  auto it = c.input_names.find(k);
  return it == c.input_names.end() ? std::string() : it->second;
}

std::string latch_name(const AigCircuit& c, std::size_t k) {
  auto it = c.latch_names.find(k);
  return it == c.latch_names.end() ? std::string() : it->second;
}

// ---------------------------------------------------------------------------
// AigBuilder

std::uint32_t AigBuilder::fresh_var() { return ++circuit_.max_var; }

Literal AigBuilder::add_input(std::string name) {
  Literal l = Literal::from_var(fresh_var());
  if (!name.empty()) circuit_.input_names[circuit_.inputs.size()] = std::move(name);
  circuit_.inputs.push_back(l);
  return l;
}

Literal AigBuilder::add_latch(std::string name, Literal reset) {
  Literal l = Literal::from_var(fresh_var());
  if (!name.empty()) circuit_.latch_names[circuit_.latches.size()] = std::move(name);
  // A non-constant reset marks the latch uninitialized; it refers to the latch itself.
  circuit_.latches.push_back({l, kFalse, reset.is_constant() ? reset : l});
  return l;
}

void AigBuilder::set_latch_next(std::size_t latch, Literal next) { circuit_.latches.at(latch).next = next; }

void AigBuilder::add_output(Literal lit, std::string name) {
  if (!name.empty()) circuit_.output_names[circuit_.outputs.size()] = std::move(name);
  circuit_.outputs.push_back(lit);
}

Literal AigBuilder::make_and(Literal a, Literal b) {
  if (a == kFalse || b == kFalse || a == !b) return kFalse;
  if (a == kTrue) return b;
  if (b == kTrue || a == b) return a;
  if (b < a) std::swap(a, b);
  auto key = std::make_pair(a.value, b.value);
  if (auto it = strash_.find(key); it != strash_.end()) return it->second;
  Literal lhs = Literal::from_var(fresh_var());
  circuit_.ands.push_back({lhs, b, a});
  strash_.emplace(key, lhs);
  return lhs;
}

Literal AigBuilder::make_ite(Literal cond, Literal then_lit, Literal else_lit) {
  if (then_lit == else_lit) return then_lit;
  return make_or(make_and(cond, then_lit), make_and(!cond, else_lit));
}

AigCircuit AigBuilder::finish(std::vector<std::optional<Literal>>* remap) && { return sweep(circuit_, remap); }

AigCircuit sweep(const AigCircuit& c, std::vector<std::optional<Literal>>* remap_out) {
  auto order = topological_ands(c);
  std::vector<std::optional<std::size_t>> gate_pos(static_cast<std::size_t>(c.max_var) + 1);
  for (std::size_t i = 0; i < order.size(); ++i) gate_pos[order[i].lhs.var()] = i;

  // Mark the cone of influence of latch next-states and outputs.
  std::vector<bool> used(order.size(), false);
  std::vector<std::size_t> work;
  auto touch = [&](Literal l) {
    if (l.var() < gate_pos.size() && gate_pos[l.var()] && !used[*gate_pos[l.var()]]) {
      used[*gate_pos[l.var()]] = true;
      work.push_back(*gate_pos[l.var()]);
    }
  };
  for (const Latch& la : c.latches) touch(la.next);
  for (Literal o : c.outputs) touch(o);
  while (!work.empty()) {
    std::size_t g = work.back();
    work.pop_back();
    touch(order[g].rhs0);
    touch(order[g].rhs1);
  }

  std::vector<Literal> remap(gate_pos.size(), kFalse);
  AigCircuit out;
  std::uint32_t next_var = 0;
  for (Literal l : c.inputs) {
    remap[l.var()] = Literal::from_var(++next_var);
    out.inputs.push_back(remap[l.var()]);
  }
  for (const Latch& la : c.latches) remap[la.current.var()] = Literal::from_var(++next_var);
  auto map = [&](Literal l) { return remap[l.var()] ^ l.negated(); };
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!used[i]) continue;
    remap[order[i].lhs.var()] = Literal::from_var(++next_var);
    out.ands.push_back({remap[order[i].lhs.var()], map(order[i].rhs0), map(order[i].rhs1)});
  }
  for (const Latch& la : c.latches) {
    Literal reset = la.reset.is_constant() ? la.reset : remap[la.current.var()];
    out.latches.push_back({remap[la.current.var()], map(la.next), reset});
  }
  for (Literal o : c.outputs) out.outputs.push_back(map(o));
  out.max_var = next_var;
  if (remap_out) {
    remap_out->assign(remap.size(), std::nullopt);
    (*remap_out)[0] = kFalse;
    for (Literal l : c.inputs) (*remap_out)[l.var()] = remap[l.var()];
    for (const Latch& la : c.latches) (*remap_out)[la.current.var()] = remap[la.current.var()];
    for (std::size_t i = 0; i < order.size(); ++i)
      if (used[i]) (*remap_out)[order[i].lhs.var()] = remap[order[i].lhs.var()];
  }
  out.input_names = c.input_names;
  out.latch_names = c.latch_names;
  out.output_names = c.output_names;
  out.comments = c.comments;
  return out;
}

}  // namespace aigsynth::aiger
