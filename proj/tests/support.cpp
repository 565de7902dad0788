#include "support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace testsupport {

using aigsynth::aiger::AndGate;
using aigsynth::aiger::Latch;
using aigsynth::aiger::Literal;

namespace {

unsigned pick(Rng& rng, unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); }
bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

Literal random_literal(Rng& rng, std::uint32_t max_var, bool allow_constant) {
  std::uint32_t v = allow_constant && coin(rng, 0.05) ? 0 : pick(rng, 1, std::max<std::uint32_t>(1, max_var));
  if (max_var == 0) v = 0;
  return Literal::from_var(v, coin(rng));
}

// Gate-level construction helper for the toy families.
struct Gates {
  AigCircuit& c;
  Literal land(Literal a, Literal b) {
    Literal lhs = Literal::from_var(++c.max_var);
    c.ands.push_back({lhs, a, b});
    return lhs;
  }
  Literal lor(Literal a, Literal b) { return !land(!a, !b); }
  Literal lxor(Literal a, Literal b) { return lor(land(a, !b), land(!a, b)); }
};

}  // namespace

AigCircuit random_spec(Rng& rng, const SpecShape& shape) {
  AigCircuit c;
  const unsigned nu = pick(rng, 0, shape.max_uncontrollable);
  const unsigned nc = pick(rng, 0, shape.max_controllable);
  const unsigned nl = pick(rng, 0, shape.max_latches);
  const unsigned na = pick(rng, 0, shape.max_ands);

  std::vector<bool> controllable(nu + nc, false);
  std::fill(controllable.begin() + nu, controllable.end(), true);
  std::shuffle(controllable.begin(), controllable.end(), rng);

  std::uint32_t v = 0;
  unsigned ku = 0, kc = 0;
  for (std::size_t k = 0; k < controllable.size(); ++k) {
    c.inputs.push_back(Literal::from_var(++v));
    c.input_names[k] = controllable[k] ? "controllable_c" + std::to_string(kc++) : "u" + std::to_string(ku++);
  }
  for (unsigned k = 0; k < nl; ++k) {
    c.latches.push_back({Literal::from_var(++v), Literal{}, aigsynth::aiger::kFalse});
    if (coin(rng)) c.latch_names[k] = "x" + std::to_string(k);
  }
  for (unsigned k = 0; k < na; ++k) {
    ++v;
    c.ands.push_back({Literal::from_var(v), random_literal(rng, v - 1, true), random_literal(rng, v - 1, true)});
  }
  c.max_var = v;
  for (auto& l : c.latches) l.next = random_literal(rng, v, true);
  // Bias the error output toward deep logic.
  Literal err = na > 0 && coin(rng, 0.8)
                    ? Literal::from_var(v - pick(rng, 0, std::min(na - 1, 3u)), coin(rng))
                    : random_literal(rng, v, true);
  c.outputs.push_back(err);
  c.output_names[0] = "err";
  return c;
}

AigCircuit random_circuit(Rng& rng) {
  static const char* words[] = {"alpha", "beta", "req", "ack", "grant", "x", "bus_0", "tmp.1", "a-b", "Q"};
  auto word = [&] { return std::string(words[pick(rng, 0, 9)]) + std::to_string(pick(rng, 0, 99)); };
  AigCircuit c;
  const unsigned ni = pick(rng, 0, 6), nl = pick(rng, 0, 6), na = pick(rng, 0, 25), no = pick(rng, 0, 4);
  std::uint32_t v = 0;
  for (unsigned k = 0; k < ni; ++k) {
    c.inputs.push_back(Literal::from_var(++v));
    if (coin(rng)) c.input_names[k] = coin(rng, 0.3) ? "controllable_" + word() : word();
  }
  for (unsigned k = 0; k < nl; ++k) {
    Literal cur = Literal::from_var(++v);
    unsigned r = pick(rng, 0, 2);
    c.latches.push_back({cur, Literal{}, r == 2 ? cur : Literal::constant(r == 1)});
    if (coin(rng)) c.latch_names[k] = word();
  }
  for (unsigned k = 0; k < na; ++k) {
    ++v;
    c.ands.push_back({Literal::from_var(v), random_literal(rng, v - 1, true), random_literal(rng, v - 1, true)});
  }
  c.max_var = v + pick(rng, 0, 2);  // unused variable indices are legal
  for (auto& l : c.latches) l.next = random_literal(rng, v, true);
  for (unsigned k = 0; k < no; ++k) {
    c.outputs.push_back(random_literal(rng, v, true));
    if (coin(rng)) c.output_names[k] = word() + " with spaces";
  }
  if (coin(rng))
    for (unsigned k = pick(rng, 1, 3); k > 0; --k) c.comments.push_back(word() + " : " + word());
  return c;
}

std::vector<bool> evaluate(const AigCircuit& c, const std::vector<bool>& latches, const std::vector<bool>& inputs) {
  std::vector<bool> vars(c.max_var + 1, false);
  std::vector<int> known(c.max_var + 1, 0);
  known[0] = 1;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) {
    vars[c.inputs[k].var()] = inputs.at(k);
    known[c.inputs[k].var()] = 1;
  }
  for (std::size_t k = 0; k < c.latches.size(); ++k) {
    vars[c.latches[k].current.var()] = latches.at(k);
    known[c.latches[k].current.var()] = 1;
  }
  std::unordered_map<std::uint32_t, const AndGate*> gate;
  for (const auto& g : c.ands) gate[g.lhs.var()] = &g;
  std::function<bool(std::uint32_t)> value = [&](std::uint32_t var) -> bool {
    if (known[var] == 1) return vars[var];
    if (known[var] == 2) throw std::logic_error("combinational cycle");
    auto it = gate.find(var);
    if (it == gate.end()) throw std::logic_error("undefined variable " + std::to_string(var));
    known[var] = 2;
    const AndGate& g = *it->second;
    bool r = (value(g.rhs0.var()) != g.rhs0.negated()) && (value(g.rhs1.var()) != g.rhs1.negated());
    vars[var] = r;
    known[var] = 1;
    return r;
  };
  for (const auto& g : c.ands) value(g.lhs.var());
  return vars;
}

bool literal_value(const std::vector<bool>& vars, Literal l) { return vars.at(l.var()) != l.negated(); }

namespace {

std::vector<bool> state_bits(std::size_t state, std::size_t n) {
  std::vector<bool> b(n);
  for (std::size_t k = 0; k < n; ++k) b[k] = (state >> k) & 1;
  return b;
}

std::size_t next_state(const AigCircuit& c, const std::vector<bool>& vars) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < c.latches.size(); ++k)
    if (literal_value(vars, c.latches[k].next)) s |= std::size_t{1} << k;
  return s;
}

std::size_t init_state(const AigCircuit& c) {
  std::size_t s = 0;
  for (std::size_t k = 0; k < c.latches.size(); ++k)
    if (c.latches[k].reset == aigsynth::aiger::kTrue) s |= std::size_t{1} << k;
  return s;
}

}  // namespace

GameTruth brute_force_game(const AigCircuit& spec) {
  const std::size_t nl = spec.latches.size(), ni = spec.inputs.size();
  if (nl > 12 || nl + ni > 24) throw std::invalid_argument("brute_force_game: too large");
  std::vector<std::size_t> ctrl, unc;
  for (std::size_t k = 0; k < ni; ++k) {
    auto it = spec.input_names.find(k);
    bool is_ctrl = it != spec.input_names.end() && it->second.rfind("controllable_", 0) == 0;
    (is_ctrl ? ctrl : unc).push_back(k);
  }
  const std::size_t states = std::size_t{1} << nl;
  // Precompute (err, next) per state and input valuation.
  struct Move {
    bool err;
    std::size_t next;
  };
  std::vector<std::vector<Move>> moves(states);
  for (std::size_t s = 0; s < states; ++s) {
    auto latches = state_bits(s, nl);
    for (std::size_t in = 0; in < (std::size_t{1} << ni); ++in) {
      auto vars = evaluate(spec, latches, state_bits(in, ni));
      moves[s].push_back({literal_value(vars, spec.outputs.at(0)), next_state(spec, vars)});
    }
  }
  GameTruth t;
  t.winning.assign(states, true);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<bool> next = t.winning;
    for (std::size_t s = 0; s < states; ++s) {
      if (!t.winning[s]) continue;
      bool all_u = true;
      for (std::size_t u = 0; u < (std::size_t{1} << unc.size()) && all_u; ++u) {
        bool some_c = false;
        for (std::size_t cv = 0; cv < (std::size_t{1} << ctrl.size()) && !some_c; ++cv) {
          std::size_t in = 0;
          for (std::size_t k = 0; k < unc.size(); ++k)
            if ((u >> k) & 1) in |= std::size_t{1} << unc[k];
          for (std::size_t k = 0; k < ctrl.size(); ++k)
            if ((cv >> k) & 1) in |= std::size_t{1} << ctrl[k];
          const Move& m = moves[s][in];
          some_c = !m.err && t.winning[m.next];
        }
        all_u = some_c;
      }
      if (!all_u) {
        next[s] = false;
        changed = true;
      }
    }
    t.winning = std::move(next);
  }
  t.realizable = t.winning[init_state(spec)];
  return t;
}

bool closed_loop_safe(const AigCircuit& solution) {
  const std::size_t nl = solution.latches.size(), ni = solution.inputs.size();
  if (nl > 20 || ni > 12) throw std::invalid_argument("closed_loop_safe: too large");
  std::vector<bool> seen(std::size_t{1} << nl, false);
  std::deque<std::size_t> queue{init_state(solution)};
  seen[queue.front()] = true;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    auto latches = state_bits(s, nl);
    for (std::size_t in = 0; in < (std::size_t{1} << ni); ++in) {
      auto vars = evaluate(solution, latches, state_bits(in, ni));
      if (literal_value(vars, solution.outputs.at(0))) return false;
      std::size_t n = next_state(solution, vars);
      if (!seen[n]) {
        seen[n] = true;
        queue.push_back(n);
      }
    }
  }
  return true;
}

AigCircuit count_safe(unsigned width) {
  AigCircuit c;
  Gates g{c};
  c.inputs = {Literal::from_var(1), Literal::from_var(2)};
  c.input_names = {{0, "inc"}, {1, "controllable_reset"}};
  c.max_var = 2;
  std::vector<Literal> x;
  for (unsigned k = 0; k < width; ++k) {
    x.push_back(Literal::from_var(++c.max_var));
    c.latches.push_back({x.back(), Literal{}, aigsynth::aiger::kFalse});
    c.latch_names[k] = "x" + std::to_string(k);
  }
  Literal carry = c.inputs[0], reset = c.inputs[1];
  for (unsigned k = 0; k < width; ++k) {
    Literal sum = g.lxor(x[k], carry);
    c.latches[k].next = g.land(!reset, sum);
    carry = g.land(x[k], carry);
  }
  Literal all = x[0];
  for (unsigned k = 1; k < width; ++k) all = g.land(all, x[k]);
  c.outputs = {all};
  c.output_names[0] = "err";
  return c;
}

AigCircuit count_unsafe(unsigned width) {
  AigCircuit c;
  Gates g{c};
  c.inputs = {Literal::from_var(1), Literal::from_var(2)};
  c.input_names = {{0, "allow"}, {1, "controllable_reset"}};
  c.max_var = 2;
  std::vector<Literal> x;
  for (unsigned k = 0; k < width; ++k) {
    x.push_back(Literal::from_var(++c.max_var));
    c.latches.push_back({x.back(), Literal{}, aigsynth::aiger::kFalse});
    c.latch_names[k] = "x" + std::to_string(k);
  }
  Literal clear = g.land(c.inputs[0], c.inputs[1]);
  Literal carry = aigsynth::aiger::kTrue;
  for (unsigned k = 0; k < width; ++k) {
    Literal sum = k == 0 ? !x[0] : g.lxor(x[k], carry);
    c.latches[k].next = g.land(!clear, sum);
    carry = k == 0 ? x[0] : g.land(x[k], carry);
  }
  Literal all = x[0];
  for (unsigned k = 1; k < width; ++k) all = g.land(all, x[k]);
  c.outputs = {all};
  c.output_names[0] = "err";
  return c;
}

AigCircuit add(unsigned width) {
  AigCircuit c;
  Gates g{c};
  std::vector<Literal> a, b, s;
  for (unsigned k = 0; k < width; ++k) {
    for (auto* vec : {&a, &b, &s}) {
      vec->push_back(Literal::from_var(++c.max_var));
      c.inputs.push_back(vec->back());
    }
    c.input_names[3 * k] = "a" + std::to_string(k);
    c.input_names[3 * k + 1] = "b" + std::to_string(k);
    c.input_names[3 * k + 2] = "controllable_s" + std::to_string(k);
  }
  Literal carry = aigsynth::aiger::kFalse, err = aigsynth::aiger::kFalse;
  for (unsigned k = 0; k < width; ++k) {
    Literal half = g.lxor(a[k], b[k]);
    Literal sum = k == 0 ? half : g.lxor(half, carry);
    Literal bad = g.lxor(sum, s[k]);
    err = k == 0 ? bad : g.lor(err, bad);
    Literal gen = g.land(a[k], b[k]);
    carry = k == 0 ? gen : g.lor(gen, g.land(half, carry));
  }
  c.outputs = {err};
  c.output_names[0] = "err";
  return c;
}

Table var_table(unsigned v) {
  Table t;
  for (unsigned i = 0; i < 256; ++i)
    if ((i >> v) & 1) t.set(i);
  return t;
}

}  // namespace testsupport
