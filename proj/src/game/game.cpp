#include "aigsynth/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace aigsynth::game {

using aiger::AigCircuit;
using aiger::Literal;

std::vector<std::optional<Bdd>> SafetyGame::next_state_substitution() const {
  std::vector<std::optional<Bdd>> subst(manager->var_count());
  for (std::size_t k = 0; k < latch_vars.size(); ++k) subst[latch_vars[k]] = transitions[k];
  return subst;
}

SafetyGame build_game(bdd::Manager& m, const AigCircuit& c, const aiger::InputPartition& p,
                      const Options& options) {
  if (auto violations = validate_spec(c); !violations.empty()) {
    std::string msg = "inadmissible specification:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw std::invalid_argument(msg);
  }
  m.set_auto_reorder(options.auto_reorder);

  SafetyGame g;
  g.manager = &m;
  std::vector<std::optional<Bdd>> value(static_cast<std::size_t>(c.max_var) + 1);

  // Variables follow the circuit's own variable numbering, inputs and
  // latches interleaved as they appear there.
  struct Source {
    std::uint32_t aig_var;
    bool is_latch;
    std::size_t pos;
  };
  std::vector<Source> sources;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) sources.push_back({c.inputs[k].var(), false, k});
  for (std::size_t k = 0; k < c.latches.size(); ++k) sources.push_back({c.latches[k].current.var(), true, k});
  std::sort(sources.begin(), sources.end(), [](const Source& a, const Source& b) { return a.aig_var < b.aig_var; });

  g.input_vars.resize(c.inputs.size());
  g.latch_vars.resize(c.latches.size());
  for (const Source& s : sources) {
    VarId v = m.new_var();
    (s.is_latch ? g.latch_vars : g.input_vars)[s.pos] = v;
    value[s.aig_var] = Bdd::var(m, v);
  }
  for (std::size_t k : p.uncontrollable) g.uncontrollable_vars.push_back(g.input_vars[k]);
  for (std::size_t k : p.controllable) g.controllable_vars.push_back(g.input_vars[k]);

  auto lit = [&](Literal l) -> Bdd {
    if (l.var() == 0) return l.negated() ? Bdd::one(m) : Bdd::zero(m);
    const Bdd& b = *value[l.var()];
    return l.negated() ? !b : b;
  };
  for (const aiger::AndGate& gate : aiger::topological_ands(c)) value[gate.lhs.var()] = lit(gate.rhs0) & lit(gate.rhs1);

  for (const aiger::Latch& la : c.latches) g.transitions.push_back(lit(la.next));
  g.error = lit(c.outputs.front());

  Bdd init = Bdd::one(m);
  for (VarId v : g.latch_vars) init &= !Bdd::var(m, v);
  g.init = init;
  g.latch_cube = Bdd::cube(m, g.latch_vars);
  g.uncontrollable_cube = Bdd::cube(m, g.uncontrollable_vars);
  g.controllable_cube = Bdd::cube(m, g.controllable_vars);

  if (!options.eager_deref)
    for (auto& v : value)
      if (v) g.retained.push_back(*v);
  return g;
}

namespace {

void require_state_predicate(const SafetyGame& g, const Bdd& s) {
  for (VarId v : g.manager->support(s.node()))
    if (std::find(g.latch_vars.begin(), g.latch_vars.end(), v) == g.latch_vars.end())
      throw std::invalid_argument("state predicate depends on non-latch variable " + std::to_string(v));
}

}  // namespace

Bdd upre(const SafetyGame& g, const Bdd& target, const Options& options) {
  require_state_predicate(g, target);
  const auto subst = g.next_state_substitution();
  if (options.use_and_exists) {
    // Dual form: not forall U. exists C. (not err and not target[L := f]).
    Bdd avoid = (!target).compose(subst);
    return !(!g.error).and_exists(avoid, g.controllable_cube).forall(g.uncontrollable_cube);
  }
  Bdd bad = g.error | target.compose(subst);
  return bad.forall(g.controllable_cube).exists(g.uncontrollable_cube);
}

Bdd cpre(const SafetyGame& g, const Bdd& safe) {
  require_state_predicate(g, safe);
  Bdd good = (!g.error) & safe.compose(g.next_state_substitution());
  return good.exists(g.controllable_cube).forall(g.uncontrollable_cube);
}

GameResult solve(const SafetyGame& g, const Options& options) {
  bdd::Manager& m = *g.manager;
  m.set_auto_reorder(options.auto_reorder);
  GameResult r;
  Bdd attractor = Bdd::zero(m);
  std::vector<Bdd> retained;
  for (;;) {
    Bdd next = attractor | upre(g, attractor, options);
    ++r.iterations;
    if (next == attractor) break;
    if (!options.eager_deref) retained.push_back(attractor);
    attractor = std::move(next);
  }
  r.realizable = (g.init & attractor).is_zero();
  r.winning_region = !attractor;
  r.losing_region = std::move(attractor);
  return r;
}

Solved solve_spec(const AigCircuit& c, const Options& options, bdd::Manager::Options manager_options) {
  manager_options.auto_reorder = options.auto_reorder;
  Solved s;
  s.manager = std::make_unique<bdd::Manager>(manager_options);
  s.game = build_game(*s.manager, c, aiger::partition_inputs(c), options);
  s.result = solve(s.game, options);
  return s;
}

}  // namespace aigsynth::game
