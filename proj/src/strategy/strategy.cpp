#include "aigsynth/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace aigsynth::strategy {

StrategyRelation build_strategy_relation(const game::SafetyGame& g, const game::GameResult& r) {
  if (!r.realizable) throw std::logic_error("strategy requested for an unrealizable game");
  const Bdd& w = r.winning_region;
  Bdd next_w = w.compose(g.next_state_substitution());
  return {w & !g.error & next_w, w};
}

ControllerFunctions extract_functions(const game::SafetyGame& g, const StrategyRelation& rel,
                                      const ExtractOptions& options) {
  bdd::Manager& m = *g.manager;
  Bdd lambda = rel.lambda;

  Bdd all_c = g.controllable_cube;
  Bdd total = lambda.exists(all_c).forall(g.uncontrollable_cube);
  if (!rel.winning_region.leq(total))
    throw std::runtime_error("strategy relation is not total on the winning region");

  ControllerFunctions out;
  const auto& cs = g.controllable_vars;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::vector<VarId> later(cs.begin() + static_cast<std::ptrdiff_t>(i) + 1, cs.end());
    Bdd rest = Bdd::cube(m, later);
    Bdd can_one = lambda.cofactor(cs[i], true).exists(rest);
    Bdd can_zero = lambda.cofactor(cs[i], false).exists(rest);
    Bdd fn;
    if (options.minimize) {
      Bdd care = can_one ^ can_zero;
      fn = care.is_zero() ? Bdd::zero(m) : can_one.restrict(care);
    } else {
      fn = can_one & !can_zero;
    }
    std::vector<std::optional<Bdd>> subst(m.var_count());
    subst[cs[i]] = fn;
    lambda = lambda.compose(subst);
    out.emplace_back(cs[i], std::move(fn));
  }
  return out;
}

Literal BddLowering::lower(const Bdd& f) {
  if (&f.manager() != &mgr_) throw std::invalid_argument("BDD from a different manager");
  // Explicit stack: post-order over the shared DAG.
  std::vector<std::pair<bdd::NodeRef, bool>> stack{{f.node(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (n.index <= 1 || cache_.contains(n.index)) continue;
    if (!expanded) {
      stack.push_back({n, true});
      stack.push_back({mgr_.high(n), false});
      stack.push_back({mgr_.low(n), false});
      continue;
    }
    auto it = var_to_literal_.find(mgr_.top_var(n));
    if (it == var_to_literal_.end())
      throw std::invalid_argument("unmapped BDD variable " + std::to_string(mgr_.top_var(n)) + " in support");
    auto lit_of = [&](bdd::NodeRef c) {
      if (c == bdd::kZero) return aiger::kFalse;
      if (c == bdd::kOne) return aiger::kTrue;
      return cache_.at(c.index);
    };
    cache_.emplace(n.index, builder_.make_ite(it->second, lit_of(mgr_.high(n)), lit_of(mgr_.low(n))));
  }
  if (f.is_zero()) return aiger::kFalse;
  if (f.is_one()) return aiger::kTrue;
  return cache_.at(f.node().index);
}

Literal bdd_to_circuit(bdd::Manager& m, const Bdd& f, const std::unordered_map<VarId, Literal>& var_to_literal,
                       aiger::AigBuilder& builder) {
  BddLowering lowering(m, var_to_literal, builder);
  return lowering.lower(f);
}

Solution build_solution(const AigCircuit& spec, const aiger::InputPartition& p, const game::SafetyGame& g,
                        const ControllerFunctions& funcs, const Bdd& winning_region) {
  bdd::Manager& m = *g.manager;
  aiger::AigBuilder b;
  std::unordered_map<VarId, Literal> var_to_lit;
  std::vector<Literal> remap(static_cast<std::size_t>(spec.max_var) + 1, aiger::kFalse);

  for (std::size_t k : p.uncontrollable) {
    Literal l = b.add_input(aiger::input_name(spec, k));
    remap[spec.inputs[k].var()] = l;
    var_to_lit.emplace(g.input_vars[k], l);
  }
  for (std::size_t k = 0; k < spec.latches.size(); ++k) {
    Literal l = b.add_latch(aiger::latch_name(spec, k), spec.latches[k].reset);
    remap[spec.latches[k].current.var()] = l;
    var_to_lit.emplace(g.latch_vars[k], l);
  }

  BddLowering lowering(m, var_to_lit, b);
  std::vector<std::pair<std::string, Literal>> defined;
  for (std::size_t k : p.controllable) {
    const VarId v = g.input_vars[k];
    auto it = std::find_if(funcs.begin(), funcs.end(), [&](const auto& e) { return e.first == v; });
    if (it == funcs.end())
      throw std::invalid_argument("no strategy function for controllable input " + aiger::input_name(spec, k));
    Literal l = lowering.lower(it->second);
    remap[spec.inputs[k].var()] = l;
    defined.emplace_back(aiger::input_name(spec, k), l);
  }

  auto map = [&](Literal l) { return remap[l.var()] ^ l.negated(); };
  for (const aiger::AndGate& gate : aiger::topological_ands(spec))
    remap[gate.lhs.var()] = b.make_and(map(gate.rhs0), map(gate.rhs1));
  for (std::size_t k = 0; k < spec.latches.size(); ++k) b.set_latch_next(k, map(spec.latches[k].next));
  for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
    auto it = spec.output_names.find(k);
    b.add_output(map(spec.outputs[k]), it == spec.output_names.end() ? std::string() : it->second);
  }

  Solution sol;
  std::vector<std::optional<Literal>> final_map;
  sol.circuit = std::move(b).finish(&final_map);
  for (const auto& [name, l] : defined) {
    if (l.is_constant()) {
      sol.definitions.emplace(name, l);
    } else if (auto nl = final_map[l.var()]) {
      sol.definitions.emplace(name, *nl ^ l.negated());
    }
  }

  aiger::AigBuilder wb;
  std::unordered_map<VarId, Literal> witness_map;
  for (std::size_t k = 0; k < spec.latches.size(); ++k)
    witness_map.emplace(g.latch_vars[k], wb.add_input(aiger::latch_name(spec, k)));
  Literal w = bdd_to_circuit(m, winning_region, witness_map, wb);
  wb.add_output(w, "winning_region");
  sol.witness = std::move(wb).finish();
  return sol;
}

std::size_t strategy_size(const AigCircuit& spec, const AigCircuit& solution) {
  return solution.ands.size() > spec.ands.size() ? solution.ands.size() - spec.ands.size() : 0;
}

namespace {
constexpr std::string_view kWitnessTag = "witness: ";
}

std::string witness_comment(const std::string& witness_path) { return std::string(kWitnessTag) + witness_path; }

std::optional<std::string> witness_reference(const AigCircuit& solution) {
  for (const auto& line : solution.comments)
    if (line.starts_with(kWitnessTag)) return line.substr(kWitnessTag.size());
  return std::nullopt;
}

SynthesisResult synthesize(const AigCircuit& spec, const game::Options& options, const ExtractOptions& extract,
                           bdd::Manager::Options manager_options) {
  auto solved = game::solve_spec(spec, options, manager_options);
  SynthesisResult out;
  out.realizable = solved.result.realizable;
  out.iterations = solved.result.iterations;
  if (!out.realizable) return out;
  auto rel = build_strategy_relation(solved.game, solved.result);
  auto funcs = extract_functions(solved.game, rel, extract);
  out.solution = build_solution(spec, aiger::partition_inputs(spec), solved.game, funcs, solved.result.winning_region);
  return out;
}

}  // namespace aigsynth::strategy
