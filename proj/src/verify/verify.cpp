#include "aigsynth/verify.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "aigsynth/bdd.hpp"

namespace aigsynth::verify {

using aiger::Literal;
using bdd::Bdd;
using bdd::VarId;

const char* to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::verified: return "verified";
    case Verdict::Kind::falsified: return "falsified";
    case Verdict::Kind::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<std::string> check_syntactic(const AigCircuit& spec, const AigCircuit& sol) {
  std::vector<std::string> out;
  for (const auto& v : aiger::structural_violations(sol)) out.push_back("solution: " + v);

  for (std::size_t k = 0; k < sol.inputs.size(); ++k)
    if (aiger::input_name(sol, k).starts_with(aiger::kControllablePrefix))
      out.push_back("solution keeps controllable input '" + aiger::input_name(sol, k) + "'");

  const auto p = aiger::partition_inputs(spec);
  std::vector<std::string> expected;
  for (std::size_t k : p.uncontrollable) expected.push_back(aiger::input_name(spec, k));
  std::vector<std::string> actual;
  for (std::size_t k = 0; k < sol.inputs.size(); ++k)
    if (!aiger::input_name(sol, k).starts_with(aiger::kControllablePrefix)) actual.push_back(aiger::input_name(sol, k));
  if (expected != actual) {
    std::string msg = "uncontrollable inputs differ: expected [";
    for (std::size_t i = 0; i < expected.size(); ++i) msg += (i ? " " : "") + expected[i];
    msg += "], found [";
    for (std::size_t i = 0; i < actual.size(); ++i) msg += (i ? " " : "") + actual[i];
    out.push_back(msg + "]");
  }

  if (sol.outputs.size() != 1)
    out.push_back("solution has " + std::to_string(sol.outputs.size()) + " outputs, expected 1");
  auto name_of = [](const AigCircuit& c) {
    auto it = c.output_names.find(0);
    return it == c.output_names.end() ? std::string() : it->second;
  };
  if (!spec.outputs.empty() && !sol.outputs.empty() && name_of(spec) != name_of(sol))
    out.push_back("output name '" + name_of(sol) + "' differs from specification's '" + name_of(spec) + "'");
  return out;
}

namespace {

// Evaluates a circuit repeatedly with a precomputed gate order.
class Simulator {
 public:
  explicit Simulator(const AigCircuit& c) : c_(c), order_(aiger::topological_ands(c)), values_(c.max_var + 1) {}

  void step(const std::vector<bool>& latches, const std::vector<bool>& inputs, StepResult& out) {
    values_[0] = false;
    for (std::size_t k = 0; k < c_.inputs.size(); ++k) values_[c_.inputs[k].var()] = inputs[k];
    for (std::size_t k = 0; k < c_.latches.size(); ++k) values_[c_.latches[k].current.var()] = latches[k];
    for (const auto& g : order_) values_[g.lhs.var()] = value(g.rhs0) && value(g.rhs1);
    out.outputs.resize(c_.outputs.size());
    for (std::size_t k = 0; k < c_.outputs.size(); ++k) out.outputs[k] = value(c_.outputs[k]);
    out.next_latches.resize(c_.latches.size());
    for (std::size_t k = 0; k < c_.latches.size(); ++k) out.next_latches[k] = value(c_.latches[k].next);
  }

 private:
  bool value(Literal l) const { return values_[l.var()] != l.negated(); }

  const AigCircuit& c_;
  std::vector<aiger::AndGate> order_;
  std::vector<bool> values_;
};

// BDDs of one circuit in a private manager.
struct Lowered {
  std::vector<VarId> input_vars;
  std::vector<VarId> latch_vars;
  std::vector<Bdd> next;
  std::vector<Bdd> outputs;
};

// Creates variables for inputs and latches (plus a primed copy right after
// each latch when `primed` is given) and lowers every gate.
Lowered lower(bdd::Manager& m, const AigCircuit& c, std::vector<VarId>* primed = nullptr) {
  Lowered out;
  out.input_vars.resize(c.inputs.size());
  out.latch_vars.resize(c.latches.size());
  if (primed) primed->resize(c.latches.size());

  std::vector<std::optional<Bdd>> value(c.max_var + 1);
  std::vector<std::pair<std::uint32_t, std::pair<bool, std::size_t>>> sources;
  for (std::size_t k = 0; k < c.inputs.size(); ++k) sources.push_back({c.inputs[k].var(), {false, k}});
  for (std::size_t k = 0; k < c.latches.size(); ++k) sources.push_back({c.latches[k].current.var(), {true, k}});
  std::sort(sources.begin(), sources.end());
  for (const auto& [aig_var, what] : sources) {
    VarId v = m.new_var();
    value[aig_var] = Bdd::var(m, v);
    if (what.first) {
      out.latch_vars[what.second] = v;
      if (primed) (*primed)[what.second] = m.new_var();
    } else {
      out.input_vars[what.second] = v;
    }
  }
  auto lit = [&](Literal l) {
    if (l.var() == 0) return l.negated() ? Bdd::one(m) : Bdd::zero(m);
    return l.negated() ? !*value[l.var()] : *value[l.var()];
  };
  for (const auto& g : aiger::topological_ands(c)) value[g.lhs.var()] = lit(g.rhs0) & lit(g.rhs1);
  for (const auto& la : c.latches) out.next.push_back(lit(la.next));
  for (Literal o : c.outputs) out.outputs.push_back(lit(o));
  return out;
}

Bdd initial_states(bdd::Manager& m, const AigCircuit& c, const std::vector<VarId>& latch_vars) {
  Bdd init = Bdd::one(m);
  for (std::size_t k = 0; k < c.latches.size(); ++k) {
    const auto& la = c.latches[k];
    if (la.reset == aiger::kFalse) init &= !Bdd::var(m, latch_vars[k]);
    else if (la.reset == aiger::kTrue) init &= Bdd::var(m, latch_vars[k]);
  }
  return init;
}

bdd::Manager::Options manager_options(const Limits& limits) {
  bdd::Manager::Options o;
  o.auto_reorder = true;
  o.max_nodes = limits.max_nodes;
  if (limits.time) o.deadline = std::chrono::steady_clock::now() + *limits.time;
  return o;
}

}  // namespace

StepResult simulate_step(const AigCircuit& c, const std::vector<bool>& latches, const std::vector<bool>& inputs) {
  if (latches.size() != c.latches.size() || inputs.size() != c.inputs.size())
    throw std::invalid_argument("simulate_step: valuation sizes do not match the circuit");
  Simulator sim(c);
  StepResult r;
  sim.step(latches, inputs, r);
  return r;
}

std::vector<bool> initial_latches(const AigCircuit& c) {
  std::vector<bool> v(c.latches.size(), false);
  for (std::size_t k = 0; k < c.latches.size(); ++k) v[k] = c.latches[k].reset == aiger::kTrue;
  return v;
}

Verdict check_invariant(const AigCircuit& sol, const AigCircuit& witness, const Limits& limits) {
  if (witness.inputs.size() != sol.latches.size())
    throw std::invalid_argument("witness has " + std::to_string(witness.inputs.size()) + " inputs but solution has " +
                                std::to_string(sol.latches.size()) + " latches");
  for (std::size_t k = 0; k < sol.latches.size(); ++k)
    if (aiger::input_name(witness, k) != aiger::latch_name(sol, k))
      throw std::invalid_argument("witness input " + std::to_string(k) + " '" + aiger::input_name(witness, k) +
                                  "' does not match solution latch '" + aiger::latch_name(sol, k) + "'");
  if (witness.outputs.size() != 1 || !witness.latches.empty())
    throw std::invalid_argument("witness must be combinational with exactly one output");
  if (sol.outputs.size() != 1) throw std::invalid_argument("solution must have exactly one output");

  try {
    bdd::Manager m(manager_options(limits));
    Lowered s = lower(m, sol);

    // Witness inputs read the solution's latch variables.
    std::vector<std::optional<Bdd>> value(witness.max_var + 1);
    for (std::size_t k = 0; k < witness.inputs.size(); ++k)
      value[witness.inputs[k].var()] = Bdd::var(m, s.latch_vars[k]);
    auto lit = [&](Literal l) {
      if (l.var() == 0) return l.negated() ? Bdd::one(m) : Bdd::zero(m);
      return l.negated() ? !*value[l.var()] : *value[l.var()];
    };
    for (const auto& g : aiger::topological_ands(witness)) value[g.lhs.var()] = lit(g.rhs0) & lit(g.rhs1);
    Bdd w = lit(witness.outputs[0]);

    Bdd init = initial_states(m, sol, s.latch_vars);
    if (!init.leq(w)) return Verdict::inconclusive("init-not-in-W");

    std::vector<std::optional<Bdd>> subst(m.var_count());
    for (std::size_t k = 0; k < s.latch_vars.size(); ++k) subst[s.latch_vars[k]] = s.next[k];
    if (!w.leq(w.compose(subst))) return Verdict::inconclusive("W-not-inductive");
    if (!(w & s.outputs[0]).is_zero()) return Verdict::inconclusive("error-in-W");
    return Verdict::verified();
  } catch (const bdd::ResourceExhausted& e) {
    return Verdict::inconclusive(std::string("limit: ") + e.what());
  }
}

Verdict model_check_forward(const AigCircuit& sol, const Limits& limits) {
  for (std::size_t k = 0; k < sol.inputs.size(); ++k)
    if (aiger::input_name(sol, k).starts_with(aiger::kControllablePrefix))
      throw std::invalid_argument("solution still has controllable input '" + aiger::input_name(sol, k) + "'");
  if (sol.outputs.size() != 1) throw std::invalid_argument("solution must have exactly one output");

  try {
    bdd::Manager m(manager_options(limits));
    std::vector<VarId> primed;
    Lowered s = lower(m, sol, &primed);
    const Bdd& err = s.outputs[0];

    Bdd relation = Bdd::one(m);
    for (std::size_t k = 0; k < s.latch_vars.size(); ++k) relation &= Bdd::var(m, primed[k]).iff(s.next[k]);
    std::vector<VarId> present(s.latch_vars);
    present.insert(present.end(), s.input_vars.begin(), s.input_vars.end());
    Bdd present_cube = Bdd::cube(m, present);
    std::vector<std::optional<Bdd>> unprime(m.var_count());
    for (std::size_t k = 0; k < primed.size(); ++k) unprime[primed[k]] = Bdd::var(m, s.latch_vars[k]);

    // Breadth-first layers: layer j holds states first reached after j steps.
    std::vector<Bdd> layers{initial_states(m, sol, s.latch_vars)};
    Bdd reached = layers.back();
    for (;;) {
      Bdd bad = layers.back() & err;
      if (!bad.is_zero()) {
        Verdict v;
        v.kind = Verdict::Kind::falsified;
        std::vector<std::vector<bool>> steps;
        auto point = m.pick_minterm(bad.node());
        for (std::size_t j = layers.size(); j-- > 0;) {
          std::vector<bool> inputs(s.input_vars.size());
          for (std::size_t k = 0; k < inputs.size(); ++k) inputs[k] = (*point)[s.input_vars[k]];
          steps.push_back(inputs);
          if (j == 0) break;
          Bdd pre = layers[j - 1];
          for (std::size_t k = 0; k < s.latch_vars.size(); ++k)
            pre &= (*point)[s.latch_vars[k]] ? s.next[k] : !s.next[k];
          point = m.pick_minterm(pre.node());
          if (!point) throw std::logic_error("counterexample replay lost its predecessor");
        }
        std::reverse(steps.begin(), steps.end());
        v.trace = std::move(steps);
        return v;
      }
      Bdd image = layers.back().and_exists(relation, present_cube).compose(unprime);
      Bdd fresh = image & !reached;
      if (fresh.is_zero()) return Verdict::verified();
      reached |= fresh;
      layers.push_back(std::move(fresh));
    }
  } catch (const bdd::ResourceExhausted& e) {
    return Verdict::inconclusive(std::string("limit: ") + e.what());
  }
}

Verdict verify_solution(const AigCircuit& spec, const AigCircuit& solution, const AigCircuit* witness,
                        const Limits& limits) {
  if (auto violations = check_syntactic(spec, solution); !violations.empty()) {
    std::string why = "syntactic:";
    for (const auto& v : violations) why += " " + v + ";";
    return Verdict::inconclusive(why);
  }
  if (witness) {
    try {
      Verdict v = check_invariant(solution, *witness, limits);
      if (v.kind == Verdict::Kind::verified) return v;
    } catch (const std::invalid_argument&) {
      // Malformed witness: fall through to full model checking.
    }
  }
  return model_check_forward(solution, limits);
}

std::string format_trace(const AigCircuit& solution, const Verdict& v) {
  std::ostringstream os;
  for (const auto& step : v.trace) {
    for (std::size_t k = 0; k < step.size(); ++k) {
      std::string name = aiger::input_name(solution, k);
      if (name.empty()) name = "i" + std::to_string(k);
      os << (k ? " " : "") << name << '=' << (step[k] ? 1 : 0);
    }
    os << '\n';
  }
  return os.str();
}

OracleResult explicit_game_oracle(const AigCircuit& c, const aiger::InputPartition& p) {
  if (c.latches.size() > kOracleMaxLatches)
    throw std::invalid_argument("explicit oracle supports at most " + std::to_string(kOracleMaxLatches) + " latches");
  if (c.latches.size() + c.inputs.size() > 26)
    throw std::invalid_argument("explicit oracle: state and input space too large");
  if (c.outputs.size() != 1) throw std::invalid_argument("explicit oracle needs exactly one output");

  const std::size_t nl = c.latches.size(), nu = p.uncontrollable.size(), nc = p.controllable.size();
  const std::size_t states = std::size_t{1} << nl, us = std::size_t{1} << nu, cs = std::size_t{1} << nc;
  constexpr std::uint32_t kError = 0xffffffffu;

  // successor[(s * us + u) * cs + cv] = next state, or kError.
  std::vector<std::uint32_t> successor(states * us * cs);
  Simulator sim(c);
  StepResult step;
  std::vector<bool> latches(nl), inputs(c.inputs.size());
  for (std::size_t s = 0; s < states; ++s) {
    for (std::size_t k = 0; k < nl; ++k) latches[k] = (s >> k) & 1u;
    for (std::size_t u = 0; u < us; ++u) {
      for (std::size_t k = 0; k < nu; ++k) inputs[p.uncontrollable[k]] = (u >> k) & 1u;
      for (std::size_t cv = 0; cv < cs; ++cv) {
        for (std::size_t k = 0; k < nc; ++k) inputs[p.controllable[k]] = (cv >> k) & 1u;
        sim.step(latches, inputs, step);
        std::uint32_t next = 0;
        for (std::size_t k = 0; k < nl; ++k)
          if (step.next_latches[k]) next |= 1u << k;
        successor[(s * us + u) * cs + cv] = step.outputs[0] ? kError : next;
      }
    }
  }

  std::vector<bool> losing(states, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < states; ++s) {
      if (losing[s]) continue;
      for (std::size_t u = 0; u < us && !losing[s]; ++u) {
        bool forced = true;
        for (std::size_t cv = 0; cv < cs && forced; ++cv) {
          std::uint32_t n = successor[(s * us + u) * cs + cv];
          forced = n == kError || losing[n];
        }
        if (forced) {
          losing[s] = true;
          changed = true;
        }
      }
    }
  }

  OracleResult r;
  std::size_t init = 0;
  auto init_bits = initial_latches(c);
  for (std::size_t k = 0; k < nl; ++k)
    if (init_bits[k]) init |= std::size_t{1} << k;
  r.realizable = !losing[init];
  r.winning.resize(states);
  for (std::size_t s = 0; s < states; ++s) r.winning[s] = !losing[s];
  return r;
}

}  // namespace aigsynth::verify
