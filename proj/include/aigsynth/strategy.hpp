// Controller extraction: winning region -> nondeterministic strategy ->
// one function per controllable input -> AIGER solution plus witness.
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "aigsynth/aiger.hpp"
#include "aigsynth/bdd.hpp"
#include "aigsynth/game.hpp"

namespace aigsynth::strategy {

using aiger::AigCircuit;
using aiger::Literal;
using bdd::Bdd;
using bdd::VarId;

struct StrategyRelation {
  Bdd lambda;
  // Region on which lambda must be total.
  Bdd winning_region;
};

struct ExtractOptions {
  // Minimize each function over its don't-care set with restrict instead of
  // emitting 0 on don't-cares.
  bool minimize = false;
};

/// Pairs (controllable variable, function over latches and uncontrollables),
/// in controllable input order.
using ControllerFunctions = std::vector<std::pair<VarId, Bdd>>;

struct Solution {
  AigCircuit circuit;
  std::map<std::string, Literal> definitions;
  AigCircuit witness;
};

/// Lambda = W and not err and W[L := f]. Throws std::logic_error on an
/// unrealizable result.
StrategyRelation build_strategy_relation(const game::SafetyGame& g, const game::GameResult& r);

/// Cofactor-based determinization. Throws std::runtime_error if the
/// relation is not total on the winning region.
ControllerFunctions extract_functions(const game::SafetyGame& g, const StrategyRelation& rel,
                                      const ExtractOptions& options = {});

/// Lowers BDD nodes to AND gates. Each node is lowered at most once per
/// instance, so lowering many functions through one instance shares logic.
class BddLowering {
 public:
  BddLowering(bdd::Manager& m, std::unordered_map<VarId, Literal> var_to_literal, aiger::AigBuilder& builder)
      : mgr_(m), var_to_literal_(std::move(var_to_literal)), builder_(builder) {}

  /// Throws std::invalid_argument if the support has an unmapped variable.
  Literal lower(const Bdd& f);

 private:
  bdd::Manager& mgr_;
  std::unordered_map<VarId, Literal> var_to_literal_;
  aiger::AigBuilder& builder_;
  std::unordered_map<std::uint32_t, Literal> cache_;
};

Literal bdd_to_circuit(bdd::Manager& m, const Bdd& f, const std::unordered_map<VarId, Literal>& var_to_literal,
                       aiger::AigBuilder& builder);

/// Fresh, re-indexed solution circuit: uncontrollable inputs, latches and
/// the specification logic with controllables driven by strategy logic.
/// The witness has one input per solution latch, named like that latch,
/// and a single output computing the winning region.
Solution build_solution(const AigCircuit& spec, const aiger::InputPartition& p, const game::SafetyGame& g,
                        const ControllerFunctions& funcs, const Bdd& winning_region);

/// AND gates added on top of the specification, floored at zero.
std::size_t strategy_size(const AigCircuit& spec, const AigCircuit& solution);

/// Comment line that points from a solution to its witness file.
std::string witness_comment(const std::string& witness_path);
std::optional<std::string> witness_reference(const AigCircuit& solution);

struct SynthesisResult {
  bool realizable = false;
  std::optional<Solution> solution;
  std::size_t iterations = 0;
};

/// Full pipeline: build the game, solve it and, when realizable, extract and
/// assemble a solution.
SynthesisResult synthesize(const AigCircuit& spec, const game::Options& options = {},
                           const ExtractOptions& extract = {}, bdd::Manager::Options manager_options = {});

}  // namespace aigsynth::strategy
