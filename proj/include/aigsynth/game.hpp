// Symbolic safety games built from AIGER specifications, solved by the
// backward attractor fixpoint over the uncontrollable predecessor.
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "aigsynth/aiger.hpp"
#include "aigsynth/bdd.hpp"

namespace aigsynth::game {

using bdd::Bdd;
using bdd::VarId;

/// Optimization switches. Each one can be turned off so the effect of a
/// single technique can be isolated.
struct Options {
  bool use_and_exists = true;
  bool auto_reorder = true;
  bool eager_deref = true;
};

struct SafetyGame {
  bdd::Manager* manager = nullptr;
  std::vector<VarId> latch_vars;
  std::vector<VarId> uncontrollable_vars;
  std::vector<VarId> controllable_vars;
  // BDD variable of every circuit input, by input position.
  std::vector<VarId> input_vars;
  // One next-state function per latch, over latches and inputs.
  std::vector<Bdd> transitions;
  Bdd error;
  Bdd init;
  Bdd latch_cube;
  Bdd uncontrollable_cube;
  Bdd controllable_cube;
  // Per-gate BDDs retained when eager dereferencing is off.
  std::vector<Bdd> retained;

  /// Substitution vector mapping each latch variable to its next-state function.
  std::vector<std::optional<Bdd>> next_state_substitution() const;
};

struct GameResult {
  bool realizable = false;
  Bdd losing_region;
  Bdd winning_region;
  std::size_t iterations = 0;
};

/// Creates one BDD variable per input and latch, in circuit variable order,
/// and lowers every gate once. Throws std::invalid_argument when the
/// circuit is not an admissible specification.
SafetyGame build_game(bdd::Manager& m, const aiger::AigCircuit& c, const aiger::InputPartition& p,
                      const Options& options = {});

/// States from which the environment can force an error now or a move
/// into `target`: exists U. forall C. (err or target[L := f]).
Bdd upre(const SafetyGame& g, const Bdd& target, const Options& options = {});

/// States from which the controller can avoid error and stay in `safe`:
/// forall U. exists C. (not err and safe[L := f]).
Bdd cpre(const SafetyGame& g, const Bdd& safe);

/// Least fixpoint of the attractor from the error condition.
GameResult solve(const SafetyGame& g, const Options& options = {});

/// Builds a manager, the game and the fixpoint in one go.
struct Solved {
  std::unique_ptr<bdd::Manager> manager;
  SafetyGame game;
  GameResult result;
};

Solved solve_spec(const aiger::AigCircuit& c, const Options& options = {},
                  bdd::Manager::Options manager_options = {});

}  // namespace aigsynth::game
