// Independent checking of synthesized controllers. Every check builds its
// own BDD manager from circuit text; nothing is shared with the solver.
#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "aigsynth/aiger.hpp"

namespace aigsynth::verify {

using aiger::AigCircuit;

struct Verdict {
  enum class Kind { verified, falsified, inconclusive };

  Kind kind = Kind::inconclusive;
  // Failing clause or resource limit, for inconclusive verdicts.
  std::string reason;
  // Falsified only: uncontrollable input valuations per step, in input order.
  std::vector<std::vector<bool>> trace;

  static Verdict verified() { return {Kind::verified, {}, {}}; }
  static Verdict inconclusive(std::string why) { return {Kind::inconclusive, std::move(why), {}}; }
};

const char* to_string(Verdict::Kind k);

struct Limits {
  std::optional<std::chrono::steady_clock::duration> time;
  std::size_t max_nodes = 0;
};

/// Conformance of a solution to its specification's interface. Empty when
/// the solution is well formed.
std::vector<std::string> check_syntactic(const AigCircuit& spec, const AigCircuit& solution);

/// Inductive-invariant check: init in W, W closed under the closed-loop
/// transition for every input, and W never raising the error output.
/// Never falsifies. Throws std::invalid_argument when the witness inputs do
/// not line up with the solution's latches.
Verdict check_invariant(const AigCircuit& solution, const AigCircuit& witness, const Limits& limits = {});

/// Symbolic forward reachability from the initial states with
/// shortest-counterexample extraction.
Verdict model_check_forward(const AigCircuit& solution, const Limits& limits = {});

/// Invariant check first, forward model checking when that is inconclusive.
Verdict verify_solution(const AigCircuit& spec, const AigCircuit& solution, const AigCircuit* witness,
                        const Limits& limits = {});

/// One line per step: `name=bit` pairs for the solution's inputs.
std::string format_trace(const AigCircuit& solution, const Verdict& v);

struct StepResult {
  std::vector<bool> outputs;
  std::vector<bool> next_latches;
};

/// Gate-level evaluation of one clock step.
StepResult simulate_step(const AigCircuit& c, const std::vector<bool>& latches, const std::vector<bool>& inputs);

/// Reset values of the latches; uninitialized latches start at 0.
std::vector<bool> initial_latches(const AigCircuit& c);

struct OracleResult {
  bool realizable = false;
  // Indexed by state; bit k of the index is latch k.
  std::vector<bool> winning;
};

inline constexpr std::size_t kOracleMaxLatches = 16;

/// Explicit-state safety game solver. Uses the same convention as the
/// symbolic solver: the environment picks uncontrollable inputs, then the
/// controller answers. Throws std::invalid_argument beyond 16 latches.
OracleResult explicit_game_oracle(const AigCircuit& c, const aiger::InputPartition& p);

}  // namespace aigsynth::verify
