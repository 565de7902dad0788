// Test-side generators and reference models. Nothing in here calls into the
// BDD package or the game solver.
#pragma once

#include <bitset>
#include <ostream>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aigsynth/aiger.hpp"

namespace testsupport {

using aigsynth::aiger::AigCircuit;
using Rng = std::mt19937_64;

struct SpecShape {
  unsigned max_latches = 6;
  unsigned max_uncontrollable = 3;
  unsigned max_controllable = 3;
  unsigned max_ands = 20;
};

/// Random admissible specification: one output, reset values 0 or 1,
/// inputs shuffled between the two players.
AigCircuit random_spec(Rng& rng, const SpecShape& shape = {});

/// Random well-formed circuit with symbols, comments, several outputs and
/// uninitialized latches, for format round-trips.
AigCircuit random_circuit(Rng& rng);

/// Values of every AIGER variable for one step. Index = variable.
std::vector<bool> evaluate(const AigCircuit& c, const std::vector<bool>& latches, const std::vector<bool>& inputs);
bool literal_value(const std::vector<bool>& vars, aigsynth::aiger::Literal l);

struct GameTruth {
  bool realizable = false;
  // Indexed by state, bit k = latch k.
  std::vector<bool> winning;
};

/// Greatest fixpoint of the controllable predecessor by enumeration:
/// W = { s | forall u. exists c. !err(s,u,c) and next(s,u,c) in W }.
GameTruth brute_force_game(const AigCircuit& spec);

/// Exhaustive closed-loop check of a solution: no reachable state and input
/// raises the output. Only for small circuits.
bool closed_loop_safe(const AigCircuit& solution);

// Parameterized toy families.
/// Counter with a controllable reset; error when all bits are set. Realizable.
AigCircuit count_safe(unsigned width);
/// Counter that always increments; the controller's reset only takes effect
/// when the environment allows it. Unrealizable.
AigCircuit count_unsafe(unsigned width);
/// Controller must output the sum of two environment words. Realizable.
AigCircuit add(unsigned width);

// Truth tables over at most 8 variables.
using Table = std::bitset<256>;
Table var_table(unsigned v);

}  // namespace testsupport
