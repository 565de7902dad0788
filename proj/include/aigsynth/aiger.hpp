// ASCII AIGER reading, writing and validation, including the synthesis
// extension where inputs named `controllable_*` belong to the controller.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aigsynth::aiger {

/// AIGER literal: variable index times two, plus one when negated.
/// 0 is constant FALSE, 1 is constant TRUE.
struct Literal {
  std::uint32_t value = 0;

  constexpr Literal() = default;
  constexpr explicit Literal(std::uint32_t v) : value(v) {}

  static constexpr Literal from_var(std::uint32_t var, bool negated = false) {
    return Literal(2 * var + (negated ? 1u : 0u));
  }
  static constexpr Literal constant(bool b) { return Literal(b ? 1u : 0u); }

  constexpr std::uint32_t var() const { return value >> 1; }
  constexpr bool negated() const { return (value & 1u) != 0; }
  constexpr bool is_constant() const { return value <= 1; }
  constexpr Literal operator!() const { return Literal(value ^ 1u); }
  constexpr Literal regular() const { return Literal(value & ~1u); }
  constexpr Literal operator^(bool flip) const { return Literal(value ^ (flip ? 1u : 0u)); }

  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr auto operator<=>(Literal, Literal) = default;
};

inline constexpr Literal kFalse{0};
inline constexpr Literal kTrue{1};

struct Latch {
  Literal current;
  Literal next;
  // 0, 1, or equal to `current` for an uninitialized latch.
  Literal reset{0};

  friend bool operator==(const Latch&, const Latch&) = default;
};

struct AndGate {
  Literal lhs;
  Literal rhs0;
  Literal rhs1;

  friend bool operator==(const AndGate&, const AndGate&) = default;
};

struct AigCircuit {
  std::uint32_t max_var = 0;
  std::vector<Literal> inputs;
  std::vector<Latch> latches;
  std::vector<Literal> outputs;
  std::vector<AndGate> ands;
  std::map<std::size_t, std::string> input_names;
  std::map<std::size_t, std::string> latch_names;
  std::map<std::size_t, std::string> output_names;
  std::vector<std::string> comments;

  friend bool operator==(const AigCircuit&, const AigCircuit&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(std::move(reason)) {}

  std::size_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

AigCircuit parse_ascii(std::string_view text);
AigCircuit read_file(const std::string& path);

std::string serialize_ascii(const AigCircuit& c);
void write_file(const AigCircuit& c, const std::string& path);

inline constexpr std::string_view kControllablePrefix = "controllable_";

struct InputPartition {
  std::vector<std::size_t> uncontrollable;
  std::vector<std::size_t> controllable;
};

InputPartition partition_inputs(const AigCircuit& c);

/// Structural invariant breaches: duplicate or missing definitions, odd
/// literals in definition positions, out-of-range literals, cyclic ANDs,
/// symbols pointing past their section. Empty when the circuit is well formed.
std::vector<std::string> structural_violations(const AigCircuit& c);

/// Violations that make `c` inadmissible as a safety synthesis
/// specification. Empty means admissible.
std::vector<std::string> validate_spec(const AigCircuit& c);

/// AND gates ordered so every gate follows the gates it reads. Throws
/// std::invalid_argument on a cycle.
std::vector<AndGate> topological_ands(const AigCircuit& c);

/// Name of input `k`, or an empty string if it has no symbol.
std::string input_name(const AigCircuit& c, std::size_t k);
std::string latch_name(const AigCircuit& c, std::size_t k);

/// Incrementally assembles a circuit. Inputs and latches should be added
/// before gates so variable indices come out in canonical section order.
/// AND gates are constant-folded and structurally hashed.
class AigBuilder {
 public:
  Literal add_input(std::string name = {});
  Literal add_latch(std::string name = {}, Literal reset = kFalse);
  void set_latch_next(std::size_t latch, Literal next);
  void add_output(Literal lit, std::string name = {});

  Literal make_and(Literal a, Literal b);
  Literal make_or(Literal a, Literal b) { return !make_and(!a, !b); }
  Literal make_ite(Literal cond, Literal then_lit, Literal else_lit);

  std::size_t and_count() const { return circuit_.ands.size(); }
  AigCircuit& circuit() { return circuit_; }

  /// Drops gates outside the cone of latches and outputs and renumbers the
  /// surviving gates contiguously after inputs and latches.
  AigCircuit finish(std::vector<std::optional<Literal>>* remap = nullptr) &&;

 private:
  std::uint32_t fresh_var();

  AigCircuit circuit_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Literal> strash_;
};

/// Cone-of-influence sweep with contiguous re-indexing, as AigBuilder::finish.
/// If `remap` is given it receives, per old variable, the new positive
/// literal, or nothing for swept gates.
AigCircuit sweep(const AigCircuit& c, std::vector<std::optional<Literal>>* remap = nullptr);

}  // namespace aigsynth::aiger
