#include <filesystem>
#include <fstream>
#include <sstream>

#include "aigsynth/aiger.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace aigsynth::aiger;

namespace {

std::string golden(const std::string& name) {
  std::ifstream in(std::filesystem::path(AIGSYNTH_TEST_DATA) / "golden" / name, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t error_line(std::string_view text) {
  try {
    parse_ascii(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("literal arithmetic") {
  for (std::uint32_t v = 0; v < 50; ++v) {
    Literal l(v);
    CHECK(!!l == l);
    CHECK((!l).var() == l.var());
    CHECK((!l).negated() != l.negated());
  }
  CHECK(Literal::from_var(3, true).value == 7);
  CHECK(kFalse.is_constant());
  CHECK(!kFalse == kTrue);
}

TEST_CASE("two-input AND specification") {
  AigCircuit c = parse_ascii("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 controllable_c\ni1 u\no0 err\n");
  CHECK(c.max_var == 3);
  REQUIRE(c.inputs.size() == 2);
  CHECK(c.inputs[0].value == 2);
  CHECK(c.inputs[1].value == 4);
  REQUIRE(c.outputs.size() == 1);
  CHECK(c.outputs[0].value == 6);
  REQUIRE(c.ands.size() == 1);
  CHECK(c.ands[0] == AndGate{Literal(6), Literal(2), Literal(4)});
  CHECK(c.input_names.at(0) == "controllable_c");
  CHECK(validate_spec(c).empty());
}

TEST_CASE("constant circuit") {
  AigCircuit c = parse_ascii("aag 0 0 0 1 0\n0\n");
  CHECK(c.outputs == std::vector<Literal>{kFalse});
  CHECK(serialize_ascii(c) == "aag 0 0 0 1 0\n0\n");
}

TEST_CASE("goldens serialize byte for byte") {
  for (const char* name : {"two_input_and.aag", "constant_false.aag", "toggle_counter.aag"}) {
    CAPTURE(name);
    const std::string text = golden(name);
    AigCircuit c = parse_ascii(text);
    CHECK(serialize_ascii(c) == text);
    CHECK(parse_ascii(serialize_ascii(c)) == c);
  }
}

TEST_CASE("golden with latches and comments keeps sections") {
  AigCircuit c = parse_ascii(golden("toggle_counter.aag"));
  CHECK(c.latches.size() == 2);
  CHECK(c.latch_names.at(0) == "low bit");
  CHECK(c.comments == std::vector<std::string>{"toggle counter", "STATUS : realizable"});
}

TEST_CASE("random round-trips") {
  testsupport::Rng rng(7);
  for (int i = 0; i < 300; ++i) {
    AigCircuit c = testsupport::random_circuit(rng);
    CHECK(structural_violations(c).empty());
    const std::string text = serialize_ascii(c);
    AigCircuit back = parse_ascii(text);
    CHECK(back == c);
    CHECK(serialize_ascii(back) == text);
  }
}

TEST_CASE("parse errors carry a line number and reason") {
  CHECK(error_line("aig 1 1 0 0 0\n2\n") == 1);
  CHECK(error_line("aag 1 1 0 0\n2\n") == 1);
  CHECK(error_line("aag 1 x 0 0 0\n2\n") == 1);
  CHECK(error_line("aag 1 1 0 0 0 1\n2\n") == 1);
  // count mismatch: second input line is missing
  CHECK(error_line("aag 2 2 0 0 0\n2\n") > 0);
  // odd input literal
  CHECK(error_line("aag 1 1 0 0 0\n3\n") == 2);
  // duplicate definition
  CHECK(error_line("aag 2 2 0 0 0\n2\n2\n") == 3);
  // literal past 2M+1
  CHECK(error_line("aag 1 1 0 1 0\n2\n4\n") == 3);
  // non-numeric token
  CHECK(error_line("aag 1 1 0 1 0\n2\nfoo\n") == 3);
  // odd AND lhs
  CHECK(error_line("aag 3 2 0 1 1\n2\n4\n6\n7 2 4\n") == 5);
  // cyclic AND definitions
  CHECK(error_line("aag 3 1 0 1 2\n2\n4\n4 6 2\n6 4 2\n") > 0);
  // symbol out of range
  CHECK(error_line("aag 1 1 0 0 0\n2\ni3 x\n") == 3);

  try {
    parse_ascii("aag 1 1 0 0 0\n3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(!e.reason().empty());
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("partition by name prefix") {
  AigCircuit c = parse_ascii("aag 3 2 0 1 1\n2\n4\n6\n6 2 4\ni0 controllable_c\ni1 u\no0 err\n");
  auto p = partition_inputs(c);
  CHECK(p.controllable == std::vector<std::size_t>{0});
  CHECK(p.uncontrollable == std::vector<std::size_t>{1});

  AigCircuit bare = parse_ascii("aag 2 2 0 1 0\n2\n4\n2\n");
  p = partition_inputs(bare);
  CHECK(p.controllable.empty());
  CHECK(p.uncontrollable == std::vector<std::size_t>{0, 1});

  AigCircuit four = parse_ascii(
      "aag 4 4 0 1 0\n2\n4\n6\n8\n2\ni0 u0\ni1 controllable_x\ni2 controllable_y\ni3 u1\n");
  p = partition_inputs(four);
  CHECK(p.controllable == std::vector<std::size_t>{1, 2});
  CHECK(p.uncontrollable == std::vector<std::size_t>{0, 3});

  AigCircuit cased = parse_ascii("aag 1 1 0 1 0\n2\n2\ni0 Controllable_x\n");
  CHECK(partition_inputs(cased).controllable.empty());
}

TEST_CASE("validate_spec diagnostics") {
  AigCircuit two = parse_ascii("aag 1 1 0 2 0\n2\n2\n3\n");
  auto report = validate_spec(two);
  REQUIRE(report.size() == 1);
  CHECK(report[0] == "output count 2, expected 1");

  AigCircuit self = parse_ascii("aag 1 0 1 1 0\n2 3 2\n2\n");
  report = validate_spec(self);
  REQUIRE(report.size() == 1);
  CHECK(report[0].find("unsupported nondeterministic reset") != std::string::npos);

  AigCircuit one = parse_ascii("aag 1 0 1 1 0\n2 3 1\n2\n");
  CHECK_FALSE(validate_spec(one).empty());
}

TEST_CASE("builder folds constants and hashes structure") {
  AigBuilder b;
  Literal x = b.add_input("x"), y = b.add_input("y");
  CHECK(b.make_and(x, kFalse) == kFalse);
  CHECK(b.make_and(x, kTrue) == x);
  CHECK(b.make_and(x, x) == x);
  CHECK(b.make_and(x, !x) == kFalse);
  Literal g = b.make_and(x, y);
  CHECK(b.make_and(y, x) == g);
  CHECK(b.and_count() == 1);
  b.make_and(!x, y);  // dangling
  b.add_output(g, "o");
  AigCircuit c = std::move(b).finish();
  CHECK(c.ands.size() == 1);
  CHECK(structural_violations(c).empty());
}

TEST_CASE("sweep removes dead gates and preserves behaviour") {
  testsupport::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    AigCircuit c = testsupport::random_circuit(rng);
    std::vector<std::optional<Literal>> remap;
    AigCircuit s = sweep(c, &remap);
    CHECK(structural_violations(s).empty());
    CHECK(s.ands.size() <= c.ands.size());
    CHECK(s.max_var == s.inputs.size() + s.latches.size() + s.ands.size());
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<bool> latches(c.latches.size()), inputs(c.inputs.size());
      for (auto&& b : latches) b = rng() & 1;
      for (auto&& b : inputs) b = rng() & 1;
      auto before = testsupport::evaluate(c, latches, inputs);
      auto after = testsupport::evaluate(s, latches, inputs);
      for (std::size_t k = 0; k < c.outputs.size(); ++k)
        CHECK(testsupport::literal_value(before, c.outputs[k]) == testsupport::literal_value(after, s.outputs[k]));
      for (std::size_t k = 0; k < c.latches.size(); ++k)
        CHECK(testsupport::literal_value(before, c.latches[k].next) ==
              testsupport::literal_value(after, s.latches[k].next));
    }
  }
}

TEST_CASE("topological order") {
  AigCircuit c = parse_ascii("aag 4 2 0 1 2\n2\n4\n8\n8 6 2\n6 2 4\n");
  auto order = topological_ands(c);
  REQUIRE(order.size() == 2);
  CHECK(order[0].lhs.value == 6);
  CHECK(order[1].lhs.value == 8);
}
