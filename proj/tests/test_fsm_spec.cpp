#include "doctest.h"

#include "helpers.hpp"
#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/oracle.hpp"

using namespace seqevolve;
using seqevolve::testing::toggle_fsm_text;

TEST_CASE("parse_fsm accepts the 2-state toggle machine") {
  FsmSpec spec = parse_fsm(toggle_fsm_text());
  CHECK(spec.states.size() == 2);
  CHECK(spec.transitions.size() == 4);  // wildcard expanded over X in {0,1}
  CHECK(spec.input_bits == std::vector<std::string>{"X"});
  CHECK(spec.transition("S0", {0}).to == "S1");
  CHECK(spec.transition("S0", {1}).to == "S1");
  CHECK(spec.transition("S1", {0}).to == "S0");
}

TEST_CASE("parse_fsm rejects duplicate state codes, naming both states") {
  std::string text = R"({
    "name": "dup", "input_bits": ["X"], "state_bits": ["A","B"], "output_bits": ["Z"],
    "states": [{"name": "P", "code": "01"}, {"name": "Q", "code": "01"}],
    "transitions": [{"from": "P", "input": "-", "to": "Q", "output": "0"},
                    {"from": "Q", "input": "-", "to": "P", "output": "0"}]
  })";
  CHECK_THROWS_WITH_AS(parse_fsm(text), doctest::Contains("'P'"), FsmValidationError);
  try {
    parse_fsm(text);
  } catch (const FsmValidationError& e) {
    CHECK(std::string(e.what()).find("'Q'") != std::string::npos);
  }
}

TEST_CASE("parse_fsm rejects malformed documents") {
  CHECK_THROWS_AS(parse_fsm("not json"), FsmParseError);
  CHECK_THROWS_AS(parse_fsm("{}"), FsmParseError);
}

TEST_CASE("parse_fsm rejects nondeterministic and incomplete machines") {
  std::string nondet = R"({
    "name": "n", "input_bits": ["X"], "state_bits": ["S"], "output_bits": ["Z"],
    "states": [{"name": "S0", "code": "0"}, {"name": "S1", "code": "1"}],
    "transitions": [{"from": "S0", "input": "0", "to": "S1", "output": "0"},
                    {"from": "S0", "input": "-", "to": "S0", "output": "0"},
                    {"from": "S1", "input": "-", "to": "S0", "output": "1"}]
  })";
  CHECK_THROWS_WITH_AS(parse_fsm(nondet), doctest::Contains("nondeterministic"),
                       FsmValidationError);

  std::string incomplete = R"({
    "name": "i", "input_bits": ["X"], "state_bits": ["S"], "output_bits": ["Z"],
    "states": [{"name": "S0", "code": "0"}, {"name": "S1", "code": "1"}],
    "transitions": [{"from": "S0", "input": "0", "to": "S1", "output": "0"},
                    {"from": "S1", "input": "-", "to": "S0", "output": "1"}]
  })";
  CHECK_THROWS_WITH_AS(parse_fsm(incomplete), doctest::Contains("incomplete"),
                       FsmValidationError);
}

TEST_CASE("parse_fsm rejects width mismatches") {
  std::string bad_code = R"({
    "name": "w", "input_bits": ["X"], "state_bits": ["A","B"], "output_bits": ["Z"],
    "states": [{"name": "S0", "code": "0"}],
    "transitions": [{"from": "S0", "input": "-", "to": "S0", "output": "0"}]
  })";
  CHECK_THROWS_AS(parse_fsm(bad_code), FsmValidationError);
}

TEST_CASE("serialize/parse round-trip preserves the machine") {
  FsmSpec spec = parse_fsm(toggle_fsm_text());
  FsmSpec again = parse_fsm(serialize_fsm(spec));
  CHECK(serialize_fsm(again) == serialize_fsm(spec));
  CHECK(again.states.size() == spec.states.size());
  CHECK(again.transitions.size() == spec.transitions.size());

  FsmSpec bench = oracle::derive_benchmark_fsm();
  CHECK(serialize_fsm(parse_fsm(serialize_fsm(bench))) == serialize_fsm(bench));
}

TEST_CASE("derive_targets on the toggle machine") {
  FsmSpec spec = parse_fsm(toggle_fsm_text());
  auto targets = derive_targets(spec);
  REQUIRE(targets.size() == 2);
  CHECK(targets[0].kind == TargetKind::NextStateBit);
  CHECK(targets[0].id() == "dff:S");
  CHECK(targets[1].id() == "out:Z");
  for (const auto& t : targets) CHECK(t.vectors.size() == 4);
}

TEST_CASE("derive_targets on the derived benchmark") {
  FsmSpec spec = oracle::derive_benchmark_fsm();
  CHECK(spec.states.size() == 8);
  CHECK(spec.transitions.size() == 16);
  auto targets = derive_targets(spec);
  REQUIRE(targets.size() == 4);
  for (const auto& t : targets) CHECK(t.vectors.size() == 16);
  CHECK(targets[0].id() == "dff:A");
  CHECK(targets[3].id() == "out:Z");

  // D_B = X': every X=1 vector expects 0, every X=0 vector expects 1.
  for (const auto& v : targets[1].vectors) CHECK(v.expected == Bit(1 - v.input[0]));
}

TEST_CASE("vector-count identity over targets") {
  for (const auto& text : {toggle_fsm_text(), serialize_fsm(oracle::derive_benchmark_fsm())}) {
    FsmSpec spec = parse_fsm(text);
    auto targets = derive_targets(spec);
    std::size_t total = 0;
    for (const auto& t : targets) total += t.vectors.size();
    std::size_t expected = (spec.state_bits.size() + spec.output_bits.size()) *
                           spec.states.size() * spec.num_input_vectors();
    CHECK(total == expected);
  }
}

TEST_CASE("derive_targets is deterministic") {
  FsmSpec spec = oracle::derive_benchmark_fsm();
  auto a = derive_targets(spec);
  auto b = derive_targets(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id() == b[i].id());
    REQUIRE(a[i].vectors.size() == b[i].vectors.size());
    for (std::size_t v = 0; v < a[i].vectors.size(); ++v)
      CHECK(a[i].vectors[v].expected == b[i].vectors[v].expected);
  }
}
