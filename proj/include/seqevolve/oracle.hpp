#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqevolve/fsm_spec.hpp"
#include "seqevolve/genome.hpp"

namespace seqevolve::oracle {

struct ExprParseError : std::runtime_error {
  std::size_t position;
  ExprParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Boolean expression tree. Grammar (loosest first): OR '+', XOR '^' or U+2295,
/// AND by juxtaposition or '*' or U+00B7, postfix ' for NOT, parentheses,
/// single-letter variables, constants 0 and 1.
struct BoolExpr {
  using Ptr = std::shared_ptr<const BoolExpr>;
  enum class Op { Var, Const, Not, And, Or, Xor };
  Op op{Op::Const};
  std::string var;
  bool value{false};
  std::vector<Ptr> kids;
};

BoolExpr::Ptr parse_expr(const std::string& text);

Bit eval_expr(const BoolExpr& e, const std::function<Bit(const std::string&)>& lookup);
Bit eval_expr(const BoolExpr& e, const std::map<std::string, Bit>& assignment);

std::vector<std::string> expr_variables(const BoolExpr& e);

/// Truth table over all 2^(|state_names|+|input_names|) assignments; variables
/// in the expression must come from the given names.
TargetFunction target_from_expr(const std::string& expr_text, TargetKind kind,
                                std::size_t bit_index, const std::string& signal_name,
                                const std::vector<std::string>& input_names,
                                const std::vector<std::string>& state_names);

/// Fully specified 8-state closure of the benchmark detector equations
/// D_A=XB, D_B=X', D_C=XAC'+X'C+A'C, Z=C over (A,B,C) x X.
FsmSpec derive_benchmark_fsm();

struct ExhaustiveResult {
  Chromosome best;
  int gates{};
};

/// Enumerates every chromosome (length <= 24 bits) and returns a fully
/// functional phenotype with minimal used-gate count, ties broken by lowest
/// chromosome value; nullopt when no chromosome is fully functional.
std::optional<ExhaustiveResult> exhaustive_search(const LayoutPtr& layout,
                                                  const TargetFunction& target);

}  // namespace seqevolve::oracle
