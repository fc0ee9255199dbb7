#include "seqevolve/oracle.hpp"

#include <algorithm>
#include <set>

#include "seqevolve/fitness.hpp"

namespace seqevolve::oracle {

namespace {

// Recursive-descent parser. Precedence: NOT > AND > XOR > OR.
struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool eat(char ch) {
    skip_ws();
    if (pos < text.size() && text[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }

  // Multi-byte operators: U+2295 (xor), U+00B7 (and dot).
  bool eat_utf8(const char* seq) {
    skip_ws();
    std::size_t n = std::string(seq).size();
    if (text.compare(pos, n, seq) == 0) {
      pos += n;
      return true;
    }
    return false;
  }

  BoolExpr::Ptr node(BoolExpr e) { return std::make_shared<const BoolExpr>(std::move(e)); }

  BoolExpr::Ptr parse_or() {
    auto lhs = parse_xor();
    while (eat('+')) {
      auto rhs = parse_xor();
      BoolExpr e;
      e.op = BoolExpr::Op::Or;
      e.kids = {lhs, rhs};
      lhs = node(std::move(e));
    }
    return lhs;
  }

  BoolExpr::Ptr parse_xor() {
    auto lhs = parse_and();
    while (eat('^') || eat_utf8("⊕")) {
      auto rhs = parse_and();
      BoolExpr e;
      e.op = BoolExpr::Op::Xor;
      e.kids = {lhs, rhs};
      lhs = node(std::move(e));
    }
    return lhs;
  }

  bool at_factor() {
    skip_ws();
    if (pos >= text.size()) return false;
    char ch = text[pos];
    return ch == '(' || ch == '0' || ch == '1' || (ch >= 'A' && ch <= 'Z') ||
           (ch >= 'a' && ch <= 'z');
  }

  BoolExpr::Ptr parse_and() {
    auto lhs = parse_factor();
    for (;;) {
      bool explicit_op = eat('*') || eat_utf8("·");
      if (!explicit_op && !at_factor()) break;
      auto rhs = parse_factor();
      BoolExpr e;
      e.op = BoolExpr::Op::And;
      e.kids = {lhs, rhs};
      lhs = node(std::move(e));
    }
    return lhs;
  }

  BoolExpr::Ptr parse_factor() {
    skip_ws();
    if (pos >= text.size()) throw ExprParseError("unexpected end of expression", pos);
    BoolExpr::Ptr base;
    char ch = text[pos];
    if (ch == '(') {
      ++pos;
      base = parse_or();
      if (!eat(')')) throw ExprParseError("expected ')'", pos);
    } else if (ch == '0' || ch == '1') {
      ++pos;
      BoolExpr e;
      e.op = BoolExpr::Op::Const;
      e.value = ch == '1';
      base = node(std::move(e));
    } else if ((ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z')) {
      ++pos;
      BoolExpr e;
      e.op = BoolExpr::Op::Var;
      e.var = std::string(1, ch);
      base = node(std::move(e));
    } else {
      throw ExprParseError("unexpected character '" + std::string(1, ch) + "'", pos);
    }
    while (eat('\'')) {
      BoolExpr e;
      e.op = BoolExpr::Op::Not;
      e.kids = {base};
      base = node(std::move(e));
    }
    return base;
  }
};

}  // namespace

BoolExpr::Ptr parse_expr(const std::string& text) {
  Parser p(text);
  auto e = p.parse_or();
  p.skip_ws();
  if (p.pos != text.size()) throw ExprParseError("trailing input", p.pos);
  return e;
}

Bit eval_expr(const BoolExpr& e, const std::function<Bit(const std::string&)>& lookup) {
  switch (e.op) {
    case BoolExpr::Op::Var: return lookup(e.var);
    case BoolExpr::Op::Const: return Bit(e.value ? 1 : 0);
    case BoolExpr::Op::Not: return Bit(1 - eval_expr(*e.kids[0], lookup));
    case BoolExpr::Op::And:
      return Bit(eval_expr(*e.kids[0], lookup) & eval_expr(*e.kids[1], lookup));
    case BoolExpr::Op::Or:
      return Bit(eval_expr(*e.kids[0], lookup) | eval_expr(*e.kids[1], lookup));
    case BoolExpr::Op::Xor:
      return Bit(eval_expr(*e.kids[0], lookup) ^ eval_expr(*e.kids[1], lookup));
  }
  return 0;
}

Bit eval_expr(const BoolExpr& e, const std::map<std::string, Bit>& assignment) {
  return eval_expr(e, [&](const std::string& name) -> Bit {
    auto it = assignment.find(name);
    if (it == assignment.end()) throw std::invalid_argument("unbound variable '" + name + "'");
    return it->second;
  });
}

std::vector<std::string> expr_variables(const BoolExpr& e) {
  std::set<std::string> vars;
  std::function<void(const BoolExpr&)> walk = [&](const BoolExpr& n) {
    if (n.op == BoolExpr::Op::Var) vars.insert(n.var);
    for (const auto& k : n.kids) walk(*k);
  };
  walk(e);
  return {vars.begin(), vars.end()};
}

TargetFunction target_from_expr(const std::string& expr_text, TargetKind kind,
                                std::size_t bit_index, const std::string& signal_name,
                                const std::vector<std::string>& input_names,
                                const std::vector<std::string>& state_names) {
  auto expr = parse_expr(expr_text);
  for (const auto& v : expr_variables(*expr)) {
    bool known = std::count(input_names.begin(), input_names.end(), v) ||
                 std::count(state_names.begin(), state_names.end(), v);
    if (!known) throw std::invalid_argument("expression variable '" + v + "' is not a signal");
  }

  TargetFunction t;
  t.kind = kind;
  t.bit_index = bit_index;
  t.signal_name = signal_name;
  t.num_inputs = input_names.size();
  t.num_state_bits = state_names.size();
  std::size_t nstate = state_names.size(), ninput = input_names.size();
  for (std::size_t s = 0; s < (std::size_t(1) << nstate); ++s) {
    Bits state(nstate);
    for (std::size_t b = 0; b < nstate; ++b) state[b] = Bit((s >> (nstate - 1 - b)) & 1);
    for (std::size_t v = 0; v < (std::size_t(1) << ninput); ++v) {
      Bits input(ninput);
      for (std::size_t b = 0; b < ninput; ++b) input[b] = Bit((v >> (ninput - 1 - b)) & 1);
      Bit expected = eval_expr(*expr, [&](const std::string& name) -> Bit {
        for (std::size_t i = 0; i < ninput; ++i)
          if (input_names[i] == name) return input[i];
        for (std::size_t i = 0; i < nstate; ++i)
          if (state_names[i] == name) return state[i];
        throw std::invalid_argument("unbound variable '" + name + "'");
      });
      t.vectors.push_back({state, input, expected});
    }
  }
  return t;
}

FsmSpec derive_benchmark_fsm() {
  auto d_a = parse_expr("XB");
  auto d_b = parse_expr("X'");
  auto d_c = parse_expr("XAC'+X'C+A'C");
  auto z = parse_expr("C");

  FsmSpec spec;
  spec.name = "seqdet6";
  spec.input_bits = {"X"};
  spec.state_bits = {"A", "B", "C"};
  spec.output_bits = {"Z"};
  for (int code = 0; code < 8; ++code) {
    Bits bits = {Bit((code >> 2) & 1), Bit((code >> 1) & 1), Bit(code & 1)};
    spec.states.push_back({"S" + std::to_string(code), bits});
  }
  for (int code = 0; code < 8; ++code) {
    for (int x = 0; x < 2; ++x) {
      std::map<std::string, Bit> env = {{"A", Bit((code >> 2) & 1)},
                                        {"B", Bit((code >> 1) & 1)},
                                        {"C", Bit(code & 1)},
                                        {"X", Bit(x)}};
      int next = (eval_expr(*d_a, env) << 2) | (eval_expr(*d_b, env) << 1) | eval_expr(*d_c, env);
      spec.transitions.push_back({"S" + std::to_string(code),
                                  {Bit(x)},
                                  "S" + std::to_string(next),
                                  {eval_expr(*z, env)}});
    }
  }
  validate_fsm(spec);
  return spec;
}

std::optional<ExhaustiveResult> exhaustive_search(const LayoutPtr& layout,
                                                  const TargetFunction& target) {
  if (layout->chromosome_length > 24)
    throw std::invalid_argument("search space too large: chromosome has " +
                                std::to_string(layout->chromosome_length) + " bits (max 24)");
  PackedTarget packed = PackedTarget::pack(target);
  std::optional<ExhaustiveResult> best;
  std::size_t count = std::size_t(1) << layout->chromosome_length;
  Chromosome c;
  c.bits.resize(layout->chromosome_length);
  for (std::size_t value = 0; value < count; ++value) {
    for (std::size_t b = 0; b < c.bits.size(); ++b)
      c.bits[b] = Bit((value >> (c.bits.size() - 1 - b)) & 1);
    FitnessReport report = evaluate_fitness(decode(layout, c), packed);
    if (!report.fully_functional) continue;
    int gates = layout->rows * layout->cols - report.optimization;
    if (!best || gates < best->gates) best = ExhaustiveResult{c, gates};
  }
  return best;
}

}  // namespace seqevolve::oracle
