#pragma once

// Annotated attack-model programs over fixed-width unsigned bitvectors.
//
//   program := line*
//   line    := [stmt] ['#' comment]
//   stmt    := 'width' INT
//            | 'mode' ('reach' | 'leak')
//            | 'random' NAME ['in' INT '..' INT]
//            | 'input' NAME
//            | 'observe' NAME ':=' expr
//            | 'assume' expr
//            | 'win' expr
//   expr    := and ('||' and)*
//   and     := cmp ('&&' cmp)*
//   cmp     := sum [('==' | '>=' | '<=') sum]
//   sum     := unary (('+' | '-') unary)*
//   unary   := '!' unary | INT | NAME | '(' expr ')'
//
// `width` comes before any declaration; `mode` defaults to reach. Names are
// single-assignment and must be declared before use. Arithmetic wraps
// around; comparisons are unsigned and one bit wide; && || ! are bitwise.
// Decimal constants take the width of the other operand.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqmax::bv {

enum class Mode { Reach, Leak };

enum class Op { Const, Var, Add, Sub, Eq, Ge, Le, And, Or, Not };

struct Expr {
  Op op = Op::Const;
  std::uint64_t value = 0;  // Const
  std::string name;         // Var
  std::vector<std::shared_ptr<const Expr>> args;
  std::size_t width = 0;
  std::size_t line = 0;
  std::size_t column = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

enum class StmtKind { Random, Input, Observe, Assume, Win };

struct Statement {
  StmtKind kind = StmtKind::Random;
  std::string name;  // Random, Input, Observe
  ExprPtr expr;      // Observe, Assume, Win
  std::optional<std::pair<std::uint64_t, std::uint64_t>> range;  // Random
  std::size_t width = 0;  // width of the declared name
  std::size_t line = 0;
};

struct Program {
  std::size_t width = 0;
  Mode mode = Mode::Reach;
  std::vector<Statement> statements;

  const Statement* declaration(const std::string& name) const;
  std::size_t count(StmtKind kind) const;
};

// Throws Error(Parse) with line and column for syntax, SSA, width and win
// placement errors, Error(UnsupportedOperator) for operators outside the
// grammar (* / % ^ < > << >>).
Program parse_program(std::string_view text);
Program load_program(const std::string& path);

std::string to_string(Mode mode);
std::string to_string(const Expr& e);

}  // namespace dqmax::bv
