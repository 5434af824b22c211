#include "dqmax/bitvector/program.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "dqmax/error.hpp"
#include "dqmax/io/dimacs.hpp"

namespace dqmax::bv {
namespace {

enum class Tok { Name, Int, Assign, Range, Eq, Ge, Le, AndAnd, OrOr, Bang, Plus, Minus, LParen, RParen, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint64_t value = 0;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto at = [&](std::size_t k) { return k < line.size() ? line[k] : '\0'; };
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == '#') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
      out.push_back({Tok::Name, std::string(line.substr(i, j - i)), 0, col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      std::uint64_t v = 0;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) {
        const auto d = static_cast<std::uint64_t>(line[j] - '0');
        if (v > (UINT64_MAX - d) / 10) throw Error(ErrorKind::Parse, "constant too large", line_no, col);
        v = v * 10 + d;
        ++j;
      }
      out.push_back({Tok::Int, std::string(line.substr(i, j - i)), v, col});
      i = j;
      continue;
    }
    const std::string two{c, at(i + 1)};
    static const std::map<std::string, Tok> pairs = {
        {":=", Tok::Assign}, {"..", Tok::Range}, {"==", Tok::Eq}, {">=", Tok::Ge},
        {"<=", Tok::Le},     {"&&", Tok::AndAnd}, {"||", Tok::OrOr}};
    if (auto it = pairs.find(two); it != pairs.end()) {
      out.push_back({it->second, two, 0, col});
      i += 2;
      continue;
    }
    if (two == "<<" || two == ">>" || two == "!=")
      throw Error(ErrorKind::UnsupportedOperator, "operator '" + two + "' is not supported", line_no, col);
    switch (c) {
      case '!': out.push_back({Tok::Bang, "!", 0, col}); break;
      case '+': out.push_back({Tok::Plus, "+", 0, col}); break;
      case '-': out.push_back({Tok::Minus, "-", 0, col}); break;
      case '(': out.push_back({Tok::LParen, "(", 0, col}); break;
      case ')': out.push_back({Tok::RParen, ")", 0, col}); break;
      case '*': case '/': case '%': case '^': case '<': case '>': case '&': case '|': case '~':
        throw Error(ErrorKind::UnsupportedOperator, std::string("operator '") + c + "' is not supported",
                    line_no, col);
      default:
        throw Error(ErrorKind::Parse, std::string("unexpected character '") + c + "'", line_no, col);
    }
    ++i;
  }
  out.push_back({Tok::End, "", 0, line.size() + 1});
  return out;
}

bool is_keyword(const std::string& s) {
  static const char* words[] = {"width", "mode", "random", "input", "observe", "assume", "win", "in", "reach", "leak"};
  return std::find(std::begin(words), std::end(words), s) != std::end(words);
}

using MutExpr = std::shared_ptr<Expr>;

class Parser {
 public:
  Parser(std::vector<Token> toks, std::size_t line) : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg, line_, peek().column);
  }
  void finish() {
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
  }

  MutExpr expr() {
    MutExpr lhs = conj();
    while (peek().kind == Tok::OrOr) lhs = binary(Op::Or, lhs, &Parser::conj, next());
    return lhs;
  }

 private:
  MutExpr binary(Op op, MutExpr lhs, MutExpr (Parser::*rhs)(), const Token& tok) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->line = line_;
    e->column = tok.column;
    e->args.push_back(std::move(lhs));
    e->args.push_back((this->*rhs)());
    return e;
  }

  MutExpr conj() {
    MutExpr lhs = cmp();
    while (peek().kind == Tok::AndAnd) lhs = binary(Op::And, lhs, &Parser::cmp, next());
    return lhs;
  }
  MutExpr cmp() {
    MutExpr lhs = sum();
    const Tok k = peek().kind;
    if (k == Tok::Eq || k == Tok::Ge || k == Tok::Le) {
      const Op op = k == Tok::Eq ? Op::Eq : k == Tok::Ge ? Op::Ge : Op::Le;
      lhs = binary(op, lhs, &Parser::sum, next());
      const Tok again = peek().kind;
      if (again == Tok::Eq || again == Tok::Ge || again == Tok::Le)
        fail("comparisons do not chain; use parentheses");
    }
    return lhs;
  }
  MutExpr sum() {
    MutExpr lhs = unary();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Op op = peek().kind == Tok::Plus ? Op::Add : Op::Sub;
      lhs = binary(op, lhs, &Parser::unary, next());
    }
    return lhs;
  }
  MutExpr unary() {
    const Token& t = peek();
    auto e = std::make_shared<Expr>();
    e->line = line_;
    e->column = t.column;
    if (accept(Tok::Bang)) {
      e->op = Op::Not;
      e->args.push_back(unary());
      return e;
    }
    if (accept(Tok::Int)) {
      e->op = Op::Const;
      e->value = toks_[pos_ - 1].value;
      return e;
    }
    if (t.kind == Tok::Name) {
      if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
      e->op = Op::Var;
      e->name = next().text;
      return e;
    }
    if (accept(Tok::LParen)) {
      MutExpr inner = expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail(t.kind == Tok::End ? "expression expected" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

// Width checking: constants are flexible (0) until unified with the other
// operand; two flexible operands take the program width.
class Typer {
 public:
  Typer(const std::map<std::string, std::size_t>& widths, std::size_t program_width)
      : widths_(widths), program_width_(program_width) {}

  std::size_t natural(const Expr& e) const {
    switch (e.op) {
      case Op::Const: return 0;
      case Op::Var: {
        auto it = widths_.find(e.name);
        if (it == widths_.end())
          throw Error(ErrorKind::Parse, "'" + e.name + "' is used before it is declared", e.line, e.column);
        return it->second;
      }
      case Op::Not: return natural(*e.args[0]);
      case Op::Eq: case Op::Ge: case Op::Le:
        unify(e);
        return 1;
      default: return unify(e);
    }
  }

  void fix(Expr& e, std::size_t w) const {
    switch (e.op) {
      case Op::Const:
        if (w < 64 && e.value >> w)
          throw Error(ErrorKind::Parse,
                      "constant " + std::to_string(e.value) + " does not fit in " + std::to_string(w) + " bits",
                      e.line, e.column);
        break;
      case Op::Var: break;
      case Op::Eq: case Op::Ge: case Op::Le: {
        std::size_t inner = unify(e);
        if (inner == 0) inner = program_width_;
        for (auto& a : e.args) fix(mut(a), inner);
        break;
      }
      default:
        for (auto& a : e.args) fix(mut(a), w);
    }
    e.width = w;
  }

 private:
  static Expr& mut(const ExprPtr& p) { return const_cast<Expr&>(*p); }

  std::size_t unify(const Expr& e) const {
    const std::size_t a = natural(*e.args[0]);
    const std::size_t b = natural(*e.args[1]);
    if (a && b && a != b)
      throw Error(ErrorKind::Parse,
                  "width mismatch: " + std::to_string(a) + " bits against " + std::to_string(b) + " bits",
                  e.line, e.column);
    return std::max(a, b);
  }

  const std::map<std::string, std::size_t>& widths_;
  std::size_t program_width_;
};

}  // namespace

const Statement* Program::declaration(const std::string& name) const {
  for (const auto& s : statements)
    if (!s.name.empty() && s.name == name) return &s;
  return nullptr;
}

std::size_t Program::count(StmtKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(statements.begin(), statements.end(), [&](const Statement& s) { return s.kind == kind; }));
}

Program parse_program(std::string_view text) {
  Program prog;
  bool saw_mode = false;
  std::map<std::string, std::size_t> widths;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::size_t win_line = 0;

  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    Parser ps(tokenize(line, line_no), line_no);
    if (ps.peek().kind == Tok::End) continue;
    const Token kw = ps.next();
    if (kw.kind != Tok::Name) ps.fail("statement keyword expected");

    auto declared_name = [&]() {
      const Token& t = ps.peek();
      if (t.kind != Tok::Name) ps.fail("name expected");
      if (is_keyword(t.text)) ps.fail("'" + t.text + "' is a keyword");
      if (widths.count(t.text)) ps.fail("'" + t.text + "' is assigned twice");
      return ps.next().text;
    };
    auto need_width = [&]() {
      if (prog.width == 0)
        throw Error(ErrorKind::Parse, "'width' must come before the first statement", line_no, kw.column);
    };
    auto typed = [&](MutExpr e, std::optional<std::size_t> want) {
      const Typer typer(widths, prog.width);
      std::size_t w = typer.natural(*e);
      if (want && w != 0 && w != *want)
        throw Error(ErrorKind::Parse, "condition must be 1 bit wide, got " + std::to_string(w) + " bits",
                    line_no, e->column);
      if (w == 0) w = want.value_or(prog.width);
      typer.fix(*e, w);
      return ExprPtr(e);
    };

    Statement st;
    st.line = line_no;
    if (kw.text == "width") {
      if (prog.width) ps.fail("'width' given twice");
      if (!prog.statements.empty())
        throw Error(ErrorKind::Parse, "'width' must come before the first statement", line_no, kw.column);
      const Token& n = ps.expect(Tok::Int, "a bit width");
      if (n.value == 0 || n.value > 32)
        throw Error(ErrorKind::Parse, "width must be between 1 and 32", line_no, n.column);
      prog.width = n.value;
      ps.finish();
      continue;
    }
    if (kw.text == "mode") {
      if (saw_mode) ps.fail("'mode' given twice");
      if (!prog.statements.empty())
        throw Error(ErrorKind::Parse, "'mode' must come before the first statement", line_no, kw.column);
      const Token& m = ps.expect(Tok::Name, "'reach' or 'leak'");
      if (m.text == "reach") prog.mode = Mode::Reach;
      else if (m.text == "leak") prog.mode = Mode::Leak;
      else throw Error(ErrorKind::Parse, "mode must be 'reach' or 'leak'", line_no, m.column);
      saw_mode = true;
      ps.finish();
      continue;
    }
    need_width();
    if (kw.text == "random") {
      st.kind = StmtKind::Random;
      st.name = declared_name();
      st.width = prog.width;
      if (ps.peek().kind == Tok::Name && ps.peek().text == "in") {
        ps.next();
        const Token lo = ps.expect(Tok::Int, "range lower bound");
        ps.expect(Tok::Range, "'..'");
        const Token hi = ps.expect(Tok::Int, "range upper bound");
        if (lo.value > hi.value)
          throw Error(ErrorKind::Parse, "empty range", line_no, lo.column);
        if (prog.width < 64 && hi.value >> prog.width)
          throw Error(ErrorKind::Parse, "range bound does not fit in the width", line_no, hi.column);
        st.range = {lo.value, hi.value};
      }
    } else if (kw.text == "input") {
      st.kind = StmtKind::Input;
      st.name = declared_name();
      st.width = prog.width;
    } else if (kw.text == "observe") {
      st.kind = StmtKind::Observe;
      st.name = declared_name();
      ps.expect(Tok::Assign, "':='");
      st.expr = typed(ps.expr(), std::nullopt);
      st.width = st.expr->width;
    } else if (kw.text == "assume" || kw.text == "win") {
      st.kind = kw.text == "win" ? StmtKind::Win : StmtKind::Assume;
      if (st.kind == StmtKind::Win) {
        if (prog.mode == Mode::Leak)
          throw Error(ErrorKind::Parse, "'win' is not allowed in leak mode", line_no, kw.column);
        if (win_line)
          throw Error(ErrorKind::Parse, "second 'win' (first at line " + std::to_string(win_line) + ")",
                      line_no, kw.column);
        win_line = line_no;
      }
      st.expr = typed(ps.expr(), 1);
    } else {
      throw Error(ErrorKind::Parse, "unknown statement '" + kw.text + "'", line_no, kw.column);
    }
    ps.finish();
    if (!st.name.empty()) widths[st.name] = st.width;
    prog.statements.push_back(std::move(st));
  }

  if (prog.width == 0 && prog.statements.empty()) throw Error(ErrorKind::Parse, "empty program", 1, 1);
  if (prog.statements.empty()) throw Error(ErrorKind::Parse, "program has no statements", line_no);
  if (prog.mode == Mode::Reach && !win_line)
    throw Error(ErrorKind::Parse, "reach mode needs exactly one 'win'", line_no);
  return prog;
}

Program load_program(const std::string& path) { return parse_program(read_file(path)); }

std::string to_string(Mode mode) { return mode == Mode::Reach ? "reach" : "leak"; }

std::string to_string(const Expr& e) {
  auto bin = [&](const char* op) {
    return "(" + to_string(*e.args[0]) + " " + op + " " + to_string(*e.args[1]) + ")";
  };
  switch (e.op) {
    case Op::Const: return std::to_string(e.value);
    case Op::Var: return e.name;
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Eq: return bin("==");
    case Op::Ge: return bin(">=");
    case Op::Le: return bin("<=");
    case Op::And: return bin("&&");
    case Op::Or: return bin("||");
    case Op::Not: return "!" + to_string(*e.args[0]);
  }
  return "?";
}

}  // namespace dqmax::bv
