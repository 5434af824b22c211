#include "dqmax/bitvector/encoder.hpp"

#include <map>

#include "dqmax/bitvector/bitblaster.hpp"
#include "dqmax/error.hpp"

namespace dqmax::bv {

const BitMap::Entry* BitMap::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::optional<std::pair<const BitMap::Entry*, std::size_t>> BitMap::locate(Var v) const {
  for (const auto& e : entries)
    for (std::size_t j = 0; j < e.bits.size(); ++j)
      if (e.bits[j] == v) return std::make_pair(&e, j);
  return std::nullopt;
}

std::string BitMap::bit_name(Var v) const {
  const auto where = locate(v);
  if (!where) return "v" + std::to_string(v.id);
  const auto& [entry, j] = *where;
  if (entry->bits.size() == 1) return entry->name;
  return entry->name + "[" + std::to_string(j) + "]";
}

namespace {

class Encoder {
 public:
  explicit Encoder(const Program& prog) : prog_(prog) {}

  Encoding run() {
    Encoding out;
    Problem& p = out.problem;
    std::vector<Var> observed;
    std::vector<Var> named_exist;
    const bool reach = prog_.mode == Mode::Reach;

    for (const auto& st : prog_.statements) {
      switch (st.kind) {
        case StmtKind::Random: {
          const Bits bits = declare(st, out.map);
          if (st.range) {
            const Bits lo = BitBlaster::constant(st.range->first, st.width);
            const Bits hi = BitBlaster::constant(st.range->second, st.width);
            bb_.assert_true(bb_.less_equal(lo, bits));
            bb_.assert_true(bb_.less_equal(bits, hi));
          }
          auto& role = reach ? p.count_vars : named_exist;
          for (const Bit& b : bits) role.push_back(b.lit().var());
          break;
        }
        case StmtKind::Input: {
          const Bits bits = declare(st, out.map);
          for (const Bit& b : bits) {
            p.max_vars.push_back(b.lit().var());
            p.deps.push_back(observed);
          }
          break;
        }
        case StmtKind::Observe: {
          const Bits value = blast(*st.expr);
          const Bits bits = declare(st, out.map);
          bb_.define(bits, value);
          auto& role = reach ? named_exist : p.count_vars;
          for (const Bit& b : bits) {
            role.push_back(b.lit().var());
            observed.push_back(b.lit().var());
          }
          break;
        }
        case StmtKind::Assume:
        case StmtKind::Win:
          bb_.assert_true(blast(*st.expr)[0]);
          break;
      }
    }

    p.exist_vars = named_exist;
    for (Var v : bb_.auxiliaries()) p.exist_vars.push_back(v);
    p.cnf = bb_.take_cnf();
    p.normalize();
    p.validate();
    return out;
  }

 private:
  Bits declare(const Statement& st, BitMap& map) {
    Bits bits = bb_.fresh(st.width);
    BitMap::Entry e;
    e.name = st.name;
    e.kind = st.kind;
    for (const Bit& b : bits) e.bits.push_back(b.lit().var());
    map.entries.push_back(std::move(e));
    values_[st.name] = bits;
    return bits;
  }

  Bits blast(const Expr& e) {
    switch (e.op) {
      case Op::Const: return BitBlaster::constant(e.value, e.width);
      case Op::Var: {
        auto it = values_.find(e.name);
        if (it == values_.end())
          throw Error(ErrorKind::Parse, "'" + e.name + "' is used before it is declared", e.line, e.column);
        return it->second;
      }
      case Op::Add: return bb_.add(blast(*e.args[0]), blast(*e.args[1]));
      case Op::Sub: return bb_.sub(blast(*e.args[0]), blast(*e.args[1]));
      case Op::And: return bb_.bitwise_and(blast(*e.args[0]), blast(*e.args[1]));
      case Op::Or: return bb_.bitwise_or(blast(*e.args[0]), blast(*e.args[1]));
      case Op::Not: return BitBlaster::bitwise_not(blast(*e.args[0]));
      case Op::Eq: return {bb_.equal(blast(*e.args[0]), blast(*e.args[1]))};
      case Op::Ge: return {bb_.less_equal(blast(*e.args[1]), blast(*e.args[0]))};
      case Op::Le: return {bb_.less_equal(blast(*e.args[0]), blast(*e.args[1]))};
    }
    throw Error(ErrorKind::UnsupportedOperator, "operator not supported by the bitblaster", e.line, e.column);
  }

  const Program& prog_;
  BitBlaster bb_;
  std::map<std::string, Bits> values_;
};

}  // namespace

Encoding encode(const Program& prog) { return Encoder(prog).run(); }

}  // namespace dqmax::bv
