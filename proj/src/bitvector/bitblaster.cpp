#include "dqmax/bitvector/bitblaster.hpp"

#include "dqmax/error.hpp"

namespace dqmax::bv {
namespace {

void require_same_width(const Bits& a, const Bits& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::Internal, "bitblaster operands have different widths");
}

}  // namespace

Bits BitBlaster::fresh(std::size_t width) {
  Bits out;
  for (std::size_t j = 0; j < width; ++j) out.push_back(Bit::of(pos(cnf_.fresh_var())));
  return out;
}

Bits BitBlaster::constant(std::uint64_t value, std::size_t width) {
  Bits out;
  for (std::size_t j = 0; j < width; ++j) out.push_back(Bit::constant(j < 64 && ((value >> j) & 1u)));
  return out;
}

Bit BitBlaster::gate() {
  const Var v = cnf_.fresh_var();
  aux_.push_back(v);
  return Bit::of(pos(v));
}

Bit BitBlaster::and2(Bit a, Bit b) {
  if (a.is_const()) return a.value() ? b : a;
  if (b.is_const()) return b.value() ? a : b;
  if (a == b) return a;
  if (a == ~b) return Bit::constant(false);
  const Bit g = gate();
  const Lit o = g.lit();
  cnf_.add({~o, a.lit()});
  cnf_.add({~o, b.lit()});
  cnf_.add({o, ~a.lit(), ~b.lit()});
  return g;
}

Bit BitBlaster::or2(Bit a, Bit b) { return ~and2(~a, ~b); }

Bit BitBlaster::xor2(Bit a, Bit b) {
  if (a.is_const()) return a.value() ? ~b : b;
  if (b.is_const()) return b.value() ? ~a : a;
  if (a == b) return Bit::constant(false);
  if (a == ~b) return Bit::constant(true);
  const Bit g = gate();
  const Lit o = g.lit(), x = a.lit(), y = b.lit();
  cnf_.add({~o, x, y});
  cnf_.add({~o, ~x, ~y});
  cnf_.add({o, ~x, y});
  cnf_.add({o, x, ~y});
  return g;
}

Bit BitBlaster::majority(Bit a, Bit b, Bit c) {
  if (a.is_const()) return a.value() ? or2(b, c) : and2(b, c);
  if (b.is_const()) return majority(b, a, c);
  if (c.is_const()) return majority(c, a, b);
  if (a == b || a == c) return a;
  if (b == c) return b;
  if (a == ~b) return c;
  if (a == ~c) return b;
  if (b == ~c) return a;
  const Bit g = gate();
  const Lit o = g.lit(), x = a.lit(), y = b.lit(), z = c.lit();
  cnf_.add({o, ~x, ~y});
  cnf_.add({o, ~x, ~z});
  cnf_.add({o, ~y, ~z});
  cnf_.add({~o, x, y});
  cnf_.add({~o, x, z});
  cnf_.add({~o, y, z});
  return g;
}

Bits BitBlaster::add(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  Bits out;
  Bit carry = Bit::constant(false);
  for (std::size_t j = 0; j < a.size(); ++j) {
    out.push_back(xor2(xor2(a[j], b[j]), carry));
    if (j + 1 < a.size()) carry = majority(a[j], b[j], carry);
  }
  return out;
}

Bits BitBlaster::sub(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  // a + ~b + 1
  Bits out;
  Bit carry = Bit::constant(true);
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Bit nb = ~b[j];
    out.push_back(xor2(xor2(a[j], nb), carry));
    if (j + 1 < a.size()) carry = majority(a[j], nb, carry);
  }
  return out;
}

Bit BitBlaster::equal(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  Bit all = Bit::constant(true);
  for (std::size_t j = 0; j < a.size(); ++j) all = and2(all, ~xor2(a[j], b[j]));
  return all;
}

Bit BitBlaster::less_equal(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  // Scanning from the low bit, the higher bit decides unless a and b agree
  // there, which is exactly majority(!a_j, b_j, le_below).
  Bit le = Bit::constant(true);
  for (std::size_t j = 0; j < a.size(); ++j) le = majority(~a[j], b[j], le);
  return le;
}

Bits BitBlaster::bitwise_and(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  Bits out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(and2(a[j], b[j]));
  return out;
}

Bits BitBlaster::bitwise_or(const Bits& a, const Bits& b) {
  require_same_width(a, b);
  Bits out;
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(or2(a[j], b[j]));
  return out;
}

Bits BitBlaster::bitwise_not(const Bits& a) {
  Bits out;
  for (const Bit& x : a) out.push_back(~x);
  return out;
}

void BitBlaster::assert_true(Bit b) {
  if (b.is_const()) {
    if (!b.value()) cnf_.add(Clause());
    return;
  }
  cnf_.add(std::vector<Lit>{b.lit()});
}

void BitBlaster::define(const Bits& target, const Bits& value) {
  require_same_width(target, value);
  for (std::size_t j = 0; j < target.size(); ++j) {
    const Bit t = target[j], v = value[j];
    if (t.is_const()) throw Error(ErrorKind::Internal, "cannot define a constant bit");
    if (v.is_const()) {
      assert_true(v.value() ? t : ~t);
      continue;
    }
    cnf_.add({~t.lit(), v.lit()});
    cnf_.add({t.lit(), ~v.lit()});
  }
}

}  // namespace dqmax::bv
