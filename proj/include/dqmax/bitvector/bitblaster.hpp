#pragma once

// Gate-level CNF construction with constant folding. Every gate output that
// is not folded away gets a fresh Tseitin variable defined by the usual
// clauses; the variables are recorded so callers can quantify them
// existentially.

#include <cstdint>
#include <vector>

#include "dqmax/formula.hpp"

namespace dqmax::bv {

class Bit {
 public:
  static Bit constant(bool value) {
    Bit b;
    b.is_const_ = true;
    b.value_ = value;
    return b;
  }
  static Bit of(Lit l) {
    Bit b;
    b.lit_ = l;
    return b;
  }

  bool is_const() const { return is_const_; }
  bool value() const { return value_; }  // constants only
  Lit lit() const { return lit_; }       // non-constants only
  Bit operator~() const { return is_const_ ? constant(!value_) : of(~lit_); }
  bool operator==(const Bit& o) const {
    return is_const_ == o.is_const_ && (is_const_ ? value_ == o.value_ : lit_ == o.lit_);
  }

 private:
  bool is_const_ = false;
  bool value_ = false;
  Lit lit_;
};

using Bits = std::vector<Bit>;  // least significant bit first

class BitBlaster {
 public:
  BitBlaster() = default;
  explicit BitBlaster(std::uint32_t reserved) : cnf_(reserved) {}

  // Fresh input variables, not counted as auxiliaries.
  Bits fresh(std::size_t width);
  static Bits constant(std::uint64_t value, std::size_t width);

  Bit and2(Bit a, Bit b);
  Bit or2(Bit a, Bit b);
  Bit xor2(Bit a, Bit b);
  Bit majority(Bit a, Bit b, Bit c);

  Bits add(const Bits& a, const Bits& b);  // wraps around
  Bits sub(const Bits& a, const Bits& b);  // wraps around
  Bit equal(const Bits& a, const Bits& b);
  Bit less_equal(const Bits& a, const Bits& b);  // unsigned a <= b
  Bits bitwise_and(const Bits& a, const Bits& b);
  Bits bitwise_or(const Bits& a, const Bits& b);
  static Bits bitwise_not(const Bits& a);

  // A constant false bit adds the empty clause.
  void assert_true(Bit b);
  // target[j] <=> value[j] for every j.
  void define(const Bits& target, const Bits& value);

  const CnfFormula& cnf() const { return cnf_; }
  CnfFormula take_cnf() { return std::move(cnf_); }
  const std::vector<Var>& auxiliaries() const { return aux_; }

 private:
  Bit gate();

  CnfFormula cnf_;
  std::vector<Var> aux_;
};

}  // namespace dqmax::bv
