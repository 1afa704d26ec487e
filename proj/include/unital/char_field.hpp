#pragma once

// GF(2^e) holding a primitive p-th root of unity eps, and the additive
// character chi(t) = eps^Tr(t) of GF(q) with values there.

#include <cstdint>
#include <vector>

#include "unital/field.hpp"

namespace unital {

/// Element of GF(2^e) as a bit mask of polynomial coefficients; + is XOR.
using Gf2e = std::uint32_t;

class CharField {
 public:
  /// e is the multiplicative order of 2 modulo p.
  static CharField make(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  /// Modulus bit mask, bit i = coefficient of z^i (bit e set).
  std::uint64_t modulus() const { return modulus_; }
  Gf2e eps() const { return eps_pow_[1]; }
  /// eps^j for j in [0, p).
  Gf2e eps_pow(std::uint32_t j) const { return eps_pow_[j % p_]; }

  Gf2e mul(Gf2e a, Gf2e b) const;
  Gf2e pow(Gf2e a, std::uint64_t k) const;

 private:
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  std::uint64_t modulus_ = 0;
  std::vector<Gf2e> eps_pow_;
};

/// chi tabulated over a field of characteristic p.
class AdditiveCharacter {
 public:
  AdditiveCharacter(const Field& field, const CharField& values);

  Gf2e operator()(Elem t) const { return table_[t.idx]; }
  const CharField& values() const { return values_; }

 private:
  CharField values_;
  std::vector<Gf2e> table_;
};

}  // namespace unital
