#pragma once

// Finite fields GF(p^m) with elements addressed by their base-p index.
//
// An element c_0 + c_1 y + ... + c_{m-1} y^{m-1} of GF(p)[y]/(modulus) has
// index c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  Prime-subfield elements are the
// constants, so their index is their integer value.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace unital {

struct Elem {
  std::uint32_t idx = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint32_t i) : idx(i) {}
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

using Poly = std::vector<std::uint32_t>;  // coefficients over GF(p), low degree first

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Irreducibility over GF(p) by trial division with every monic polynomial of
/// degree <= deg/2.  `modulus` must be monic.
bool is_irreducible(const Poly& modulus, std::uint32_t p);

/// Lexicographically smallest monic irreducible of degree m (coefficients
/// compared low degree first) whose root is primitive.
Poly default_modulus(std::uint32_t p, std::uint32_t m);

/// Renders a modulus as "c0,c1,...,cm".
std::string modulus_to_string(const Poly& modulus);
Poly modulus_from_string(const std::string& text);

class Field {
 public:
  /// Throws std::invalid_argument for a composite or even p, m == 0, or a
  /// modulus that is not monic of degree m or not irreducible.
  static std::shared_ptr<const Field> make(std::uint32_t p, std::uint32_t m,
                                           std::optional<Poly> modulus = std::nullopt);

  std::uint32_t p() const { return p_; }
  std::uint32_t m() const { return m_; }
  std::uint32_t size() const { return size_; }
  const Poly& modulus() const { return modulus_; }
  std::string modulus_string() const { return modulus_to_string(modulus_); }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  Elem element(std::uint32_t index) const;
  /// Image of the integer k in the prime subfield.
  Elem from_int(std::int64_t k) const;
  Elem from_coeffs(const Poly& coeffs) const;
  Poly coeffs(Elem x) const;

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws std::domain_error on zero
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// x^(p^k)
  Elem frobenius(Elem x, std::uint32_t k = 1) const;

  /// Smallest-index element of multiplicative order size()-1.
  Elem primitive() const { return Elem{exp_[1]}; }
  std::uint32_t log(Elem x) const;  // discrete log to base primitive(); x != 0
  Elem exp(std::uint64_t k) const { return Elem{exp_[k % (size_ - 1)]}; }
  std::uint64_t order(Elem x) const;

  /// Sum of x^{p^{d i}} over the Galois orbit of GF(p^m)/GF(p^d).  Throws
  /// std::invalid_argument unless sub_degree divides m.
  Elem trace(Elem x, std::uint32_t sub_degree) const;
  /// Absolute trace as an integer in [0, p).
  std::uint32_t abs_trace(Elem x) const { return abs_trace_[x.idx]; }

  /// 0 for zero, +1 for nonzero squares, -1 otherwise.
  int quadratic_character(Elem x) const;
  bool is_square(Elem x) const { return quadratic_character(x) >= 0; }
  /// Some y with y^2 == x, if one exists (the one with smaller index).
  std::optional<Elem> sqrt(Elem x) const;

  bool uses_add_table() const { return !add_table_.empty(); }

 private:
  Field() = default;
  void build_tables();
  Elem add_digits(Elem a, Elem b) const;

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t size_ = 0;
  Poly modulus_;
  std::vector<std::uint32_t> pow_p_;       // p^i
  std::vector<std::uint32_t> exp_;         // omega^k for k in [0, 2(size-1))
  std::vector<std::uint32_t> log_;         // log_[0] unused
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint16_t> add_table_;   // size^2 entries when small
  std::vector<std::uint32_t> zech_;        // index of 1 + omega^k, large fields
  std::vector<std::uint32_t> abs_trace_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace unital
