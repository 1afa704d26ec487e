#include "unital/char_field.hpp"

#include <stdexcept>
#include <string>

namespace unital {

namespace {

// Carry-less product reduced modulo `mod` of degree e.
std::uint64_t clmul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod, std::uint32_t e) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> e & 1) a ^= mod;
  }
  return r;
}

std::uint32_t degree(std::uint64_t f) {
  std::uint32_t d = 0;
  while (f >> (d + 1)) ++d;
  return d;
}

std::uint64_t rem2(std::uint64_t a, std::uint64_t b) {
  const std::uint32_t db = degree(b);
  while (a && degree(a) >= db) a ^= b << (degree(a) - db);
  return a;
}

bool irreducible2(std::uint64_t f, std::uint32_t e) {
  for (std::uint64_t g = 2; degree(g) <= e / 2; ++g) {
    if (rem2(f, g) == 0) return false;
  }
  return true;
}

}  // namespace

CharField CharField::make(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  CharField c;
  c.p_ = p;
  std::uint64_t t = 2 % p;
  c.e_ = 1;
  while (t != 1) {
    t = (t * 2) % p;
    ++c.e_;
  }
  if (c.e_ > 24) {
    throw std::invalid_argument("GF(2^" + std::to_string(c.e_) + ") is too large for p = " + std::to_string(p));
  }
  for (std::uint64_t f = (std::uint64_t{1} << c.e_) | 1; f < (std::uint64_t{1} << (c.e_ + 1)); f += 2) {
    if (irreducible2(f, c.e_)) {
      c.modulus_ = f;
      break;
    }
  }
  if (c.modulus_ == 0) throw std::logic_error("no irreducible binary polynomial");

  // Smallest element of order exactly p; since p is prime, x^p = 1 and x != 1.
  Gf2e eps = 0;
  for (std::uint64_t x = 2; x < (std::uint64_t{1} << c.e_); ++x) {
    if (c.pow(static_cast<Gf2e>(x), p) == 1) {
      eps = static_cast<Gf2e>(x);
      break;
    }
  }
  if (eps == 0) throw std::logic_error("no primitive p-th root of unity");
  c.eps_pow_.resize(p);
  c.eps_pow_[0] = 1;
  for (std::uint32_t j = 1; j < p; ++j) c.eps_pow_[j] = c.mul(c.eps_pow_[j - 1], eps);
  return c;
}

Gf2e CharField::mul(Gf2e a, Gf2e b) const {
  return static_cast<Gf2e>(clmul_mod(a, b, modulus_, e_));
}

Gf2e CharField::pow(Gf2e a, std::uint64_t k) const {
  Gf2e r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

AdditiveCharacter::AdditiveCharacter(const Field& field, const CharField& values)
    : values_(values), table_(field.size()) {
  if (field.p() != values.p()) throw std::invalid_argument("characteristic mismatch");
  for (std::uint32_t t = 0; t < field.size(); ++t) table_[t] = values.eps_pow(field.abs_trace(Elem{t}));
}

}  // namespace unital
