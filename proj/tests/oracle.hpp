#pragma once

// Slow reference implementations for cross-checking the library.

#include <cstdint>
#include <vector>

namespace oracle {

// GF(p)[y]/(modulus) by schoolbook polynomial arithmetic on coefficient vectors.
struct PolyField {
  std::uint32_t p;
  std::vector<std::uint32_t> modulus;  // monic, low degree first

  std::uint32_t m() const { return static_cast<std::uint32_t>(modulus.size() - 1); }
  std::uint32_t size() const {
    std::uint32_t n = 1;
    for (std::uint32_t i = 0; i < m(); ++i) n *= p;
    return n;
  }

  std::vector<std::uint32_t> digits(std::uint32_t x) const {
    std::vector<std::uint32_t> d(m());
    for (auto& c : d) {
      c = x % p;
      x /= p;
    }
    return d;
  }
  std::uint32_t index(const std::vector<std::uint32_t>& d) const {
    std::uint32_t x = 0;
    for (std::size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto x = digits(a), y = digits(b);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p;
    return index(x);
  }
  std::uint32_t neg(std::uint32_t a) const {
    auto x = digits(a);
    for (auto& c : x) c = (p - c) % p;
    return index(x);
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    const auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * m(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    }
    for (std::size_t k = prod.size(); k-- > m();) {
      const std::uint64_t c = prod[k];
      if (c == 0) continue;
      for (std::uint32_t i = 0; i <= m(); ++i) {
        prod[k - m() + i] = (prod[k - m() + i] + (p - c) * modulus[i]) % p;
      }
    }
    std::vector<std::uint32_t> r(m());
    for (std::uint32_t i = 0; i < m(); ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return index(r);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const { return pow(a, size() - 2); }
  std::uint32_t trace(std::uint32_t a) const {
    std::uint32_t t = 0, x = a;
    for (std::uint32_t i = 0; i < m(); ++i) {
      t = add(t, x);
      x = pow(x, p);
    }
    return t;
  }
  bool is_square(std::uint32_t a) const {
    for (std::uint32_t y = 0; y < size(); ++y) {
      if (mul(y, y) == a) return true;
    }
    return false;
  }
};

// Rank over GF(2) of a dense 0/1 matrix by textbook Gaussian elimination.
inline std::size_t dense_rank2(std::vector<std::vector<std::uint8_t>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && !rows[piv][c]) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace oracle
