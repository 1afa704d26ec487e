#include "unital/quadform.hpp"

#include <stdexcept>
#include <string>

namespace unital {

Elem determinant(const Field& F, FormMatrix a) {
  const std::size_t n = a.size();
  Elem det = F.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == F.zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = F.neg(det);
    }
    det = F.mul(det, a[col][col]);
    const Elem inv = F.inv(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Elem factor = F.mul(a[r][col], inv);
      if (factor == F.zero()) continue;
      for (std::size_t c = col; c < n; ++c) a[r][c] = F.sub(a[r][c], F.mul(factor, a[col][c]));
    }
  }
  return det;
}

Elem evaluate_form(const Field& F, const FormMatrix& a, const std::vector<Elem>& x) {
  Elem s = F.zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) s = F.add(s, F.mul(a[i][j], F.mul(x[i], x[j])));
  }
  return s;
}

QuadFormCount quadratic_form_count(const Field& F, const FormMatrix& a, Elem b) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty form");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("form matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] != a[j][i]) throw std::invalid_argument("form matrix is not symmetric");
    }
  }
  QuadFormCount out;
  out.determinant = determinant(F, a);
  if (out.determinant == F.zero()) throw std::invalid_argument("degenerate quadratic form");

  const std::int64_t q = F.size();
  std::vector<Elem> x(n, F.zero());
  for (;;) {
    if (evaluate_form(F, a, x) == b) ++out.enumerated;
    std::size_t i = 0;
    while (i < n && x[i].idx + 1 == static_cast<std::uint32_t>(q)) x[i++] = F.zero();
    if (i == n) break;
    x[i] = Elem{x[i].idx + 1};
  }

  auto ipow = [](std::int64_t base, std::size_t e) {
    std::int64_t r = 1;
    while (e--) r *= base;
    return r;
  };
  const Elem minus_one = F.neg(F.one());
  if (n % 2 == 0) {
    const std::int64_t v = (b == F.zero()) ? q - 1 : -1;
    const Elem sign = F.pow(minus_one, n / 2);
    out.closed_form = ipow(q, n - 1) + v * ipow(q, (n - 2) / 2) * F.quadratic_character(F.mul(sign, out.determinant));
  } else {
    const Elem sign = F.pow(minus_one, (n - 1) / 2);
    out.closed_form = ipow(q, n - 1) +
                      ipow(q, (n - 1) / 2) * F.quadratic_character(F.mul(sign, F.mul(b, out.determinant)));
  }
  if (out.closed_form < 0 || static_cast<std::uint64_t>(out.closed_form) != out.enumerated) {
    throw std::logic_error("quadratic form count mismatch: enumerated " + std::to_string(out.enumerated) +
                           ", closed form " + std::to_string(out.closed_form));
  }
  return out;
}

}  // namespace unital
