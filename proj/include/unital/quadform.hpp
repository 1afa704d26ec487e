#pragma once

#include <cstdint>
#include <vector>

#include "unital/field.hpp"

namespace unital {

/// Symmetric n x n matrix A over GF(q); the form is Q(x) = x^T A x.
using FormMatrix = std::vector<std::vector<Elem>>;

struct QuadFormCount {
  std::uint64_t enumerated = 0;
  std::int64_t closed_form = 0;
  Elem determinant;
};

Elem determinant(const Field& F, FormMatrix a);

Elem evaluate_form(const Field& F, const FormMatrix& a, const std::vector<Elem>& x);

/// Number of x in GF(q)^n with Q(x) = b, by exhaustive enumeration and by the
/// classical closed form for nondegenerate forms in odd characteristic.
/// Throws std::invalid_argument for a degenerate or non-symmetric form and
/// std::logic_error when the two counts differ.
QuadFormCount quadratic_form_count(const Field& F, const FormMatrix& a, Elem b);

}  // namespace unital
