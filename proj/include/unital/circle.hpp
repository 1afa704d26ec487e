#pragma once

// Circles C_{a,beta} = {x : f0(x+a) theta1 - f1(x+a) theta0 = beta}, the
// x-shadows of the blocks B_{a,b}, and rational parametrizations of C_{0,1}
// and C_{0,alpha} for f(x) = x^2.

#include <string>
#include <vector>

#include "unital/planar.hpp"
#include "unital/tower.hpp"

namespace unital {

/// Sorted by index.  Throws std::invalid_argument if beta == 0.
std::vector<Elem> circle(const ComponentPair& comps, const Tower& tower, const ThetaSetup& setup, Elem a,
                         Elem beta);

enum class CircleKind { One, Alpha };  // C_{0,1} or C_{0,alpha}

struct CircleParametrization {
  CircleKind kind = CircleKind::One;
  bool q_is_1_mod_4 = true;
  std::string textbook_formula;
  std::string corrected_formula;
  std::vector<Elem> enumerated;  // circle(), sorted
  std::vector<Elem> textbook;     // the textbook rational formula, sorted and deduplicated
  std::vector<Elem> corrected;   // the formula actually used, sorted and deduplicated
  std::size_t textbook_emitted = 0;  // before deduplication
  bool textbook_matches = false;
  std::vector<Elem> textbook_only;     // textbook \ enumerated
  std::vector<Elem> enumerated_only;  // enumerated \ textbook
};

/// Parametrization of C_{0,1} or C_{0,alpha} for f = x^2 and the theta from
/// construct_theta.  With atilde = alpha - theta0^2 and D = 1 + atilde t^2
/// (theta0 = 0, atilde = alpha when q = 1 mod 4), t ranging over GF(q)*:
///   C_{0,1}     = {((1 + 2 theta0 t - atilde t^2)/D, 2t/D)} + {(+-1, 0)}
///   C_{0,alpha} = {(2 alpha t/D, (1 + 2 theta0 t - atilde t^2)/D)} + {(0, +-1)}
/// For q = 1 (mod 4) the C_{0,alpha} branch uses the equivalent form
/// (2 alpha t/(alpha + t^2), (alpha - t^2)/(alpha + t^2)).
/// The textbook formulas are evaluated alongside and compared.  Throws
/// std::logic_error unless the corrected set equals the enumeration.
CircleParametrization parametrize_circle(const Tower& tower, const ThetaSetup& setup, CircleKind kind);

}  // namespace unital
