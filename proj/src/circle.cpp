#include "unital/circle.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace unital {

std::vector<Elem> circle(const ComponentPair& comps, const Tower& tower, const ThetaSetup& setup, Elem a,
                         Elem beta) {
  const Field& B = tower.base();
  const Field& E = tower.ext();
  if (beta == B.zero()) throw std::invalid_argument("circle: beta must be nonzero");
  std::vector<Elem> out;
  for (std::uint32_t x = 0; x < E.size(); ++x) {
    const Elem y = E.add(Elem{x}, a);
    const Elem g = B.sub(B.mul(setup.theta1, comps.c0(y)), B.mul(setup.theta0, comps.c1(y)));
    if (g == beta) out.push_back(Elem{x});
  }
  return out;
}

namespace {

struct Emitter {
  const Tower& tower;
  std::vector<Elem> pts;
  std::size_t emitted = 0;

  // (n0/d, n1/d); a zero denominator drops the parameter value.
  void rational(Elem n0, Elem n1, Elem d) {
    const Field& B = tower.base();
    ++emitted;
    if (d == B.zero()) return;
    const Elem di = B.inv(d);
    pts.push_back(tower.recompose(B.mul(n0, di), B.mul(n1, di)));
  }
  void point(Elem x0, Elem x1) {
    ++emitted;
    pts.push_back(tower.recompose(x0, x1));
  }
  std::vector<Elem> finish() {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return std::move(pts);
  }
};

std::vector<Elem> set_minus(const std::vector<Elem>& a, const std::vector<Elem>& b) {
  std::vector<Elem> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

CircleParametrization parametrize_circle(const Tower& tower, const ThetaSetup& setup, CircleKind kind) {
  const Field& B = tower.base();
  const std::uint32_t q = tower.q();
  const Elem one = B.one(), zero = B.zero(), two = B.from_int(2);
  const Elem alpha = setup.alpha, th0 = setup.theta0;
  const Elem atilde = B.sub(alpha, B.mul(th0, th0));

  CircleParametrization r;
  r.kind = kind;
  r.q_is_1_mod_4 = q % 4 == 1;

  const auto f = PlanarFunction::square(tower.ext_ptr());
  const auto comps = components(f, tower);
  r.enumerated = circle(comps, tower, setup, tower.ext().zero(), kind == CircleKind::One ? one : alpha);

  Emitter textbook{tower, {}, 0}, corrected{tower, {}, 0};
  for (std::uint32_t ti = 1; ti < q; ++ti) {
    const Elem t{ti};
    const Elem t2 = B.mul(t, t);
    const Elem two_t = B.mul(two, t);
    const Elem D = B.add(one, B.mul(atilde, t2));
    // 1 + 2 theta0 t - atilde t^2
    const Elem N = B.sub(B.add(one, B.mul(two_t, th0)), B.mul(atilde, t2));
    if (r.q_is_1_mod_4) {
      if (kind == CircleKind::One) {
        textbook.rational(B.sub(one, B.mul(alpha, t2)), two_t, B.add(one, B.mul(alpha, t2)));
        corrected.rational(B.sub(one, B.mul(alpha, t2)), two_t, B.add(one, B.mul(alpha, t2)));
      } else {
        textbook.rational(B.mul(two_t, alpha), B.sub(alpha, t2), B.add(alpha, t2));
        corrected.rational(B.mul(two_t, alpha), B.sub(alpha, t2), B.add(alpha, t2));
      }
    } else {
      if (kind == CircleKind::One) {
        textbook.rational(B.sub(B.sub(one, B.mul(two_t, th0)), B.mul(atilde, t2)), two_t, D);
        corrected.rational(N, two_t, D);
      } else {
        const Elem a2 = B.mul(alpha, alpha);
        textbook.rational(B.div(two_t, alpha), B.sub(B.sub(one, B.div(B.mul(two_t, th0), a2)), B.mul(atilde, t2)),
                         D);
        corrected.rational(B.mul(two_t, alpha), N, D);
      }
    }
  }
  for (Emitter* e : {&textbook, &corrected}) {
    if (kind == CircleKind::One) {
      e->point(one, zero);
      e->point(B.neg(one), zero);
    } else {
      e->point(zero, one);
      e->point(zero, B.neg(one));
    }
  }

  if (r.q_is_1_mod_4) {
    r.textbook_formula = kind == CircleKind::One
                            ? "((1 - a t^2)/(1 + a t^2), 2t/(1 + a t^2)), t != 0; (+-1, 0)"
                            : "(2 a t/(a + t^2), (a - t^2)/(a + t^2)), t != 0; (0, +-1)";
    r.corrected_formula = r.textbook_formula;
  } else {
    r.textbook_formula = kind == CircleKind::One
                            ? "((1 - 2 th0 t - at t^2)/D, 2t/D), t != 0; (+-1, 0)"
                            : "((2t/a)/D, (1 - 2 th0 t/a^2 - at t^2)/D), t != 0; (0, +-1)";
    r.corrected_formula = kind == CircleKind::One
                              ? "((1 + 2 th0 t - at t^2)/D, 2t/D), t != 0; (+-1, 0)"
                              : "(2 a t/D, (1 + 2 th0 t - at t^2)/D), t != 0; (0, +-1)";
  }

  r.textbook_emitted = textbook.emitted;
  r.textbook = textbook.finish();
  r.corrected = corrected.finish();
  r.textbook_only = set_minus(r.textbook, r.enumerated);
  r.enumerated_only = set_minus(r.enumerated, r.textbook);
  r.textbook_matches = r.textbook_only.empty() && r.enumerated_only.empty();
  if (r.corrected != r.enumerated) {
    throw std::logic_error("circle parametrization differs from enumeration at q = " + std::to_string(q));
  }
  return r;
}

}  // namespace unital
