#include "unital/tower.hpp"

#include <stdexcept>
#include <string>

namespace unital {

TowerPtr Tower::make(std::uint32_t p, std::uint32_t m, std::optional<Poly> base_modulus,
                     std::optional<Poly> ext_modulus) {
  std::shared_ptr<Tower> t(new Tower());
  t->base_ = Field::make(p, m, std::move(base_modulus));
  t->ext_ = Field::make(p, 2 * m, std::move(ext_modulus));
  const Field& B = *t->base_;
  const Field& E = *t->ext_;
  const std::uint32_t q = B.size();

  // Root of the base modulus in GF(q^2), smallest index.
  const Poly& bm = B.modulus();
  std::optional<Elem> root;
  for (std::uint32_t i = 0; i < E.size() && !root; ++i) {
    Elem x{i};
    Elem acc = E.zero();
    for (std::size_t k = bm.size(); k-- > 0;) acc = E.add(E.mul(acc, x), E.from_int(bm[k]));
    if (acc == E.zero()) root = x;
  }
  if (!root) throw std::logic_error("base modulus has no root in the quadratic extension");

  t->embed_.resize(q);
  t->project_.assign(E.size(), -1);
  for (std::uint32_t c = 0; c < q; ++c) {
    const Poly coeffs = B.coeffs(Elem{c});
    Elem acc = E.zero();
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = E.add(E.mul(acc, *root), E.from_int(coeffs[k]));
    t->embed_[c] = acc.idx;
    t->project_[acc.idx] = c;
  }

  t->xi_ = E.exp((q + 1) / 2);
  const Elem xi2 = E.mul(t->xi_, t->xi_);
  if (t->project_[xi2.idx] < 0) throw std::logic_error("xi^2 is not in the base field");
  t->alpha_ = Elem{static_cast<std::uint32_t>(t->project_[xi2.idx])};

  t->x0_.assign(E.size(), 0);
  t->x1_.assign(E.size(), 0);
  t->recompose_.assign(std::size_t{q} * q, 0);
  std::vector<bool> seen(E.size(), false);
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) {
      const Elem x = E.add(t->embed(Elem{a}), E.mul(t->embed(Elem{b}), t->xi_));
      if (seen[x.idx]) throw std::logic_error("xi does not give a basis of GF(q^2) over GF(q)");
      seen[x.idx] = true;
      t->x0_[x.idx] = a;
      t->x1_[x.idx] = b;
      t->recompose_[std::size_t{a} * q + b] = x.idx;
    }
  }
  return t;
}

std::optional<Elem> Tower::project(Elem x) const {
  const auto v = project_.at(x.idx);
  if (v < 0) return std::nullopt;
  return Elem{static_cast<std::uint32_t>(v)};
}

Elem Tower::norm(Elem x) const {
  const auto n = project(ext_->pow(x, q() + 1));
  if (!n) throw std::logic_error("norm left the base field");
  return *n;
}

ThetaSetup make_theta_setup(const Tower& tower, Elem theta) {
  if (theta == tower.ext().zero()) throw std::invalid_argument("theta must be nonzero");
  const auto [t0, t1] = tower.decompose(theta);
  return ThetaSetup{theta, t0, t1, tower.xi(), tower.alpha()};
}

ThetaSetup construct_theta(const Tower& tower) {
  const Field& B = tower.base();
  const Field& E = tower.ext();
  const std::uint32_t q = tower.q();
  const Elem alpha = tower.alpha();
  if (B.is_square(alpha)) throw std::logic_error("alpha = xi^2 must be a nonsquare");

  ThetaSetup s;
  if (q % 4 == 1) {
    s = make_theta_setup(tower, tower.xi());
  } else {
    std::optional<Elem> theta0;
    for (std::uint32_t i = 1; i < q && !theta0; ++i) {
      const Elem c{i};
      if (B.quadratic_character(B.sub(B.mul(c, c), alpha)) == -1) theta0 = c;
    }
    if (!theta0) throw std::logic_error("no theta0 with theta0^2 - alpha nonsquare");
    s = make_theta_setup(tower, E.add(tower.embed(*theta0), tower.xi()));
    const Elem expected = B.sub(B.mul(*theta0, *theta0), alpha);
    if (tower.norm(s.theta) != expected) {
      throw std::logic_error("theta^(q+1) differs from theta0^2 - alpha");
    }
  }
  if (B.quadratic_character(tower.norm(s.theta)) != -1) {
    throw std::logic_error("theta^(q+1) is a square for q = " + std::to_string(q));
  }
  return s;
}

}  // namespace unital
