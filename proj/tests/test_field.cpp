#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "unital/char_field.hpp"
#include "unital/field.hpp"
#include "unital/quadform.hpp"
#include "unital/tower.hpp"

using namespace unital;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {3, 1}, {3, 2}, {5, 1}, {7, 1}, {3, 3}, {5, 2}, {3, 4}, {7, 2}, {11, 2}};

}  // namespace

TEST_CASE("field arithmetic agrees with polynomial arithmetic") {
  for (auto [p, m] : kSmallFields) {
    CAPTURE(p);
    CAPTURE(m);
    const auto F = Field::make(p, m);
    const oracle::PolyField O{p, F->modulus()};
    const std::uint32_t n = F->size();
    std::mt19937 rng(p * 100 + m);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (int i = 0; i < 2000; ++i) {
      const std::uint32_t a = pick(rng), b = pick(rng);
      CHECK(F->add(Elem{a}, Elem{b}).idx == O.add(a, b));
      CHECK(F->mul(Elem{a}, Elem{b}).idx == O.mul(a, b));
      CHECK(F->neg(Elem{a}).idx == O.neg(a));
      if (a != 0) CHECK(F->inv(Elem{a}).idx == O.inv(a));
      CHECK(F->abs_trace(Elem{a}) == O.trace(a));
    }
  }
}

TEST_CASE("large fields use Zech logarithms and stay consistent") {
  const auto F = Field::make(3, 8);
  CHECK_FALSE(F->uses_add_table());
  const oracle::PolyField O{3, F->modulus()};
  std::mt19937 rng(9);
  std::uniform_int_distribution<std::uint32_t> pick(0, F->size() - 1);
  for (int i = 0; i < 3000; ++i) {
    const std::uint32_t a = pick(rng), b = pick(rng);
    REQUIRE(F->add(Elem{a}, Elem{b}).idx == O.add(a, b));
    REQUIRE(F->sub(Elem{a}, Elem{b}).idx == O.add(a, O.neg(b)));
    REQUIRE(F->mul(Elem{a}, Elem{b}).idx == O.mul(a, b));
  }
  CHECK(Field::make(3, 6)->uses_add_table());
}

TEST_CASE("default moduli") {
  CHECK(Field::make(3, 2)->modulus() == Poly{2, 1, 1});
  CHECK(Field::make(3, 1)->modulus() == Poly{1, 1});
  CHECK(modulus_to_string(Poly{2, 1, 1}) == "2,1,1");
  CHECK(modulus_from_string("2,1,1") == Poly{2, 1, 1});
  for (auto [p, m] : kSmallFields) {
    const auto F = Field::make(p, m);
    CHECK(is_irreducible(F->modulus(), p));
    CHECK(F->order(F->primitive()) == F->size() - 1);
    CHECK(F->order(Elem{p == 3 && m == 1 ? 2u : F->primitive().idx}) == F->size() - 1);
  }
}

TEST_CASE("invalid construction is rejected") {
  CHECK_THROWS_AS(Field::make(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3, 2, Poly{2, 0, 1}), std::invalid_argument);  // y^2 + 2 = (y-1)(y+1)
  CHECK_THROWS_AS(Field::make(3, 2, Poly{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(Field::make(3, 2, Poly{2, 1, 2}), std::invalid_argument);
  const auto F = Field::make(3, 2);
  CHECK_THROWS_AS(F->inv(F->zero()), std::domain_error);
  CHECK_THROWS_AS(Field::make(3, 4)->trace(Elem{5}, 3), std::invalid_argument);
}

TEST_CASE("field axioms hold exhaustively on GF(9) and GF(25)") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {5, 2}}) {
    const auto F = Field::make(p, m);
    const std::uint32_t n = F->size();
    for (std::uint32_t a = 0; a < n; ++a) {
      CHECK(F->add(Elem{a}, F->neg(Elem{a})) == F->zero());
      if (a) CHECK(F->mul(Elem{a}, F->inv(Elem{a})) == F->one());
      CHECK(F->frobenius(Elem{a}, m) == Elem{a});
      for (std::uint32_t b = 0; b < n; ++b) {
        CHECK(F->add(Elem{a}, Elem{b}) == F->add(Elem{b}, Elem{a}));
        CHECK(F->mul(Elem{a}, Elem{b}) == F->mul(Elem{b}, Elem{a}));
        const Elem c{(a * 7 + b * 3) % n};
        CHECK(F->mul(Elem{a}, F->add(Elem{b}, c)) == F->add(F->mul(Elem{a}, Elem{b}), F->mul(Elem{a}, c)));
      }
    }
  }
}

TEST_CASE("squares, square roots and traces") {
  for (auto [p, m] : kSmallFields) {
    const auto F = Field::make(p, m);
    const oracle::PolyField O{p, F->modulus()};
    std::uint32_t squares = 0;
    for (std::uint32_t a = 0; a < F->size(); ++a) {
      const Elem x{a};
      CHECK(F->is_square(x) == O.is_square(a));
      if (a && F->is_square(x)) ++squares;
      const auto r = F->sqrt(x);
      CHECK(r.has_value() == F->is_square(x));
      if (r) CHECK(F->mul(*r, *r) == x);
      CHECK(F->trace(x, m).idx == a);
      CHECK(F->trace(x, 1).idx == F->abs_trace(x));
    }
    CHECK(squares == (F->size() - 1) / 2);
  }
}

TEST_CASE("relative trace composes") {
  const auto F = Field::make(3, 4);
  for (std::uint32_t a = 0; a < F->size(); ++a) {
    const Elem t2 = F->trace(Elem{a}, 2);
    CHECK(F->frobenius(t2, 2) == t2);
    // t2 lies in GF(9), so the absolute trace of t2 counts its orbit twice.
    CHECK(F->trace(t2, 1) == F->mul(F->from_int(2), F->trace(Elem{a}, 1)));
  }
}

TEST_CASE("tower embeds GF(q) and decomposes along xi") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {3, 3}}) {
    CAPTURE(p);
    CAPTURE(m);
    const auto T = Tower::make(p, m);
    const Field& B = T->base();
    const Field& E = T->ext();
    const std::uint32_t q = T->q();
    CHECK(E.size() == q * q);
    CHECK(E.mul(T->xi(), T->xi()) == T->embed(T->alpha()));
    CHECK(E.frobenius(T->xi(), m) == E.neg(T->xi()));
    CHECK_FALSE(B.is_square(T->alpha()));
    std::set<std::uint32_t> image;
    for (std::uint32_t a = 0; a < q; ++a) {
      const Elem x = T->embed(Elem{a});
      image.insert(x.idx);
      CHECK(E.frobenius(x, m) == x);
      CHECK(T->project(x) == Elem{a});
      for (std::uint32_t b = 0; b < q; b += 1 + q / 5) {
        CHECK(T->embed(B.mul(Elem{a}, Elem{b})) == E.mul(x, T->embed(Elem{b})));
        CHECK(T->embed(B.add(Elem{a}, Elem{b})) == E.add(x, T->embed(Elem{b})));
      }
    }
    CHECK(image.size() == q);
    for (std::uint32_t x = 0; x < E.size(); ++x) {
      const auto [x0, x1] = T->decompose(Elem{x});
      CHECK(T->recompose(x0, x1) == Elem{x});
      CHECK(E.add(T->embed(x0), E.mul(T->embed(x1), T->xi())) == Elem{x});
      CHECK(T->embed(T->norm(Elem{x})) == E.pow(Elem{x}, q + 1));
    }
  }
}

TEST_CASE("theta recipes give a nonsquare norm") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto T = Tower::make(p, 1);
    const auto s = construct_theta(*T);
    const Field& B = T->base();
    CHECK(B.quadratic_character(T->norm(s.theta)) == -1);
    if (p % 4 == 1) {
      CHECK(s.theta == T->xi());
    } else {
      CHECK(s.theta1 == B.one());
      CHECK(T->norm(s.theta) == B.sub(B.mul(s.theta0, s.theta0), s.alpha));
      for (std::uint32_t c = 1; c < s.theta0.idx; ++c) {
        CHECK(B.is_square(B.sub(B.mul(Elem{c}, Elem{c}), s.alpha)));
      }
    }
  }
  const auto T3 = Tower::make(3, 1);
  const auto s3 = construct_theta(*T3);
  CHECK(s3.alpha == Elem{2});
  CHECK(s3.theta0 == Elem{1});
}

TEST_CASE("character field holds a primitive p-th root of unity") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const auto C = CharField::make(p);
    CHECK(C.pow(C.eps(), p) == 1u);
    CHECK(C.eps() != 1u);
    Gf2e sum = 0;
    for (std::uint32_t j = 0; j < p; ++j) sum ^= C.eps_pow(j);
    CHECK(sum == 0u);  // 1 + eps + ... + eps^(p-1) = 0
  }
  CHECK(CharField::make(3).e() == 2);
  CHECK(CharField::make(7).e() == 3);
  CHECK(CharField::make(11).e() == 10);
}

TEST_CASE("additive character is a homomorphism") {
  const auto F = Field::make(3, 3);
  const AdditiveCharacter chi(*F, CharField::make(3));
  const CharField& C = chi.values();
  for (std::uint32_t a = 0; a < F->size(); ++a) {
    for (std::uint32_t b = 0; b < F->size(); b += 5) {
      CHECK(chi(F->add(Elem{a}, Elem{b})) == C.mul(chi(Elem{a}), chi(Elem{b})));
    }
  }
}

TEST_CASE("quadratic form counts match the closed form") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    CAPTURE(p);
    CAPTURE(m);
    const auto F = Field::make(p, m);
    std::mt19937 rng(p + m);
    std::uniform_int_distribution<std::uint32_t> pick(0, F->size() - 1);
    for (std::uint32_t n = 1; n <= 4; ++n) {
      int done = 0;
      while (done < 100) {
        FormMatrix A(n, std::vector<Elem>(n));
        for (std::uint32_t i = 0; i < n; ++i) {
          for (std::uint32_t j = i; j < n; ++j) A[i][j] = A[j][i] = Elem{pick(rng)};
        }
        if (determinant(*F, A) == F->zero()) {
          CHECK_THROWS_AS(quadratic_form_count(*F, A, F->one()), std::invalid_argument);
          continue;
        }
        const Elem b{pick(rng)};
        const auto c = quadratic_form_count(*F, A, b);
        CHECK(static_cast<std::int64_t>(c.enumerated) == c.closed_form);
        ++done;
      }
    }
  }
}
