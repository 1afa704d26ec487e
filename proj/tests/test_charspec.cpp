#include <random>

#include "doctest.h"
#include "unital/charspec.hpp"
#include "unital/gf2rank.hpp"

using namespace unital;

namespace {

struct Instance {
  TowerPtr tower;
  PlanarFunction f;
  ThetaSetup theta;
  UnitalDesign U;
  SpectrumContext ctx;
};

Instance square_instance(std::uint32_t p, std::uint32_t m) {
  auto T = Tower::make(p, m);
  auto f = PlanarFunction::square(T->ext_ptr());
  auto comps = components(f, *T);
  const auto theta = construct_theta(*T);
  auto U = build_unital(f, comps, *T, theta);
  SpectrumContext ctx(T, f, comps, theta);
  return {T, std::move(f), theta, std::move(U), std::move(ctx)};
}

}  // namespace

TEST_CASE("characters on tangent blocks") {
  const auto I = square_instance(5, 1);
  const Field& B = I.tower->base();
  const AdditiveCharacter& chi = I.ctx.chi();
  for (std::uint32_t a = 0; a < I.U.num_tangent_blocks(); ++a) {
    const auto blk = I.U.block(a);
    CHECK(chi_block(I.ctx, I.U, {Elem{0}, Elem{0}, Elem{0}}, blk) == 1u);
    for (std::uint32_t w = 1; w < 5; ++w) CHECK(chi_block(I.ctx, I.U, {Elem{0}, Elem{0}, Elem{w}}, blk) == 0u);
    const auto [a0, a1] = I.tower->decompose(Elem{a});
    for (std::uint32_t u = 0; u < 5; ++u) {
      for (std::uint32_t v = 0; v < 5; ++v) {
        CHECK(chi_block(I.ctx, I.U, {Elem{u}, Elem{v}, Elem{0}}, blk) ==
              chi(B.add(B.mul(Elem{u}, a0), B.mul(Elem{v}, a1))));
        // Nonzero w kills every tangent block.
        CHECK(chi_block(I.ctx, I.U, {Elem{u}, Elem{v}, Elem{1 + (u + v) % 4}}, blk) == 0u);
      }
    }
  }
}

TEST_CASE("S(beta) factors the block sums") {
  const auto I = square_instance(7, 1);
  const Tower& T = *I.tower;
  const Field& B = T.base();
  const Field& E = T.ext();
  const std::uint32_t q = T.q();
  const CharField& C = I.ctx.values();
  std::mt19937 rng(17);
  int checked = 0;
  while (checked < 500) {
    const Character c{Elem{static_cast<std::uint32_t>(rng() % q)}, Elem{static_cast<std::uint32_t>(rng() % q)},
                      Elem{static_cast<std::uint32_t>(rng() % q)}};
    const std::uint32_t a = rng() % E.size(), b = rng() % E.size();
    const auto [b0, b1] = T.decompose(Elem{b});
    const Elem beta = B.sub(B.mul(b0, I.theta.theta1), B.mul(b1, I.theta.theta0));
    if (beta == B.zero()) continue;
    // Locate B_{a,b} in the block order: tangents, then (a, b) skipping beta = 0.
    std::size_t idx = I.U.num_tangent_blocks();
    for (std::uint32_t aa = 0; aa <= a; ++aa) {
      for (std::uint32_t bb = 0; bb < E.size() && !(aa == a && bb == b); ++bb) {
        const auto [c0, c1] = T.decompose(Elem{bb});
        idx += B.sub(B.mul(c0, I.theta.theta1), B.mul(c1, I.theta.theta0)) != B.zero();
      }
    }
    const auto [a0, a1] = T.decompose(Elem{a});
    const Elem w1 = B.mul(c.w, I.ctx.w_scale());
    const Elem shift = B.neg(B.add(B.add(B.mul(c.u, a0), B.mul(c.v, a1)), B.mul(w1, b1)));
    CHECK(chi_block(I.ctx, I.U, c, I.U.block(idx)) == C.mul(I.ctx.chi()(shift), s_beta(I.ctx, c, beta)));
    ++checked;
  }
  for (std::uint32_t w = 1; w < q; ++w) {
    for (std::uint32_t beta = 1; beta < q; ++beta) CHECK(s_beta(I.ctx, {Elem{0}, Elem{0}, Elem{w}}, Elem{beta}) == 0u);
  }
  CHECK_THROWS_AS(s_beta(I.ctx, {Elem{1}, Elem{0}, Elem{1}}, Elem{0}), std::invalid_argument);
}

TEST_CASE("S(beta) at q = 3 with w = 0 is a plain circle sum") {
  const auto I = square_instance(3, 1);
  const Field& B = I.tower->base();
  const auto comps = components(I.f, *I.tower);
  for (std::uint32_t u = 0; u < 3; ++u) {
    for (std::uint32_t v = 0; v < 3; ++v) {
      for (std::uint32_t beta = 1; beta < 3; ++beta) {
        Gf2e direct = 0;
        std::uint32_t points = 0;
        for (std::uint32_t x = 0; x < 9; ++x) {
          if (B.sub(B.mul(I.theta.theta1, comps.c0(Elem{x})), B.mul(I.theta.theta0, comps.c1(Elem{x}))) != Elem{beta}) continue;
          ++points;
          const auto [x0, x1] = I.tower->decompose(Elem{x});
          direct ^= I.ctx.chi()(B.add(B.mul(Elem{u}, x0), B.mul(Elem{v}, x1)));
        }
        CHECK(points == 4);
        CHECK(s_beta(I.ctx, {Elem{u}, Elem{v}, Elem{0}}, Elem{beta}) == direct);
      }
    }
  }
}

TEST_CASE("membership criterion agrees with the block scan") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}}) {
    const auto I = square_instance(p, m);
    const std::uint32_t q = I.tower->q();
    for (std::uint32_t i = 0; i < q * q * q; ++i) {
      const auto c = character_at(i, q);
      CHECK(character_index(c, q) == i);
      CHECK(in_spectrum(I.ctx, c).member == in_spectrum_scan(I.ctx, I.U, c));
    }
  }
  const auto I9 = square_instance(3, 2);
  std::mt19937 rng(3);
  for (int k = 0; k < 2000; ++k) {
    const auto c = character_at(rng() % 729, 9);
    CHECK(in_spectrum(I9.ctx, c).member == in_spectrum_scan(I9.ctx, I9.U, c));
  }
}

TEST_CASE("spectrum size equals the 2-rank") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const auto I = square_instance(p, m);
    const std::uint32_t q = I.tower->q();
    const auto s = spectrum_size(I.ctx);
    CHECK(s.size == rank2_of_unital(I.U, false, false).rank);
    CHECK(s.size == rank_upper_bound(q));
    std::uint64_t w0 = 0;
    for (std::uint32_t i = 0; i < s.member.size(); ++i) w0 += character_at(i, q).w.idx == 0 && s.member[i];
    CHECK(w0 == q * q);
    const auto threaded = spectrum_size(I.ctx, {3, nullptr});
    CHECK(threaded.member == s.member);
    CHECK(threaded.witness_beta == s.witness_beta);
  }
}

TEST_CASE("spectrum size does not depend on the admissible theta") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto T = Tower::make(p, 1);
    const auto f = PlanarFunction::square(T->ext_ptr());
    const auto comps = components(f, *T);
    for (const auto& th : find_thetas(comps, *T)) {
      const SpectrumContext ctx(T, f, comps, th);
      CHECK(spectrum_size(ctx).size == rank_upper_bound(p));
    }
  }
}

TEST_CASE("non-normal planar functions need the block scan") {
  const auto T = Tower::make(3, 1);
  const auto F = T->ext_ptr();
  // x^2 + theta (x + x^q) is planar and passes the fiber condition for theta,
  // but f(a) != f(-a) in general.
  const auto theta = construct_theta(*T);
  std::vector<Elem> table;
  for (std::uint32_t x = 0; x < F->size(); ++x) {
    const Elem tr = F->add(Elem{x}, F->frobenius(Elem{x}, T->m()));
    table.push_back(F->add(F->mul(Elem{x}, Elem{x}), F->mul(theta.theta, tr)));
  }
  const auto f = PlanarFunction::from_table(F, table, "x^2+theta*tr");
  REQUIRE(is_planar(f));
  REQUIRE_FALSE(is_normal(f));
  const auto comps = components(f, *T);
  const auto thetas = find_thetas(comps, *T);
  REQUIRE_FALSE(thetas.empty());
  const SpectrumContext ctx(T, f, comps, thetas.front());
  CHECK_THROWS_AS(in_spectrum(ctx, {Elem{1}, Elem{0}, Elem{1}}), std::invalid_argument);
  CHECK_THROWS_AS(spectrum_size(ctx), std::invalid_argument);
  const auto U = build_unital(f, comps, *T, thetas.front());
  REQUIRE(check_design(U).passed());
  SpectrumOptions opts;
  opts.design = &U;
  CHECK(spectrum_size(ctx, opts).size == rank2_of_unital(U, false, false).rank);
}

TEST_CASE("bounds") {
  const auto b9 = bounds(3, 2);
  CHECK(b9.upper == 721);
  CHECK(b9.leung_xiang == 465);
  CHECK(b9.corollary == 527u);
  const auto b3 = bounds(3, 1);
  CHECK(b3.upper == 25);
  CHECK(b3.corollary == 25u);
  const auto b27 = bounds(3, 3);
  CHECK(b27.upper == 19657);
  CHECK(b27.corollary == 13625u);
  CHECK_FALSE(bounds(5, 1).corollary.has_value());
  for (std::uint64_t p : {3u, 5u, 7u}) {
    for (std::uint64_t m = 1; m <= 3; ++m) {
      const auto b = bounds(p, m);
      CHECK(b.leung_xiang <= b.upper);
      if (b.corollary) CHECK(*b.corollary <= b.upper);
    }
  }
}

TEST_CASE("trace criterion and its counting") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {3, 2}}) {
    const auto I = square_instance(p, m);
    const auto r = verify_trace_criterion(I.ctx);
    CHECK_MESSAGE(r.passed(), r);
    const auto q = static_cast<std::int64_t>(I.tower->q());
    CHECK(r.get("zero_trace_triples") - r.get("zero_trace_without_uv0") == q - 1);
    CHECK(r.get("lower_bound") == static_cast<std::int64_t>(bounds(p, m).leung_xiang));
  }
  const auto I3 = square_instance(3, 1);
  CHECK(verify_trace_criterion(I3.ctx).get("qualifying_triples") == 2 * 4);
}

TEST_CASE("character sum lemmas") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {3, 3}}) {
    const auto F = Field::make(p, m);
    const AdditiveCharacter chi(*F, CharField::make(p));
    CHECK(chi(F->zero()) == 1u);
    CHECK(verify_orthogonal_relation(*F, chi).passed());
    CHECK(verify_chi_square_lemma(*F, chi).passed());
  }
  const auto I = square_instance(3, 2);
  const auto r = verify_spectrum_lemma(I.ctx, I.U);
  CHECK_MESSAGE(r.passed(), r);
  CHECK(r.get("w0_members") == 81);
}

TEST_CASE("spectrum export formats") {
  const auto I = square_instance(3, 1);
  const auto s = spectrum_size(I.ctx);
  const auto hex = s.bitmap_hex();
  CHECK(hex.size() == 8);  // 27 bits in 4 bytes
  unsigned first = 0;
  for (unsigned k = 0; k < 8; ++k) first |= unsigned{s.member[k]} << k;
  // Characters 0..2 are (0,0,w): only w = 0 is a member.
  CHECK((first & 7u) == 1u);
  CHECK(std::stoul(hex.substr(0, 2), nullptr, 16) == first);
  const auto csv = s.witness_csv();
  CHECK(csv.rfind("u,v,w,member,witness_beta\n0,0,0,1,-\n0,0,1,0,-\n", 0) == 0);
}
