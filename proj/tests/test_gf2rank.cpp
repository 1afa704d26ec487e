#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "unital/gf2rank.hpp"

using namespace unital;

namespace {

UnitalDesign square_unital(std::uint32_t p, std::uint32_t m) {
  const auto T = Tower::make(p, m);
  const auto f = PlanarFunction::square(T->ext_ptr());
  return build_unital(f, components(f, *T), *T, construct_theta(*T));
}

// Row space size by closing under XOR; rank = log2 of it.
std::size_t span_rank(const std::vector<std::uint32_t>& rows) {
  std::set<std::uint32_t> span{0};
  for (auto r : rows) {
    std::set<std::uint32_t> next = span;
    for (auto s : span) next.insert(s ^ r);
    span.swap(next);
  }
  std::size_t k = 0;
  while ((std::size_t{1} << k) < span.size()) ++k;
  return k;
}

}  // namespace

TEST_CASE("BitRow basics") {
  BitRow a(130), b(130);
  CHECK_FALSE(a.any());
  CHECK(a.lowest() == 130);
  a.set(3);
  a.set(129);
  b.set(129);
  CHECK(a.popcount() == 2);
  a ^= b;
  CHECK(a.lowest() == 3);
  CHECK(a.popcount() == 1);
  CHECK_FALSE(a.test(129));
  CHECK(a.num_words() == 3);
  CHECK_THROWS_AS(a ^= BitRow(64), std::invalid_argument);
}

TEST_CASE("accumulator on trivial inputs") {
  RankAccumulator acc(70);
  BitRow r(70);
  r.set(5);
  r.set(66);
  CHECK(acc.absorb(r));
  CHECK_FALSE(acc.absorb(r));
  CHECK(acc.rank() == 1);
  CHECK_THROWS_AS(acc.absorb(BitRow(71)), std::invalid_argument);

  RankAccumulator id(100);
  for (std::uint32_t i = 0; i < 100; ++i) {
    const std::uint32_t c[] = {i};
    CHECK(id.absorb_support(c));
  }
  CHECK(id.rank() == 100);

  RankAccumulator capped(100, 10);
  for (std::uint32_t i = 0; i < 100; ++i) {
    const std::uint32_t c[] = {i};
    capped.absorb_support(c);
  }
  CHECK(capped.rank() == 10);
  CHECK(capped.stopped());
}

TEST_CASE("Fano plane has 2-rank 4") {
  const std::vector<std::vector<std::uint32_t>> lines = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5},
                                                         {1, 4, 6}, {2, 3, 6}, {2, 4, 5}};
  std::vector<std::uint32_t> masks;
  RankAccumulator acc(7);
  for (const auto& l : lines) {
    std::uint32_t m = 0;
    for (auto c : l) m |= 1u << c;
    masks.push_back(m);
    acc.absorb_support(l);
  }
  CHECK(span_rank(masks) == 4);
  CHECK(acc.rank() == 4);
}

TEST_CASE("random matrices agree with dense elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t rows = 1 + rng() % 60, cols = 1 + rng() % 150;
    std::vector<std::vector<std::uint8_t>> dense(rows, std::vector<std::uint8_t>(cols));
    RankAccumulator acc(cols);
    for (auto& row : dense) {
      BitRow b(cols);
      for (std::size_t c = 0; c < cols; ++c) {
        if (rng() % 5 == 0) {
          row[c] = 1;
          b.set(c);
        }
      }
      acc.absorb(b);
    }
    CHECK(acc.rank() == oracle::dense_rank2(dense));
  }
}

TEST_CASE("q = 3 unital rank against the dense oracle") {
  const auto U = square_unital(3, 1);
  REQUIRE(U.num_blocks() == 63);
  std::vector<std::vector<std::uint8_t>> dense(63, std::vector<std::uint8_t>(28, 0));
  for (std::size_t i = 0; i < 63; ++i) {
    for (auto p : U.block(i)) dense[i][p] = 1;
  }
  CHECK(oracle::dense_rank2(dense) == 25);
  CHECK(rank2_of_unital(U, true, false).rank == 25);
  CHECK(rank2_of_unital(U, false, false).rank == 25);
}

TEST_CASE("rank does not depend on the row order") {
  const auto U = square_unital(3, 1);
  std::vector<std::size_t> order(U.num_blocks());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(order.begin(), order.end(), rng);
    RankAccumulator acc(U.num_points());
    for (auto i : order) acc.absorb_support(U.block(i));
    CHECK(acc.rank() == 25);
  }
}

TEST_CASE("puncturing at infinity preserves the rank") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}}) {
    const auto U = square_unital(p, m);
    const std::uint64_t q = U.q();
    const auto full = rank2_of_unital(U, true, false);
    const auto punct = rank2_of_unital(U, false, false);
    CHECK(full.rank == punct.rank);
    CHECK(full.rank == rank_upper_bound(q));
    CHECK_FALSE(full.early_stopped);
    const auto early = rank2_of_unital(U, true, true);
    CHECK(early.rank == full.rank);
    CHECK(early.rows_processed <= U.num_blocks());
  }
}

TEST_CASE("oval vectors lie in the dual code") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}}) {
    const auto U = square_unital(p, m);
    const auto r = verify_dual_ovals(U);
    CHECK_MESSAGE(r.passed(), r);
    CHECK(r.get("oval_rank") == U.q());
    CHECK(r.get("rank_upper_bound") == static_cast<std::int64_t>(rank_upper_bound(U.q())));
    CHECK(r.get("meets_0") + r.get("meets_2") == static_cast<std::int64_t>(U.num_blocks() * U.q()));
  }
}

TEST_CASE("batched rank matches the streaming accumulator") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 300, cols = 1 + rng() % 200;
    const std::size_t batch = 1 + rng() % 40;
    std::optional<std::size_t> cap;
    if (trial % 2) cap = 1 + rng() % cols;
    RankAccumulator acc(cols, cap);
    BatchedRank bat(cols, cap, batch);
    std::uint64_t used = 0;
    std::vector<std::uint32_t> support;
    for (std::size_t r = 0; r < rows; ++r) {
      support.clear();
      const std::uint32_t density = 2 + rng() % 20;
      for (std::uint32_t c = 0; c < cols; ++c) {
        if (rng() % density == 0) support.push_back(c);
      }
      if (!acc.stopped()) ++used;
      acc.absorb_support(support);
      bat.add_support(support);
    }
    CAPTURE(trial);
    CHECK(bat.rank() == acc.rank());
    CHECK(bat.rows_used() == used);
    CHECK(bat.stopped() == acc.stopped());
  }
}

TEST_CASE("early stop on the q = 9 design") {
  const auto U = square_unital(3, 2);
  RankAccumulator acc(U.num_points(), rank_upper_bound(9));
  std::uint64_t used = 0;
  for (std::size_t i = 0; i < U.num_blocks() && !acc.stopped(); ++i, ++used) acc.absorb_support(U.block(i));
  const auto r = rank2_of_unital(U, true, true);
  CHECK(r.rank == 721);
  CHECK(r.early_stopped);
  CHECK(r.rows_processed == used);
}
