#include "unital/gf2rank.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace unital {

void BitRow::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool BitRow::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitRow::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitRow::lowest() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
  }
  return bits_;
}

BitRow& BitRow::operator^=(const BitRow& other) {
  if (other.bits_ != bits_) throw std::invalid_argument("BitRow width mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

RankAccumulator::RankAccumulator(std::size_t width, std::optional<std::size_t> early_stop)
    : width_(width), words_((width + 63) / 64), early_stop_(early_stop), pivot_row_(width, -1),
      scratch_(words_, 0) {}

bool RankAccumulator::absorb(const BitRow& row) {
  if (row.size() != width_) {
    throw std::invalid_argument("row width " + std::to_string(row.size()) + " != " + std::to_string(width_));
  }
  ++rows_seen_;
  if (stopped()) return false;
  std::copy(row.data(), row.data() + words_, scratch_.begin());
  return insert_reduced();
}

bool RankAccumulator::absorb_support(std::span<const std::uint32_t> support) {
  ++rows_seen_;
  if (stopped()) return false;
  std::fill(scratch_.begin(), scratch_.end(), 0);
  for (auto c : support) {
    if (c >= width_) throw std::invalid_argument("column " + std::to_string(c) + " outside width");
    scratch_[c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  return insert_reduced();
}

bool RankAccumulator::insert_reduced() {
  std::uint64_t* r = scratch_.data();
  std::size_t w = 0;
  while (true) {
    while (w < words_ && r[w] == 0) ++w;
    if (w == words_) return false;
    const std::size_t col = w * 64 + static_cast<std::size_t>(std::countr_zero(r[w]));
    const std::int32_t b = pivot_row_[col];
    if (b < 0) {
      pivot_row_[col] = static_cast<std::int32_t>(rank_);
      pivot_col_.push_back(col);
      pool_.insert(pool_.end(), scratch_.begin(), scratch_.end());
      ++rank_;
      return true;
    }
    // Basis rows vanish below their pivot, so only words from w onward change.
    const std::uint64_t* s = pool_.data() + static_cast<std::size_t>(b) * words_;
    for (std::size_t i = w; i < words_; ++i) r[i] ^= s[i];
  }
}

std::vector<std::size_t> RankAccumulator::pivots() const { return pivot_col_; }

BatchedRank::BatchedRank(std::size_t width, std::optional<std::size_t> early_stop, std::size_t batch_rows)
    : width_(width), words_((width + 63) / 64), early_stop_(early_stop), batch_rows_(std::max<std::size_t>(1, batch_rows)),
      batch_(batch_rows_ * words_, 0), pivot_row_(width, -1) {}

std::size_t BatchedRank::rank() {
  flush();
  return pivot_col_.size();
}

bool BatchedRank::stopped() {
  flush();
  return early_stop_ && pivot_col_.size() >= *early_stop_;
}

std::uint64_t BatchedRank::rows_used() {
  flush();
  return rows_used_;
}

void BatchedRank::add_support(std::span<const std::uint32_t> support) {
  if (early_stop_ && pivot_col_.size() >= *early_stop_) return;
  std::uint64_t* r = batch_.data() + pending_ * words_;
  std::fill(r, r + words_, 0);
  for (auto c : support) {
    if (c >= width_) throw std::invalid_argument("column " + std::to_string(c) + " outside width");
    r[c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  if (++pending_ == batch_rows_) flush();
}

void BatchedRank::reduce_against_basis() {
  std::vector<std::uint32_t> order(pivot_col_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivot_col_[a] < pivot_col_[b]; });

  constexpr std::size_t K = 8;
  std::vector<std::uint64_t> grp(K * words_);
  for (std::size_t g0 = 0; g0 < order.size(); g0 += K) {
    const std::size_t k = std::min(K, order.size() - g0);
    std::size_t cols[K];
    for (std::size_t i = 0; i < k; ++i) {
      cols[i] = pivot_col_[order[g0 + i]];
      std::copy_n(pool_.data() + static_cast<std::size_t>(order[g0 + i]) * words_, words_, grp.data() + i * words_);
    }
    const std::size_t w0 = cols[0] / 64;
    const std::size_t span = words_ - w0;
    // Clear later pivots of the group so each table bit moves one column.
    for (std::size_t i = k; i-- > 0;) {
      std::uint64_t* ri = grp.data() + i * words_;
      for (std::size_t j = i + 1; j < k; ++j) {
        if (ri[cols[j] / 64] >> (cols[j] % 64) & 1) {
          const std::uint64_t* rj = grp.data() + j * words_;
          for (std::size_t w = w0; w < words_; ++w) ri[w] ^= rj[w];
        }
      }
    }
    const std::size_t entries = std::size_t{1} << k;
    table_.assign(entries * span, 0);
    for (std::size_t mask = 1; mask < entries; ++mask) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(mask));
      const std::uint64_t* prev = table_.data() + (mask & (mask - 1)) * span;
      const std::uint64_t* row = grp.data() + low * words_ + w0;
      std::uint64_t* dst = table_.data() + mask * span;
      for (std::size_t w = 0; w < span; ++w) dst[w] = prev[w] ^ row[w];
    }
    for (std::size_t b = 0; b < pending_; ++b) {
      std::uint64_t* r = batch_.data() + b * words_;
      std::size_t mask = 0;
      for (std::size_t i = 0; i < k; ++i) mask |= (r[cols[i] / 64] >> (cols[i] % 64) & 1) << i;
      if (!mask) continue;
      const std::uint64_t* t = table_.data() + mask * span;
      for (std::size_t w = 0; w < span; ++w) r[w0 + w] ^= t[w];
    }
  }
}

void BatchedRank::flush() {
  if (pending_ == 0) return;
  reduce_against_basis();
  const std::size_t first_new = pivot_col_.size();
  for (std::size_t b = 0; b < pending_; ++b) {
    if (early_stop_ && pivot_col_.size() >= *early_stop_) break;
    ++rows_used_;
    std::uint64_t* r = batch_.data() + b * words_;
    std::size_t w = 0;
    while (true) {
      while (w < words_ && r[w] == 0) ++w;
      if (w == words_) break;
      const std::size_t col = w * 64 + static_cast<std::size_t>(std::countr_zero(r[w]));
      const std::int32_t p = pivot_row_[col];
      if (p < 0) {
        pivot_row_[col] = static_cast<std::int32_t>(pivot_col_.size());
        pivot_col_.push_back(static_cast<std::uint32_t>(col));
        pool_.insert(pool_.end(), r, r + words_);
        break;
      }
      // Only pivots born in this batch can be hit; older ones were cleared.
      if (static_cast<std::size_t>(p) < first_new) throw std::logic_error("batch row kept an old pivot column");
      const std::uint64_t* s = pool_.data() + static_cast<std::size_t>(p) * words_;
      for (std::size_t i = w; i < words_; ++i) r[i] ^= s[i];
    }
  }
  pending_ = 0;
}

std::uint64_t rank_upper_bound(std::uint64_t q) { return q * q * q - q + 1; }

RankResult rank2_of_unital(const UnitalDesign& U, bool include_infinity, bool early_stop) {
  const std::uint64_t bound = rank_upper_bound(U.q());
  const std::size_t width = include_infinity ? U.num_points() : U.num_points() - 1;
  BatchedRank acc(width, early_stop ? std::optional<std::size_t>(bound) : std::nullopt);
  const std::uint32_t inf = U.infinity();
  std::vector<std::uint32_t> support;
  RankResult out;
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    if (i % 2048 == 0 && acc.stopped()) break;
    const auto blk = U.block(i);
    support.assign(blk.begin(), blk.end());
    if (!include_infinity) support.erase(std::remove(support.begin(), support.end(), inf), support.end());
    acc.add_support(support);
  }
  out.rank = acc.rank();
  out.rows_processed = acc.rows_used();
  out.early_stopped = acc.stopped() && out.rows_processed < U.num_blocks();
  if (out.rank > bound) {
    throw std::logic_error("2-rank " + std::to_string(out.rank) + " exceeds q^3 - q + 1 = " + std::to_string(bound));
  }
  return out;
}

VerifyReport verify_dual_ovals(const UnitalDesign& U) {
  VerifyReport r("dual-ovals");
  const std::uint32_t q = U.q();
  const std::uint32_t inf = U.infinity();
  std::vector<std::uint32_t> meet(q);
  std::int64_t zero_meets = 0, two_meets = 0;
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    const auto blk = U.block(i);
    const bool has_inf = std::binary_search(blk.begin(), blk.end(), inf);
    std::fill(meet.begin(), meet.end(), has_inf ? 1u : 0u);
    for (auto pt : blk) {
      if (pt != inf) ++meet[U.point_t(pt).idx];
    }
    const bool tangent = i < U.num_tangent_blocks();
    for (std::uint32_t t = 0; t < q; ++t) {
      const std::uint32_t k = meet[t];
      if (k % 2 != 0 || (tangent && k != 2)) {
        r.fail("block " + std::to_string(i) + " meets oval " + std::to_string(t) + " in " + std::to_string(k) +
               " points");
      }
      zero_meets += k == 0;
      two_meets += k == 2;
    }
  }
  RankAccumulator acc(U.num_points());
  std::vector<std::uint32_t> oval;
  for (std::uint32_t t = 0; t < q; ++t) {
    oval.clear();
    for (std::uint32_t x = 0; x < q * q; ++x) oval.push_back(U.point(Elem{x}, Elem{t}));
    oval.push_back(inf);
    acc.absorb_support(oval);
  }
  if (acc.rank() != q) r.fail("oval vectors span dimension " + std::to_string(acc.rank()) + " < q");
  r.tally("blocks", static_cast<std::int64_t>(U.num_blocks()));
  r.tally("ovals", q);
  r.tally("meets_0", zero_meets);
  r.tally("meets_2", two_meets);
  r.tally("oval_rank", static_cast<std::int64_t>(acc.rank()));
  r.tally("rank_upper_bound", static_cast<std::int64_t>(U.num_points() - acc.rank()));
  return r;
}

}  // namespace unital
