#pragma once

// Rank over GF(2) of a stream of 0/1 rows.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "unital/report.hpp"
#include "unital/unital.hpp"

namespace unital {

/// Packed bit vector; bit i of word i/64 is column i.  Bits past size() stay zero.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  std::size_t num_words() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
  void clear();
  bool any() const;
  std::size_t popcount() const;
  /// Lowest set column, or size() when zero.
  std::size_t lowest() const;

  BitRow& operator^=(const BitRow& other);
  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

class RankAccumulator {
 public:
  /// After `early_stop` basis rows, absorb() ignores its input.
  explicit RankAccumulator(std::size_t width, std::optional<std::size_t> early_stop = std::nullopt);

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rank_; }
  bool stopped() const { return early_stop_ && rank_ >= *early_stop_; }
  std::uint64_t rows_seen() const { return rows_seen_; }

  /// Reduces the row against the basis; returns whether the rank grew.
  /// Throws std::invalid_argument on a width mismatch.
  bool absorb(const BitRow& row);
  /// Same, for the row with ones exactly at `support`.
  bool absorb_support(std::span<const std::uint32_t> support);

  /// Pivot column of every basis row, in insertion order.
  std::vector<std::size_t> pivots() const;

 private:
  bool insert_reduced();

  std::size_t width_;
  std::size_t words_;
  std::optional<std::size_t> early_stop_;
  std::size_t rank_ = 0;
  std::uint64_t rows_seen_ = 0;
  std::vector<std::int32_t> pivot_row_;  // column -> basis row, or -1
  std::vector<std::size_t> pivot_col_;   // basis row -> column
  std::vector<std::uint64_t> pool_;      // basis rows, words_ each
  std::vector<std::uint64_t> scratch_;
};

/// Rank of a row stream, reduced a batch at a time.  Each batch is first
/// cleared of every basis pivot column with Gray-code tables over groups of 8
/// basis rows, then absorbed row by row against the pivots it creates.  The
/// rank and stopping row agree with RankAccumulator on the same stream.
class BatchedRank {
 public:
  explicit BatchedRank(std::size_t width, std::optional<std::size_t> early_stop = std::nullopt,
                       std::size_t batch_rows = 2048);

  std::size_t width() const { return width_; }
  /// Flushes pending rows first.
  std::size_t rank();
  bool stopped();
  /// Rows consumed up to and including the one that reached early_stop.
  std::uint64_t rows_used();

  void add_support(std::span<const std::uint32_t> support);
  void flush();

 private:
  void reduce_against_basis();

  std::size_t width_;
  std::size_t words_;
  std::optional<std::size_t> early_stop_;
  std::size_t batch_rows_;
  std::size_t pending_ = 0;
  std::uint64_t rows_used_ = 0;
  std::vector<std::uint64_t> batch_;     // pending rows, words_ each
  std::vector<std::uint64_t> pool_;      // basis rows, words_ each
  std::vector<std::uint32_t> pivot_col_; // basis row -> column
  std::vector<std::int32_t> pivot_row_;  // column -> basis row, or -1
  std::vector<std::uint64_t> table_;
};

struct RankResult {
  std::size_t rank = 0;
  std::uint64_t rows_processed = 0;
  bool early_stopped = false;
};

/// q^3 - q + 1
std::uint64_t rank_upper_bound(std::uint64_t q);

/// Rank of the block incidence matrix.  Without infinity the (inf) column is
/// dropped, which removes it from every B_a.  With early_stop the stream ends
/// once the rank reaches q^3 - q + 1.  Throws std::logic_error if the rank
/// ever exceeds q^3 - q + 1.
RankResult rank2_of_unital(const UnitalDesign& U, bool include_infinity, bool early_stop);

/// Each O_t = {(x, t theta)} + (inf) meets every block in 0 or 2 points (B_a
/// in exactly 2), and the q vectors v^{O_t} are linearly independent.
VerifyReport verify_dual_ovals(const UnitalDesign& U);

}  // namespace unital
