#pragma once

// The unital U_theta = {(x, t theta) : x in GF(q^2), t in GF(q)} + {(inf)} in
// Pi(f), as a block design.
//
// Point (x, t theta) has index x*q + t; (inf) is q^3, the last index.  Blocks
// are ordered B_a by a, then B_{a,b} by (a, b); every block is sorted.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unital/plane.hpp"
#include "unital/planar.hpp"
#include "unital/report.hpp"
#include "unital/tower.hpp"

namespace unital {

struct DesignInfo {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::string f;
  std::uint32_t theta_index = 0;
  std::string modulus;  // of GF(q^2)
};

class UnitalDesign {
 public:
  UnitalDesign() = default;
  explicit UnitalDesign(DesignInfo info) : info_(std::move(info)) {}

  const DesignInfo& info() const { return info_; }
  std::uint32_t q() const { return info_.q; }
  std::uint32_t num_points() const { return q() * q() * q() + 1; }
  std::uint32_t infinity() const { return q() * q() * q(); }
  std::uint32_t point(Elem x, Elem t) const { return x.idx * q() + t.idx; }
  Elem point_x(std::uint32_t pt) const { return Elem{pt / q()}; }
  Elem point_t(std::uint32_t pt) const { return Elem{pt % q()}; }

  std::size_t num_blocks() const { return offsets_.size() - 1; }
  /// The blocks B_a come first; there are q^2 of them.
  std::size_t num_tangent_blocks() const { return std::size_t{q()} * q(); }
  std::span<const std::uint32_t> block(std::size_t i) const {
    return {incidence_.data() + offsets_[i], incidence_.data() + offsets_[i + 1]};
  }

  void reserve(std::size_t blocks, std::size_t incidences);
  /// Appends a block; points are sorted on insertion.
  void add_block(std::vector<std::uint32_t> pts);

 private:
  DesignInfo info_;
  std::vector<std::uint32_t> incidence_;
  std::vector<std::size_t> offsets_{0};
};

/// |{x : theta1 f0(x) - theta0 f1(x) = c}| is q+1 for c != 0 and 1 for c = 0.
bool fiber_condition(const ComponentPair& comps, const Tower& tower, const ThetaSetup& setup);

/// All theta in GF(q^2)* satisfying the fiber condition, by index.
std::vector<ThetaSetup> find_thetas(const ComponentPair& comps, const Tower& tower);

struct BuildOptions {
  /// Reject thetas failing the fiber condition before building.
  bool require_fiber_condition = true;
};

/// Builds the blocks through the circle form of B_{a,b}: with
/// beta(b) = b0 theta1 - b1 theta0 != 0, B_{a,b} = {(x, s theta)} over
/// x + a in C_{0,beta}, s = (f1(x+a) - b1)/theta1 (or f0, theta0 when theta1 = 0).
UnitalDesign build_unital(const PlanarFunction& f, const ComponentPair& comps, const Tower& tower,
                          const ThetaSetup& setup, const BuildOptions& opts = {});

/// 2-(q^3+1, q+1, 1) property: block sizes, block count, every point pair in
/// exactly one block, replication q^2.
VerifyReport check_design(const UnitalDesign& U);

/// Spot check of the design property on random point pairs, for cache loads.
VerifyReport spot_check_design(const UnitalDesign& U, std::size_t pairs, std::uint64_t seed = 7);

/// Plane point of a unital point: (x, t theta) or (inf).
PointId plane_point(const ShiftPlane& plane, const Tower& tower, const ThetaSetup& setup,
                    const UnitalDesign& U, std::uint32_t pt);

/// Every line of Pi(f) meets U in 1 or q+1 points.
VerifyReport verify_unital_in_plane(const UnitalDesign& U, const ShiftPlane& plane, const Tower& tower,
                                    const ThetaSetup& setup);

/// Each O_{t theta} = {(x, t theta)} + (inf) is an oval of Pi(f), and their
/// union is the point set of U.  Requires a normal f.
VerifyReport verify_ovals(const UnitalDesign& U, const ShiftPlane& plane, const Tower& tower,
                          const ThetaSetup& setup);

struct TransitivityOptions {
  /// Skip the O(q^6) regularity tally above this q.
  std::uint32_t regularity_max_q = 9;
  /// Check the block action of every group element up to this q, else a sample.
  std::uint32_t all_elements_max_q = 9;
  std::size_t sampled_elements = 64;
  std::uint64_t seed = 3;
};

/// T_theta = {tau_{a, b theta}} preserves U, permutes its blocks, and acts
/// regularly on the affine points of U.
VerifyReport verify_transitivity(const UnitalDesign& U, const Tower& tower, const TransitivityOptions& opts = {});

}  // namespace unital
