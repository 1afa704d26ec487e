#pragma once

// The shift plane Pi(f) of order n = |F| for a planar function f on F.
//
//   points: affine (x, y), infinite (a) for a in F, and (inf)
//   lines:  L_{a,b} = {(x, f(x+a) - b)} + (a),  N_a = {(a, y)} + (inf),  L_inf
//
// Points and lines are numbered: affine / L_{a,b} as a*n + b, then the n
// points (a) / lines N_a, then (inf) / L_inf last.

#include <cstdint>
#include <string>
#include <vector>

#include "unital/planar.hpp"
#include "unital/report.hpp"

namespace unital {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

class ShiftPlane {
 public:
  explicit ShiftPlane(const PlanarFunction& f);

  std::uint32_t order() const { return n_; }
  std::uint32_t num_points() const { return n_ * n_ + n_ + 1; }
  std::uint32_t num_lines() const { return num_points(); }
  const Field& field() const { return *field_; }

  PointId affine(Elem x, Elem y) const { return x.idx * n_ + y.idx; }
  PointId infinite(Elem a) const { return n_ * n_ + a.idx; }
  PointId infinity() const { return n_ * n_ + n_; }
  LineId line(Elem a, Elem b) const { return a.idx * n_ + b.idx; }
  LineId vertical(Elem a) const { return n_ * n_ + a.idx; }
  LineId line_at_infinity() const { return n_ * n_ + n_; }

  bool is_affine(PointId p) const { return p < n_ * n_; }

  std::vector<PointId> points_on(LineId l) const;
  std::vector<LineId> lines_through(PointId p) const;
  bool incident(PointId p, LineId l) const;

  /// Image under tau_{u,v}: (x, y) -> (x+u, y+v), (a) -> (a-u), (inf) fixed.
  PointId shift_point(PointId p, Elem u, Elem v) const;
  /// L_{a,b} -> L_{a-u, b-v}, N_a -> N_{a+u}, L_inf fixed.
  LineId shift_line(LineId l, Elem u, Elem v) const;

  std::string describe_point(PointId p) const;
  std::string describe_line(LineId l) const;

 private:
  Elem f(Elem x) const { return Elem{table_[x.idx]}; }

  FieldPtr field_;
  std::vector<std::uint32_t> table_;
  std::uint32_t n_;
};

struct PlaneCheckOptions {
  /// Check all point pairs and line pairs when order() <= this.
  std::uint32_t exhaustive_max_order = 81;
  std::size_t sampled_pairs = 100000;
  /// Check every shift when order() <= this, else `sampled_shifts` of them.
  std::uint32_t all_shifts_max_order = 9;
  std::size_t sampled_shifts = 64;
  std::uint64_t seed = 1;
};

/// Incidence axioms of a projective plane and the shift group action.
VerifyReport verify_plane(const ShiftPlane& plane, const PlaneCheckOptions& opts = {});

}  // namespace unital
