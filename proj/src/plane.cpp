#include "unital/plane.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace unital {

ShiftPlane::ShiftPlane(const PlanarFunction& f)
    : field_(f.field_ptr()), table_(f.table()), n_(f.field().size()) {
  const auto r = check_planar(f);
  if (!r.planar) throw NotPlanarError(f.name(), *r.witness);
}

std::vector<PointId> ShiftPlane::points_on(LineId l) const {
  const Field& F = *field_;
  std::vector<PointId> pts;
  pts.reserve(n_ + 1);
  if (l < n_ * n_) {
    const Elem a{l / n_}, b{l % n_};
    for (std::uint32_t x = 0; x < n_; ++x) pts.push_back(affine(Elem{x}, F.sub(f(F.add(Elem{x}, a)), b)));
    pts.push_back(infinite(a));
  } else if (l < n_ * n_ + n_) {
    const Elem a{l - n_ * n_};
    for (std::uint32_t y = 0; y < n_; ++y) pts.push_back(affine(a, Elem{y}));
    pts.push_back(infinity());
  } else {
    for (std::uint32_t a = 0; a < n_; ++a) pts.push_back(infinite(Elem{a}));
    pts.push_back(infinity());
  }
  return pts;
}

std::vector<LineId> ShiftPlane::lines_through(PointId p) const {
  const Field& F = *field_;
  std::vector<LineId> ls;
  ls.reserve(n_ + 1);
  if (p < n_ * n_) {
    const Elem x{p / n_}, y{p % n_};
    for (std::uint32_t a = 0; a < n_; ++a) ls.push_back(line(Elem{a}, F.sub(f(F.add(x, Elem{a})), y)));
    ls.push_back(vertical(x));
  } else if (p < n_ * n_ + n_) {
    const Elem a{p - n_ * n_};
    for (std::uint32_t b = 0; b < n_; ++b) ls.push_back(line(a, Elem{b}));
    ls.push_back(line_at_infinity());
  } else {
    for (std::uint32_t a = 0; a < n_; ++a) ls.push_back(vertical(Elem{a}));
    ls.push_back(line_at_infinity());
  }
  return ls;
}

bool ShiftPlane::incident(PointId p, LineId l) const {
  const Field& F = *field_;
  const bool p_affine = p < n_ * n_;
  const bool p_inf = p == infinity();
  if (l < n_ * n_) {
    const Elem a{l / n_}, b{l % n_};
    if (p_affine) return Elem{p % n_} == F.sub(f(F.add(Elem{p / n_}, a)), b);
    return !p_inf && p - n_ * n_ == a.idx;
  }
  if (l < n_ * n_ + n_) {
    if (p_affine) return p / n_ == l - n_ * n_;
    return p_inf;
  }
  return !p_affine;
}

PointId ShiftPlane::shift_point(PointId p, Elem u, Elem v) const {
  const Field& F = *field_;
  if (p < n_ * n_) return affine(F.add(Elem{p / n_}, u), F.add(Elem{p % n_}, v));
  if (p < n_ * n_ + n_) return infinite(F.sub(Elem{p - n_ * n_}, u));
  return p;
}

LineId ShiftPlane::shift_line(LineId l, Elem u, Elem v) const {
  const Field& F = *field_;
  if (l < n_ * n_) return line(F.sub(Elem{l / n_}, u), F.sub(Elem{l % n_}, v));
  if (l < n_ * n_ + n_) return vertical(F.add(Elem{l - n_ * n_}, u));
  return l;
}

std::string ShiftPlane::describe_point(PointId p) const {
  std::ostringstream os;
  if (p < n_ * n_) {
    os << '(' << p / n_ << ',' << p % n_ << ')';
  } else if (p < n_ * n_ + n_) {
    os << "(" << p - n_ * n_ << ")";
  } else {
    os << "(inf)";
  }
  return os.str();
}

std::string ShiftPlane::describe_line(LineId l) const {
  std::ostringstream os;
  if (l < n_ * n_) {
    os << "L_{" << l / n_ << ',' << l % n_ << '}';
  } else if (l < n_ * n_ + n_) {
    os << "N_" << l - n_ * n_;
  } else {
    os << "L_inf";
  }
  return os.str();
}

namespace {

// Every other point lies on exactly one line through p.
void check_point_star(const ShiftPlane& P, PointId p, std::vector<std::uint32_t>& stamp,
                      std::uint32_t mark, VerifyReport& r) {
  for (LineId l : P.lines_through(p)) {
    for (PointId x : P.points_on(l)) {
      if (x == p) continue;
      if (stamp[x] == mark) {
        r.fail("points " + P.describe_point(p) + " and " + P.describe_point(x) + " share two lines");
      }
      stamp[x] = mark;
    }
  }
}

void check_line_star(const ShiftPlane& P, LineId l, std::vector<std::uint32_t>& stamp,
                     std::uint32_t mark, VerifyReport& r) {
  for (PointId p : P.points_on(l)) {
    for (LineId x : P.lines_through(p)) {
      if (x == l) continue;
      if (stamp[x] == mark) {
        r.fail("lines " + P.describe_line(l) + " and " + P.describe_line(x) + " meet twice");
      }
      stamp[x] = mark;
    }
  }
}

std::size_t count_common_lines(const ShiftPlane& P, PointId a, PointId b) {
  std::size_t c = 0;
  for (LineId l : P.lines_through(a)) c += P.incident(b, l) ? 1 : 0;
  return c;
}

std::size_t count_common_points(const ShiftPlane& P, LineId a, LineId b) {
  std::size_t c = 0;
  for (PointId p : P.points_on(a)) c += P.incident(p, b) ? 1 : 0;
  return c;
}

}  // namespace

VerifyReport verify_plane(const ShiftPlane& P, const PlaneCheckOptions& opts) {
  VerifyReport r("plane");
  const std::uint32_t N = P.num_points();
  const std::uint32_t n = P.order();
  r.tally("order", n);
  r.tally("points", N);
  r.tally("lines", P.num_lines());

  for (LineId l = 0; l < P.num_lines(); ++l) {
    const auto pts = P.points_on(l);
    if (pts.size() != n + 1) r.fail(P.describe_line(l) + " has " + std::to_string(pts.size()) + " points");
    for (PointId p : pts) {
      if (!P.incident(p, l)) r.fail(P.describe_point(p) + " listed on " + P.describe_line(l) + " but not incident");
    }
  }

  if (n <= opts.exhaustive_max_order) {
    std::vector<std::uint32_t> stamp(N, 0);
    // With n+1 lines of n+1 points each, a collision-free star covers all N-1 other points.
    for (PointId p = 0; p < N; ++p) check_point_star(P, p, stamp, p + 1, r);
    std::fill(stamp.begin(), stamp.end(), 0);
    for (LineId l = 0; l < N; ++l) check_line_star(P, l, stamp, l + 1, r);
    r.tally("point_pairs_checked", static_cast<std::int64_t>(N) * (N - 1) / 2);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, N - 1);
    std::size_t checked = 0;
    while (checked < opts.sampled_pairs) {
      const auto a = pick(rng), b = pick(rng);
      if (a == b) continue;
      ++checked;
      if (count_common_lines(P, a, b) != 1) {
        r.fail("points " + P.describe_point(a) + " and " + P.describe_point(b) + " not joined by exactly one line");
      }
      if (count_common_points(P, a, b) != 1) {
        r.fail("lines " + P.describe_line(a) + " and " + P.describe_line(b) + " do not meet in exactly one point");
      }
    }
    r.tally("point_pairs_checked", static_cast<std::int64_t>(checked));
  }

  // Shift group: tau_{u,v} maps lines onto lines bijectively.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> shifts;
  if (n <= opts.all_shifts_max_order) {
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = 0; v < n; ++v) shifts.emplace_back(u, v);
    }
  } else {
    std::mt19937_64 rng(opts.seed ^ 0x5eed);
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::size_t i = 0; i < opts.sampled_shifts; ++i) shifts.emplace_back(pick(rng), pick(rng));
  }
  std::vector<std::uint32_t> seen(P.num_lines(), 0);
  std::uint32_t mark = 0;
  for (const auto& [u, v] : shifts) {
    ++mark;
    for (LineId l = 0; l < P.num_lines(); ++l) {
      const LineId img = P.shift_line(l, Elem{u}, Elem{v});
      if (seen[img] == mark) r.fail("shift (" + std::to_string(u) + "," + std::to_string(v) + ") is not injective on lines");
      seen[img] = mark;
      for (PointId p : P.points_on(l)) {
        if (!P.incident(P.shift_point(p, Elem{u}, Elem{v}), img)) {
          r.fail("shift (" + std::to_string(u) + "," + std::to_string(v) + ") maps " + P.describe_line(l) +
                 " off " + P.describe_line(img));
          break;
        }
      }
    }
  }
  r.tally("shifts_checked", static_cast<std::int64_t>(shifts.size()));
  return r;
}

}  // namespace unital
