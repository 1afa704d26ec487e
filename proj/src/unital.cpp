#include "unital/unital.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace unital {

void UnitalDesign::reserve(std::size_t blocks, std::size_t incidences) {
  offsets_.reserve(blocks + 1);
  incidence_.reserve(incidences);
}

void UnitalDesign::add_block(std::vector<std::uint32_t> pts) {
  std::sort(pts.begin(), pts.end());
  incidence_.insert(incidence_.end(), pts.begin(), pts.end());
  offsets_.push_back(incidence_.size());
}

namespace {

// theta1 f0(y) - theta0 f1(y) for every y in GF(q^2).
std::vector<std::uint32_t> circle_values(const ComponentPair& comps, const Tower& tower, const ThetaSetup& s) {
  const Field& B = tower.base();
  std::vector<std::uint32_t> g(tower.ext().size());
  for (std::uint32_t y = 0; y < g.size(); ++y) {
    g[y] = B.sub(B.mul(s.theta1, comps.c0(Elem{y})), B.mul(s.theta0, comps.c1(Elem{y}))).idx;
  }
  return g;
}

}  // namespace

bool fiber_condition(const ComponentPair& comps, const Tower& tower, const ThetaSetup& setup) {
  const std::uint32_t q = tower.q();
  std::vector<std::uint32_t> count(q, 0);
  for (auto v : circle_values(comps, tower, setup)) ++count[v];
  if (count[0] != 1) return false;
  for (std::uint32_t c = 1; c < q; ++c) {
    if (count[c] != q + 1) return false;
  }
  return true;
}

std::vector<ThetaSetup> find_thetas(const ComponentPair& comps, const Tower& tower) {
  std::vector<ThetaSetup> out;
  for (std::uint32_t i = 1; i < tower.ext().size(); ++i) {
    const ThetaSetup s = make_theta_setup(tower, Elem{i});
    if (fiber_condition(comps, tower, s)) out.push_back(s);
  }
  return out;
}

UnitalDesign build_unital(const PlanarFunction& f, const ComponentPair& comps, const Tower& tower,
                          const ThetaSetup& setup, const BuildOptions& opts) {
  if (opts.require_fiber_condition && !fiber_condition(comps, tower, setup)) {
    throw std::invalid_argument("theta " + std::to_string(setup.theta.idx) + " fails the fiber condition for " +
                                f.name());
  }
  const Field& E = tower.ext();
  const Field& B = tower.base();
  const std::uint32_t q = tower.q();
  const std::uint32_t n = E.size();

  UnitalDesign U(DesignInfo{tower.p(), tower.m(), q, f.name(), setup.theta.idx, E.modulus_string()});
  const std::size_t expected_blocks = std::size_t{q} * q * q * q - std::size_t{q} * q * q + std::size_t{q} * q;
  U.reserve(expected_blocks, expected_blocks * (q + 1));

  const auto g = circle_values(comps, tower, setup);
  std::vector<std::vector<std::uint32_t>> circles(q);
  for (std::uint32_t y = 0; y < n; ++y) circles[g[y]].push_back(y);

  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<std::uint32_t> pts;
    for (std::uint32_t t = 0; t < q; ++t) pts.push_back(U.point(Elem{a}, Elem{t}));
    pts.push_back(U.infinity());
    U.add_block(std::move(pts));
  }

  const bool use_f1 = setup.theta1 != B.zero();
  const Elem inv_coord = B.inv(use_f1 ? setup.theta1 : setup.theta0);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto [b0, b1] = tower.decompose(Elem{b});
      const Elem beta = B.sub(B.mul(b0, setup.theta1), B.mul(b1, setup.theta0));
      if (beta == B.zero()) continue;
      std::vector<std::uint32_t> pts;
      pts.reserve(q + 1);
      for (std::uint32_t y : circles[beta.idx]) {
        const Elem x = E.sub(Elem{y}, Elem{a});
        const Elem s = use_f1 ? B.mul(B.sub(comps.c1(Elem{y}), b1), inv_coord)
                              : B.mul(B.sub(comps.c0(Elem{y}), b0), inv_coord);
        pts.push_back(U.point(x, s));
      }
      U.add_block(std::move(pts));
    }
  }
  return U;
}

VerifyReport check_design(const UnitalDesign& U) {
  VerifyReport r("design");
  const std::uint64_t q = U.q();
  const std::uint64_t v = U.num_points();
  const std::uint64_t expected_blocks = q * q * q * q - q * q * q + q * q;
  r.tally("points", static_cast<std::int64_t>(v));
  r.tally("blocks", static_cast<std::int64_t>(U.num_blocks()));
  if (U.num_blocks() != expected_blocks) {
    r.fail("block count " + std::to_string(U.num_blocks()) + " != q^4 - q^3 + q^2 = " + std::to_string(expected_blocks));
  }

  std::vector<std::uint64_t> covered((v * (v - 1) / 2 + 63) / 64, 0);
  std::vector<std::uint32_t> replication(v, 0);
  std::uint64_t pair_hits = 0;
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    const auto blk = U.block(i);
    if (blk.size() != q + 1) {
      r.fail("block " + std::to_string(i) + " has " + std::to_string(blk.size()) + " points");
    }
    for (std::size_t j = 0; j < blk.size(); ++j) {
      if (blk[j] >= v || (j > 0 && blk[j] <= blk[j - 1])) {
        r.fail("block " + std::to_string(i) + " is not a sorted set of valid points");
        break;
      }
      ++replication[blk[j]];
      for (std::size_t k = 0; k < j; ++k) {
        const std::uint64_t hi = blk[j], lo = blk[k];
        const std::uint64_t bit = hi * (hi - 1) / 2 + lo;
        if (covered[bit / 64] >> (bit % 64) & 1) {
          r.fail("points " + std::to_string(lo) + " and " + std::to_string(hi) + " lie in two blocks (second: " +
                 std::to_string(i) + ")");
        } else {
          covered[bit / 64] |= std::uint64_t{1} << (bit % 64);
          ++pair_hits;
        }
      }
    }
  }
  const std::uint64_t all_pairs = v * (v - 1) / 2;
  if (pair_hits != all_pairs) {
    r.fail(std::to_string(all_pairs - pair_hits) + " point pairs lie in no block");
  }
  std::uint64_t bad_rep = 0;
  for (std::uint64_t p = 0; p < v; ++p) bad_rep += replication[p] != q * q;
  if (bad_rep) r.fail(std::to_string(bad_rep) + " points do not lie in exactly q^2 blocks");
  r.tally("pairs_covered", static_cast<std::int64_t>(pair_hits));
  return r;
}

VerifyReport spot_check_design(const UnitalDesign& U, std::size_t pairs, std::uint64_t seed) {
  VerifyReport r("design-spot-check");
  const std::uint64_t q = U.q();
  const std::uint32_t v = U.num_points();
  const std::uint64_t expected_blocks = q * q * q * q - q * q * q + q * q;
  if (U.num_blocks() != expected_blocks) {
    r.fail("block count " + std::to_string(U.num_blocks()));
    return r;
  }
  std::vector<std::vector<std::uint32_t>> through(v);
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    const auto blk = U.block(i);
    if (blk.size() != q + 1) {
      r.fail("block " + std::to_string(i) + " has " + std::to_string(blk.size()) + " points");
      return r;
    }
    for (auto p : blk) {
      if (p >= v) {
        r.fail("block " + std::to_string(i) + " names point " + std::to_string(p));
        return r;
      }
      through[p].push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, v - 1);
  for (std::size_t s = 0; s < pairs; ++s) {
    const auto a = pick(rng), b = pick(rng);
    if (a == b) continue;
    std::vector<std::uint32_t> common;
    std::set_intersection(through[a].begin(), through[a].end(), through[b].begin(), through[b].end(),
                          std::back_inserter(common));
    if (common.size() != 1) {
      r.fail("points " + std::to_string(a) + " and " + std::to_string(b) + " lie in " +
             std::to_string(common.size()) + " blocks");
    }
  }
  r.tally("pairs_sampled", static_cast<std::int64_t>(pairs));
  return r;
}

PointId plane_point(const ShiftPlane& plane, const Tower& tower, const ThetaSetup& setup, const UnitalDesign& U,
                    std::uint32_t pt) {
  if (pt == U.infinity()) return plane.infinity();
  const Field& E = tower.ext();
  return plane.affine(U.point_x(pt), E.mul(tower.embed(U.point_t(pt)), setup.theta));
}

VerifyReport verify_unital_in_plane(const UnitalDesign& U, const ShiftPlane& plane, const Tower& tower,
                                    const ThetaSetup& setup) {
  VerifyReport r("unital-in-plane");
  const std::uint32_t q = U.q();
  std::vector<std::uint8_t> member(plane.num_points(), 0);
  for (std::uint32_t pt = 0; pt < U.num_points(); ++pt) member[plane_point(plane, tower, setup, U, pt)] = 1;
  std::int64_t tangents = 0, secants = 0;
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    std::uint32_t k = 0;
    for (PointId p : plane.points_on(l)) k += member[p];
    if (k == 1) {
      ++tangents;
    } else if (k == q + 1) {
      ++secants;
    } else {
      r.fail(plane.describe_line(l) + " meets U in " + std::to_string(k) + " points");
    }
  }
  r.tally("tangent_lines", tangents);
  r.tally("secant_lines", secants);
  if (!member[plane.infinity()]) r.fail("(inf) is not a unital point");
  std::uint32_t on_l_inf = 0;
  for (PointId p : plane.points_on(plane.line_at_infinity())) on_l_inf += member[p];
  r.tally("l_inf_meets", on_l_inf);
  return r;
}

VerifyReport verify_ovals(const UnitalDesign& U, const ShiftPlane& plane, const Tower& tower,
                          const ThetaSetup& setup) {
  VerifyReport r("ovals");
  const Field& E = tower.ext();
  const std::uint32_t q = U.q();
  const std::uint32_t n = E.size();
  std::vector<std::uint32_t> owner(plane.num_points(), 0);  // 1 + t for oval points, (inf) shared
  std::vector<std::uint8_t> in_unital(plane.num_points(), 0);
  for (std::uint32_t pt = 0; pt < U.num_points(); ++pt) in_unital[plane_point(plane, tower, setup, U, pt)] = 1;

  std::vector<std::uint8_t> union_mark(plane.num_points(), 0);
  for (std::uint32_t t = 0; t < q; ++t) {
    const Elem c = E.mul(tower.embed(Elem{t}), setup.theta);
    std::vector<std::uint8_t> in_oval(plane.num_points(), 0);
    std::uint32_t size = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
      const PointId p = plane.affine(Elem{x}, c);
      in_oval[p] = 1;
      ++size;
      if (owner[p] != 0) r.fail("ovals " + std::to_string(owner[p] - 1) + " and " + std::to_string(t) + " share an affine point");
      owner[p] = t + 1;
      union_mark[p] = 1;
    }
    in_oval[plane.infinity()] = 1;
    union_mark[plane.infinity()] = 1;
    ++size;
    if (size != n + 1) r.fail("oval " + std::to_string(t) + " has " + std::to_string(size) + " points");
    std::int64_t max_meet = 0;
    for (LineId l = 0; l < plane.num_lines(); ++l) {
      std::uint32_t k = 0;
      for (PointId p : plane.points_on(l)) k += in_oval[p];
      max_meet = std::max<std::int64_t>(max_meet, k);
      if (k > 2) r.fail(plane.describe_line(l) + " meets oval " + std::to_string(t) + " in " + std::to_string(k) + " points");
    }
    r.tally("max_line_meet", std::max(r.get("max_line_meet", 0), max_meet));
  }
  if (union_mark != in_unital) r.fail("union of the ovals differs from the unital point set");
  r.tally("ovals", q);
  r.tally("oval_size", n + 1);
  return r;
}

VerifyReport verify_transitivity(const UnitalDesign& U, const Tower& tower, const TransitivityOptions& opts) {
  VerifyReport r("transitivity");
  const Field& E = tower.ext();
  const Field& B = tower.base();
  const std::uint32_t q = U.q();
  const std::uint32_t n = E.size();
  const std::uint32_t affine = q * q * q;

  auto act = [&](std::uint32_t pt, Elem a, Elem b) -> std::uint32_t {
    if (pt == U.infinity()) return pt;
    return U.point(E.add(U.point_x(pt), a), B.add(U.point_t(pt), b));
  };

  std::unordered_map<std::uint64_t, std::uint32_t> by_pair;
  by_pair.reserve(U.num_blocks() * 2);
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    const auto blk = U.block(i);
    by_pair.emplace(std::uint64_t{blk[0]} * U.num_points() + blk[1], static_cast<std::uint32_t>(i));
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> elements;
  if (q <= opts.all_elements_max_q) {
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) elements.emplace_back(a, b);
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> pa(0, n - 1), pb(0, q - 1);
    for (std::size_t i = 0; i < opts.sampled_elements; ++i) elements.emplace_back(pa(rng), pb(rng));
  }

  std::vector<std::uint32_t> img;
  for (const auto& [a, b] : elements) {
    for (std::size_t i = 0; i < U.num_blocks(); ++i) {
      const auto blk = U.block(i);
      img.assign(blk.begin(), blk.end());
      for (auto& p : img) p = act(p, Elem{a}, Elem{b});
      std::sort(img.begin(), img.end());
      const auto it = by_pair.find(std::uint64_t{img[0]} * U.num_points() + img[1]);
      if (it == by_pair.end() || !std::equal(img.begin(), img.end(), U.block(it->second).begin(),
                                             U.block(it->second).end())) {
        r.fail("tau_{" + std::to_string(a) + "," + std::to_string(b) + "} maps block " + std::to_string(i) +
               " to a non-block");
        break;
      }
    }
  }
  r.tally("group_elements_checked", static_cast<std::int64_t>(elements.size()));
  r.tally("group_order", static_cast<std::int64_t>(n) * q);

  if (q <= opts.regularity_max_q) {
    std::vector<std::uint8_t> hits(std::size_t{affine} * affine, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        for (std::uint32_t pt = 0; pt < affine; ++pt) {
          const std::uint32_t to = act(pt, Elem{a}, Elem{b});
          if (to >= affine) {
            r.fail("affine point leaves the affine part");
            continue;
          }
          auto& h = hits[std::size_t{pt} * affine + to];
          if (h < 255) ++h;
        }
      }
    }
    std::uint64_t bad = 0;
    for (auto h : hits) bad += h != 1;
    if (bad) r.fail(std::to_string(bad) + " ordered affine point pairs are not joined by exactly one group element");
    r.tally("regularity_pairs", static_cast<std::int64_t>(hits.size()));
  }
  return r;
}

}  // namespace unital
