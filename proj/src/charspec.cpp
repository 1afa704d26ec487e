#include "unital/charspec.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace unital {

SpectrumContext::SpectrumContext(TowerPtr tower, const PlanarFunction& f, ComponentPair comps, ThetaSetup setup)
    : tower_(std::move(tower)),
      setup_(setup),
      comps_(std::move(comps)),
      chi_(tower_->base(), CharField::make(tower_->p())),
      normal_(is_normal(f)) {
  const Field& B = tower_->base();
  const Field& E = tower_->ext();
  uses_f1_ = setup_.theta1 != B.zero();
  w_scale_ = B.inv(uses_f1_ ? setup_.theta1 : setup_.theta0);
  circles_.resize(B.size());
  for (std::uint32_t y = 0; y < E.size(); ++y) {
    const Elem g = B.sub(B.mul(setup_.theta1, comps_.c0(Elem{y})), B.mul(setup_.theta0, comps_.c1(Elem{y})));
    if (g == B.zero()) continue;
    const auto [y0, y1] = tower_->decompose(Elem{y});
    circles_[g.idx].push_back({y0, y1, uses_f1_ ? comps_.c1(Elem{y}) : comps_.c0(Elem{y})});
  }
}

Gf2e chi_block(const SpectrumContext& ctx, const UnitalDesign& U, const Character& c,
               std::span<const std::uint32_t> block) {
  const Field& B = ctx.tower().base();
  Gf2e sum = 0;
  for (auto pt : block) {
    if (pt == U.infinity()) continue;
    const auto [x0, x1] = ctx.tower().decompose(U.point_x(pt));
    const Elem arg = B.add(B.add(B.mul(c.u, x0), B.mul(c.v, x1)), B.mul(c.w, U.point_t(pt)));
    sum ^= ctx.chi()(arg);
  }
  return sum;
}

Gf2e s_beta(const SpectrumContext& ctx, const Character& c, Elem beta) {
  const Field& B = ctx.tower().base();
  if (beta == B.zero()) throw std::invalid_argument("s_beta: beta must be nonzero");
  const Elem w1 = B.mul(c.w, ctx.w_scale());
  Gf2e sum = 0;
  for (const auto& x : ctx.circle(beta)) {
    sum ^= ctx.chi()(B.add(B.add(B.mul(c.u, x.x0), B.mul(c.v, x.x1)), B.mul(w1, x.fj)));
  }
  return sum;
}

Membership in_spectrum(const SpectrumContext& ctx, const Character& c) {
  if (!ctx.normal()) throw std::invalid_argument("in_spectrum requires a normal planar function");
  const Elem zero = ctx.tower().base().zero();
  if (c.w == zero) return {true, std::nullopt};
  if (c.u == zero && c.v == zero) return {false, std::nullopt};
  for (std::uint32_t b = 1; b < ctx.q(); ++b) {
    if (s_beta(ctx, c, Elem{b}) != 0) return {true, Elem{b}};
  }
  return {false, std::nullopt};
}

bool in_spectrum_scan(const SpectrumContext& ctx, const UnitalDesign& U, const Character& c) {
  for (std::size_t i = 0; i < U.num_blocks(); ++i) {
    if (chi_block(ctx, U, c, U.block(i)) != 0) return true;
  }
  return false;
}

std::string SpectrumResult::bitmap_hex() const {
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (std::size_t i = 0; i < member.size(); i += 8) {
    unsigned byte = 0;
    for (std::size_t k = 0; k < 8 && i + k < member.size(); ++k) byte |= (member[i + k] ? 1u : 0u) << k;
    os << std::setw(2) << byte;
  }
  return os.str();
}

std::string SpectrumResult::witness_csv() const {
  std::ostringstream os;
  os << "u,v,w,member,witness_beta\n";
  for (std::uint32_t i = 0; i < member.size(); ++i) {
    const auto c = character_at(i, q);
    os << c.u.idx << ',' << c.v.idx << ',' << c.w.idx << ',' << int{member[i]} << ',';
    if (witness_beta[i] < 0) {
      os << '-';
    } else {
      os << witness_beta[i];
    }
    os << '\n';
  }
  return os.str();
}

SpectrumResult spectrum_size(const SpectrumContext& ctx, const SpectrumOptions& opts) {
  const std::uint32_t q = ctx.q();
  const std::uint32_t n = q * q * q;
  if (!ctx.normal() && opts.design == nullptr) {
    throw std::invalid_argument("spectrum of a non-normal planar function needs the design for a block scan");
  }
  SpectrumResult r;
  r.q = q;
  r.member.assign(n, 0);
  r.witness_beta.assign(n, -1);
  auto work = [&](std::uint32_t begin, std::uint32_t end) {
    for (std::uint32_t i = begin; i < end; ++i) {
      const auto c = character_at(i, q);
      if (ctx.normal()) {
        const auto m = in_spectrum(ctx, c);
        r.member[i] = m.member;
        if (m.witness_beta) r.witness_beta[i] = m.witness_beta->idx;
      } else {
        r.member[i] = in_spectrum_scan(ctx, *opts.design, c);
      }
    }
  };
  const unsigned threads = std::max(1u, std::min(opts.threads, q));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::uint32_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint32_t b = std::min(n, t * chunk), e = std::min(n, b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  for (auto m : r.member) r.size += m;
  return r;
}

Bounds bounds(std::uint64_t p, std::uint64_t m) {
  std::uint64_t q = 1;
  for (std::uint64_t i = 0; i < m; ++i) q *= p;
  Bounds b;
  b.upper = q * q * q - q + 1;
  // q is a multiple of p, so both quotients are exact.
  b.leung_xiang = (q * q * q - q * q + q) / p * (p - 1) + q * q / p;
  if (p == 3) {
    const std::uint64_t s = m % 2 == 0 ? q * q * q + q * q - 2 * q : q * q * q + q * q + q;
    b.corollary = 2 * s / 3 - 1;
  }
  return b;
}

VerifyReport verify_trace_criterion(const SpectrumContext& ctx) {
  VerifyReport r("trace-criterion");
  const Field& B = ctx.tower().base();
  const std::uint64_t q = ctx.q(), p = B.p();
  std::int64_t qualifying = 0, zero_trace = 0;
  for (std::uint32_t w = 1; w < q; ++w) {
    const Elem scale = B.div(ctx.setup().theta1, Elem{w});
    for (std::uint32_t u = 0; u < q; ++u) {
      for (std::uint32_t v = 0; v < q; ++v) {
        const Elem arg = B.mul(B.mul(Elem{u}, Elem{v}), scale);
        if (B.abs_trace(arg) == 0) {
          ++zero_trace;
          continue;
        }
        ++qualifying;
        const Character c{Elem{u}, Elem{v}, Elem{w}};
        if (!in_spectrum(ctx, c).member) {
          r.fail("(" + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w) +
                 ") meets the trace condition but is not in the spectrum");
        }
      }
    }
  }
  const std::int64_t recount = static_cast<std::int64_t>((q - 1) * (q + (q - 1) * q / p));
  const std::int64_t without_uv0 = static_cast<std::int64_t>((q - 1) * (q - 1) * (p + q) / p);
  if (zero_trace != recount) {
    r.fail("zero-trace triples " + std::to_string(zero_trace) + " != (q-1)(q + (q-1)q/p) = " + std::to_string(recount));
  }
  r.tally("qualifying_triples", qualifying);
  r.tally("zero_trace_triples", zero_trace);
  r.tally("zero_trace_closed_form", recount);
  r.tally("zero_trace_without_uv0", without_uv0);
  r.tally("lower_bound", static_cast<std::int64_t>(q * q) + qualifying);
  return r;
}

VerifyReport verify_chi_square_lemma(const Field& F, const AdditiveCharacter& chi) {
  VerifyReport r("chi-square-sum");
  for (std::uint32_t a = 1; a < F.size(); ++a) {
    Gf2e sum = 0;
    for (std::uint32_t c = 0; c < F.size(); ++c) sum ^= chi(F.mul(Elem{a}, F.mul(Elem{c}, Elem{c})));
    if (sum != 1) r.fail("a = " + std::to_string(a) + " gives " + std::to_string(sum));
  }
  r.tally("q", F.size());
  r.tally("a_checked", F.size() - 1);
  return r;
}

VerifyReport verify_orthogonal_relation(const Field& F, const AdditiveCharacter& chi) {
  VerifyReport r("orthogonal-relation");
  for (std::uint32_t a = 0; a < F.size(); ++a) {
    Gf2e sum = 0;
    for (std::uint32_t x = 0; x < F.size(); ++x) sum ^= chi(F.mul(Elem{a}, Elem{x}));
    const Gf2e expected = a == 0 ? 1 : 0;
    if (sum != expected) r.fail("a = " + std::to_string(a) + " gives " + std::to_string(sum));
  }
  r.tally("q", F.size());
  return r;
}

VerifyReport verify_spectrum_lemma(const SpectrumContext& ctx, const UnitalDesign& U) {
  VerifyReport r("spectrum-lemma");
  const std::uint32_t q = ctx.q();
  std::int64_t w0 = 0, uv0 = 0;
  for (std::uint32_t u = 0; u < q; ++u) {
    for (std::uint32_t v = 0; v < q; ++v) {
      const Character c{Elem{u}, Elem{v}, Elem{0}};
      if (!in_spectrum_scan(ctx, U, c)) r.fail("chi_{" + std::to_string(u) + "," + std::to_string(v) + ",0} annihilates U");
      ++w0;
    }
  }
  for (std::uint32_t w = 1; w < q; ++w) {
    const Character c{Elem{0}, Elem{0}, Elem{w}};
    if (in_spectrum_scan(ctx, U, c)) r.fail("chi_{0,0," + std::to_string(w) + "} meets a block");
    ++uv0;
  }
  r.tally("w0_members", w0);
  r.tally("uv0_nonmembers", uv0);
  return r;
}

}  // namespace unital
