#pragma once

// Character spectrum of U_theta: the additive characters
//   chi_{u,v,w}(x, t theta) = chi(u x0 + v x1 + w t),  (u, v, w) in GF(q)^3,
// of T_theta that do not vanish on every block of the punctured design.  Its
// size is the 2-rank of U_theta.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unital/char_field.hpp"
#include "unital/planar.hpp"
#include "unital/report.hpp"
#include "unital/tower.hpp"
#include "unital/unital.hpp"

namespace unital {

struct Character {
  Elem u, v, w;
};

/// Characters are numbered (u*q + v)*q + w by element index.
inline std::uint32_t character_index(const Character& c, std::uint32_t q) {
  return (c.u.idx * q + c.v.idx) * q + c.w.idx;
}
inline Character character_at(std::uint32_t i, std::uint32_t q) {
  return {Elem{i / (q * q)}, Elem{i / q % q}, Elem{i % q}};
}

/// Everything the spectrum engine reads: the circles C_{0,beta} with their
/// points' coordinates, and chi tabulated over GF(q).
class SpectrumContext {
 public:
  SpectrumContext(TowerPtr tower, const PlanarFunction& f, ComponentPair comps, ThetaSetup setup);

  const Tower& tower() const { return *tower_; }
  const ThetaSetup& setup() const { return setup_; }
  const ComponentPair& comps() const { return comps_; }
  const AdditiveCharacter& chi() const { return chi_; }
  const CharField& values() const { return chi_.values(); }
  std::uint32_t q() const { return tower_->q(); }
  bool normal() const { return normal_; }

  struct CirclePoint {
    Elem x0, x1, fj;  // fj = f1 when theta1 != 0, else f0
  };
  const std::vector<CirclePoint>& circle(Elem beta) const { return circles_[beta.idx]; }
  /// 1/theta1, or 1/theta0 when theta1 = 0.
  Elem w_scale() const { return w_scale_; }
  bool uses_f1() const { return uses_f1_; }

 private:
  TowerPtr tower_;
  ThetaSetup setup_;
  ComponentPair comps_;
  AdditiveCharacter chi_;
  bool normal_;
  bool uses_f1_;
  Elem w_scale_;
  std::vector<std::vector<CirclePoint>> circles_;
};

/// chi_{u,v,w} summed over a block of the punctured design; (inf) is skipped.
Gf2e chi_block(const SpectrumContext& ctx, const UnitalDesign& U, const Character& c,
               std::span<const std::uint32_t> block);

/// S(beta) = sum over x in C_{0,beta} of chi(u x0 + v x1 + w' fj(x)).
/// Throws std::invalid_argument if beta == 0.
Gf2e s_beta(const SpectrumContext& ctx, const Character& c, Elem beta);

struct Membership {
  bool member = false;
  std::optional<Elem> witness_beta;  // first beta with S(beta) != 0
};

/// Membership through S(beta).  Throws std::invalid_argument for a non-normal f.
Membership in_spectrum(const SpectrumContext& ctx, const Character& c);

/// Membership by summing chi over every block of U; valid for any planar f.
bool in_spectrum_scan(const SpectrumContext& ctx, const UnitalDesign& U, const Character& c);

struct SpectrumResult {
  std::uint32_t q = 0;
  std::vector<std::uint8_t> member;              // by character_index
  std::vector<std::int64_t> witness_beta;        // -1 when none
  std::uint64_t size = 0;

  /// Bitmap of member, least significant bit first within each byte, as hex.
  std::string bitmap_hex() const;
  /// "u,v,w,member,witness_beta" with element indices; "-" for no witness.
  std::string witness_csv() const;
};

struct SpectrumOptions {
  unsigned threads = 1;
  /// Needed only when f is not normal.
  const UnitalDesign* design = nullptr;
};

SpectrumResult spectrum_size(const SpectrumContext& ctx, const SpectrumOptions& opts = {});

struct Bounds {
  std::uint64_t upper = 0;
  std::uint64_t leung_xiang = 0;
  std::optional<std::uint64_t> corollary;  // p = 3
};

/// upper = q^3 - q + 1; leung_xiang = (q^3 - q^2 + q)(p-1)/p + q^2/p;
/// corollary = (2/3)(q^3 + q^2 - 2q) - 1 (m even) or (2/3)(q^3 + q^2 + q) - 1 (m odd).
Bounds bounds(std::uint64_t p, std::uint64_t m);

/// Every (u, v, w) with w != 0 and Tr(u v theta1 / w) != 0 is in the spectrum.
/// Also counts Z = {(u, v, w) : w != 0, Tr(u v theta1/w) = 0} and compares
/// with (q-1)(q + (q-1)q/p).  Requires f = x^2.
VerifyReport verify_trace_criterion(const SpectrumContext& ctx);

/// sum over c in GF(q) of chi(a c^2) = 1 for every a != 0.
VerifyReport verify_chi_square_lemma(const Field& F, const AdditiveCharacter& chi);

/// sum over x in GF(q) of chi(a x) = [a == 0].
VerifyReport verify_orthogonal_relation(const Field& F, const AdditiveCharacter& chi);

/// chi_{u,v,0} is in the spectrum and chi_{0,0,w} is not, by block scan over U.
VerifyReport verify_spectrum_lemma(const SpectrumContext& ctx, const UnitalDesign& U);

}  // namespace unital
