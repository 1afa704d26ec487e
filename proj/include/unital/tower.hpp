#pragma once

// The quadratic tower GF(q) < GF(q^2) with distinguished basis element xi.
//
// Both levels are built as extensions of GF(p) with their own moduli.  The
// embedding sends the base generator y to the smallest-index root of the base
// modulus inside GF(q^2).  xi = omega^((q+1)/2) for the primitive omega of
// GF(q^2), so xi^2 = omega^(q+1) lies in GF(q) and xi^q = -xi.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "unital/field.hpp"

namespace unital {

class Tower {
 public:
  static std::shared_ptr<const Tower> make(std::uint32_t p, std::uint32_t m,
                                           std::optional<Poly> base_modulus = std::nullopt,
                                           std::optional<Poly> ext_modulus = std::nullopt);

  const Field& base() const { return *base_; }
  const Field& ext() const { return *ext_; }
  const FieldPtr& base_ptr() const { return base_; }
  const FieldPtr& ext_ptr() const { return ext_; }

  std::uint32_t p() const { return base_->p(); }
  std::uint32_t m() const { return base_->m(); }
  std::uint32_t q() const { return base_->size(); }

  Elem xi() const { return xi_; }
  /// alpha in GF(q) with embed(alpha) == xi * xi.
  Elem alpha() const { return alpha_; }

  Elem embed(Elem c) const { return Elem{embed_[c.idx]}; }
  /// Inverse of embed on its image.
  std::optional<Elem> project(Elem x) const;

  /// x = x0 + x1 xi with x0, x1 in GF(q).
  std::pair<Elem, Elem> decompose(Elem x) const {
    return {Elem{x0_[x.idx]}, Elem{x1_[x.idx]}};
  }
  Elem recompose(Elem x0, Elem x1) const { return Elem{recompose_[std::size_t{x0.idx} * q() + x1.idx]}; }

  /// x^(q+1), projected into GF(q).
  Elem norm(Elem x) const;

 private:
  Tower() = default;

  FieldPtr base_;
  FieldPtr ext_;
  Elem xi_;
  Elem alpha_;
  std::vector<std::uint32_t> embed_;
  std::vector<std::int64_t> project_;
  std::vector<std::uint32_t> x0_, x1_;
  std::vector<std::uint32_t> recompose_;
};

using TowerPtr = std::shared_ptr<const Tower>;

/// A nonzero theta in GF(q^2) together with its coordinates relative to xi.
struct ThetaSetup {
  Elem theta;   // in GF(q^2)
  Elem theta0;  // in GF(q)
  Elem theta1;  // in GF(q)
  Elem xi;      // in GF(q^2)
  Elem alpha;   // in GF(q), xi^2
};

ThetaSetup make_theta_setup(const Tower& tower, Elem theta);

/// theta for f(x) = x^2 whose norm theta^(q+1) is a nonsquare.
///   q = 1 (mod 4): theta = xi.
///   q = 3 (mod 4): theta = theta0 + xi with theta0 the least-index element of
///                  GF(q)* making theta0^2 - alpha a nonsquare.
/// Throws std::logic_error if the resulting norm is a square.
ThetaSetup construct_theta(const Tower& tower);

}  // namespace unital
