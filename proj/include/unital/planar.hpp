#pragma once

// Planar functions on GF(q^2), tabulated over the whole field.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unital/field.hpp"
#include "unital/tower.hpp"

namespace unital {

enum class PlanarFamily { Square, CoulterMatthews, DembowskiOstrom, Other };

/// One term a x^(p^i + p^j) of a Dembowski-Ostrom polynomial.
struct DoTerm {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  Elem coeff;
};

class PlanarFunction {
 public:
  static PlanarFunction square(FieldPtr field);
  /// x^((3^k+1)/2) on GF(3^e); requires p = 3 and gcd(k, 2e) = 1.
  static PlanarFunction coulter_matthews(FieldPtr field, std::uint32_t k);
  static PlanarFunction dembowski_ostrom(FieldPtr field, std::vector<DoTerm> terms);
  static PlanarFunction power(FieldPtr field, std::uint64_t d);
  static PlanarFunction from_table(FieldPtr field, std::vector<Elem> table, std::string name);

  PlanarFamily family() const { return family_; }
  /// Selector-style name: "square", "cm:3", "do:<hash>", ...
  const std::string& name() const { return name_; }
  /// Filesystem-safe identifier used in cache paths.
  std::string id() const;
  std::uint32_t cm_k() const { return cm_k_; }
  const std::vector<DoTerm>& do_terms() const { return terms_; }

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  Elem operator()(Elem x) const { return Elem{table_[x.idx]}; }
  const std::vector<std::uint32_t>& table() const { return table_; }

 private:
  PlanarFunction() = default;

  PlanarFamily family_ = PlanarFamily::Other;
  std::string name_;
  std::uint32_t cm_k_ = 0;
  std::vector<DoTerm> terms_;
  FieldPtr field_;
  std::vector<std::uint32_t> table_;
};

class NotPlanarError : public std::runtime_error {
 public:
  NotPlanarError(const std::string& name, Elem witness);
  Elem witness() const { return witness_; }

 private:
  Elem witness_;
};

struct PlanarityResult {
  bool planar = true;
  std::optional<Elem> witness;  // a != 0 whose difference map is not bijective
  std::uint64_t shifts_checked = 0;
};

/// Difference-map bijectivity for every a != 0, or for `sample` random a.
PlanarityResult check_planar(const PlanarFunction& f, std::optional<std::size_t> sample = std::nullopt,
                             std::uint64_t seed = 1);
bool is_planar(const PlanarFunction& f);

/// f(0) = 0 and f(a) = f(b) exactly when a = +-b.
bool is_normal(const PlanarFunction& f);

/// f(x) = f0(x) + f1(x) xi with f0, f1 valued in GF(q).
struct ComponentPair {
  std::vector<std::uint32_t> f0;
  std::vector<std::uint32_t> f1;

  Elem c0(Elem x) const { return Elem{f0[x.idx]}; }
  Elem c1(Elem x) const { return Elem{f1[x.idx]}; }
};

ComponentPair components(const PlanarFunction& f, const Tower& tower);

/// Coulter-Matthews exponents k admissible on GF(3^e): 1 < k < e, gcd(k, 2e) = 1.
std::vector<std::uint32_t> coulter_matthews_ks(std::uint32_t e);

/// Built-in planar functions on GF(q^2): the square map, then Coulter-Matthews
/// maps when p = 3.  Every entry has passed is_planar.
std::vector<PlanarFunction> registry_list(const Tower& tower);

/// Parses lines "i j a_ij_index"; '#' starts a comment.
std::vector<DoTerm> parse_do_table(std::istream& in, const Field& field);

/// Admits a user Dembowski-Ostrom table; throws NotPlanarError with the
/// witnessing a when the polynomial is not planar.
PlanarFunction register_user(FieldPtr field, std::vector<DoTerm> terms);

/// "square", "cm:<k>", "pow:<d>" or "user:<path>".
PlanarFunction planar_from_selector(const std::string& selector, FieldPtr field);

}  // namespace unital
