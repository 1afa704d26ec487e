#pragma once

// Kloosterman sums K(a) = sum over x != 0 of lambda(1/x + a x), with
// lambda(t) = zeta_p^Tr(t), held exactly as cyclotomic integers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unital/char_field.hpp"
#include "unital/field.hpp"
#include "unital/report.hpp"
#include "unital/tower.hpp"

namespace unital {

/// sum_j N_j zeta_p^j.  The canonical form uses 1 + zeta + ... + zeta^(p-1) = 0
/// to make N_{p-1} zero.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(std::uint32_t p) : n_(p, 0) {}
  explicit CyclotomicInt(std::vector<std::int64_t> coeffs) : n_(std::move(coeffs)) {}

  std::uint32_t p() const { return static_cast<std::uint32_t>(n_.size()); }
  std::int64_t coeff(std::uint32_t j) const { return n_[j % n_.size()]; }
  void add_power(std::uint32_t j, std::int64_t times = 1) { n_[j % n_.size()] += times; }
  const std::vector<std::int64_t>& coeffs() const { return n_; }

  CyclotomicInt canonical() const;
  /// Real iff N_j = N_{p-j} for all j.
  bool is_real() const;
  /// The integer value when every N_j with j > 0 agrees.
  std::optional<std::int64_t> as_integer() const;
  /// Every canonical coefficient is even.
  bool vanishes_mod2() const;

  friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.canonical().n_ == b.canonical().n_;
  }

 private:
  std::vector<std::int64_t> n_;
};

/// sum of lambda(c) over the multiset.
CyclotomicInt lambda_sum(const Field& F, std::span<const Elem> values);

struct LiftingCheck {
  bool lambda_vanishes_mod2 = false;
  bool chi_sum_zero = false;
};

/// Evaluates the multiset both as a cyclotomic integer and in GF(2^e).
/// lambda vanishing mod 2 forces the GF(2^e) sum to vanish; the converse
/// holds when 2 is inert in Q(zeta_p), i.e. ord_p(2) = p - 1.
LiftingCheck lambda_vanishes_mod2(const Field& F, const AdditiveCharacter& chi, std::span<const Elem> values);

enum class KloostermanCase { A, B, C, Ambiguous, Unclassified };

std::string to_string(KloostermanCase c);

struct KloostermanRecord {
  Elem a;
  CyclotomicInt sum{3};
  std::optional<std::int64_t> value;  // p = 3
  std::optional<std::int64_t> mod4;   // p = 3, in [0, 4)
  KloostermanCase case_tag = KloostermanCase::Unclassified;  // p = 3
  std::optional<Elem> t_witness;  // smallest t with a = t^2 - t^3, t not in {0, 1}
};

/// Exact K(a).  For p = 3 also the integer value, checked to be real and
/// within the Weil bound 2 sqrt(q); throws std::logic_error otherwise.
KloostermanRecord kloosterman(const Field& F, Elem a);

/// K(a) for every a, indexed by a.
std::vector<KloostermanRecord> kloosterman_table(const Field& F);

struct Mod4Classification {
  KloostermanCase case_tag = KloostermanCase::Unclassified;
  std::optional<Elem> t_witness;
  /// 1 means odd for case A; otherwise the predicted residue mod 4.
  std::int64_t predicted = -1;
  bool matches = false;
};

/// p = 3 only: (A) a = 0 or a square with Tr(sqrt a) != 0, K odd;
/// (B) a = t^2 - t^3, t not in {0, 1}, t or 1 - t square, K = 2m + 2 (mod 4);
/// (C) as (B) with both nonsquares, K = 2m (mod 4).
/// Throws std::invalid_argument for p != 3.
Mod4Classification classify_mod4(const Field& F, const KloostermanRecord& k);

struct ClassCounts {
  std::uint64_t a = 0;  // over all of GF(q), including a = 0
  std::uint64_t b = 0;  // over GF(q)*
  std::uint64_t c = 0;
  std::uint64_t ambiguous = 0;
  std::uint64_t unclassified = 0;
  std::uint64_t mismatches = 0;       // predicted residue != K mod 4
  std::uint64_t b_by_residue = 0;     // #{a != 0 : K = 2m + 2 mod 4}
  std::uint64_t c_by_residue = 0;     // #{a != 0 : K = 2m mod 4}
  std::uint64_t expected_b = 0;
  std::uint64_t expected_c = 0;
  std::int64_t sum_of_values = 0;     // sum over all a of K(a)
  std::uint64_t weil_violations = 0;
};

/// Classifies every a in GF(3^m) and compares with 5q/12 - 5/4, (q+1)/4 (m
/// odd) and 5q/12 - 3/4, (q-1)/4 (m even).
ClassCounts count_classes(const Field& F);
VerifyReport verify_classification(const Field& F);

struct CriterionResult {
  bool criterion_met = false;
  Elem k_argument;
  std::int64_t k_mod4 = 0;
};

/// For f = x^2, theta from construct_theta, p = 3, exactly one of u, v zero
/// and w != 0.  With 64 computed in GF(q):
///   q = 1 (mod 4): K(-u^4 alpha/(64 w^2)) != 2, resp. K(-v^4/(64 w^2 alpha)) != 2  (mod 4)
///   q = 3 (mod 4): K(u^4 (theta0^2 - alpha)/(64 w^2)) != 0,
///                  resp. K(v^4 alpha^2 (theta0^2 - alpha)/(64 w^2)) != 0  (mod 4)
/// Throws std::invalid_argument for other (u, v, w) or p != 3.
CriterionResult thm_membership_criterion(const Tower& tower, const ThetaSetup& setup,
                                         const std::vector<KloostermanRecord>& table, Elem u, Elem v, Elem w);

/// CSV "a_index,K,K_mod4,case,t_witness" preceded by a "# p=.. m=.. modulus=.." line.
/// For p != 3 the columns are "a_index,K_coeffs" with the canonical N_0:...:N_{p-1}.
std::string kloosterman_csv(const Field& F, const std::vector<KloostermanRecord>& table);

}  // namespace unital
