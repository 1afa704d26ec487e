#include "unital/kloosterman.hpp"

#include <sstream>
#include <stdexcept>

namespace unital {

CyclotomicInt CyclotomicInt::canonical() const {
  std::vector<std::int64_t> c = n_;
  const std::int64_t last = c.back();
  for (auto& v : c) v -= last;
  return CyclotomicInt(std::move(c));
}

bool CyclotomicInt::is_real() const {
  const std::uint32_t n = p();
  for (std::uint32_t j = 1; j < n; ++j) {
    if (n_[j] != n_[n - j]) return false;
  }
  return true;
}

std::optional<std::int64_t> CyclotomicInt::as_integer() const {
  for (std::uint32_t j = 2; j < p(); ++j) {
    if (n_[j] != n_[1]) return std::nullopt;
  }
  // N_0 + N_1 (zeta + ... + zeta^(p-1)) = N_0 - N_1
  return n_[0] - (p() > 1 ? n_[1] : 0);
}

bool CyclotomicInt::vanishes_mod2() const {
  for (auto v : canonical().n_) {
    if (v % 2 != 0) return false;
  }
  return true;
}

CyclotomicInt lambda_sum(const Field& F, std::span<const Elem> values) {
  CyclotomicInt s(F.p());
  for (Elem c : values) s.add_power(F.abs_trace(c));
  return s;
}

LiftingCheck lambda_vanishes_mod2(const Field& F, const AdditiveCharacter& chi, std::span<const Elem> values) {
  Gf2e sum = 0;
  for (Elem c : values) sum ^= chi(c);
  return {lambda_sum(F, values).vanishes_mod2(), sum == 0};
}

std::string to_string(KloostermanCase c) {
  switch (c) {
    case KloostermanCase::A:
      return "a";
    case KloostermanCase::B:
      return "b";
    case KloostermanCase::C:
      return "c";
    case KloostermanCase::Ambiguous:
      return "ambiguous";
    case KloostermanCase::Unclassified:
      break;
  }
  return "unclassified";
}

namespace {

std::int64_t mod4(std::int64_t v) { return ((v % 4) + 4) % 4; }

}  // namespace

KloostermanRecord kloosterman(const Field& F, Elem a) {
  KloostermanRecord r;
  r.a = a;
  r.sum = CyclotomicInt(F.p());
  for (std::uint32_t x = 1; x < F.size(); ++x) {
    r.sum.add_power(F.abs_trace(F.add(F.inv(Elem{x}), F.mul(a, Elem{x}))));
  }
  if (!r.sum.is_real()) throw std::logic_error("K(" + std::to_string(a.idx) + ") is not real");
  if (F.p() == 3) {
    r.value = r.sum.as_integer();
    if (!r.value) throw std::logic_error("K(" + std::to_string(a.idx) + ") is not an integer");
    if (*r.value * *r.value > 4 * static_cast<std::int64_t>(F.size())) {
      throw std::logic_error("K(" + std::to_string(a.idx) + ") = " + std::to_string(*r.value) +
                             " exceeds the Weil bound");
    }
    r.mod4 = mod4(*r.value);
    const auto cls = classify_mod4(F, r);
    r.case_tag = cls.case_tag;
    r.t_witness = cls.t_witness;
  }
  return r;
}

std::vector<KloostermanRecord> kloosterman_table(const Field& F) {
  std::vector<KloostermanRecord> out;
  out.reserve(F.size());
  for (std::uint32_t a = 0; a < F.size(); ++a) out.push_back(kloosterman(F, Elem{a}));
  return out;
}

Mod4Classification classify_mod4(const Field& F, const KloostermanRecord& k) {
  if (F.p() != 3 || !k.value) throw std::invalid_argument("mod 4 classification needs p = 3");
  const Elem a = k.a;
  const std::int64_t m = F.m();
  Mod4Classification out;

  bool case_a = a == F.zero();
  if (!case_a && F.is_square(a)) case_a = F.abs_trace(*F.sqrt(a)) != 0;

  bool any_b = false, any_c = false;
  for (std::uint32_t t = 2; t < F.size(); ++t) {
    const Elem te{t};
    const Elem t2 = F.mul(te, te);
    if (F.sub(t2, F.mul(t2, te)) != a) continue;
    if (!out.t_witness) out.t_witness = te;
    const bool sq = F.is_square(te) || F.is_square(F.sub(F.one(), te));
    (sq ? any_b : any_c) = true;
  }

  const int hits = int{case_a} + int{any_b} + int{any_c};
  if (hits == 0) {
    out.case_tag = KloostermanCase::Unclassified;
  } else if (hits > 1) {
    out.case_tag = KloostermanCase::Ambiguous;
  } else if (case_a) {
    out.case_tag = KloostermanCase::A;
    out.predicted = 1;
    out.matches = *k.value % 2 != 0;
  } else {
    out.case_tag = any_b ? KloostermanCase::B : KloostermanCase::C;
    out.predicted = mod4(any_b ? 2 * m + 2 : 2 * m);
    out.matches = mod4(*k.value) == out.predicted;
  }
  return out;
}

ClassCounts count_classes(const Field& F) {
  if (F.p() != 3) throw std::invalid_argument("class counts need p = 3");
  const std::uint64_t q = F.size();
  const std::uint64_t m = F.m();
  ClassCounts c;
  for (const auto& k : kloosterman_table(F)) {
    const auto cls = classify_mod4(F, k);
    c.sum_of_values += *k.value;
    if (*k.value * *k.value > 4 * static_cast<std::int64_t>(q)) ++c.weil_violations;
    switch (cls.case_tag) {
      case KloostermanCase::A:
        ++c.a;
        break;
      case KloostermanCase::B:
        ++c.b;
        break;
      case KloostermanCase::C:
        ++c.c;
        break;
      case KloostermanCase::Ambiguous:
        ++c.ambiguous;
        break;
      case KloostermanCase::Unclassified:
        ++c.unclassified;
        break;
    }
    if (!cls.matches) ++c.mismatches;
    if (k.a != F.zero()) {
      const std::int64_t r = *k.mod4;
      if (r == static_cast<std::int64_t>((2 * m + 2) % 4)) ++c.b_by_residue;
      if (r == static_cast<std::int64_t>((2 * m) % 4)) ++c.c_by_residue;
    }
  }
  // 5q/12 - 5/4 = (5q - 15)/12, 5q/12 - 3/4 = (5q - 9)/12
  c.expected_b = m % 2 == 1 ? (5 * q - 15) / 12 : (5 * q - 9) / 12;
  c.expected_c = m % 2 == 1 ? (q + 1) / 4 : (q - 1) / 4;
  return c;
}

VerifyReport verify_classification(const Field& F) {
  VerifyReport r("kloosterman-mod4");
  const auto c = count_classes(F);
  if (c.mismatches) r.fail(std::to_string(c.mismatches) + " values of a disagree with their case's congruence");
  if (c.ambiguous) r.fail(std::to_string(c.ambiguous) + " values of a fall in more than one case");
  if (c.unclassified) r.fail(std::to_string(c.unclassified) + " values of a fall in no case");
  if (c.b != c.expected_b || c.b_by_residue != c.expected_b) {
    r.fail("case b count " + std::to_string(c.b) + " (by residue " + std::to_string(c.b_by_residue) + ") != " +
           std::to_string(c.expected_b));
  }
  if (c.c != c.expected_c || c.c_by_residue != c.expected_c) {
    r.fail("case c count " + std::to_string(c.c) + " (by residue " + std::to_string(c.c_by_residue) + ") != " +
           std::to_string(c.expected_c));
  }
  if (c.weil_violations) r.fail("Weil bound violated");
  if (c.a + c.b + c.c != F.size()) r.fail("cases do not partition GF(q)");
  r.tally("q", F.size());
  r.tally("case_a", static_cast<std::int64_t>(c.a));
  r.tally("case_b", static_cast<std::int64_t>(c.b));
  r.tally("case_c", static_cast<std::int64_t>(c.c));
  r.tally("expected_b", static_cast<std::int64_t>(c.expected_b));
  r.tally("expected_c", static_cast<std::int64_t>(c.expected_c));
  r.tally("sum_K", c.sum_of_values);
  return r;
}

CriterionResult thm_membership_criterion(const Tower& tower, const ThetaSetup& setup,
                                         const std::vector<KloostermanRecord>& table, Elem u, Elem v, Elem w) {
  const Field& B = tower.base();
  if (B.p() != 3) throw std::invalid_argument("the Kloosterman criterion is implemented for p = 3");
  const Elem zero = B.zero();
  if (w == zero || (u == zero) == (v == zero)) {
    throw std::invalid_argument("criterion needs w != 0 and exactly one of u, v zero");
  }
  const Elem alpha = setup.alpha;
  const Elem denom = B.mul(B.from_int(64), B.mul(w, w));
  const bool q1 = tower.q() % 4 == 1;
  const Elem s = u != zero ? u : v;
  const Elem s4 = B.pow(s, 4);
  Elem arg;
  if (q1) {
    arg = u != zero ? B.neg(B.div(B.mul(s4, alpha), denom)) : B.neg(B.div(s4, B.mul(denom, alpha)));
  } else {
    const Elem n = B.sub(B.mul(setup.theta0, setup.theta0), alpha);
    arg = u != zero ? B.div(B.mul(s4, n), denom) : B.div(B.mul(B.mul(s4, B.mul(alpha, alpha)), n), denom);
  }
  CriterionResult r;
  r.k_argument = arg;
  r.k_mod4 = *table.at(arg.idx).mod4;
  r.criterion_met = q1 ? r.k_mod4 != 2 : r.k_mod4 != 0;
  return r;
}

std::string kloosterman_csv(const Field& F, const std::vector<KloostermanRecord>& table) {
  std::ostringstream os;
  os << "# p=" << F.p() << " m=" << F.m() << " modulus=" << F.modulus_string() << '\n';
  if (F.p() != 3) {
    os << "a_index,K_coeffs\n";
    for (const auto& k : table) {
      os << k.a.idx << ',';
      const auto c = k.sum.canonical().coeffs();
      for (std::size_t j = 0; j < c.size(); ++j) os << (j ? ":" : "") << c[j];
      os << '\n';
    }
    return os.str();
  }
  os << "a_index,K,K_mod4,case,t_witness\n";
  for (const auto& k : table) {
    os << k.a.idx << ',' << *k.value << ',' << *k.mod4 << ',' << to_string(k.case_tag) << ',';
    if (k.t_witness) {
      os << k.t_witness->idx;
    } else {
      os << '-';
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace unital
