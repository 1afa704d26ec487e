#include "unital/planar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

namespace unital {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string terms_key(const std::vector<DoTerm>& terms) {
  std::ostringstream os;
  for (const auto& t : terms) os << t.i << ' ' << t.j << ' ' << t.coeff.idx << ';';
  return os.str();
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::vector<std::uint32_t> tabulate(const Field& F, auto&& fn) {
  std::vector<std::uint32_t> t(F.size());
  for (std::uint32_t x = 0; x < F.size(); ++x) t[x] = fn(Elem{x}).idx;
  return t;
}

}  // namespace

PlanarFunction PlanarFunction::square(FieldPtr field) {
  PlanarFunction f;
  f.family_ = PlanarFamily::Square;
  f.name_ = "square";
  f.terms_ = {DoTerm{0, 0, field->one()}};
  f.table_ = tabulate(*field, [&](Elem x) { return field->mul(x, x); });
  f.field_ = std::move(field);
  return f;
}

PlanarFunction PlanarFunction::coulter_matthews(FieldPtr field, std::uint32_t k) {
  if (field->p() != 3) throw std::invalid_argument("Coulter-Matthews maps need characteristic 3");
  if (std::gcd(k, 2 * field->m()) != 1) {
    throw std::invalid_argument("Coulter-Matthews k = " + std::to_string(k) +
                                " needs gcd(k, 2e) = 1 on GF(3^" + std::to_string(field->m()) + ")");
  }
  std::uint64_t d = 1;
  for (std::uint32_t i = 0; i < k; ++i) d *= 3;
  d = (d + 1) / 2;
  PlanarFunction f;
  f.family_ = PlanarFamily::CoulterMatthews;
  f.name_ = "cm:" + std::to_string(k);
  f.cm_k_ = k;
  f.table_ = tabulate(*field, [&](Elem x) { return field->pow(x, d); });
  f.field_ = std::move(field);
  return f;
}

PlanarFunction PlanarFunction::dembowski_ostrom(FieldPtr field, std::vector<DoTerm> terms) {
  for (const auto& t : terms) {
    if (t.coeff.idx >= field->size()) throw std::invalid_argument("DO coefficient index out of range");
  }
  PlanarFunction f;
  f.family_ = PlanarFamily::DembowskiOstrom;
  f.name_ = "do:" + hex64(fnv1a(terms_key(terms)));
  f.table_ = tabulate(*field, [&](Elem x) {
    Elem s = field->zero();
    for (const auto& t : terms) {
      s = field->add(s, field->mul(t.coeff, field->mul(field->frobenius(x, t.i), field->frobenius(x, t.j))));
    }
    return s;
  });
  f.terms_ = std::move(terms);
  f.field_ = std::move(field);
  return f;
}

PlanarFunction PlanarFunction::power(FieldPtr field, std::uint64_t d) {
  PlanarFunction f;
  f.family_ = PlanarFamily::Other;
  f.name_ = "pow:" + std::to_string(d);
  f.table_ = tabulate(*field, [&](Elem x) { return field->pow(x, d); });
  f.field_ = std::move(field);
  return f;
}

PlanarFunction PlanarFunction::from_table(FieldPtr field, std::vector<Elem> table, std::string name) {
  if (table.size() != field->size()) throw std::invalid_argument("table size does not match field");
  PlanarFunction f;
  f.family_ = PlanarFamily::Other;
  f.name_ = std::move(name);
  f.table_.reserve(table.size());
  for (auto e : table) f.table_.push_back(e.idx);
  f.field_ = std::move(field);
  return f;
}

std::string PlanarFunction::id() const {
  switch (family_) {
    case PlanarFamily::Square:
      return "square";
    case PlanarFamily::CoulterMatthews:
      return "cm" + std::to_string(cm_k_);
    case PlanarFamily::DembowskiOstrom:
      return "do" + hex64(fnv1a(terms_key(terms_)));
    case PlanarFamily::Other:
      break;
  }
  std::string out;
  for (char c : name_) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  return out;
}

NotPlanarError::NotPlanarError(const std::string& name, Elem witness)
    : std::runtime_error(name + " is not planar: x -> f(x+a) - f(x) is not bijective for a = " +
                         std::to_string(witness.idx)),
      witness_(witness) {}

PlanarityResult check_planar(const PlanarFunction& f, std::optional<std::size_t> sample, std::uint64_t seed) {
  const Field& F = f.field();
  const std::uint32_t n = F.size();
  PlanarityResult out;
  std::vector<std::uint32_t> hit(n, 0);
  std::uint32_t stamp = 0;
  auto check_shift = [&](std::uint32_t a) {
    ++stamp;
    ++out.shifts_checked;
    for (std::uint32_t x = 0; x < n; ++x) {
      const Elem d = F.sub(f(F.add(Elem{x}, Elem{a})), f(Elem{x}));
      if (hit[d.idx] == stamp) return false;
      hit[d.idx] = stamp;
    }
    return true;
  };
  if (sample) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(1, n - 1);
    for (std::size_t s = 0; s < *sample; ++s) {
      const std::uint32_t a = dist(rng);
      if (!check_shift(a)) {
        out.planar = false;
        out.witness = Elem{a};
        return out;
      }
    }
    return out;
  }
  for (std::uint32_t a = 1; a < n; ++a) {
    if (!check_shift(a)) {
      out.planar = false;
      out.witness = Elem{a};
      return out;
    }
  }
  return out;
}

bool is_planar(const PlanarFunction& f) { return check_planar(f).planar; }

bool is_normal(const PlanarFunction& f) {
  const Field& F = f.field();
  if (f(F.zero()) != F.zero()) return false;
  // Every nonzero x must share its value only with -x.
  std::vector<std::int64_t> first(F.size(), -1);
  for (std::uint32_t x = 1; x < F.size(); ++x) {
    const Elem v = f(Elem{x});
    if (v == F.zero()) return false;
    if (first[v.idx] < 0) {
      first[v.idx] = x;
    } else if (F.neg(Elem{static_cast<std::uint32_t>(first[v.idx])}) != Elem{x}) {
      return false;
    }
  }
  return true;
}

ComponentPair components(const PlanarFunction& f, const Tower& tower) {
  if (f.field().size() != tower.ext().size() || f.field().modulus() != tower.ext().modulus()) {
    throw std::invalid_argument("planar function is not defined on the tower's GF(q^2)");
  }
  ComponentPair c;
  c.f0.resize(f.field().size());
  c.f1.resize(f.field().size());
  for (std::uint32_t x = 0; x < f.field().size(); ++x) {
    const auto [a, b] = tower.decompose(f(Elem{x}));
    c.f0[x] = a.idx;
    c.f1[x] = b.idx;
  }
  return c;
}

std::vector<std::uint32_t> coulter_matthews_ks(std::uint32_t e) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k < e; ++k) {
    if (std::gcd(k, 2 * e) == 1) out.push_back(k);
  }
  return out;
}

std::vector<PlanarFunction> registry_list(const Tower& tower) {
  std::vector<PlanarFunction> out;
  out.push_back(PlanarFunction::square(tower.ext_ptr()));
  if (tower.p() == 3) {
    for (auto k : coulter_matthews_ks(tower.ext().m())) {
      out.push_back(PlanarFunction::coulter_matthews(tower.ext_ptr(), k));
    }
  }
  for (const auto& f : out) {
    const auto r = check_planar(f);
    if (!r.planar) throw NotPlanarError(f.name(), *r.witness);
  }
  return out;
}

std::vector<DoTerm> parse_do_table(std::istream& in, const Field& field) {
  std::vector<DoTerm> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long i, j, a;
    if (!(ls >> i)) continue;
    if (!(ls >> j >> a) || i < 0 || j < 0 || a < 0) {
      throw std::invalid_argument("DO table line " + std::to_string(lineno) + ": expected 'i j a_ij_index'");
    }
    std::string extra;
    if (ls >> extra) throw std::invalid_argument("DO table line " + std::to_string(lineno) + ": trailing text");
    if (static_cast<std::uint64_t>(a) >= field.size()) {
      throw std::invalid_argument("DO table line " + std::to_string(lineno) + ": coefficient index out of range");
    }
    terms.push_back(DoTerm{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                           Elem{static_cast<std::uint32_t>(a)}});
  }
  return terms;
}

PlanarFunction register_user(FieldPtr field, std::vector<DoTerm> terms) {
  auto f = PlanarFunction::dembowski_ostrom(std::move(field), std::move(terms));
  const auto r = check_planar(f);
  if (!r.planar) throw NotPlanarError(f.name(), *r.witness);
  return f;
}

PlanarFunction planar_from_selector(const std::string& selector, FieldPtr field) {
  if (selector == "square") return PlanarFunction::square(std::move(field));
  const auto colon = selector.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown planar function '" + selector + "'");
  const std::string kind = selector.substr(0, colon);
  const std::string arg = selector.substr(colon + 1);
  if (kind == "cm") return PlanarFunction::coulter_matthews(std::move(field), std::stoul(arg));
  if (kind == "pow") return PlanarFunction::power(std::move(field), std::stoull(arg));
  if (kind == "user") {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot open DO table '" + arg + "'");
    auto terms = parse_do_table(in, *field);
    return register_user(std::move(field), std::move(terms));
  }
  throw std::invalid_argument("unknown planar function '" + selector + "'");
}

}  // namespace unital
