#include "unital/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace unital {

namespace {

constexpr std::uint32_t kAddTableMaxSize = 1024;
constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 24;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial mod.
Poly poly_rem(Poly a, const Poly& mod, std::uint32_t p) {
  trim(a);
  const std::size_t dm = mod.size() - 1;
  while (a.size() > dm) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>(
          (a[shift + i] + static_cast<std::uint64_t>(p - lead) * mod[i]) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_rem(std::move(r), mod, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod, std::uint32_t p) {
  Poly result{1};
  base = poly_rem(std::move(base), mod, p);
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, mod, p);
    base = poly_mulmod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// True when y has multiplicative order p^m - 1 modulo an irreducible `mod`.
bool root_is_primitive(const Poly& mod, std::uint32_t p) {
  const std::uint32_t m = static_cast<std::uint32_t>(mod.size() - 1);
  const std::uint64_t n = ipow(p, m) - 1;
  const Poly y = (m == 1) ? Poly{static_cast<std::uint32_t>((p - mod[0]) % p)} : Poly{0, 1};
  Poly yy = y;
  trim(yy);
  if (yy.empty()) return false;
  for (std::uint64_t r : prime_factors(n)) {
    Poly t = poly_powmod(yy, n / r, mod, p);
    if (t == Poly{1}) return false;
  }
  return true;
}

Poly index_to_poly(std::uint64_t index, std::uint32_t p, std::uint32_t m) {
  Poly c(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    c[i] = static_cast<std::uint32_t>(index % p);
    index /= p;
  }
  return c;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_irreducible(const Poly& modulus, std::uint32_t p) {
  if (modulus.size() < 2 || modulus.back() != 1) return false;
  const std::uint32_t deg = static_cast<std::uint32_t>(modulus.size() - 1);
  if (deg == 1) return true;
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly divisor = index_to_poly(k, p, d);
      divisor.push_back(1);
      if (poly_rem(modulus, divisor, p).empty()) return false;
    }
  }
  return true;
}

Poly default_modulus(std::uint32_t p, std::uint32_t m) {
  const std::uint64_t count = ipow(p, m);
  std::optional<Poly> first_irreducible;
  for (std::uint64_t k = 0; k < count; ++k) {
    // c0 is the most significant key of the lexicographic order.
    Poly c(m + 1, 0);
    std::uint64_t rest = k;
    for (std::uint32_t i = m; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    c[m] = 1;
    if (!is_irreducible(c, p)) continue;
    if (!first_irreducible) first_irreducible = c;
    if (root_is_primitive(c, p)) return c;
  }
  if (first_irreducible) return *first_irreducible;
  throw std::logic_error("no irreducible polynomial found");
}

std::string modulus_to_string(const Poly& modulus) {
  std::ostringstream os;
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    if (i) os << ',';
    os << modulus[i];
  }
  return os.str();
}

Poly modulus_from_string(const std::string& text) {
  Poly out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty coefficient in modulus '" + text + "'");
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad coefficient '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t m, std::optional<Poly> modulus) {
  if (p == 2 || !is_prime(p)) {
    throw std::invalid_argument("characteristic must be an odd prime, got " + std::to_string(p));
  }
  if (m == 0) throw std::invalid_argument("extension degree must be >= 1");
  const std::uint64_t size = ipow(p, m);
  if (size > kMaxFieldSize) {
    throw std::invalid_argument("field of order " + std::to_string(size) + " is too large");
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->m_ = m;
  f->size_ = static_cast<std::uint32_t>(size);
  if (modulus) {
    Poly mod = *modulus;
    if (mod.size() != m + 1 || mod.back() != 1) {
      throw std::invalid_argument("modulus " + modulus_to_string(mod) +
                                  " is not monic of degree " + std::to_string(m));
    }
    for (auto c : mod) {
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (!is_irreducible(mod, p)) {
      throw std::invalid_argument("modulus " + modulus_to_string(mod) + " is reducible over GF(" +
                                  std::to_string(p) + ")");
    }
    f->modulus_ = std::move(mod);
  } else {
    f->modulus_ = default_modulus(p, m);
  }
  f->build_tables();
  return f;
}

void Field::build_tables() {
  pow_p_.resize(m_ + 1);
  pow_p_[0] = 1;
  for (std::uint32_t i = 1; i <= m_; ++i) pow_p_[i] = pow_p_[i - 1] * p_;

  neg_.resize(size_);
  for (std::uint32_t x = 0; x < size_; ++x) {
    Poly c = index_to_poly(x, p_, m_);
    for (auto& v : c) v = (p_ - v) % p_;
    neg_[x] = from_coeffs(c).idx;
  }

  // Primitive element: smallest index of full order, by polynomial arithmetic.
  const std::uint64_t n = size_ - 1;
  const auto factors = prime_factors(n);
  std::uint32_t omega = 0;
  for (std::uint32_t cand = 1; cand < size_ && omega == 0; ++cand) {
    Poly c = index_to_poly(cand, p_, m_);
    trim(c);
    bool full = true;
    for (auto r : factors) {
      if (poly_powmod(c, n / r, modulus_, p_) == Poly{1}) {
        full = false;
        break;
      }
    }
    if (full) omega = cand;
  }

  exp_.assign(2 * n, 0);
  log_.assign(size_, 0);
  Poly cur{1};
  const Poly w = [&] {
    Poly c = index_to_poly(omega, p_, m_);
    trim(c);
    return c;
  }();
  for (std::uint64_t k = 0; k < n; ++k) {
    Poly padded = cur;
    padded.resize(m_, 0);
    const std::uint32_t idx = from_coeffs(padded).idx;
    exp_[k] = idx;
    exp_[k + n] = idx;
    log_[idx] = static_cast<std::uint32_t>(k);
    cur = poly_mulmod(cur, w, modulus_, p_);
  }

  if (size_ <= kAddTableMaxSize) {
    add_table_.resize(std::size_t{size_} * size_);
    for (std::uint32_t a = 0; a < size_; ++a) {
      for (std::uint32_t b = 0; b < size_; ++b) {
        add_table_[std::size_t{a} * size_ + b] = static_cast<std::uint16_t>(add_digits(Elem{a}, Elem{b}).idx);
      }
    }
  } else {
    zech_.resize(n);
    for (std::uint64_t k = 0; k < n; ++k) zech_[k] = add_digits(one(), Elem{exp_[k]}).idx;
  }

  abs_trace_.resize(size_);
  for (std::uint32_t x = 0; x < size_; ++x) {
    Elem t = zero();
    Elem y{x};
    for (std::uint32_t i = 0; i < m_; ++i) {
      t = add(t, y);
      y = pow(y, p_);
    }
    abs_trace_[x] = t.idx;  // lies in the prime field, so the index is the value
  }
}

Elem Field::add_digits(Elem a, Elem b) const {
  std::uint32_t x = a.idx, y = b.idx, r = 0;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pow_p_[i];
    x /= p_;
    y /= p_;
  }
  return Elem{r};
}

Elem Field::element(std::uint32_t index) const {
  if (index >= size_) throw std::out_of_range("element index out of range");
  return Elem{index};
}

Elem Field::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return Elem{static_cast<std::uint32_t>(r)};
}

Elem Field::from_coeffs(const Poly& coeffs) const {
  if (coeffs.size() > m_) throw std::invalid_argument("too many coefficients");
  std::uint32_t r = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) r += (coeffs[i] % p_) * pow_p_[i];
  return Elem{r};
}

Poly Field::coeffs(Elem x) const { return index_to_poly(x.idx, p_, m_); }

Elem Field::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return Elem{add_table_[std::size_t{a.idx} * size_ + b.idx]};
  if (a.idx == 0) return b;
  if (b.idx == 0) return a;
  const std::uint32_t n = size_ - 1;
  const std::uint32_t la = log_[a.idx];
  const std::uint32_t lb = log_[b.idx];
  const std::uint32_t k = lb >= la ? lb - la : lb + n - la;
  const std::uint32_t s = zech_[k];
  if (s == 0) return zero();
  return Elem{exp_[la + log_[s]]};
}

Elem Field::neg(Elem a) const { return Elem{neg_[a.idx]}; }

Elem Field::mul(Elem a, Elem b) const {
  if (a.idx == 0 || b.idx == 0) return zero();
  return Elem{exp_[log_[a.idx] + log_[b.idx]]};
}

Elem Field::inv(Elem a) const {
  if (a.idx == 0) throw std::domain_error("inverse of zero");
  const std::uint32_t n = size_ - 1;
  return Elem{exp_[(n - log_[a.idx]) % n]};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.idx == 0) return zero();
  const std::uint64_t n = size_ - 1;
  return Elem{exp_[(std::uint64_t{log_[a.idx]} * (e % n)) % n]};
}

Elem Field::frobenius(Elem x, std::uint32_t k) const {
  return pow(x, ipow(p_, k % m_));
}

std::uint32_t Field::log(Elem x) const {
  if (x.idx == 0) throw std::domain_error("log of zero");
  return log_[x.idx];
}

std::uint64_t Field::order(Elem x) const {
  if (x.idx == 0) throw std::domain_error("order of zero");
  const std::uint64_t n = size_ - 1;
  std::uint64_t l = log_[x.idx];
  std::uint64_t a = n, b = l;
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return n / a;
}

Elem Field::trace(Elem x, std::uint32_t sub_degree) const {
  if (sub_degree == 0 || m_ % sub_degree != 0) {
    throw std::invalid_argument("trace: sub_degree " + std::to_string(sub_degree) +
                                " does not divide " + std::to_string(m_));
  }
  Elem t = zero();
  Elem y = x;
  for (std::uint32_t i = 0; i < m_ / sub_degree; ++i) {
    t = add(t, y);
    y = frobenius(y, sub_degree);
  }
  return t;
}

int Field::quadratic_character(Elem x) const {
  if (x.idx == 0) return 0;
  return (log_[x.idx] % 2 == 0) ? 1 : -1;
}

std::optional<Elem> Field::sqrt(Elem x) const {
  if (x.idx == 0) return zero();
  const std::uint32_t l = log_[x.idx];
  if (l % 2) return std::nullopt;
  const Elem r{exp_[l / 2]};
  const Elem s = neg(r);
  return std::min(r, s);
}

}  // namespace unital
