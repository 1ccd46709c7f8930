#pragma once

// Exact arithmetic in GF(p^r) with a fixed polynomial-basis representation.
//
// A FieldDesc is built once per (p, r) and cached in a process-wide registry;
// construction is deterministic, so encodings are reproducible across runs.
// Elements are carried as canonical integer encodings enc = sum coeffs[i]*p^i
// together with a pointer to their owning field.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "lrsub/numeric.hpp"

namespace lrsub {

namespace detail {

// Raw dense polynomials over GF(p), little-endian coefficient vectors.
// These bootstrap field construction (modulus search, primitive search)
// before a FieldDesc exists.
using RawPoly = std::vector<uint64_t>;

inline void rp_trim(RawPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline RawPoly rp_mod(RawPoly a, const RawPoly& m, uint64_t p) {
  // m monic
  while (a.size() >= m.size()) {
    uint64_t lead = a.back();
    size_t shift = a.size() - m.size();
    if (lead != 0) {
      for (size_t i = 0; i < m.size(); ++i) {
        uint64_t sub = mulmod_u64(lead, m[i], p);
        a[shift + i] = (a[shift + i] + p - sub) % p;
      }
    }
    a.pop_back();
  }
  rp_trim(a);
  return a;
}

inline RawPoly rp_mulmod(const RawPoly& a, const RawPoly& b, const RawPoly& m,
                         uint64_t p) {
  if (a.empty() || b.empty()) return {};
  RawPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  return rp_mod(std::move(c), m, p);
}

inline RawPoly rp_powmod(RawPoly base, uint64_t e, const RawPoly& m,
                         uint64_t p) {
  RawPoly r{1};
  base = rp_mod(std::move(base), m, p);
  while (e > 0) {
    if (e & 1) r = rp_mulmod(r, base, m, p);
    e >>= 1;
    if (e) base = rp_mulmod(base, base, m, p);
  }
  return r;
}

inline RawPoly rp_gcd(RawPoly a, RawPoly b, uint64_t p) {
  rp_trim(a);
  rp_trim(b);
  while (!b.empty()) {
    // reduce a mod b (b made monic on the fly)
    uint64_t lead = b.back();
    if (lead != 1) {
      // lead^{-1} mod p by Fermat
      uint64_t inv = 1, base = lead, e = p - 2;
      while (e) {
        if (e & 1) inv = mulmod_u64(inv, base, p);
        base = mulmod_u64(base, base, p);
        e >>= 1;
      }
      for (auto& c : b) c = mulmod_u64(c, inv, p);
    }
    a = rp_mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

// Rabin irreducibility test for monic f of degree r over GF(p):
// x^{p^r} == x mod f, and gcd(x^{p^{r/l}} - x, f) == 1 for prime l | r.
inline bool rp_irreducible(const RawPoly& f, uint64_t p) {
  size_t r = f.size() - 1;
  if (r == 0) return false;
  if (r == 1) return true;
  if (f[0] == 0) return false;  // divisible by x
  RawPoly x{0, 1};
  // iterated Frobenius: xp[k] = x^{p^k} mod f
  RawPoly cur = x;
  std::vector<RawPoly> frob(r + 1);
  frob[0] = x;
  for (size_t k = 1; k <= r; ++k) {
    cur = rp_powmod(cur, p, f, p);
    frob[k] = cur;
  }
  RawPoly top = frob[r];
  // x^{p^r} - x must vanish mod f
  RawPoly diff = top;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = (diff[1] + p - 1) % p;
  rp_trim(diff);
  if (!diff.empty()) return false;
  for (uint64_t l : prime_factors(r)) {
    RawPoly d = frob[r / l];
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    rp_trim(d);
    RawPoly g = rp_gcd(f, d, p);
    if (!(g.size() == 1)) return false;
  }
  return true;
}

}  // namespace detail

class FieldDesc;
class Poly;

struct FieldElement {
  const FieldDesc* field = nullptr;
  uint64_t enc = 0;

  bool is_zero() const { return enc == 0; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field == b.field && a.enc == b.enc;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }
  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    return a.enc < b.enc;
  }
};

// Immutable descriptor of GF(p^r). Obtain through FieldDesc::get (or the
// make_field free function); never constructed directly.
class FieldDesc {
 public:
  static constexpr uint64_t kTableCap = uint64_t(1) << 20;

  static const FieldDesc& get(uint64_t p, unsigned r);

  uint64_t p() const { return p_; }
  unsigned r() const { return r_; }
  uint64_t q() const { return q_; }
  // Monic irreducible modulus, constant term first, length r+1.
  const std::vector<uint64_t>& modulus() const { return mod_; }

  FieldElement zero() const { return {this, 0}; }
  FieldElement one() const { return {this, one_enc_}; }
  FieldElement primitive() const { return {this, prim_}; }
  FieldElement element(uint64_t enc) const {
    if (enc >= q_) throw DomainError("element: encoding out of range");
    return {this, enc};
  }
  // Scalar c in [0, p) as a field element.
  FieldElement scalar(uint64_t c) const { return {this, c % p_}; }

  std::vector<uint64_t> coeffs(uint64_t enc) const {
    std::vector<uint64_t> c(r_);
    for (unsigned i = 0; i < r_; ++i) {
      c[i] = enc % p_;
      enc /= p_;
    }
    return c;
  }
  uint64_t encode(const std::vector<uint64_t>& c) const {
    uint64_t enc = 0;
    for (size_t i = c.size(); i-- > 0;) enc = enc * p_ + (c[i] % p_);
    return enc;
  }

  uint64_t add(uint64_t a, uint64_t b) const {
    if (p_ == 2) return a ^ b;
    uint64_t out = 0, mul = 1;
    for (unsigned i = 0; i < r_; ++i) {
      uint64_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      out += ((da + db) % p_) * mul;
      mul *= p_;
    }
    return out;
  }
  uint64_t neg(uint64_t a) const {
    if (p_ == 2) return a;
    uint64_t out = 0, mul = 1;
    for (unsigned i = 0; i < r_; ++i) {
      uint64_t da = a % p_;
      a /= p_;
      out += (da == 0 ? 0 : p_ - da) * mul;
      mul *= p_;
    }
    return out;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

  uint64_t mul(uint64_t a, uint64_t b) const {
    if (a == 0 || b == 0) return 0;
    if (tables_) {
      uint64_t s = log_[a] + log_[b];
      if (s >= q_ - 1) s -= q_ - 1;
      return exp_[s];
    }
    return mul_raw(a, b);
  }
  uint64_t inv(uint64_t a) const {
    if (a == 0) throw DomainError("inv: zero");
    if (tables_) {
      uint64_t l = log_[a];
      return exp_[l == 0 ? 0 : q_ - 1 - l];
    }
    return pow_enc(a, q_ - 2);
  }
  uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }

  // a^e with 0^0 = 1.
  uint64_t pow_enc(uint64_t a, uint64_t e) const {
    if (e == 0) return one_enc_;
    if (a == 0) return 0;
    if (tables_) {
      uint64_t l = log_[a];
      uint64_t idx = static_cast<uint64_t>(
          (static_cast<unsigned __int128>(l) * (e % (q_ - 1))) % (q_ - 1));
      return exp_[idx];
    }
    uint64_t r = one_enc_, b = a;
    while (e > 0) {
      if (e & 1) r = mul_raw(r, b);
      e >>= 1;
      if (e) b = mul_raw(b, b);
    }
    return r;
  }

  // Multiplicative order; factors q-1 by trial division (cached).
  uint64_t order(uint64_t a) const {
    if (a == 0) throw DomainError("order: zero element");
    uint64_t n = q_ - 1;
    for (uint64_t l : qm1_primes_) {
      while (n % l == 0 && pow_enc(a, n / l) == one_enc_) n /= l;
    }
    return n;
  }

  const std::vector<std::pair<uint64_t, int>>& qm1_factorization() const {
    return qm1_fact_;
  }

  // Subfield orders q0 = p^s for s | r, ascending.
  std::vector<uint64_t> subfield_orders() const {
    std::vector<uint64_t> out;
    for (uint64_t s : divisors(r_)) out.push_back(ipow_u64(p_, unsigned(s)));
    return out;
  }

  bool is_subfield_order(uint64_t q0) const {
    auto pp = prime_power(q0);
    return pp && pp->first == p_ && r_ % pp->second == 0;
  }

  // Frobenius fixed-point test x^{q0} == x; the polynomial basis is not
  // aligned with subfield bases, so coordinates cannot be inspected instead.
  bool in_subfield(uint64_t a, uint64_t q0) const {
    if (!is_subfield_order(q0)) throw DomainError("in_subfield: not a subfield order");
    return pow_enc(a, q0) == a;
  }

  // All elements of the GF(q0) subfield, ascending encodings. Cached.
  const std::vector<uint64_t>& subfield_elements(uint64_t q0) const {
    if (!is_subfield_order(q0)) throw DomainError("subfield_elements: not a subfield order");
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = subfield_cache_.find(q0);
    if (it != subfield_cache_.end()) return it->second;
    std::vector<uint64_t> elems;
    elems.reserve(q0);
    for (uint64_t x = 0; x < q_; ++x)
      if (pow_enc(x, q0) == x) elems.push_back(x);
    if (elems.size() != q0) throw InternalError("subfield_elements: wrong count");
    return subfield_cache_.emplace(q0, std::move(elems)).first->second;
  }

  // Trace into GF(q0): sum of x^{q0^i} over the extension degree.
  uint64_t trace_to(uint64_t q0, uint64_t x) const {
    if (!is_subfield_order(q0)) throw DomainError("trace_to: not a subfield order");
    unsigned s = prime_power(q0)->second;
    unsigned m = r_ / s;
    uint64_t acc = 0, cur = x;
    for (unsigned i = 0; i < m; ++i) {
      acc = add(acc, cur);
      cur = pow_enc(cur, q0);
    }
    return acc;
  }

  std::string str() const {
    std::ostringstream os;
    os << "GF(" << p_;
    if (r_ > 1) os << "^" << r_;
    os << ")";
    return os.str();
  }

  FieldDesc(const FieldDesc&) = delete;
  FieldDesc& operator=(const FieldDesc&) = delete;

 private:
  friend struct FieldRegistryAccess;
  FieldDesc(uint64_t p, unsigned r);

  uint64_t mul_raw(uint64_t a, uint64_t b) const;

  uint64_t p_ = 0;
  unsigned r_ = 0;
  uint64_t q_ = 0;
  uint64_t one_enc_ = 1;
  uint64_t prim_ = 0;
  std::vector<uint64_t> mod_;
  std::vector<std::pair<uint64_t, int>> qm1_fact_;
  std::vector<uint64_t> qm1_primes_;
  bool tables_ = false;
  std::vector<uint32_t> exp_, log_;

  mutable std::mutex cache_mu_;
  mutable std::map<uint64_t, std::vector<uint64_t>> subfield_cache_;
};

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  if (a.field != b.field) throw DomainError("field mismatch");
  return {a.field, a.field->add(a.enc, b.enc)};
}
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  if (a.field != b.field) throw DomainError("field mismatch");
  return {a.field, a.field->sub(a.enc, b.enc)};
}
inline FieldElement operator-(const FieldElement& a) {
  return {a.field, a.field->neg(a.enc)};
}
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  if (a.field != b.field) throw DomainError("field mismatch");
  return {a.field, a.field->mul(a.enc, b.enc)};
}
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  if (a.field != b.field) throw DomainError("field mismatch");
  return {a.field, a.field->div(a.enc, b.enc)};
}
inline FieldElement inv(const FieldElement& a) {
  return {a.field, a.field->inv(a.enc)};
}
inline FieldElement pow(const FieldElement& a, uint64_t e) {
  return {a.field, a.field->pow_enc(a.enc, e)};
}

inline std::string to_string(const FieldElement& x) {
  std::ostringstream os;
  os << "GF(" << x.field->p();
  if (x.field->r() > 1) os << "^" << x.field->r();
  os << "):" << x.enc;
  return os.str();
}
inline std::ostream& operator<<(std::ostream& os, const FieldElement& x) {
  return os << to_string(x);
}

inline FieldDesc::FieldDesc(uint64_t p, unsigned r) : p_(p), r_(r) {
  if (!is_prime_u64(p)) throw DomainError("make_field: p is not prime");
  if (r == 0) throw DomainError("make_field: r must be positive");
  q_ = ipow_u64(p, r);  // throws past 2^63-ish
  if (r > 1 && q_ >= (uint64_t(1) << 62))
    throw DomainError("make_field: field size cap exceeded");

  // Lexicographically smallest monic irreducible modulus, constant term
  // varying fastest.
  if (r == 1) {
    mod_ = {0, 1};
  } else {
    for (uint64_t j = 0;; ++j) {
      if (j >= q_) throw InternalError("make_field: no irreducible found");
      detail::RawPoly f(r + 1, 0);
      uint64_t t = j;
      for (unsigned i = 0; i < r; ++i) {
        f[i] = t % p;
        t /= p;
      }
      f[r] = 1;
      if (detail::rp_irreducible(f, p)) {
        mod_ = f;
        break;
      }
    }
  }

  one_enc_ = 1 % q_;
  qm1_fact_ = factorize(q_ - 1);
  for (auto& [l, e] : qm1_fact_) qm1_primes_.push_back(l);

  // Smallest-encoding generator of the multiplicative group.
  prim_ = one_enc_;
  if (q_ > 2) {
    for (uint64_t cand = 2; cand < q_; ++cand) {
      bool ok = true;
      for (uint64_t l : qm1_primes_) {
        if (pow_enc(cand, (q_ - 1) / l) == one_enc_) {
          ok = false;
          break;
        }
      }
      if (ok) {
        prim_ = cand;
        break;
      }
    }
    if (prim_ == one_enc_) throw InternalError("make_field: no primitive element");
  }

  if (q_ <= kTableCap) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    uint64_t cur = one_enc_;
    for (uint64_t k = 0; k + 1 < q_; ++k) {
      exp_[k] = static_cast<uint32_t>(cur);
      log_[cur] = static_cast<uint32_t>(k);
      cur = mul_raw(cur, prim_);
    }
    if (cur != one_enc_) throw InternalError("make_field: primitive order wrong");
    tables_ = true;
  }
}

inline uint64_t FieldDesc::mul_raw(uint64_t a, uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (r_ == 1) return mulmod_u64(a, b, p_);
  if (p_ == 2) {
    // carry-less multiply and reduce; modulus as bitmask
    uint64_t modmask = 0;
    for (unsigned i = 0; i <= r_; ++i) modmask |= mod_[i] << i;
    unsigned __int128 acc = 0;
    for (unsigned i = 0; i < r_; ++i)
      if ((a >> i) & 1) acc ^= (static_cast<unsigned __int128>(b) << i);
    for (int bit = 2 * r_ - 2; bit >= int(r_); --bit)
      if ((acc >> bit) & 1) acc ^= (static_cast<unsigned __int128>(modmask) << (bit - r_));
    return static_cast<uint64_t>(acc);
  }
  auto ca = coeffs(a), cb = coeffs(b);
  std::vector<uint64_t> c(2 * r_ - 1, 0);
  for (unsigned i = 0; i < r_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < r_; ++j)
      c[i + j] = (c[i + j] + ca[i] * cb[j]) % p_;
  }
  // reduce by monic modulus
  for (size_t k = c.size(); k-- > r_;) {
    uint64_t lead = c[k];
    if (lead == 0) continue;
    for (unsigned i = 0; i < r_; ++i) {
      uint64_t s = mulmod_u64(lead, mod_[i], p_);
      c[k - r_ + i] = (c[k - r_ + i] + p_ - s) % p_;
    }
    c[k] = 0;
  }
  c.resize(r_);
  return encode(c);
}

struct FieldRegistryAccess {
  static const FieldDesc& get(uint64_t p, unsigned r) {
    static std::mutex mu;
    static std::map<std::pair<uint64_t, unsigned>, std::unique_ptr<FieldDesc>> reg;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, r);
    auto it = reg.find(key);
    if (it == reg.end())
      it = reg.emplace(key, std::unique_ptr<FieldDesc>(new FieldDesc(p, r))).first;
    return *it->second;
  }
};

inline const FieldDesc& FieldDesc::get(uint64_t p, unsigned r) {
  return FieldRegistryAccess::get(p, r);
}

inline const FieldDesc& make_field(uint64_t p, unsigned r) {
  return FieldDesc::get(p, r);
}

inline uint64_t element_order(const FieldElement& x) {
  return x.field->order(x.enc);
}

// Dense polynomial over one field; trailing zeros trimmed, the zero
// polynomial has degree() == -1.
class Poly {
 public:
  Poly() = default;
  Poly(const FieldDesc& f, std::vector<uint64_t> coeffs)
      : f_(&f), c_(std::move(coeffs)) {
    for (uint64_t e : c_)
      if (e >= f.q()) throw DomainError("Poly: coefficient out of range");
    trim();
  }
  static Poly zero(const FieldDesc& f) { return Poly(f, {}); }
  static Poly one(const FieldDesc& f) { return Poly(f, {f.one().enc}); }
  static Poly x(const FieldDesc& f) { return Poly(f, {0, f.one().enc}); }
  static Poly from_elements(const std::vector<FieldElement>& cs) {
    if (cs.empty()) throw DomainError("Poly: empty element list");
    std::vector<uint64_t> enc;
    for (auto& e : cs) {
      if (e.field != cs[0].field) throw DomainError("Poly: mixed fields");
      enc.push_back(e.enc);
    }
    return Poly(*cs[0].field, std::move(enc));
  }

  const FieldDesc& field() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  FieldElement coeff(size_t i) const {
    return {f_, i < c_.size() ? c_[i] : 0};
  }
  bool is_monic() const {
    return !c_.empty() && c_.back() == f_->one().enc;
  }

  FieldElement eval(const FieldElement& x) const {
    if (x.field != f_) throw DomainError("Poly::eval: field mismatch");
    uint64_t acc = 0;
    for (size_t i = c_.size(); i-- > 0;)
      acc = f_->add(f_->mul(acc, x.enc), c_[i]);
    return {f_, acc};
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    a.check(b);
    std::vector<uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = a.f_->add(i < a.c_.size() ? a.c_[i] : 0,
                       i < b.c_.size() ? b.c_[i] : 0);
    return Poly(*a.f_, std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    a.check(b);
    std::vector<uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = a.f_->sub(i < a.c_.size() ? a.c_[i] : 0,
                       i < b.c_.size() ? b.c_[i] : 0);
    return Poly(*a.f_, std::move(c));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return Poly::zero(*a.f_);
    std::vector<uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = a.f_->add(c[i + j], a.f_->mul(a.c_[i], b.c_[j]));
    }
    return Poly(*a.f_, std::move(c));
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.f_ == b.f_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Quotient and remainder by a nonzero divisor.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    check(d);
    if (d.is_zero()) throw DomainError("Poly::divmod: division by zero");
    std::vector<uint64_t> rem = c_;
    std::vector<uint64_t> quo(
        c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, 0);
    uint64_t lead_inv = f_->inv(d.c_.back());
    while (rem.size() >= d.c_.size()) {
      uint64_t coef = f_->mul(rem.back(), lead_inv);
      size_t shift = rem.size() - d.c_.size();
      if (coef != 0) {
        quo[shift] = coef;
        for (size_t i = 0; i < d.c_.size(); ++i)
          rem[shift + i] = f_->sub(rem[shift + i], f_->mul(coef, d.c_[i]));
      }
      rem.pop_back();
    }
    return {Poly(*f_, std::move(quo)), Poly(*f_, std::move(rem))};
  }
  Poly mod(const Poly& d) const { return divmod(d).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    uint64_t li = f_->inv(c_.back());
    std::vector<uint64_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = f_->mul(c_[i], li);
    return Poly(*f_, std::move(c));
  }

  // Coefficient list, constant term first.
  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (i) os << ",";
      os << c_[i];
    }
    if (c_.empty()) os << "0";
    return os.str();
  }

 private:
  void check(const Poly& o) const {
    if (f_ != o.f_) throw DomainError("Poly: field mismatch");
  }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const FieldDesc* f_ = nullptr;
  std::vector<uint64_t> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& f) {
  return os << f.str();
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

inline Poly poly_powmod(Poly base, uint64_t e, const Poly& m) {
  Poly r = Poly::one(base.field());
  base = base.mod(m);
  while (e > 0) {
    if (e & 1) r = (r * base).mod(m);
    e >>= 1;
    if (e) base = (base * base).mod(m);
  }
  return r;
}

// Rabin test over an arbitrary coefficient field.
inline bool poly_is_irreducible(const Poly& f) {
  int deg = f.degree();
  if (deg <= 0) return false;
  if (deg == 1) return true;
  const FieldDesc& F = f.field();
  if (f.coeff(0).is_zero()) return false;
  Poly fm = f.monic();
  Poly x = Poly::x(F);
  std::vector<Poly> frob(deg + 1, x);
  for (int k = 1; k <= deg; ++k) frob[k] = poly_powmod(frob[k - 1], F.q(), fm);
  if (frob[deg] != x.mod(fm)) return false;
  for (uint64_t l : prime_factors(uint64_t(deg))) {
    Poly d = frob[deg / l] - x;
    if (poly_gcd(fm, d).degree() != 0) return false;
  }
  return true;
}

// ord(f): least N with f | x^N - 1. Requires nonzero constant term.
// Brute iteration of x^k mod f; desk scale only.
inline uint64_t poly_order(const Poly& f) {
  if (f.coeff(0).is_zero()) throw DomainError("poly_order: zero constant term");
  if (f.degree() < 1) throw DomainError("poly_order: constant polynomial");
  const FieldDesc& F = f.field();
  Poly fm = f.monic();
  Poly one = Poly::one(F);
  Poly cur = Poly::x(F).mod(fm);
  uint64_t cap = ipow_u64(F.q(), unsigned(f.degree()));
  for (uint64_t k = 1; k <= cap; ++k) {
    if (cur == one) return k;
    cur = (cur * Poly::x(F)).mod(fm);
  }
  throw InternalError("poly_order: no finite order found");
}

// ---- subfield embeddings ----------------------------------------------

// One consistent homomorphism GF(p^a) -> GF(p^b), fixed by sending the
// source primitive to the smallest-encoding root of its minimal polynomial
// over GF(p). Memoized per (source, target) pair.
class Embedding {
 public:
  Embedding(const FieldDesc& src, const FieldDesc& tgt) : src_(&src), tgt_(&tgt) {
    if (src.p() != tgt.p() || tgt.r() % src.r() != 0)
      throw DomainError("embed: source is not a subfield of target");
    fwd_.assign(src.q(), 0);
    if (src.q() == tgt.q() && src.modulus() == tgt.modulus()) {
      for (uint64_t e = 0; e < src.q(); ++e) fwd_[e] = e;
    } else {
      build();
    }
    for (uint64_t e = 0; e < src.q(); ++e) rev_.emplace(fwd_[e], e);
    verify();
  }

  uint64_t map_enc(uint64_t e) const { return fwd_[e]; }
  std::optional<uint64_t> unmap_enc(uint64_t e) const {
    auto it = rev_.find(e);
    if (it == rev_.end()) return std::nullopt;
    return it->second;
  }
  const FieldDesc& src() const { return *src_; }
  const FieldDesc& tgt() const { return *tgt_; }

 private:
  void build() {
    const FieldDesc& S = *src_;
    const FieldDesc& T = *tgt_;
    uint64_t g = S.primitive().enc;
    uint64_t n = S.q() - 1;  // order of g
    // minimal polynomial of g over the prime field, computed source-side
    std::vector<uint64_t> conj;
    uint64_t cur = g;
    do {
      conj.push_back(cur);
      cur = S.pow_enc(cur, S.p());
    } while (cur != g);
    Poly mp = Poly::one(S);
    for (uint64_t c : conj) mp = mp * Poly(S, {S.neg(c), S.one().enc});
    // coefficients are prime-field scalars; their encodings transfer directly
    std::vector<uint64_t> mp_enc = mp.coeffs();
    for (uint64_t c : mp_enc)
      if (c >= S.p()) throw InternalError("embed: minimal polynomial not over prime field");
    Poly mp_t(T, mp_enc);
    // roots are among elements of order exactly n in the target
    uint64_t rho = 0;
    bool found = false;
    if (n == 0) throw InternalError("embed: empty group");
    uint64_t h = T.pow_enc(T.primitive().enc, (T.q() - 1) / n);
    uint64_t pw = T.one().enc;
    for (uint64_t k = 0; k < n; ++k) {
      if (mp_t.eval(T.element(pw)).is_zero()) {
        if (!found || pw < rho) {
          rho = pw;
          found = true;
        }
      }
      pw = T.mul(pw, h);
    }
    if (!found) throw InternalError("embed: no root of minimal polynomial in target");
    // g^j -> rho^j
    uint64_t se = S.one().enc, te = T.one().enc;
    fwd_[0] = 0;
    for (uint64_t j = 0; j < n; ++j) {
      fwd_[se] = te;
      se = S.mul(se, g);
      te = T.mul(te, rho);
    }
  }

  void verify() const {
    const FieldDesc& S = *src_;
    const FieldDesc& T = *tgt_;
    uint64_t a = S.primitive().enc, b = S.one().enc;
    for (int i = 0; i < 16; ++i) {
      uint64_t sum = S.add(a, b), prod = S.mul(a, b);
      if (fwd_[sum] != T.add(fwd_[a], fwd_[b]) ||
          fwd_[prod] != T.mul(fwd_[a], fwd_[b]))
        throw InternalError("embed: homomorphism check failed");
      a = S.mul(a, S.primitive().enc);
      b = S.add(b, S.one().enc);
    }
  }

  const FieldDesc* src_;
  const FieldDesc* tgt_;
  std::vector<uint64_t> fwd_;
  std::unordered_map<uint64_t, uint64_t> rev_;
};

inline const Embedding& embedding(const FieldDesc& src, const FieldDesc& tgt) {
  static std::mutex mu;
  static std::map<std::pair<const FieldDesc*, const FieldDesc*>,
                  std::unique_ptr<Embedding>>
      reg;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(&src, &tgt);
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, std::make_unique<Embedding>(src, tgt)).first;
  return *it->second;
}

inline FieldElement embed(const FieldElement& x, const FieldDesc& target) {
  const Embedding& E = embedding(*x.field, target);
  return {&target, E.map_enc(x.enc)};
}

// Inverse of embed on its image; empty when x is not in the embedded copy.
inline std::optional<FieldElement> project(const FieldElement& x,
                                           const FieldDesc& sub) {
  const Embedding& E = embedding(sub, *x.field);
  auto e = E.unmap_enc(x.enc);
  if (!e) return std::nullopt;
  return FieldElement{&sub, *e};
}

// ---- order and degree operations ---------------------------------------

struct DegreeOrder {
  unsigned m;  // degree over GF(q)
  uint64_t d;  // q-order: least d > 0 with x^d in GF(q)
  uint64_t n;  // multiplicative order
  uint64_t e;  // n / d == gcd(n, q-1)
};

// Degree, q-order, order and cofactor of a nonzero element, with the
// arithmetic identities between them asserted before returning.
inline DegreeOrder degree_and_qorder(const FieldElement& x, uint64_t q) {
  if (x.is_zero()) throw DomainError("degree_and_qorder: zero element");
  if (!x.field->is_subfield_order(q))
    throw DomainError("degree_and_qorder: q is not a subfield order");
  uint64_t n = element_order(x);
  unsigned m = 0;
  uint64_t qt = 1;
  for (unsigned t = 1; t <= 64; ++t) {
    qt *= q;
    if ((qt - 1) % n == 0) {
      m = t;
      break;
    }
  }
  if (m == 0) throw InternalError("degree_and_qorder: no degree found");
  uint64_t e = gcd_u64(n, q - 1);
  uint64_t d = n / e;
  uint64_t qm = ipow_u64(q, m);
  if (!(m <= d)) throw InternalError("degree_and_qorder: m <= d violated");
  if (((qm - 1) / (q - 1)) % d != 0)
    throw InternalError("degree_and_qorder: d | (q^m-1)/(q-1) violated");
  if (gcd_u64(d, (q - 1) / e) != 1)
    throw InternalError("degree_and_qorder: gcd(d,(q-1)/e) != 1");
  return {m, d, n, e};
}

inline unsigned degree_over(const FieldElement& x, uint64_t q) {
  return degree_and_qorder(x, q).m;
}

// Monic product over the distinct q0-conjugates of x. Coefficients lie in
// the GF(q0) subfield of the ambient field (checked).
inline Poly minimal_polynomial(const FieldElement& x, uint64_t q0) {
  const FieldDesc& F = *x.field;
  if (!F.is_subfield_order(q0))
    throw DomainError("minimal_polynomial: q0 is not a subfield order");
  std::vector<uint64_t> conj;
  uint64_t cur = x.enc;
  do {
    conj.push_back(cur);
    cur = F.pow_enc(cur, q0);
  } while (cur != x.enc);
  Poly mp = Poly::one(F);
  for (uint64_t c : conj) mp = mp * Poly(F, {F.neg(c), F.one().enc});
  for (uint64_t c : mp.coeffs())
    if (F.pow_enc(c, q0) != c)
      throw InternalError("minimal_polynomial: coefficient outside subfield");
  return mp;
}

// Same polynomial with coefficients moved into a standalone GF(q0).
inline Poly minimal_polynomial_over(const FieldElement& x, const FieldDesc& sub) {
  Poly mp = minimal_polynomial(x, sub.q());
  std::vector<uint64_t> c;
  for (uint64_t e : mp.coeffs()) {
    auto pe = project(FieldElement{x.field, e}, sub);
    if (!pe) throw InternalError("minimal_polynomial_over: projection failed");
    c.push_back(pe->enc);
  }
  return Poly(sub, std::move(c));
}

// All roots of f inside the given field (f may live in a subfield of it);
// ascending encodings. Linear scan, fine at library scale.
inline std::vector<FieldElement> poly_roots_in(const Poly& f, const FieldDesc& F) {
  Poly g = f;
  if (&f.field() != &F) {
    std::vector<uint64_t> c;
    for (uint64_t e : f.coeffs())
      c.push_back(embed(FieldElement{&f.field(), e}, F).enc);
    g = Poly(F, std::move(c));
  }
  std::vector<FieldElement> roots;
  for (uint64_t e = 0; e < F.q(); ++e)
    if (g.eval(F.element(e)).is_zero()) roots.push_back(F.element(e));
  return roots;
}

// Coordinates of GF(q0^m) over GF(q0), both living inside one ambient
// field: the basis is 1, h, ..., h^{m-1} for the canonical generator h of
// the GF(q0^m) subfield, and the trace-dual basis puts every coordinate in
// GF(q0) by construction. With m equal to the full extension degree this
// coordinatizes the whole ambient field.
class SubfieldCoords {
 public:
  SubfieldCoords(const FieldDesc& F, uint64_t q0, unsigned m = 0)
      : F_(&F), q0_(q0) {
    if (!F.is_subfield_order(q0))
      throw DomainError("SubfieldCoords: not a subfield order");
    unsigned s = prime_power(q0)->second;
    if (m == 0) m = F.r() / s;
    if ((F.r() / s) % m != 0)
      throw DomainError("SubfieldCoords: GF(q0^m) is not a subfield");
    m_ = m;
    uint64_t qm = ipow_u64(q0, m);
    uint64_t g = qm == F.q() ? F.primitive().enc
                             : F.pow_enc(F.primitive().enc, (F.q() - 1) / (qm - 1));
    basis_.assign(m_, 0);
    basis_[0] = F.one().enc;
    for (unsigned i = 1; i < m_; ++i) basis_[i] = F.mul(basis_[i - 1], g);
    // invert the Gram matrix of the trace form over the subfield
    std::vector<std::vector<uint64_t>> a(m_, std::vector<uint64_t>(2 * m_, 0));
    for (unsigned i = 0; i < m_; ++i) {
      for (unsigned j = 0; j < m_; ++j)
        a[i][j] = rel_trace(F.mul(basis_[i], basis_[j]));
      a[i][m_ + i] = F.one().enc;
    }
    for (unsigned col = 0; col < m_; ++col) {
      unsigned piv = col;
      while (piv < m_ && a[piv][col] == 0) ++piv;
      if (piv == m_) throw InternalError("SubfieldCoords: singular trace form");
      std::swap(a[piv], a[col]);
      uint64_t d = F.inv(a[col][col]);
      for (unsigned j = 0; j < 2 * m_; ++j) a[col][j] = F.mul(a[col][j], d);
      for (unsigned i = 0; i < m_; ++i) {
        if (i == col || a[i][col] == 0) continue;
        uint64_t fac = a[i][col];
        for (unsigned j = 0; j < 2 * m_; ++j)
          a[i][j] = F.sub(a[i][j], F.mul(fac, a[col][j]));
      }
    }
    dual_.assign(m_, 0);
    for (unsigned j = 0; j < m_; ++j) {
      uint64_t acc = 0;
      for (unsigned i = 0; i < m_; ++i)
        acc = F.add(acc, F.mul(a[i][j + m_], basis_[i]));
      dual_[j] = acc;
    }
  }

  unsigned dim() const { return m_; }
  const std::vector<uint64_t>& basis() const { return basis_; }

  // y = sum coords[j] * basis[j], coords in the GF(q0) subfield. Valid for
  // y inside the GF(q0^m) subfield.
  std::vector<uint64_t> coords(uint64_t y) const {
    std::vector<uint64_t> c(m_);
    for (unsigned j = 0; j < m_; ++j)
      c[j] = rel_trace(F_->mul(y, dual_[j]));
    return c;
  }

 private:
  // trace of the GF(q0^m)/GF(q0) extension
  uint64_t rel_trace(uint64_t x) const {
    uint64_t acc = 0, cur = x;
    for (unsigned i = 0; i < m_; ++i) {
      acc = F_->add(acc, cur);
      cur = F_->pow_enc(cur, q0_);
    }
    return acc;
  }

  const FieldDesc* F_;
  uint64_t q0_;
  unsigned m_;
  std::vector<uint64_t> basis_, dual_;
};

inline const SubfieldCoords& subfield_coords(const FieldDesc& F, uint64_t q0,
                                             unsigned m = 0) {
  static std::mutex mu;
  static std::map<std::tuple<const FieldDesc*, uint64_t, unsigned>,
                  std::unique_ptr<SubfieldCoords>>
      reg;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_tuple(&F, q0, m);
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, std::make_unique<SubfieldCoords>(F, q0, m)).first;
  return *it->second;
}

}  // namespace lrsub
