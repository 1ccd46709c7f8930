#pragma once

// Cyclic codes over GF(q) given by defining zeros, the permutation
// automorphism / q-polynomial bridge, and the search for automorphisms
// outside the shift-Frobenius group.
//
// A code is stored both ways: generator polynomial over a standalone GF(q)
// and parity checks at the zeros in the extension field; the two are checked
// against each other at construction.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lrsub/gf.hpp"
#include "lrsub/linearized.hpp"

namespace lrsub {

using Perm = std::vector<uint32_t>;

inline bool is_permutation(const Perm& p) {
  std::vector<bool> hit(p.size(), false);
  for (uint32_t v : p) {
    if (v >= p.size() || hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

inline Perm perm_compose(const Perm& f, const Perm& g) {
  // (f o g)(i) = f(g(i))
  Perm h(f.size());
  for (size_t i = 0; i < f.size(); ++i) h[i] = f[g[i]];
  return h;
}

class CyclicCode {
 public:
  // zeros: exponents z with xi^z a defining zero; closed under
  // multiplication by q mod n before use.
  CyclicCode(uint64_t n, uint64_t q, std::vector<uint64_t> zero_exponents)
      : n_(n), q_(q) {
    auto pp = prime_power(q);
    if (!pp) throw DomainError("build_code: q is not a prime power");
    if (n == 0) throw DomainError("build_code: empty length");
    if (gcd_u64(n, q) != 1) throw DomainError("build_code: n not coprime to q");
    for (uint64_t z : zero_exponents)
      if (z >= n) throw DomainError("build_code: zero exponent out of range");

    // multiplicative order of q mod n
    m_ = 1;
    {
      uint64_t t = q % n;
      while (t != 1 % n) {
        t = (t * (q % n)) % n;
        ++m_;
        if (m_ > 64) throw DomainError("build_code: order of q mod n too large");
      }
    }
    base_ = &make_field(pp->first, pp->second);
    ext_ = &make_field(pp->first, pp->second * m_);
    xi_ = pow(ext_->primitive(), (ext_->q() - 1) / n);

    // close the zero set under multiplication by q
    std::set<uint64_t> zset;
    for (uint64_t z : zero_exponents) {
      uint64_t cur = z;
      do {
        zset.insert(cur);
        cur = (cur * (q % n)) % n;
      } while (cur != z);
    }
    zeros_.assign(zset.begin(), zset.end());

    // generator polynomial: product of minimal polynomials over the
    // distinct cyclotomic cosets
    gen_ = Poly::one(*base_);
    std::set<uint64_t> done;
    for (uint64_t z : zeros_) {
      if (done.count(z)) continue;
      uint64_t cur = z;
      do {
        done.insert(cur);
        cur = (cur * (q % n)) % n;
      } while (cur != z);
      gen_ = gen_ * minimal_polynomial_over(pow(xi_, z), *base_);
    }
    if (uint64_t(gen_.degree()) > n)
      throw InternalError("build_code: generator degree exceeds n");
    dim_ = n - uint64_t(gen_.degree());

    // embedded xi powers for parity checks
    xi_pow_.resize(n);
    uint64_t cur = ext_->one().enc;
    for (uint64_t i = 0; i < n; ++i) {
      xi_pow_[i] = cur;
      cur = ext_->mul(cur, xi_.enc);
    }
    emb_.resize(base_->q());
    for (uint64_t e = 0; e < base_->q(); ++e)
      emb_[e] = embedding(*base_, *ext_).map_enc(e);

    // representative zero exponents, one per coset
    done.clear();
    for (uint64_t z : zeros_) {
      if (done.count(z)) continue;
      uint64_t c2 = z;
      do {
        done.insert(c2);
        c2 = (c2 * (q % n)) % n;
      } while (c2 != z);
      zero_reps_.push_back(z);
    }

    // the two representations must agree on the generator basis
    for (auto& w : basis_words())
      if (!contains(w))
        throw InternalError("build_code: generator basis fails parity check");
  }

  uint64_t n() const { return n_; }
  uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  uint64_t dim() const { return dim_; }
  const FieldDesc& base_field() const { return *base_; }
  const FieldDesc& ext_field() const { return *ext_; }
  FieldElement xi() const { return xi_; }
  const std::vector<uint64_t>& zeros() const { return zeros_; }
  const Poly& genpoly() const { return gen_; }

  // c(xi^z) = 0 for all defining zeros; one representative per coset is
  // enough since the word has GF(q) coefficients.
  bool contains(const std::vector<uint64_t>& word) const {
    if (word.size() != n_) throw DomainError("contains: length mismatch");
    for (uint64_t z : zero_reps_) {
      uint64_t acc = 0;
      for (uint64_t i = 0; i < n_; ++i) {
        if (word[i] == 0) continue;
        acc = ext_->add(acc, ext_->mul(emb_[word[i]], xi_pow_[(i * z) % n_]));
      }
      if (acc != 0) return false;
    }
    return true;
  }

  // rows x^i g(x) for i < dim
  std::vector<std::vector<uint64_t>> basis_words() const {
    std::vector<std::vector<uint64_t>> rows;
    for (uint64_t i = 0; i < dim_; ++i) {
      std::vector<uint64_t> w(n_, 0);
      for (size_t j = 0; j < gen_.coeffs().size(); ++j)
        w[i + j] = gen_.coeffs()[j];
      rows.push_back(std::move(w));
    }
    return rows;
  }

  std::string str() const {
    std::string s = std::to_string(n_) + " " + std::to_string(q_) + " zeros=";
    for (size_t i = 0; i < zeros_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(zeros_[i]);
    }
    return s;
  }

 private:
  uint64_t n_, q_;
  unsigned m_;
  uint64_t dim_;
  const FieldDesc* base_ = nullptr;
  const FieldDesc* ext_ = nullptr;
  FieldElement xi_;
  std::vector<uint64_t> zeros_;
  std::vector<uint64_t> zero_reps_;
  Poly gen_;
  std::vector<uint64_t> xi_pow_;
  std::vector<uint64_t> emb_;
};

inline CyclicCode build_code(uint64_t n, uint64_t q,
                             const std::vector<uint64_t>& zero_exponents) {
  return CyclicCode(n, q, zero_exponents);
}

// Minimum Hamming weight over all nonzero codewords, by full message-space
// enumeration.
inline uint64_t min_distance(const CyclicCode& C,
                             uint64_t budget = uint64_t(1) << 24) {
  if (C.dim() == 0) throw DomainError("min_distance: zero code");
  uint64_t count = 1;
  for (uint64_t i = 0; i < C.dim(); ++i) {
    if (count > budget / C.q()) throw BudgetError("min_distance: budget exceeded");
    count *= C.q();
  }
  const FieldDesc& B = C.base_field();
  auto rows = C.basis_words();
  uint64_t n = C.n();
  uint64_t best = n + 1;
  std::vector<uint64_t> msg(C.dim(), 0), word(n, 0);
  for (uint64_t idx = 1; idx < count; ++idx) {
    // advance the base-q odometer and update the running combination
    uint64_t t = idx;
    std::fill(word.begin(), word.end(), 0);
    for (uint64_t i = 0; i < C.dim(); ++i) {
      msg[i] = t % C.q();
      t /= C.q();
      if (msg[i] == 0) continue;
      for (uint64_t j = 0; j < n; ++j)
        word[j] = B.add(word[j], B.mul(msg[i], rows[i][j]));
    }
    uint64_t wt = 0;
    for (uint64_t j = 0; j < n; ++j) wt += (word[j] != 0);
    if (wt < best) best = wt;
  }
  return best;
}

// All codewords of the given weight, as supports when distinct_supports is
// set; full enumeration of the message space.
inline std::vector<std::vector<uint32_t>> weight_w_supports(
    const CyclicCode& C, uint64_t w, uint64_t budget = uint64_t(1) << 24) {
  uint64_t count = 1;
  for (uint64_t i = 0; i < C.dim(); ++i) {
    if (count > budget / C.q())
      throw BudgetError("weight_w_supports: budget exceeded");
    count *= C.q();
  }
  const FieldDesc& B = C.base_field();
  auto rows = C.basis_words();
  uint64_t n = C.n();
  std::set<std::vector<uint32_t>> sup;
  std::vector<uint64_t> word(n, 0);
  for (uint64_t idx = 1; idx < count; ++idx) {
    uint64_t t = idx;
    std::fill(word.begin(), word.end(), 0);
    for (uint64_t i = 0; i < C.dim(); ++i) {
      uint64_t mi = t % C.q();
      t /= C.q();
      if (mi == 0) continue;
      for (uint64_t j = 0; j < n; ++j)
        word[j] = B.add(word[j], B.mul(mi, rows[i][j]));
    }
    std::vector<uint32_t> s;
    for (uint32_t j = 0; j < n; ++j)
      if (word[j] != 0) s.push_back(j);
    if (s.size() == w) sup.insert(std::move(s));
  }
  return {sup.begin(), sup.end()};
}

// c^pi = (c_{pi(0)}, ..., c_{pi(n-1)}) stays in the code for every basis
// codeword. Sufficient by linearity.
inline bool is_perm_automorphism(const CyclicCode& C, const Perm& pi) {
  if (pi.size() != C.n()) throw DomainError("is_perm_automorphism: length mismatch");
  if (!is_permutation(pi)) throw DomainError("is_perm_automorphism: not a bijection");
  std::vector<uint64_t> permuted(C.n());
  for (auto& w : C.basis_words()) {
    for (uint64_t i = 0; i < C.n(); ++i) permuted[i] = w[pi[i]];
    if (!C.contains(permuted)) return false;
  }
  return true;
}

// The mn maps i -> q^a i + b mod n generated by the cyclic shift and the
// Frobenius permutation. The count is checked to be exactly mn.
inline std::vector<Perm> standard_group(uint64_t n, uint64_t q, unsigned m) {
  std::set<Perm> group;
  uint64_t qa = 1 % n;
  for (unsigned a = 0; a < m; ++a) {
    for (uint64_t b = 0; b < n; ++b) {
      Perm p(n);
      for (uint64_t i = 0; i < n; ++i) p[i] = uint32_t((qa * i + b) % n);
      group.insert(std::move(p));
    }
    qa = (qa * (q % n)) % n;
  }
  if (group.size() != uint64_t(m) * n)
    throw InternalError("standard_group: count != m*n");
  return {group.begin(), group.end()};
}

inline bool in_standard_group(const Perm& pi, uint64_t n, uint64_t q,
                              unsigned m) {
  uint64_t qa = 1 % n;
  for (unsigned a = 0; a < m; ++a) {
    uint64_t b = pi[0] % n;
    bool ok = true;
    for (uint64_t i = 0; i < n && ok; ++i) ok = (pi[i] == (qa * i + b) % n);
    if (ok) return true;
    qa = (qa * (q % n)) % n;
  }
  return false;
}

// ---- the permutation / q-polynomial bridge -----------------------------

// L with L(xi^j) = xi^{pi(j)} for j < m, extended linearly; the defining
// relation is then checked for all j < n, which fails exactly when pi is
// not an automorphism.
inline QPolynomial qpoly_from_perm(const CyclicCode& C, const Perm& pi) {
  if (pi.size() != C.n()) throw DomainError("qpoly_from_perm: length mismatch");
  if (!is_permutation(pi)) throw DomainError("qpoly_from_perm: not a bijection");
  const FieldDesc& F = C.ext_field();
  FieldElement xi = C.xi();
  unsigned m = C.m();
  detail::BasisSolver solver(xi, C.q(), m);
  CycleGroup G(xi);
  std::vector<uint64_t> images(m);
  for (unsigned j = 0; j < m; ++j) images[j] = G.pow(pi[j]);
  QPolynomial L{&F, C.q(), m, solver.coeffs(images)};
  for (uint64_t j = 0; j < C.n(); ++j) {
    if (evaluate(L, FieldElement{&F, G.pow(j)}).enc != G.pow(pi[j]))
      throw DomainError("qpoly_from_perm: pi is not an automorphism");
  }
  return L;
}

// The exponent permutation induced by L on <xi>.
inline Perm perm_from_qpoly(const CyclicCode& C, const QPolynomial& L) {
  const FieldDesc& F = C.ext_field();
  if (L.field != &F) throw DomainError("perm_from_qpoly: field mismatch");
  if (!fixes_subgroup(L, C.xi()))
    throw DomainError("perm_from_qpoly: L does not fix <xi>");
  CycleGroup G(C.xi());
  Perm pi(C.n());
  for (uint64_t j = 0; j < C.n(); ++j) {
    uint64_t img = evaluate(L, FieldElement{&F, G.pow(j)}).enc;
    pi[j] = uint32_t(G.dlog(img));
  }
  return pi;
}

// ---- extra-automorphism search -----------------------------------------

struct AutomorphismSearchOptions {
  uint64_t node_budget = 50000000;
  uint64_t enum_budget = uint64_t(1) << 24;  // codeword enumeration cap
};

namespace detail {

// Backtracking over coordinate images. Pruning: coordinates map only to
// coordinates with equal minimum-weight incidence counts, and the partial
// image of any minimum-weight support must extend to some minimum-weight
// support. Returns the lexicographically first automorphism outside the
// standard group.
class AutoSearch {
 public:
  AutoSearch(const CyclicCode& C, const AutomorphismSearchOptions& opt)
      : C_(C), n_(C.n()), opt_(opt) {
    uint64_t w = min_distance(C, opt.enum_budget);
    auto sup = weight_w_supports(C, w, opt.enum_budget);
    if (sup.empty()) throw InternalError("auto search: no minimum-weight words");
    masks_.reserve(sup.size());
    for (auto& s : sup) {
      uint64_t msk = 0;
      for (uint32_t j : s) msk |= uint64_t(1) << j;
      masks_.push_back(msk);
    }
    at_.assign(n_, {});
    for (size_t si = 0; si < masks_.size(); ++si)
      for (uint64_t j = 0; j < n_; ++j)
        if ((masks_[si] >> j) & 1) at_[j].push_back(uint32_t(si));
    inv_.assign(n_, 0);
    for (uint64_t j = 0; j < n_; ++j) inv_[j] = uint64_t(at_[j].size());
  }

  std::optional<Perm> run() {
    pi_.assign(n_, 0);
    used_.assign(n_, false);
    img_mask_.assign(masks_.size(), 0);
    dom_cnt_.assign(masks_.size(), 0);
    nodes_ = 0;
    Perm out;
    if (dfs(0, out)) return out;
    return std::nullopt;
  }

 private:
  bool dfs(uint32_t depth, Perm& out) {
    if (depth == n_) {
      Perm cand(pi_.begin(), pi_.end());
      if (in_standard_group(cand, n_, C_.q(), C_.m())) return false;
      if (!is_perm_automorphism(C_, cand)) return false;
      out = cand;
      return true;
    }
    for (uint32_t y = 0; y < n_; ++y) {
      if (used_[y] || inv_[depth] != inv_[y]) continue;
      if (++nodes_ > opt_.node_budget)
        throw BudgetError("find_extra_automorphism: node budget exceeded");
      if (!consistent(depth, y)) continue;
      pi_[depth] = y;
      used_[y] = true;
      for (uint32_t si : at_[depth]) {
        img_mask_[si] |= uint64_t(1) << y;
        ++dom_cnt_[si];
      }
      if (dfs(depth + 1, out)) return true;
      for (uint32_t si : at_[depth]) {
        img_mask_[si] &= ~(uint64_t(1) << y);
        --dom_cnt_[si];
      }
      used_[y] = false;
    }
    return false;
  }

  // every support through `depth` must keep its partial image inside some
  // minimum-weight support
  bool consistent(uint32_t depth, uint32_t y) const {
    for (uint32_t si : at_[depth]) {
      uint64_t img = img_mask_[si] | (uint64_t(1) << y);
      if (dom_cnt_[si] + 1 < 2) continue;
      bool found = false;
      for (uint64_t m2 : masks_) {
        if ((img & ~m2) == 0) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  const CyclicCode& C_;
  uint64_t n_;
  AutomorphismSearchOptions opt_;
  std::vector<uint64_t> masks_;
  std::vector<std::vector<uint32_t>> at_;
  std::vector<uint64_t> inv_;
  std::vector<uint32_t> pi_;
  std::vector<bool> used_;
  std::vector<uint64_t> img_mask_;
  std::vector<uint32_t> dom_cnt_;
  uint64_t nodes_ = 0;
};

}  // namespace detail

// A verified permutation automorphism outside the shift-Frobenius group, or
// empty once the search space is exhausted with none. Exhaustive over S_n
// for n <= 8; partition backtracking guided by minimum-weight supports
// otherwise (n <= 64 there, enough for word-sized support masks).
inline std::optional<Perm> find_extra_automorphism(
    const CyclicCode& C, const AutomorphismSearchOptions& opt = {}) {
  uint64_t n = C.n();
  if (n <= 8) {
    Perm pi(n);
    for (uint32_t i = 0; i < n; ++i) pi[i] = i;
    do {
      if (in_standard_group(pi, n, C.q(), C.m())) continue;
      if (is_perm_automorphism(C, pi)) return pi;
    } while (std::next_permutation(pi.begin(), pi.end()));
    return std::nullopt;
  }
  if (n > 64)
    throw BudgetError("find_extra_automorphism: length exceeds search support");
  detail::AutoSearch search(C, opt);
  return search.run();
}

}  // namespace lrsub
