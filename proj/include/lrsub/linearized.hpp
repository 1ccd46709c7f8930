#pragma once

// q-polynomials L(x) = L_0 x + L_1 x^q + ... + L_{m-1} x^{q^{m-1}} over
// GF(q^m): evaluation, singularity and standardness tests, the
// subgroup-fixing test, and the exhaustive search for nonstandard witnesses.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrsub/gf.hpp"
#include "lrsub/parallel.hpp"

namespace lrsub {

struct QPolynomial {
  const FieldDesc* field = nullptr;  // ambient GF(q^m)
  uint64_t q = 0;                    // base prime power
  unsigned m = 0;                    // q-degree
  std::vector<uint64_t> coeffs;      // L_0..L_{m-1}, ambient encodings

  FieldElement coeff(unsigned j) const { return {field, coeffs[j]}; }
};

inline FieldElement evaluate(const QPolynomial& L, const FieldElement& x) {
  if (x.field != L.field) throw DomainError("evaluate: field mismatch");
  const FieldDesc& F = *L.field;
  uint64_t acc = 0, cur = x.enc;
  for (unsigned j = 0; j < L.m; ++j) {
    acc = F.add(acc, F.mul(L.coeffs[j], cur));
    cur = F.pow_enc(cur, L.q);
  }
  return {&F, acc};
}

// (c, j) when L = c x^{q^j}; empty otherwise.
inline std::optional<std::pair<FieldElement, unsigned>> is_standard(
    const QPolynomial& L) {
  int nz = -1;
  for (unsigned j = 0; j < L.m; ++j) {
    if (L.coeffs[j] != 0) {
      if (nz >= 0) return std::nullopt;
      nz = int(j);
    }
  }
  if (nz < 0) return std::nullopt;  // zero map is not standard
  return std::make_pair(FieldElement{L.field, L.coeffs[unsigned(nz)]},
                        unsigned(nz));
}

// Rank test of the m x m matrix of L over a GF(q)-basis of its natural
// domain GF(q^m), which may sit strictly inside the ambient field. Entries
// live in the GF(q) subfield, so elimination stays inside it.
inline bool is_nonsingular(const QPolynomial& L) {
  const FieldDesc& F = *L.field;
  const SubfieldCoords& C = subfield_coords(F, L.q, L.m);
  unsigned m = C.dim();
  std::vector<std::vector<uint64_t>> a(m, std::vector<uint64_t>(m));
  for (unsigned j = 0; j < m; ++j) {
    uint64_t img = evaluate(L, FieldElement{&F, C.basis()[j]}).enc;
    auto col = C.coords(img);
    for (unsigned i = 0; i < m; ++i) a[i][j] = col[i];
  }
  unsigned rank = 0;
  for (unsigned col = 0; col < m && rank < m; ++col) {
    unsigned piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    uint64_t d = F.inv(a[rank][col]);
    for (unsigned j = 0; j < m; ++j) a[rank][j] = F.mul(a[rank][j], d);
    for (unsigned i = 0; i < m; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      uint64_t fac = a[i][col];
      for (unsigned j = 0; j < m; ++j)
        a[i][j] = F.sub(a[i][j], F.mul(fac, a[rank][j]));
    }
    ++rank;
  }
  return rank == m;
}

// The cyclic group generated by xi: power list and discrete logs.
class CycleGroup {
 public:
  explicit CycleGroup(const FieldElement& xi)
      : F_(xi.field), n_(element_order(xi)) {
    pow_.reserve(n_);
    uint64_t cur = F_->one().enc;
    for (uint64_t k = 0; k < n_; ++k) {
      pow_.push_back(cur);
      cur = F_->mul(cur, xi.enc);
    }
    dlog_.assign(F_->q(), kNone);
    for (uint64_t k = 0; k < n_; ++k) dlog_[pow_[k]] = k;
  }

  static constexpr uint64_t kNone = ~uint64_t(0);
  uint64_t n() const { return n_; }
  uint64_t pow(uint64_t k) const { return pow_[k % n_]; }
  bool contains(uint64_t enc) const { return enc < dlog_.size() && dlog_[enc] != kNone; }
  // exponent of enc in base xi, or kNone
  uint64_t dlog(uint64_t enc) const { return enc < dlog_.size() ? dlog_[enc] : kNone; }

 private:
  const FieldDesc* F_;
  uint64_t n_;
  std::vector<uint64_t> pow_;
  std::vector<uint64_t> dlog_;
};

// True iff L maps the cyclic group of xi onto itself as a set; membership
// bitmap over canonical encodings.
inline bool fixes_subgroup(const QPolynomial& L, const FieldElement& xi) {
  if (xi.field != L.field) throw DomainError("fixes_subgroup: field mismatch");
  if (xi.is_zero()) throw DomainError("fixes_subgroup: zero element");
  CycleGroup G(xi);
  std::vector<bool> seen(G.n(), false);
  uint64_t xk = xi.field->one().enc;
  for (uint64_t k = 0; k < G.n(); ++k) {
    uint64_t img = evaluate(L, FieldElement{xi.field, xk}).enc;
    uint64_t dl = G.dlog(img);
    if (dl == CycleGroup::kNone || seen[dl]) return false;
    seen[dl] = true;
    xk = xi.field->mul(xk, xi.enc);
  }
  return true;
}

// Classification tag carried by a witness.
struct ClassLabel {
  enum class Kind { unclassified, standard, type_I, type_II, sporadic };
  Kind kind = Kind::unclassified;
  // type_I parameters
  uint64_t eta_enc = 0;
  uint64_t e = 0;
  // type_II parameters
  uint64_t q0 = 0;
  uint64_t t = 0;
  uint64_t k = 0;
  std::string name;  // sporadic name

  static ClassLabel unclassified() { return {}; }
  static ClassLabel standard() {
    ClassLabel l;
    l.kind = Kind::standard;
    return l;
  }
  static ClassLabel type_I(uint64_t eta_enc, uint64_t e) {
    ClassLabel l;
    l.kind = Kind::type_I;
    l.eta_enc = eta_enc;
    l.e = e;
    return l;
  }
  static ClassLabel type_II(uint64_t q0, uint64_t t, uint64_t k) {
    ClassLabel l;
    l.kind = Kind::type_II;
    l.q0 = q0;
    l.t = t;
    l.k = k;
    return l;
  }
  static ClassLabel sporadic(std::string name) {
    ClassLabel l;
    l.kind = Kind::sporadic;
    l.name = std::move(name);
    return l;
  }

  std::string str() const {
    switch (kind) {
      case Kind::unclassified:
        return name.empty() ? "unclassified" : "unclassified(" + name + ")";
      case Kind::standard:
        return "standard";
      case Kind::type_I:
        return "type_I(eta=" + std::to_string(eta_enc) +
               ",e=" + std::to_string(e) + ")";
      case Kind::type_II:
        return "type_II(q0=" + std::to_string(q0) + ",t=" + std::to_string(t) +
               (k ? ",k=" + std::to_string(k) : "") + ")";
      case Kind::sporadic:
        return "sporadic(" + name + ")";
    }
    return "?";
  }
};

// A certified nonstandard generation: L fixes <xi> setwise, L(1) = 1, L is
// not of the form c x^{q^j}, and perm is the induced permutation of
// exponents (perm[0] = 0).
struct NonstandardWitness {
  FieldElement xi;
  uint64_t q = 0;
  unsigned m = 0;
  uint64_t n = 0;
  uint64_t d = 0;
  QPolynomial L;
  std::vector<uint32_t> perm;
  ClassLabel tag;
};

// Full verification of a claimed witness; throws InternalError on failure.
inline void verify_witness(const NonstandardWitness& w) {
  const FieldDesc& F = *w.xi.field;
  if (evaluate(w.L, F.one()) != F.one())
    throw InternalError("witness: L(1) != 1");
  if (is_standard(w.L)) throw InternalError("witness: L is standard");
  if (!fixes_subgroup(w.L, w.xi))
    throw InternalError("witness: L does not fix <xi>");
  if (!is_nonsingular(w.L)) throw InternalError("witness: singular L");
  auto dq = degree_and_qorder(w.xi, w.q);
  if (dq.m != w.m || dq.n != w.n || dq.d != w.d)
    throw InternalError("witness: degree/order mismatch");
  if (w.perm.size() != w.n || w.perm[0] != 0)
    throw InternalError("witness: bad permutation");
  std::vector<bool> hit(w.n, false);
  for (uint32_t v : w.perm) {
    if (v >= w.n || hit[v]) throw InternalError("witness: perm not bijective");
    hit[v] = true;
  }
}

struct SearchOptions {
  uint64_t budget = 100000000;  // max candidate image tuples
  unsigned workers = 1;
};

namespace detail {

// Solves for the coefficients of the q-polynomial with prescribed images on
// the basis 1, xi, ..., xi^{m-1}. Rows of the inverse Vandermonde are
// precomputed once per xi.
class BasisSolver {
 public:
  BasisSolver(const FieldElement& xi, uint64_t q, unsigned m)
      : F_(xi.field), m_(m) {
    std::vector<std::vector<uint64_t>> a(m, std::vector<uint64_t>(2 * m, 0));
    for (unsigned j = 0; j < m; ++j) {
      uint64_t conj = F_->pow_enc(xi.enc, ipow_u64(q, j));
      uint64_t cur = F_->one().enc;
      for (unsigned k = 0; k < m; ++k) {
        a[k][j] = cur;
        cur = F_->mul(cur, conj);
      }
    }
    for (unsigned i = 0; i < m; ++i) a[i][m + i] = F_->one().enc;
    for (unsigned col = 0; col < m; ++col) {
      unsigned piv = col;
      while (piv < m && a[piv][col] == 0) ++piv;
      if (piv == m) throw InternalError("BasisSolver: singular Vandermonde");
      std::swap(a[piv], a[col]);
      uint64_t d = F_->inv(a[col][col]);
      for (unsigned j = 0; j < 2 * m; ++j) a[col][j] = F_->mul(a[col][j], d);
      for (unsigned i = 0; i < m; ++i) {
        if (i == col || a[i][col] == 0) continue;
        uint64_t fac = a[i][col];
        for (unsigned j = 0; j < 2 * m; ++j)
          a[i][j] = F_->sub(a[i][j], F_->mul(fac, a[col][j]));
      }
    }
    inv_.assign(m, std::vector<uint64_t>(m));
    for (unsigned i = 0; i < m; ++i)
      for (unsigned j = 0; j < m; ++j) inv_[i][j] = a[i][m + j];
  }

  std::vector<uint64_t> coeffs(const std::vector<uint64_t>& images) const {
    std::vector<uint64_t> c(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
      uint64_t acc = 0;
      for (unsigned j = 0; j < m_; ++j)
        acc = F_->add(acc, F_->mul(inv_[i][j], images[j]));
      c[i] = acc;
    }
    return c;
  }

 private:
  const FieldDesc* F_;
  unsigned m_;
  std::vector<std::vector<uint64_t>> inv_;
};

}  // namespace detail

// Exhaustive search over candidate image tuples
// (L(xi), ..., L(xi^{m-1})) in <xi>^{m-1}, with L(1) = 1 fixed. A candidate
// is accepted when the sequence u_k = L(xi^k), generated by the recurrence
// of the minimal polynomial of xi, enumerates <xi> without repetition and L
// is not standard. Results are sorted by the encodings of their image
// tuples; the output is independent of the worker count.
inline std::vector<NonstandardWitness> search_nonstandard(
    const FieldElement& xi, uint64_t q, const SearchOptions& opt = {}) {
  if (xi.is_zero()) throw DomainError("search_nonstandard: zero element");
  const FieldDesc& F = *xi.field;
  auto dq = degree_and_qorder(xi, q);
  unsigned m = dq.m;
  uint64_t n = dq.n;

  // candidate count n^{m-1}
  uint64_t total = 1;
  for (unsigned i = 0; i + 1 < m; ++i) {
    if (total > opt.budget / n + 1) {
      total = opt.budget + 1;
      break;
    }
    total *= n;
  }
  if (total > opt.budget)
    throw BudgetError("search_nonstandard: candidate space exceeds budget");
  if (m == 1) return {};  // only scalar maps, all standard

  CycleGroup G(xi);
  Poly f = minimal_polynomial(xi, q);
  std::vector<uint64_t> sigma(m);
  for (unsigned i = 0; i < m; ++i) sigma[i] = F.neg(f.coeff(i).enc);

  // exponent tuples of the m standard image rows (1, xi^{q^j}, ...)
  std::vector<std::vector<uint64_t>> standard_rows;
  for (unsigned j = 0; j < m; ++j) {
    std::vector<uint64_t> row(m);
    for (unsigned i = 0; i < m; ++i)
      row[i] = G.dlog(F.pow_enc(G.pow(i), ipow_u64(q, j)));
    standard_rows.push_back(std::move(row));
  }

  struct Hit {
    std::vector<uint64_t> exps;  // exponents a_1..a_{m-1}
  };
  std::vector<std::vector<Hit>> found(resolve_workers(opt.workers));

  parallel_ranges(total, opt.workers, [&](unsigned slot, uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> window(m), exps(m), stamp(n, ~uint64_t(0));
    uint64_t epoch = 0;
    for (uint64_t idx = lo; idx < hi; ++idx) {
      // decode candidate exponents, base n, a_1 fastest
      uint64_t t = idx;
      exps[0] = 0;
      for (unsigned i = 1; i < m; ++i) {
        exps[i] = t % n;
        t /= n;
      }
      // skip standard rows
      bool std_row = false;
      for (auto& row : standard_rows) {
        if (std::equal(row.begin(), row.end(), exps.begin())) {
          std_row = true;
          break;
        }
      }
      if (std_row) continue;
      // run the recurrence from the images and demand a clean enumeration
      ++epoch;
      bool ok = true;
      for (unsigned i = 0; i < m; ++i) {
        uint64_t ex = exps[i];
        if (stamp[ex] == epoch) {
          ok = false;
          break;
        }
        stamp[ex] = epoch;
        window[i] = G.pow(ex);
      }
      if (!ok) continue;
      for (uint64_t k = m; k < n && ok; ++k) {
        uint64_t acc = 0;
        for (unsigned i = 0; i < m; ++i)
          acc = F.add(acc, F.mul(sigma[i], window[i]));
        uint64_t dl = G.dlog(acc);
        if (dl == CycleGroup::kNone || stamp[dl] == epoch) {
          ok = false;
          break;
        }
        stamp[dl] = epoch;
        for (unsigned i = 0; i + 1 < m; ++i) window[i] = window[i + 1];
        window[m - 1] = acc;
      }
      if (ok) found[slot].push_back({exps});
    }
  });

  detail::BasisSolver solver(xi, q, m);
  std::vector<NonstandardWitness> out;
  for (auto& bucket : found) {
    for (auto& hit : bucket) {
      std::vector<uint64_t> images(m);
      for (unsigned i = 0; i < m; ++i) images[i] = G.pow(hit.exps[i]);
      NonstandardWitness w;
      w.xi = xi;
      w.q = q;
      w.m = m;
      w.n = n;
      w.d = dq.d;
      w.L = QPolynomial{&F, q, m, solver.coeffs(images)};
      w.perm.resize(n);
      uint64_t xk = F.one().enc;
      for (uint64_t k = 0; k < n; ++k) {
        w.perm[k] =
            static_cast<uint32_t>(G.dlog(evaluate(w.L, FieldElement{&F, xk}).enc));
        xk = F.mul(xk, xi.enc);
      }
      verify_witness(w);
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const NonstandardWitness& a, const NonstandardWitness& b) {
              for (unsigned i = 0; i < m; ++i) {
                uint64_t ia = evaluate(a.L, FieldElement{&F, G.pow(i)}).enc;
                uint64_t ib = evaluate(b.L, FieldElement{&F, G.pow(i)}).enc;
                if (ia != ib) return ia < ib;
              }
              return false;
            });
  return out;
}

}  // namespace lrsub
