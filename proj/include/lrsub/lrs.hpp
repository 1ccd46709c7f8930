#pragma once

// Linear recurring sequences u_k = s_{m-1} u_{k-1} + ... + s_0 u_{k-m} with
// characteristic polynomial f(x) = x^m - s_{m-1} x^{m-1} - ... - s_0 over a
// coefficient field GF(q). Sequence values may live in an extension; the
// ambient field carries both, with the coefficients constrained to the
// GF(q) subfield.

#include <cstdint>
#include <vector>

#include "lrsub/gf.hpp"
#include "lrsub/linearized.hpp"

namespace lrsub {

class Recurrence {
 public:
  // charpoly: monic of degree m >= 1 over the ambient field, coefficients in
  // the GF(q) subfield, nonzero constant term.
  Recurrence(const FieldDesc& ambient, uint64_t q, Poly charpoly)
      : F_(&ambient), q_(q), f_(std::move(charpoly)) {
    if (&f_.field() != &ambient) throw DomainError("Recurrence: field mismatch");
    if (!ambient.is_subfield_order(q))
      throw DomainError("Recurrence: q is not a subfield order");
    if (f_.degree() < 1) throw DomainError("Recurrence: degree must be >= 1");
    if (!f_.is_monic()) throw DomainError("Recurrence: charpoly must be monic");
    if (f_.coeff(0).is_zero())
      throw DomainError("Recurrence: zero constant term");
    for (uint64_t c : f_.coeffs())
      if (!ambient.in_subfield(c, q))
        throw DomainError("Recurrence: coefficient outside GF(q)");
    m_ = unsigned(f_.degree());
    sigma_.resize(m_);
    for (unsigned i = 0; i < m_; ++i) sigma_[i] = ambient.neg(f_.coeff(i).enc);
  }

  const FieldDesc& field() const { return *F_; }
  uint64_t q() const { return q_; }
  unsigned m() const { return m_; }
  const Poly& charpoly() const { return f_; }
  // sigma[i] multiplies u_{k-m+i}; sigma[0] is nonzero.
  const std::vector<uint64_t>& sigma() const { return sigma_; }

  uint64_t step(const std::vector<uint64_t>& window) const {
    uint64_t acc = 0;
    for (unsigned i = 0; i < m_; ++i)
      acc = F_->add(acc, F_->mul(sigma_[i], window[i]));
    return acc;
  }

 private:
  const FieldDesc* F_;
  uint64_t q_;
  Poly f_;
  unsigned m_;
  std::vector<uint64_t> sigma_;
};

using StateVector = std::vector<FieldElement>;

inline std::vector<uint64_t> state_encs(const Recurrence& rec,
                                        const StateVector& init) {
  if (init.size() != rec.m()) throw DomainError("state: wrong length");
  std::vector<uint64_t> w;
  for (auto& x : init) {
    if (x.field != &rec.field()) throw DomainError("state: mixed-field inputs");
    w.push_back(x.enc);
  }
  return w;
}

// First `count` terms of the sequence with the given initial state.
inline std::vector<FieldElement> generate(const Recurrence& rec,
                                          const StateVector& init,
                                          size_t count) {
  if (count < rec.m()) throw DomainError("generate: count < m");
  const FieldDesc& F = rec.field();
  std::vector<uint64_t> w = state_encs(rec, init);
  std::vector<FieldElement> out;
  out.reserve(count);
  for (uint64_t e : w) out.push_back({&F, e});
  for (size_t k = rec.m(); k < count; ++k) {
    uint64_t nxt = rec.step(w);
    out.push_back({&F, nxt});
    for (unsigned i = 0; i + 1 < rec.m(); ++i) w[i] = w[i + 1];
    w[rec.m() - 1] = nxt;
  }
  return out;
}

// Smallest period, by first return of the m-dimensional state (the state map
// is invertible since sigma_0 != 0, so the orbit is a pure cycle). The
// result is checked to divide ord(f).
inline uint64_t period(const Recurrence& rec, const StateVector& init) {
  std::vector<uint64_t> w0 = state_encs(rec, init);
  bool allzero = true;
  for (uint64_t e : w0) allzero &= (e == 0);
  if (allzero) throw DomainError("period: all-zero initial state");
  std::vector<uint64_t> w = w0;
  uint64_t cap = 1;
  for (unsigned i = 0; i < rec.m(); ++i) cap *= rec.field().q();
  for (uint64_t k = 1; k <= cap; ++k) {
    uint64_t nxt = rec.step(w);
    for (unsigned i = 0; i + 1 < rec.m(); ++i) w[i] = w[i + 1];
    w[rec.m() - 1] = nxt;
    if (w == w0) {
      uint64_t of = poly_order(rec.charpoly());
      if (of % k != 0) throw InternalError("period: does not divide ord(f)");
      return k;
    }
  }
  throw InternalError("period: state never returned");
}

struct RestrictedPeriod {
  uint64_t delta;
  FieldElement lambda;  // in GF(q)^*
};

// First return of the impulse state (0,...,0,1) to (0,...,0,lambda).
inline RestrictedPeriod restricted_period(const Recurrence& rec) {
  const FieldDesc& F = rec.field();
  unsigned m = rec.m();
  std::vector<uint64_t> w(m, 0);
  w[m - 1] = F.one().enc;
  uint64_t cap = 1;
  for (unsigned i = 0; i < m; ++i) cap *= F.q();
  for (uint64_t k = 1; k <= cap; ++k) {
    uint64_t nxt = rec.step(w);
    for (unsigned i = 0; i + 1 < m; ++i) w[i] = w[i + 1];
    w[m - 1] = nxt;
    bool zeros = true;
    for (unsigned i = 0; i + 1 < m; ++i) zeros &= (w[i] == 0);
    if (zeros && w[m - 1] != 0)
      return {k, FieldElement{&F, w[m - 1]}};
  }
  throw InternalError("restricted_period: no return");
}

// The unique q-polynomial L with L(xi^k) = u_k, solved from the first m
// values via the Vandermonde system in the conjugates of xi. The next m
// generated values are re-checked against L before returning.
inline QPolynomial qpoly_from_initials(const Recurrence& rec,
                                       const FieldElement& xi,
                                       const StateVector& init) {
  const FieldDesc& F = rec.field();
  if (xi.field != &F) throw DomainError("qpoly_from_initials: field mismatch");
  unsigned m = rec.m();
  if (init.size() != m) throw DomainError("qpoly_from_initials: wrong length");
  if (!rec.charpoly().eval(xi).is_zero())
    throw DomainError("qpoly_from_initials: xi is not a root of f");
  // f irreducible over GF(q) is equivalent to xi having degree m: the
  // minimal polynomial of xi then has degree m and divides f.
  if (degree_and_qorder(xi, rec.q()).m != m)
    throw DomainError("qpoly_from_initials: charpoly not irreducible over GF(q)");
  // augmented system: rows k, columns j with entry xi^{k q^j}
  std::vector<std::vector<uint64_t>> a(m, std::vector<uint64_t>(m + 1, 0));
  for (unsigned j = 0; j < m; ++j) {
    uint64_t conj = F.pow_enc(xi.enc, ipow_u64(rec.q(), j));
    uint64_t cur = F.one().enc;
    for (unsigned k = 0; k < m; ++k) {
      a[k][j] = cur;
      cur = F.mul(cur, conj);
    }
  }
  for (unsigned k = 0; k < m; ++k) a[k][m] = init[k].enc;
  // Gaussian elimination; the conjugates are distinct, so the system is
  // nonsingular and any failure here is an internal error.
  for (unsigned col = 0; col < m; ++col) {
    unsigned piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw InternalError("qpoly_from_initials: singular system");
    std::swap(a[piv], a[col]);
    uint64_t d = F.inv(a[col][col]);
    for (unsigned j = 0; j <= m; ++j) a[col][j] = F.mul(a[col][j], d);
    for (unsigned i = 0; i < m; ++i) {
      if (i == col || a[i][col] == 0) continue;
      uint64_t fac = a[i][col];
      for (unsigned j = 0; j <= m; ++j)
        a[i][j] = F.sub(a[i][j], F.mul(fac, a[col][j]));
    }
  }
  std::vector<uint64_t> coeffs(m);
  for (unsigned j = 0; j < m; ++j) coeffs[j] = a[j][m];
  QPolynomial L{&F, rec.q(), m, std::move(coeffs)};
  // re-check the continuation
  auto seq = generate(rec, init, 2 * size_t(m));
  uint64_t xk = F.one().enc;
  for (unsigned k = 0; k < 2 * m; ++k) {
    if (evaluate(L, FieldElement{&F, xk}) != seq[k])
      throw InternalError("qpoly_from_initials: continuation mismatch");
    xk = F.mul(xk, xi.enc);
  }
  return L;
}

}  // namespace lrsub
