#pragma once

// PGL(2,q) acting on GF(q) u {inf} by fractional linear maps, for the
// degree-two analysis: the Lambda/Gamma pair attached to a witness, the
// F_k sequence, orbits, group closures, subfield membership, subgroup
// identification, and the general-m companion-matrix orbit.
//
// Matrices live over the GF(q) subfield of an ambient field (usually
// GF(q^2)); all arithmetic stays inside the subfield because field
// operations are closed on it.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lrsub/gf.hpp"
#include "lrsub/linearized.hpp"

namespace lrsub {

// A point of PG(1,q): either a GF(q) value or the point at infinity.
// The (x,y) convention: (x,y) with y != 0 is x/y, (x,0) is infinity.
struct ProjPoint {
  bool inf = false;
  uint64_t enc = 0;  // meaningful when !inf

  static ProjPoint infinity() { return {true, 0}; }
  static ProjPoint finite(uint64_t enc) { return {false, enc}; }
  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.inf == b.inf && (a.inf || a.enc == b.enc);
  }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) {
    return !(a == b);
  }
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) {
    if (a.inf != b.inf) return b.inf;  // finite points first, inf last
    return a.enc < b.enc;
  }
  std::string str() const { return inf ? "inf" : std::to_string(enc); }
};

// Invertible 2x2 matrix over the GF(q) subfield of F, stored in canonical
// scaling: the first nonzero entry in reading order equals 1, which makes
// PGL equality a plain value comparison.
struct ProjMatrix {
  const FieldDesc* F = nullptr;
  uint64_t q = 0;
  uint64_t a = 0, b = 0, c = 0, d = 0;

  ProjMatrix() = default;
  ProjMatrix(const FieldDesc& field, uint64_t q_, uint64_t a_, uint64_t b_,
             uint64_t c_, uint64_t d_)
      : F(&field), q(q_), a(a_), b(b_), c(c_), d(d_) {
    if (!field.is_subfield_order(q))
      throw DomainError("ProjMatrix: q is not a subfield order");
    for (uint64_t e : {a_, b_, c_, d_})
      if (!field.in_subfield(e, q))
        throw DomainError("ProjMatrix: entry outside GF(q)");
    if (det_enc() == 0) throw DomainError("ProjMatrix: singular");
    canonicalize();
  }

  static ProjMatrix identity(const FieldDesc& field, uint64_t q) {
    return ProjMatrix(field, q, field.one().enc, 0, 0, field.one().enc);
  }

  uint64_t det_enc() const {
    return F->sub(F->mul(a, d), F->mul(b, c));
  }
  uint64_t trace_enc() const { return F->add(a, d); }

  void canonicalize() {
    uint64_t lead = a ? a : b ? b : c ? c : d;
    if (lead == 0) throw InternalError("ProjMatrix: zero matrix");
    uint64_t s = F->inv(lead);
    a = F->mul(a, s);
    b = F->mul(b, s);
    c = F->mul(c, s);
    d = F->mul(d, s);
  }

  friend ProjMatrix operator*(const ProjMatrix& m1, const ProjMatrix& m2) {
    if (m1.F != m2.F || m1.q != m2.q)
      throw DomainError("ProjMatrix: context mismatch");
    const FieldDesc& F = *m1.F;
    ProjMatrix r;
    r.F = m1.F;
    r.q = m1.q;
    r.a = F.add(F.mul(m1.a, m2.a), F.mul(m1.b, m2.c));
    r.b = F.add(F.mul(m1.a, m2.b), F.mul(m1.b, m2.d));
    r.c = F.add(F.mul(m1.c, m2.a), F.mul(m1.d, m2.c));
    r.d = F.add(F.mul(m1.c, m2.b), F.mul(m1.d, m2.d));
    r.canonicalize();
    return r;
  }

  ProjMatrix inverse() const {
    ProjMatrix r;
    r.F = F;
    r.q = q;
    r.a = d;
    r.b = F->neg(b);
    r.c = F->neg(c);
    r.d = a;
    r.canonicalize();
    return r;
  }

  bool is_identity() const {
    return a == F->one().enc && b == 0 && c == 0 && d == F->one().enc;
  }

  friend bool operator==(const ProjMatrix& x, const ProjMatrix& y) {
    return x.F == y.F && x.q == y.q && x.a == y.a && x.b == y.b &&
           x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const ProjMatrix& x, const ProjMatrix& y) {
    return !(x == y);
  }

  // x -> (ax + b)/(cx + d) on GF(q) u {inf}
  ProjPoint act(const ProjPoint& x) const {
    const FieldDesc& f = *F;
    if (x.inf) {
      if (c == 0) return ProjPoint::infinity();
      return ProjPoint::finite(f.div(a, c));
    }
    uint64_t num = f.add(f.mul(a, x.enc), b);
    uint64_t den = f.add(f.mul(c, x.enc), d);
    if (den == 0) return ProjPoint::infinity();
    return ProjPoint::finite(f.div(num, den));
  }

  std::string str() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
           std::to_string(c) + "," + std::to_string(d) + "]]";
  }
};

// Order of M as an element of PGL(2,q).
inline uint64_t proj_order(const ProjMatrix& M) {
  ProjMatrix cur = M;
  uint64_t k = 1;
  uint64_t cap = M.q * (M.q + 1) * (M.q - 1) + 2;
  while (!cur.is_identity()) {
    cur = cur * M;
    if (++k > cap) throw InternalError("proj_order: no finite order");
  }
  return k;
}

inline std::vector<ProjPoint> all_points(const FieldDesc& F, uint64_t q) {
  std::vector<ProjPoint> pts;
  for (uint64_t e : F.subfield_elements(q)) pts.push_back(ProjPoint::finite(e));
  pts.push_back(ProjPoint::infinity());
  return pts;
}

inline uint64_t fixed_point_count(const ProjMatrix& M) {
  uint64_t cnt = 0;
  for (auto& x : all_points(*M.F, M.q))
    if (M.act(x) == x) ++cnt;
  return cnt;
}

// Closure of {start} under the generators, breadth first; the returned
// order is deterministic.
inline std::vector<ProjPoint> orbit(const std::vector<ProjMatrix>& generators,
                                    const ProjPoint& start) {
  std::vector<ProjPoint> out{start};
  std::deque<ProjPoint> frontier{start};
  auto seen = [&](const ProjPoint& p) {
    return std::find(out.begin(), out.end(), p) != out.end();
  };
  while (!frontier.empty()) {
    ProjPoint p = frontier.front();
    frontier.pop_front();
    for (auto& g : generators) {
      ProjPoint im = g.act(p);
      if (!seen(im)) {
        out.push_back(im);
        frontier.push_back(im);
      }
    }
  }
  return out;
}

struct GroupClosure {
  std::vector<ProjMatrix> generators;
  std::vector<ProjMatrix> elements;  // breadth-first from the identity
  uint64_t order = 0;
};

// Full element set generated by the given matrices. Frontier/visited
// enumeration with products in canonical scaling.
inline GroupClosure group_closure(const std::vector<ProjMatrix>& generators,
                                  uint64_t budget = 1000000) {
  if (generators.empty()) throw DomainError("group_closure: no generators");
  GroupClosure G;
  G.generators = generators;
  struct ArrayHash {
    size_t operator()(const std::array<uint64_t, 4>& k) const {
      uint64_t h = 1469598103934665603ull;
      for (uint64_t e : k) {
        h ^= e;
        h *= 1099511628211ull;
      }
      return size_t(h);
    }
  };
  std::unordered_set<std::array<uint64_t, 4>, ArrayHash> visited;
  auto push = [&](const ProjMatrix& m) {
    if (visited.insert({m.a, m.b, m.c, m.d}).second) {
      if (G.elements.size() >= budget)
        throw BudgetError("group_closure: budget exceeded");
      G.elements.push_back(m);
    }
  };
  push(ProjMatrix::identity(*generators[0].F, generators[0].q));
  size_t head = 0;
  while (head < G.elements.size()) {
    ProjMatrix cur = G.elements[head++];
    for (auto& g : generators) push(cur * g);
  }
  G.order = G.elements.size();
  return G;
}

// phi with M^{(q0)} == phi * M entrywise, when it exists. Operates on the
// raw entries, so scalar multiples report the scalar's Frobenius defect.
inline std::optional<FieldElement> subfield_scalar(const FieldDesc& F,
                                                   uint64_t q0, uint64_t a,
                                                   uint64_t b, uint64_t c,
                                                   uint64_t d) {
  if (!F.is_subfield_order(q0))
    throw DomainError("subfield_scalar: not a subfield order");
  uint64_t phi = 0;
  for (uint64_t e : {a, b, c, d}) {
    if (e == 0) continue;
    uint64_t ratio = F.div(F.pow_enc(e, q0), e);
    if (phi == 0)
      phi = ratio;
    else if (phi != ratio)
      return std::nullopt;
  }
  if (phi == 0) return std::nullopt;
  return FieldElement{&F, phi};
}

// Membership of M in PGL(2,q0) inside PGL(2,q); for a canonical M the
// scalar is 1 exactly when all entries lie in GF(q0).
inline std::optional<FieldElement> subfield_membership(const ProjMatrix& M,
                                                       uint64_t q0) {
  return subfield_scalar(*M.F, q0, M.a, M.b, M.c, M.d);
}

// Necessary condition for membership in a conjugate of PSL/PGL(2,q0):
// Tr(M) = 0 or Tr(M)^{2(q0-1)} = det(M)^{q0-1}. Scale invariant.
inline bool trace_det_test(const ProjMatrix& M, uint64_t q0) {
  if (!M.F->is_subfield_order(q0))
    throw DomainError("trace_det_test: not a subfield order");
  const FieldDesc& F = *M.F;
  uint64_t tr = M.trace_enc();
  if (tr == 0) return true;
  return F.pow_enc(tr, 2 * (q0 - 1)) == F.pow_enc(M.det_enc(), q0 - 1);
}

// The unique map sending (z_inf, z0, z1) to (inf, 0, 1).
inline ProjMatrix align_three_points(const FieldDesc& F, uint64_t q,
                                     const ProjPoint& zi, const ProjPoint& z0,
                                     const ProjPoint& z1) {
  if (zi == z0 || zi == z1 || z0 == z1)
    throw DomainError("align_three_points: points must be distinct");
  uint64_t one = F.one().enc;
  if (zi.inf)  // x -> (x - z0)/(z1 - z0)
    return ProjMatrix(F, q, one, F.neg(z0.enc), 0, F.sub(z1.enc, z0.enc));
  if (z0.inf)  // x -> (z1 - zi)/(x - zi)
    return ProjMatrix(F, q, 0, F.sub(z1.enc, zi.enc), one, F.neg(zi.enc));
  if (z1.inf)  // x -> (x - z0)/(x - zi)
    return ProjMatrix(F, q, one, F.neg(z0.enc), one, F.neg(zi.enc));
  uint64_t alpha = F.sub(z1.enc, zi.enc);
  uint64_t beta = F.sub(z1.enc, z0.enc);
  return ProjMatrix(F, q, alpha, F.neg(F.mul(alpha, z0.enc)), beta,
                    F.neg(F.mul(beta, zi.enc)));
}

struct SubgroupLabel {
  enum class Kind {
    cyclic,
    dihedral,
    elem_abelian,
    semidirect,
    A4,
    S4,
    A5,
    psl,
    pgl
  };
  Kind kind;
  uint64_t a = 0;  // cyclic k / dihedral 2k -> k / elem p / semidirect p^k / psl,pgl q0
  uint64_t b = 0;  // elem k / semidirect l

  std::string str() const {
    switch (kind) {
      case Kind::cyclic: return "cyclic(" + std::to_string(a) + ")";
      case Kind::dihedral: return "dihedral(" + std::to_string(2 * a) + ")";
      case Kind::elem_abelian:
        return "elem_abelian(" + std::to_string(a) + "^" + std::to_string(b) + ")";
      case Kind::semidirect:
        return "semidirect(" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Kind::A4: return "A4";
      case Kind::S4: return "S4";
      case Kind::A5: return "A5";
      case Kind::psl: return "PSL(2," + std::to_string(a) + ")";
      case Kind::pgl: return "PGL(2," + std::to_string(a) + ")";
    }
    return "?";
  }
};

namespace detail {

// Conjugates G so that one orbit of size q0+1 aligns with GF(q0) u {inf},
// then requires every element to pass the subfield test.
inline bool census_subfield_group(const GroupClosure& G, uint64_t q0) {
  const FieldDesc& F = *G.generators[0].F;
  uint64_t q = G.generators[0].q;
  if (!F.is_subfield_order(q0)) return false;
  // orbit decomposition under the generators
  std::vector<ProjPoint> pts = all_points(F, q);
  std::vector<ProjPoint> target;
  std::vector<char> used(pts.size(), 0);
  auto index_of = [&](const ProjPoint& p) {
    for (size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == p) return i;
    throw InternalError("census: point not found");
  };
  for (size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    auto orb = orbit(G.generators, pts[i]);
    for (auto& p : orb) used[index_of(p)] = 1;
    if (orb.size() == q0 + 1) {
      target = orb;
      break;
    }
  }
  if (target.empty()) return false;
  ProjMatrix A = align_three_points(F, q, target[0], target[1], target[2]);
  ProjMatrix Ainv = A.inverse();
  for (auto& g : G.elements) {
    ProjMatrix h = A * g * Ainv;
    if (!subfield_membership(h, q0)) return false;
  }
  return true;
}

inline std::vector<uint64_t> element_orders(const GroupClosure& G) {
  std::vector<uint64_t> ords;
  ords.reserve(G.order);
  for (auto& g : G.elements) ords.push_back(proj_order(g));
  return ords;
}

}  // namespace detail

// Identifies a closure against the classification of subgroups of
// PGL(2,q): order plus structural probes, with a subfield-membership census
// (after a conjugation aligning the q0+1 orbit) deciding the PSL/PGL cases.
inline SubgroupLabel identify_subgroup(const GroupClosure& G, uint64_t q) {
  if (G.elements.empty()) throw DomainError("identify_subgroup: empty closure");
  const FieldDesc& F = *G.generators[0].F;
  if (q != G.generators[0].q)
    throw DomainError("identify_subgroup: context mismatch");
  uint64_t p = F.p();
  uint64_t N = G.order;
  if (N == 1) return {SubgroupLabel::Kind::cyclic, 1, 0};

  auto ords = detail::element_orders(G);
  uint64_t max_ord = *std::max_element(ords.begin(), ords.end());

  // PSL/PGL(2,q0) for a subfield q0 of GF(q), decided by order and census.
  // Checked first: the census is definitive and the exceptional
  // isomorphisms (PGL(2,3) = S4 etc.) should surface with the subfield name.
  uint64_t s0 = 0;
  {
    uint64_t t = q;
    while (t > 1) {
      t /= p;
      ++s0;
    }
  }
  for (uint64_t s = 1; s <= s0; ++s) {
    if (s0 % s != 0) continue;
    uint64_t q0 = ipow_u64(p, unsigned(s));
    if (q0 < 2) continue;
    if (N == q0 * (q0 * q0 - 1) && detail::census_subfield_group(G, q0))
      return {SubgroupLabel::Kind::pgl, q0, 0};
    if (q0 % 2 == 1 && q0 >= 3 && 2 * N == q0 * (q0 * q0 - 1) &&
        detail::census_subfield_group(G, q0))
      return {SubgroupLabel::Kind::psl, q0, 0};
  }

  if (max_ord == N) return {SubgroupLabel::Kind::cyclic, N, 0};

  // elementary abelian p^k
  bool all_p = true;
  for (uint64_t o : ords) all_p &= (o == 1 || o == p);
  if (all_p) {
    uint64_t pk = 1, k = 0;
    while (pk < N) {
      pk *= p;
      ++k;
    }
    if (pk == N) return {SubgroupLabel::Kind::elem_abelian, p, k};
  }

  // dihedral of order 2k: a cyclic half plus an inverting involution
  if (N % 2 == 0) {
    uint64_t k = N / 2;
    for (auto& rg : G.elements) {
      if (proj_order(rg) != k) continue;
      // collect <r>
      std::vector<ProjMatrix> cyc;
      ProjMatrix cur = ProjMatrix::identity(F, q);
      for (uint64_t i = 0; i < k; ++i) {
        cyc.push_back(cur);
        cur = cur * rg;
      }
      ProjMatrix rinv = rg.inverse();
      for (auto& sg : G.elements) {
        if (proj_order(sg) != 2) continue;
        if (std::find(cyc.begin(), cyc.end(), sg) != cyc.end()) continue;
        if (sg * rg * sg == rinv) return {SubgroupLabel::Kind::dihedral, k, 0};
      }
      break;
    }
  }

  // A4 / S4 / A5 by element-order multiset
  auto count_ord = [&](uint64_t o) {
    return uint64_t(std::count(ords.begin(), ords.end(), o));
  };
  if (N == 12 && count_ord(2) == 3 && count_ord(3) == 8)
    return {SubgroupLabel::Kind::A4, 0, 0};
  if (N == 24 && count_ord(2) == 9 && count_ord(3) == 8 && count_ord(4) == 6)
    return {SubgroupLabel::Kind::S4, 0, 0};
  if (N == 60 && count_ord(2) == 15 && count_ord(3) == 20 && count_ord(5) == 24)
    return {SubgroupLabel::Kind::A5, 0, 0};

  // semidirect E_{p^k} x C_l: the p-elements with the identity form the
  // normal subgroup
  {
    uint64_t pk = 1;
    while (N % (pk * p) == 0) pk *= p;
    uint64_t l = N / pk;
    if (pk > 1 && l > 1 && (q - 1) % l == 0 && (pk - 1) % l == 0) {
      uint64_t cnt = 0;
      for (uint64_t o : ords)
        if (o == 1 || o == p) ++cnt;
      if (cnt == pk) return {SubgroupLabel::Kind::semidirect, pk, l};
    }
  }

  throw InternalError("identify_subgroup: no label matched");
}

// ---- the degree-two Lambda/Gamma setup ---------------------------------

struct LambdaGamma {
  ProjMatrix Lambda;     // [[0, lambda], [1, 1]]
  ProjMatrix Gamma;      // [[1, omega_tilde], [0, nu]]
  FieldElement lambda;   // sigma_0 / sigma_1^2
  FieldElement nu;       // L(xi) = omega + nu xi
  FieldElement omega_tilde;  // omega / sigma_1
  FieldElement sigma;    // sigma_1
};

// Builds the PGL(2,q) data of a degree-two witness. Requires sigma_1 != 0,
// i.e. q-order > 2; the d = 2 case is the degenerate x^2 - eta family and
// is handled by the classifier instead.
inline LambdaGamma setup_lambda_gamma(const FieldElement& xi,
                                      const QPolynomial& L) {
  const FieldDesc& F = *xi.field;
  if (L.field != &F) throw DomainError("setup_lambda_gamma: field mismatch");
  uint64_t q = L.q;
  auto dq = degree_and_qorder(xi, q);
  if (dq.m != 2) throw DomainError("setup_lambda_gamma: degree must be 2");
  uint64_t xiq = F.pow_enc(xi.enc, q);
  uint64_t sigma1 = F.add(xi.enc, xiq);
  uint64_t sigma0 = F.neg(F.mul(xi.enc, xiq));
  if (sigma1 == 0)
    throw DomainError("setup_lambda_gamma: sigma_1 = 0 (q-order 2 case)");
  if (evaluate(L, F.one()) != F.one())
    throw DomainError("setup_lambda_gamma: L not normalized, L(1) != 1");
  // L(xi) = omega + nu * xi with omega, nu in GF(q):
  // nu = (y - y^q)/(xi - xi^q), omega = y - nu*xi
  uint64_t y = evaluate(L, xi).enc;
  uint64_t yq = F.pow_enc(y, q);
  uint64_t nu = F.div(F.sub(y, yq), F.sub(xi.enc, xiq));
  uint64_t omega = F.sub(y, F.mul(nu, xi.enc));
  uint64_t lambda = F.div(sigma0, F.mul(sigma1, sigma1));
  uint64_t omt = F.div(omega, sigma1);
  for (uint64_t e : {nu, omega, lambda, omt})
    if (!F.in_subfield(e, q))
      throw InternalError("setup_lambda_gamma: value outside GF(q)");
  LambdaGamma out{
      ProjMatrix(F, q, 0, lambda, F.one().enc, F.one().enc),
      ProjMatrix(F, q, F.one().enc, omt, 0, nu),
      {&F, lambda},
      {&F, nu},
      {&F, omt},
      {&F, sigma1}};
  return out;
}

// F_0 = 0, F_1 = 1, F_{k+2} = F_{k+1} + lambda F_k.
inline FieldElement f_sequence(const FieldElement& lambda, uint64_t k) {
  if (lambda.is_zero()) throw DomainError("f_sequence: lambda = 0");
  const FieldDesc& F = *lambda.field;
  uint64_t a = 0, b = F.one().enc;  // F_0, F_1
  if (k == 0) return {&F, a};
  for (uint64_t i = 1; i < k; ++i) {
    uint64_t c = F.add(b, F.mul(lambda.enc, a));
    a = b;
    b = c;
  }
  return {&F, b};
}

// ---- general-m companion orbit -----------------------------------------

namespace detail {

// m x m matrices over the GF(q) subfield, plain row-major encodings.
struct SmallMat {
  unsigned m;
  std::vector<uint64_t> e;  // m*m entries
  uint64_t& at(unsigned i, unsigned j) { return e[i * m + j]; }
  uint64_t at(unsigned i, unsigned j) const { return e[i * m + j]; }
};

inline SmallMat mat_mul(const FieldDesc& F, const SmallMat& A, const SmallMat& B) {
  SmallMat C{A.m, std::vector<uint64_t>(A.m * A.m, 0)};
  for (unsigned i = 0; i < A.m; ++i)
    for (unsigned k = 0; k < A.m; ++k) {
      uint64_t aik = A.at(i, k);
      if (aik == 0) continue;
      for (unsigned j = 0; j < A.m; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(aik, B.at(k, j)));
    }
  return C;
}

inline std::vector<uint64_t> mat_apply(const FieldDesc& F, const SmallMat& A,
                                       const std::vector<uint64_t>& v) {
  std::vector<uint64_t> w(A.m, 0);
  for (unsigned i = 0; i < A.m; ++i)
    for (unsigned j = 0; j < A.m; ++j)
      w[i] = F.add(w[i], F.mul(A.at(i, j), v[j]));
  return w;
}

inline void proj_normalize(const FieldDesc& F, std::vector<uint64_t>& v) {
  for (uint64_t e : v)
    if (e != 0) {
      uint64_t s = F.inv(e);
      for (auto& x : v) x = F.mul(x, s);
      return;
    }
  throw InternalError("proj_normalize: zero vector");
}

}  // namespace detail

// Size of the orbit of the projective point of 1 under <T, L> in
// PG(m-1, q), where T is the companion matrix of the minimal polynomial of
// xi and L is represented in the basis 1, xi, ..., xi^{m-1}. Asserts the
// orbit size equals the q-order d and that T^d is scalar.
inline uint64_t companion_orbit(const FieldElement& xi, const QPolynomial& L) {
  const FieldDesc& F = *xi.field;
  if (L.field != &F) throw DomainError("companion_orbit: field mismatch");
  uint64_t q = L.q;
  auto dq = degree_and_qorder(xi, q);
  unsigned m = dq.m;
  if (!fixes_subgroup(L, xi))
    throw DomainError("companion_orbit: L does not fix <xi>");

  Poly f = minimal_polynomial(xi, q);
  // T: column j is the coordinate vector of xi^{j+1}
  detail::SmallMat T{m, std::vector<uint64_t>(m * m, 0)};
  for (unsigned j = 0; j + 1 < m; ++j) T.at(j + 1, j) = F.one().enc;
  for (unsigned i = 0; i < m; ++i) T.at(i, m - 1) = F.neg(f.coeff(i).enc);

  // coordinate vectors c^{(j)} of xi^j, built by iterating T
  CycleGroup G(xi);
  uint64_t n = dq.n;
  std::vector<std::vector<uint64_t>> cvec(n);
  std::vector<uint64_t> cur(m, 0);
  cur[0] = F.one().enc;
  for (uint64_t j = 0; j < n; ++j) {
    cvec[j] = cur;
    cur = detail::mat_apply(F, T, cur);
  }
  // L's matrix: column j is c^{(pi(j))} with pi(j) the exponent of L(xi^j)
  detail::SmallMat Lm{m, std::vector<uint64_t>(m * m, 0)};
  for (unsigned j = 0; j < m; ++j) {
    uint64_t img = evaluate(L, FieldElement{&F, G.pow(j)}).enc;
    uint64_t pj = G.dlog(img);
    if (pj == CycleGroup::kNone)
      throw InternalError("companion_orbit: image outside <xi>");
    for (unsigned i = 0; i < m; ++i) Lm.at(i, j) = cvec[pj][i];
  }

  // orbit of e_1 under <T, L>, projectively
  std::vector<uint64_t> start(m, 0);
  start[0] = F.one().enc;
  std::vector<std::vector<uint64_t>> seen{start};
  std::deque<std::vector<uint64_t>> frontier{start};
  while (!frontier.empty()) {
    auto v = frontier.front();
    frontier.pop_front();
    for (auto* M : {&T, &Lm}) {
      auto w = detail::mat_apply(F, *M, v);
      detail::proj_normalize(F, w);
      if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
        seen.push_back(w);
        frontier.push_back(w);
      }
    }
  }
  if (seen.size() != dq.d)
    throw InternalError("companion_orbit: orbit size != q-order");
  // T^d must be the scalar xi^d
  detail::SmallMat Td{m, std::vector<uint64_t>(m * m, 0)};
  for (unsigned i = 0; i < m; ++i) Td.at(i, i) = F.one().enc;
  for (uint64_t i = 0; i < dq.d; ++i) Td = detail::mat_mul(F, T, Td);
  uint64_t eta = F.pow_enc(xi.enc, dq.d);
  for (unsigned i = 0; i < m; ++i)
    for (unsigned j = 0; j < m; ++j)
      if (Td.at(i, j) != (i == j ? eta : 0))
        throw InternalError("companion_orbit: T^d is not scalar eta");
  return seen.size();
}

}  // namespace lrsub
