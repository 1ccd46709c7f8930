#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include "lrsub/classify.hpp"

using namespace lrsub;

TEST_CASE("construct_type_I") {
  const FieldDesc& F5 = make_field(5, 1);

  SECTION("q=5, m=2, eta of order 4, tau = id, eta_1 = eta") {
    FieldElement eta = F5.element(2);  // 2 has order 4 mod 5
    REQUIRE(element_order(eta) == 4);
    auto w = construct_type_I(eta, 2, {0, 1}, {eta});
    CHECK(w.n == 8);
    CHECK(w.d == 2);
    CHECK(w.tag.kind == ClassLabel::Kind::type_I);
  }

  SECTION("eta_1 = -1 is the Frobenius in the x^2 - eta family") {
    // xi^q = -xi when sigma_1 = 0, so this pattern is standard
    FieldElement eta = F5.element(2);
    CHECK_THROWS_AS(construct_type_I(eta, 2, {0, 1}, {-F5.one()}), DomainError);
  }

  SECTION("q = 2 is impossible") {
    const FieldDesc& F2 = make_field(2, 1);
    CHECK_THROWS_AS(construct_type_I(F2.one(), 3, {0, 1, 2},
                                     {F2.one(), F2.one()}),
                    DomainError);
  }

  SECTION("the identity pattern is rejected as standard") {
    FieldElement eta = F5.element(2);
    CHECK_THROWS_AS(construct_type_I(eta, 2, {0, 1}, {F5.one()}), DomainError);
  }

  SECTION("small order rejected") {
    // eta = -1 has order 2, n = 4 <= 4
    CHECK_THROWS_AS(construct_type_I(F5.element(4), 2, {0, 1}, {F5.element(4)}),
                    DomainError);
  }

  SECTION("agrees with blind search") {
    // over GF(5): all witnesses of the order-8 element are type-I shaped
    FieldElement eta = F5.element(2);
    std::set<std::vector<uint64_t>> constructed;
    for (uint64_t j = 1; j < 4; ++j) {  // eta_1 = eta^j, skipping eta^0 = 1
      FieldElement s = pow(eta, j);
      try {
        auto w = construct_type_I(eta, 2, {0, 1}, {s});
        constructed.insert(w.L.coeffs);
      } catch (const DomainError&) {
        // standard pattern
      }
    }
    auto found = search_nonstandard(
        construct_type_I(eta, 2, {0, 1}, {eta}).xi, 5);
    std::set<std::vector<uint64_t>> searched;
    for (auto& w : found) searched.insert(w.L.coeffs);
    CHECK(constructed == searched);
  }
}

TEST_CASE("construct_type_II") {
  SECTION("(q0=3, t=3, m=2, k=1): order 8, q-order 4 over GF(27)") {
    auto w = construct_type_II(3, 3, 2, 1);
    CHECK(w.q == 27);
    CHECK(w.n == 8);
    CHECK(w.d == 4);
    CHECK(w.tag.str() == "type_II(q0=3,t=3,k=1)");
  }

  SECTION("(q0=3, t=3, m=2, k=13): order 104") {
    auto w = construct_type_II(3, 3, 2, 13);
    CHECK(w.n == 104);
    CHECK(w.d == 4);
  }

  SECTION("q0^m <= 4 rejected") {
    CHECK_THROWS_AS(construct_type_II(2, 1, 2, 1), DomainError);
  }

  SECTION("gcd(m, t) != 1 rejected") {
    CHECK_THROWS_AS(construct_type_II(3, 2, 2, 1), DomainError);
  }

  SECTION("k must divide (q-1)/(q0-1)") {
    CHECK_THROWS_AS(construct_type_II(3, 3, 2, 5), DomainError);
  }
}

TEST_CASE("lift") {
  const FieldDesc& F9 = make_field(3, 2);
  FieldElement xi = F9.primitive();
  auto base = search_nonstandard(xi, 3).front();

  SECTION("t = 1 is the identity transport") {
    auto w = lift(base, 1);
    CHECK(w.q == 3);
    CHECK(w.n == base.n);
    CHECK(w.d == base.d);
  }

  SECTION("GF(9) witness lifts to GF(27) with the same n and d") {
    auto w = lift(base, 3);
    CHECK(w.q == 27);
    CHECK(w.n == 8);
    CHECK(w.d == 4);
  }

  SECTION("gcd(m, t) != 1 rejected") {
    CHECK_THROWS_AS(lift(base, 2), DomainError);
  }
}

TEST_CASE("extend") {
  auto w8 = construct_type_II(3, 3, 2, 1);  // order 8 over GF(27)
  const FieldDesc& A = *w8.xi.field;

  SECTION("identity transport") {
    auto w = extend(w8, w8.xi);
    CHECK(w.n == w8.n);
    CHECK(w.d == w8.d);
  }

  SECTION("order 8 extends to order 104 with phi = xi^13") {
    // target of order 104 inside GF(27)^* <phi>
    FieldElement theta = pow(A.primitive(), (A.q() - 1) / 104);
    REQUIRE(element_order(theta) == 104);
    REQUIRE((pow(theta, 13) == w8.xi || element_order(pow(theta, 13)) == 8));
    auto w = extend(w8, theta);
    CHECK(w.n == 104);
    CHECK(w.d == 4);
  }

  SECTION("membership preconditions enforced") {
    // an element whose group does not contain <phi>
    FieldElement bad = pow(A.primitive(), (A.q() - 1) / 7);
    CHECK_THROWS_AS(extend(w8, bad), DomainError);
  }
}

TEST_CASE("classify_degree2") {
  SECTION("type I: order 16 over GF(9)") {
    const FieldDesc& F81 = make_field(3, 4);
    FieldElement xi = pow(F81.primitive(), 80 / 16);
    auto res = classify_degree2(xi, 9);
    CHECK(res.label.kind == ClassLabel::Kind::type_I);
    CHECK(res.evidence.witness_count == 6);  // e - 2 with e = 8
  }

  SECTION("type II: the construct_type_II(3,3,2,1) element") {
    auto w = construct_type_II(3, 3, 2, 1);
    auto res = classify_degree2(w.xi, 27);
    CHECK(res.label.kind == ClassLabel::Kind::type_II);
    CHECK(res.label.q0 == 3);
    CHECK(res.label.t == 3);
    CHECK(res.evidence.phi_primitive);
    CHECK(res.evidence.t_odd);
    CHECK(res.evidence.closure_label == "PGL(2,3)");
  }

  SECTION("standard elements classify standard") {
    const FieldDesc& F4 = make_field(2, 2);
    auto res = classify_degree2(F4.primitive(), 2);
    CHECK(res.label.kind == ClassLabel::Kind::standard);
  }

  SECTION("degree != 2 rejected") {
    const FieldDesc& F8 = make_field(2, 3);
    CHECK_THROWS_AS(classify_degree2(F8.primitive(), 2), DomainError);
  }
}

TEST_CASE("survey") {
  SECTION("q=2, m=2: empty nonstandard table") {
    for (auto& row : survey(2, 2)) CHECK(row.count == 0);
  }

  SECTION("q=9, m=2") {
    std::map<uint64_t, SurveyRow> rows;
    for (auto& r : survey(9, 2))
      if (r.count > 0) rows[r.n] = r;
    REQUIRE(rows.size() == 2);
    CHECK(rows[16].d == 2);
    CHECK(rows[16].label.kind == ClassLabel::Kind::type_I);
    CHECK(rows[80].d == 10);
    CHECK(rows[80].label.kind == ClassLabel::Kind::type_II);
    CHECK(rows[80].label.q0 == 9);
    CHECK(rows[80].label.t == 1);
  }

  SECTION("q=27, m=2") {
    std::map<uint64_t, SurveyRow> rows;
    for (auto& r : survey(27, 2))
      if (r.count > 0) rows[r.n] = r;
    REQUIRE(rows.size() == 4);
    CHECK(rows[52].d == 2);
    CHECK(rows[52].label.kind == ClassLabel::Kind::type_I);
    CHECK(rows[8].d == 4);
    CHECK(rows[8].label.kind == ClassLabel::Kind::type_II);
    CHECK(rows[104].d == 4);
    CHECK(rows[104].label.kind == ClassLabel::Kind::type_II);
    // primitive elements of GF(729) are nonstandard and classify as
    // type II with q0 = 27, t = 1
    CHECK(rows[728].d == 28);
    CHECK(rows[728].label.kind == ClassLabel::Kind::type_II);
    CHECK(rows[728].label.q0 == 27);
  }

  SECTION("m=3 rows carry family labels where known") {
    // q=2, m=3: the only degree-3 order is 7 (primitive in GF(8))
    auto rows = survey(2, 3);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n == 7);
    CHECK(rows[0].count > 0);
  }
}

TEST_CASE("the two constructors reproduce exactly the nonstandard orders") {
  // degree 2: the orders carrying nonstandard witnesses are exactly the
  // orders reachable by the two family constructors
  for (uint64_t q : {3, 4, 5, 7, 9, 13}) {
    auto pp = prime_power(q);
    const FieldDesc& Fq = make_field(pp->first, pp->second);

    std::set<uint64_t> constructed;
    // x^2 - eta family: every eta order, every scalar; collect orders of
    // instances the constructor accepts
    for (uint64_t ee = 1; ee < q; ++ee) {
      FieldElement eta = Fq.element(ee);
      uint64_t e = element_order(eta);
      for (uint64_t j = 1; j < e; ++j) {
        try {
          auto w = construct_type_I(eta, 2, {0, 1}, {pow(eta, j)});
          constructed.insert(w.n);
        } catch (const DomainError&) {
        }
      }
    }
    // lift-extend family: every subfield q0 with q = q0^t
    for (uint64_t q0 = 2; q0 <= q; ++q0) {
      uint64_t t = 0, acc = 1;
      while (acc < q) {
        acc *= q0;
        ++t;
      }
      if (acc != q || !prime_power(q0)) continue;
      for (uint64_t k : divisors((q - 1) / (q0 - 1))) {
        try {
          auto w = construct_type_II(q0, unsigned(t), 2, k);
          constructed.insert(w.n);
        } catch (const DomainError&) {
        }
      }
    }

    std::set<uint64_t> searched;
    for (auto& row : survey(q, 2))
      if (row.count > 0) searched.insert(row.n);
    CHECK(constructed == searched);
  }
}

TEST_CASE("empirical degree-2 type-I criterion") {
  // orders with q-order-2 witnesses are exactly n = 2e > 4 with e | q-1,
  // q odd and (q-1)/e odd
  for (uint64_t q : {3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27}) {
    std::set<uint64_t> expect;
    if (q % 2 == 1) {
      for (uint64_t e : divisors(q - 1))
        if (2 * e > 4 && ((q - 1) / e) % 2 == 1) expect.insert(2 * e);
    }
    std::set<uint64_t> got;
    for (auto& row : survey(q, 2))
      if (row.count > 0 && row.d == 2) got.insert(row.n);
    CHECK(got == expect);
  }
}

TEST_CASE("transports preserve order and q-order on random parameters") {
  std::mt19937_64 rng(20240817);
  struct Params {
    uint64_t q0;
    unsigned t, m;
  };
  std::vector<Params> pool = {
      {3, 1, 2}, {3, 3, 2}, {3, 5, 2}, {5, 1, 2}, {5, 3, 2},
      {4, 1, 2}, {4, 3, 2}, {7, 1, 2}, {7, 3, 2}, {8, 1, 2},
      {9, 1, 2}, {2, 1, 3}, {2, 3, 2}, {2, 5, 2}, {3, 1, 3},
  };
  int done = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const Params& P = pool[rng() % pool.size()];
    if (ipow_u64(P.q0, P.t * P.m) > (uint64_t(1) << 20)) continue;
    uint64_t q = ipow_u64(P.q0, P.t);
    uint64_t kmax = (q - 1) / (P.q0 - 1);
    auto ks = divisors(kmax);
    uint64_t k = ks[rng() % ks.size()];
    if (ipow_u64(P.q0, P.m) <= 4) continue;
    auto w = construct_type_II(P.q0, P.t, P.m, k);
    uint64_t d = (ipow_u64(P.q0, P.m) - 1) / (P.q0 - 1);
    CHECK(w.d == d);
    CHECK(w.n == d * (P.q0 - 1) * k);
    ++done;
  }
  CHECK(done >= 40);
}
