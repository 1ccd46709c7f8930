#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lrsub/linearized.hpp"
#include "lrsub/lrs.hpp"

using namespace lrsub;

TEST_CASE("evaluate") {
  const FieldDesc& F9 = make_field(3, 2);
  FieldElement xi = F9.primitive();

  SECTION("identity map") {
    QPolynomial id{&F9, 3, 2, {F9.one().enc, 0}};
    for (uint64_t e = 0; e < 9; ++e)
      CHECK(evaluate(id, F9.element(e)) == F9.element(e));
  }

  SECTION("L = x^q at a root of x^2 - s1 x - s0 gives s1 - xi") {
    QPolynomial frob{&F9, 3, 2, {0, F9.one().enc}};
    uint64_t s1 = F9.add(xi.enc, F9.pow_enc(xi.enc, 3));
    CHECK(evaluate(frob, xi) == FieldElement{&F9, F9.sub(s1, xi.enc)});
  }

  SECTION("GF(q)-linearity") {
    QPolynomial L{&F9, 3, 2, {F9.primitive().enc, F9.scalar(2).enc}};
    for (uint64_t a = 0; a < 3; ++a)
      for (uint64_t b = 0; b < 3; ++b)
        for (uint64_t x = 0; x < 9; x += 2)
          for (uint64_t y = 0; y < 9; y += 3) {
            FieldElement ax = F9.scalar(a) * F9.element(x);
            FieldElement by = F9.scalar(b) * F9.element(y);
            CHECK(evaluate(L, ax + by) ==
                  F9.scalar(a) * evaluate(L, F9.element(x)) +
                      F9.scalar(b) * evaluate(L, F9.element(y)));
          }
  }

  SECTION("field mismatch rejected") {
    QPolynomial L{&F9, 3, 2, {F9.one().enc, 0}};
    const FieldDesc& F4 = make_field(2, 2);
    CHECK_THROWS_AS(evaluate(L, F4.one()), DomainError);
  }
}

TEST_CASE("is_nonsingular") {
  const FieldDesc& F9 = make_field(3, 2);
  SECTION("identity is nonsingular") {
    CHECK(is_nonsingular(QPolynomial{&F9, 3, 2, {F9.one().enc, 0}}));
  }
  SECTION("x^q - x has kernel GF(q)") {
    uint64_t m1 = F9.neg(F9.one().enc);
    CHECK(!is_nonsingular(QPolynomial{&F9, 3, 2, {m1, F9.one().enc}}));
  }
  SECTION("agrees with a kernel scan") {
    for (uint64_t a = 0; a < 9; ++a)
      for (uint64_t b = 0; b < 9; ++b) {
        if (a == 0 && b == 0) continue;
        QPolynomial L{&F9, 3, 2, {a, b}};
        bool kernel_free = true;
        for (uint64_t x = 1; x < 9; ++x)
          kernel_free &= !evaluate(L, F9.element(x)).is_zero();
        CHECK(is_nonsingular(L) == kernel_free);
      }
  }
}

TEST_CASE("is_standard") {
  const FieldDesc& F9 = make_field(3, 2);
  CHECK(is_standard(QPolynomial{&F9, 3, 2, {F9.one().enc, 0}}).has_value());
  auto st = is_standard(QPolynomial{&F9, 3, 2, {0, F9.scalar(2).enc}});
  REQUIRE(st.has_value());
  CHECK(st->first == F9.scalar(2));
  CHECK(st->second == 1);
  CHECK(!is_standard(QPolynomial{&F9, 3, 2, {F9.one().enc, F9.one().enc}}));
}

TEST_CASE("fixes_subgroup") {
  const FieldDesc& F9 = make_field(3, 2);
  FieldElement xi = F9.primitive();

  SECTION("Frobenius powers always fix") {
    for (unsigned j = 0; j < 2; ++j) {
      std::vector<uint64_t> c(2, 0);
      c[j] = F9.one().enc;
      QPolynomial L{&F9, 3, 2, c};
      for (uint64_t e = 1; e < 9; ++e)
        CHECK(fixes_subgroup(L, F9.element(e)));
    }
  }

  SECTION("a singular map cannot fix") {
    uint64_t m1 = F9.neg(F9.one().enc);
    QPolynomial L{&F9, 3, 2, {m1, F9.one().enc}};  // kernel GF(3)
    CHECK(!fixes_subgroup(L, xi));
  }
}

TEST_CASE("search_nonstandard census") {
  SECTION("GF(4)/GF(2) primitive: the small exception, no witnesses") {
    const FieldDesc& F4 = make_field(2, 2);
    CHECK(search_nonstandard(F4.primitive(), 2).empty());
  }

  SECTION("GF(9)/GF(3) primitive: exactly four witnesses") {
    const FieldDesc& F9 = make_field(3, 2);
    auto ws = search_nonstandard(F9.primitive(), 3);
    CHECK(ws.size() == 4);
    for (auto& w : ws) {
      CHECK(w.d == 4);
      CHECK(is_nonsingular(w.L));
      CHECK(w.perm[0] == 0);
    }
  }

  SECTION("type-I instance q=5, m=2, e=4: e - 2 = 2 witnesses") {
    const FieldDesc& F25 = make_field(5, 2);
    // element of order 8 with minimal polynomial x^2 - eta, ord(eta) = 4
    FieldElement xi = pow(F25.primitive(), 24 / 8);
    auto dq = degree_and_qorder(xi, 5);
    REQUIRE(dq.n == 8);
    REQUIRE(dq.d == 2);
    auto ws = search_nonstandard(xi, 5);
    CHECK(ws.size() == 2);
  }

  SECTION("budget refusal is an error, not an empty result") {
    const FieldDesc& F = make_field(2, 11);
    FieldElement xi = pow(F.primitive(), 89);  // degree 11, n = 23
    SearchOptions opt;
    opt.budget = 1000;
    CHECK_THROWS_AS(search_nonstandard(xi, 2, opt), BudgetError);
  }

  SECTION("output is independent of the worker count") {
    const FieldDesc& F27 = make_field(3, 6);
    FieldElement xi = pow(F27.primitive(), (F27.q() - 1) / 104);
    SearchOptions one, four;
    one.workers = 1;
    four.workers = 4;
    auto a = search_nonstandard(xi, 27, one);
    auto b = search_nonstandard(xi, 27, four);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].L.coeffs == b[i].L.coeffs);
      CHECK(a[i].perm == b[i].perm);
    }
  }
}

TEST_CASE("witness transport between generators") {
  // all generators of a group agree on nonstandardness; exhaustive for
  // degree-2 representatives over small fields
  for (uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    auto pp = prime_power(q);
    const FieldDesc& A = make_field(pp->first, pp->second * 2);
    for (uint64_t n : divisors(A.q() - 1)) {
      if (n <= 1 || (q - 1) % n == 0) continue;  // degree-2 orders only
      FieldElement rep = pow(A.primitive(), (A.q() - 1) / n);
      if (degree_and_qorder(rep, q).m != 2) continue;
      bool base = !search_nonstandard(rep, q).empty();
      for (uint64_t k = 2; k < n; ++k) {
        if (gcd_u64(k, n) != 1) continue;
        CHECK(!search_nonstandard(pow(rep, k), q).empty() == base);
      }
    }
  }
}

TEST_CASE("witness sequences satisfy the recurrence with full period") {
  const FieldDesc& F9 = make_field(3, 2);
  FieldElement xi = F9.primitive();
  Recurrence rec(F9, 3, minimal_polynomial(xi, 3));
  for (auto& w : search_nonstandard(xi, 3)) {
    StateVector init = {evaluate(w.L, F9.one()), evaluate(w.L, xi)};
    CHECK(init[0] == F9.one());
    CHECK(period(rec, init) == w.n);
    auto seq = generate(rec, init, w.n);
    std::set<uint64_t> vals;
    for (auto& v : seq) vals.insert(v.enc);
    CHECK(vals.size() == w.n);
  }
}

TEST_CASE("type-I witnesses decompose as eta_j xi^{tau(j)}") {
  const FieldDesc& F25 = make_field(5, 2);
  FieldElement xi = pow(F25.primitive(), 3);  // order 8, d = 2
  uint64_t eta = F25.pow_enc(xi.enc, 2);
  uint64_t e = F25.order(eta);
  for (auto& w : search_nonstandard(xi, 5)) {
    // image of xi must be eta_1 * xi^{tau(1)} with tau(1) = 1
    FieldElement img = evaluate(w.L, xi);
    FieldElement scalar = img / xi;
    CHECK(F25.pow_enc(scalar.enc, e) == F25.one().enc);  // scalar in <eta>
  }
}
