#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "lrsub/lrs.hpp"

using namespace lrsub;

namespace {

Recurrence fib3() {
  // x^2 - x - 1 over GF(3)
  const FieldDesc& F3 = make_field(3, 1);
  return Recurrence(F3, 3, Poly(F3, {2, 2, 1}));
}

}  // namespace

TEST_CASE("generate") {
  SECTION("Fibonacci mod 3 has period 8") {
    Recurrence rec = fib3();
    const FieldDesc& F3 = rec.field();
    auto seq = generate(rec, {F3.zero(), F3.one()}, 10);
    std::vector<uint64_t> got;
    for (auto& x : seq) got.push_back(x.enc);
    CHECK(got == std::vector<uint64_t>{0, 1, 1, 2, 0, 2, 2, 1, 0, 1});
    CHECK(period(rec, {F3.zero(), F3.one()}) == 8);
  }

  SECTION("all-zero initial state stays zero") {
    Recurrence rec = fib3();
    const FieldDesc& F3 = rec.field();
    auto seq = generate(rec, {F3.zero(), F3.zero()}, 6);
    for (auto& x : seq) CHECK(x.is_zero());
  }

  SECTION("init (1, xi) generates the powers of xi") {
    const FieldDesc& F9 = make_field(3, 2);
    FieldElement xi = F9.primitive();
    Poly f = minimal_polynomial(xi, 3);
    Recurrence rec(F9, 3, f);
    auto seq = generate(rec, {F9.one(), xi}, 16);
    for (size_t k = 0; k < seq.size(); ++k) CHECK(seq[k] == pow(xi, k));
  }

  SECTION("mixed-field inputs rejected") {
    Recurrence rec = fib3();
    const FieldDesc& F9 = make_field(3, 2);
    CHECK_THROWS_AS(generate(rec, {F9.zero(), F9.one()}, 4), DomainError);
  }
}

TEST_CASE("period") {
  SECTION("irreducible f with zeros of order n gives period n for any init") {
    const FieldDesc& F9 = make_field(3, 2);
    FieldElement xi = F9.primitive();
    Recurrence rec(F9, 3, minimal_polynomial(xi, 3));
    // several nonzero initial states in the extension
    std::vector<StateVector> inits = {
        {F9.one(), xi},
        {F9.one(), F9.one()},
        {xi, F9.scalar(2)},
        {F9.zero(), xi}};
    for (auto& init : inits) CHECK(period(rec, init) == 8);
  }

  SECTION("constant sequence from x^2 - 1") {
    const FieldDesc& F3 = make_field(3, 1);
    Recurrence rec(F3, 3, Poly(F3, {2, 0, 1}));  // x^2 - 1
    CHECK(period(rec, {F3.one(), F3.one()}) == 1);
  }

  SECTION("rejects the all-zero state") {
    Recurrence rec = fib3();
    const FieldDesc& F3 = rec.field();
    CHECK_THROWS_AS(period(rec, {F3.zero(), F3.zero()}), DomainError);
  }

  SECTION("per(u) divides ord(f) on sampled reducible recurrences") {
    const FieldDesc& F5 = make_field(5, 1);
    // (x - 1)(x - 2) = x^2 - 3x + 2: sigma_0 = -2 != 0
    Recurrence rec(F5, 5, Poly(F5, {2, 2, 1}));
    uint64_t of = poly_order(rec.charpoly());
    for (uint64_t a = 0; a < 5; ++a)
      for (uint64_t b = 0; b < 5; ++b) {
        if (a == 0 && b == 0) continue;
        CHECK(of % period(rec, {F5.element(a), F5.element(b)}) == 0);
      }
  }
}

TEST_CASE("restricted_period") {
  SECTION("x^2 - eta returns after two steps") {
    const FieldDesc& F5 = make_field(5, 1);
    Recurrence rec(F5, 5, Poly(F5, {3, 0, 1}));  // x^2 - 2
    auto rp = restricted_period(rec);
    CHECK(rp.delta == 2);
    CHECK(rp.lambda == F5.element(2));
  }

  SECTION("Fibonacci mod 3 has restricted period 4") {
    Recurrence rec = fib3();
    auto rp = restricted_period(rec);
    CHECK(rp.delta == 4);
    CHECK(!rp.lambda.is_zero());
  }

  SECTION("restricted period equals the q-order of a root, small sweep") {
    // every irreducible quadratic and cubic over GF(4); the scalar returned
    // with the period must be the subfield value of xi^delta
    const FieldDesc& F4 = make_field(2, 2);
    for (unsigned m : {2u, 3u}) {
      const FieldDesc& E = make_field(2, 2 * m);
      uint64_t count = ipow_u64(4, m);
      for (uint64_t j = 0; j < count; ++j) {
        std::vector<uint64_t> c;
        uint64_t t = j;
        for (unsigned i = 0; i < m; ++i) {
          c.push_back(t % 4);
          t /= 4;
        }
        c.push_back(F4.one().enc);
        Poly f(F4, c);
        if (f.coeff(0).is_zero() || !poly_is_irreducible(f)) continue;
        auto roots = poly_roots_in(f, E);
        REQUIRE(!roots.empty());
        Recurrence rec(F4, 4, Poly(F4, c));
        auto rp = restricted_period(rec);
        CHECK(rp.delta == degree_and_qorder(roots[0], 4).d);
        CHECK(embed(rp.lambda, E) == pow(roots[0], rp.delta));
      }
    }
  }
}

TEST_CASE("qpoly_from_initials") {
  const FieldDesc& F9 = make_field(3, 2);
  FieldElement xi = F9.primitive();
  Recurrence rec(F9, 3, minimal_polynomial(xi, 3));

  SECTION("identity initials give L(x) = x") {
    QPolynomial L = qpoly_from_initials(rec, xi, {F9.one(), xi});
    auto st = is_standard(L);
    REQUIRE(st.has_value());
    CHECK(st->first == F9.one());
    CHECK(st->second == 0);
  }

  SECTION("conjugate initials give L(x) = x^q") {
    QPolynomial L = qpoly_from_initials(rec, xi, {F9.one(), pow(xi, 3)});
    auto st = is_standard(L);
    REQUIRE(st.has_value());
    CHECK(st->first == F9.one());
    CHECK(st->second == 1);
  }

  SECTION("nonstandard initials round-trip against generate") {
    // pick u_1 = xi^a whose sequence enumerates GF(9)^* and is not one of
    // the two conjugate-power sequences
    int found = 0;
    for (uint64_t a = 0; a < 8; ++a) {
      if (a == 1 || a == 3) continue;  // the standard rows x and x^q
      StateVector init = {F9.one(), pow(xi, a)};
      auto seq = generate(rec, init, 8);
      std::set<uint64_t> vals;
      for (auto& v : seq) vals.insert(v.enc);
      if (vals.size() != 8 || vals.count(0)) continue;
      ++found;
      QPolynomial L = qpoly_from_initials(rec, xi, init);
      CHECK(!is_standard(L));
      auto longer = generate(rec, init, 24);
      for (size_t k = 0; k < longer.size(); ++k)
        CHECK(longer[k] == evaluate(L, pow(xi, k)));
    }
    CHECK(found == 4);  // the four nonstandard generations of GF(9)^*
  }

  SECTION("reducible charpoly rejected") {
    const FieldDesc& F3 = make_field(3, 1);
    Recurrence rec2(F3, 3, Poly(F3, {2, 0, 1}));  // x^2 - 1
    CHECK_THROWS_AS(
        qpoly_from_initials(rec2, F3.one(), {F3.one(), F3.one()}),
        DomainError);
  }
}
