#include <catch2/catch_amalgamated.hpp>

#include "lrsub/gf.hpp"

using namespace lrsub;

TEST_CASE("make_field basic fields") {
  const FieldDesc& F2 = make_field(2, 1);
  CHECK(F2.q() == 2);
  CHECK(F2.modulus() == std::vector<uint64_t>{0, 1});  // modulus x

  const FieldDesc& F2048 = make_field(2, 11);
  CHECK(F2048.q() == 2048);

  const FieldDesc& F243 = make_field(3, 5);
  CHECK(F243.q() == 243);

  SECTION("deterministic construction") {
    const FieldDesc& again = make_field(3, 5);
    CHECK(&again == &F243);
    CHECK(again.modulus() == F243.modulus());
  }

  SECTION("rejects bad parameters") {
    CHECK_THROWS_AS(make_field(4, 2), DomainError);   // non-prime p
    CHECK_THROWS_AS(make_field(6, 1), DomainError);
    CHECK_THROWS_AS(make_field(2, 0), DomainError);   // r = 0
    CHECK_THROWS_AS(make_field(2, 63), DomainError);  // size cap
  }
}

TEST_CASE("modulus is the lexicographically smallest monic irreducible") {
  // GF(4): x^2 + x + 1 is the only irreducible quadratic over GF(2)
  CHECK(make_field(2, 2).modulus() == std::vector<uint64_t>{1, 1, 1});
  // GF(9): candidates in constant-fastest order; x^2 + 1 comes first
  CHECK(make_field(3, 2).modulus() == std::vector<uint64_t>{1, 0, 1});
  // GF(8): x^3 + x + 1 beats x^3 + x^2 + 1
  CHECK(make_field(2, 3).modulus() == std::vector<uint64_t>{1, 1, 0, 1});
}

TEST_CASE("field axioms on sampled triples") {
  for (auto [p, r] : {std::pair<uint64_t, unsigned>{2, 4},
                      {3, 3},
                      {5, 2},
                      {7, 1}}) {
    const FieldDesc& F = make_field(p, r);
    FieldElement g = F.primitive();
    FieldElement x = g, y = g * g, z = g * g * g + F.one();
    for (int i = 0; i < 20; ++i) {
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) CHECK(x * inv(x) == F.one());
      x = x * g + F.one();
      y = y * g;
      z = z + g;
    }
  }
}

TEST_CASE("element_order") {
  const FieldDesc& F = make_field(2, 11);
  CHECK(element_order(F.one()) == 1);
  FieldElement alpha = F.primitive();
  CHECK(element_order(alpha) == 2047);
  FieldElement xi = pow(alpha, 89);  // (2^11 - 1) / 23 = 89
  CHECK(element_order(xi) == 23);

  const FieldDesc& F9 = make_field(3, 2);
  CHECK(element_order(F9.primitive()) == 8);
  CHECK_THROWS_AS(element_order(F9.zero()), DomainError);

  SECTION("order invariant: x^n = 1 and x^{n/l} != 1") {
    for (uint64_t e = 1; e < F9.q(); ++e) {
      FieldElement x = F9.element(e);
      uint64_t n = element_order(x);
      CHECK(pow(x, n) == F9.one());
      for (uint64_t l : prime_factors(n)) CHECK(pow(x, n / l) != F9.one());
    }
  }
}

TEST_CASE("minimal_polynomial") {
  const FieldDesc& F9 = make_field(3, 2);

  SECTION("subfield element gives a linear polynomial") {
    FieldElement two = F9.scalar(2);
    Poly mp = minimal_polynomial(two, 9);
    CHECK(mp.degree() == 1);
    CHECK(mp.eval(two).is_zero());
  }

  SECTION("23rd root of unity over GF(2): degree 11 divisor of X^23 - 1") {
    const FieldDesc& F = make_field(2, 11);
    FieldElement xi = pow(F.primitive(), 89);
    Poly mp = minimal_polynomial(xi, 2);
    CHECK(mp.degree() == 11);
    // divides X^23 - 1
    std::vector<uint64_t> c(24, 0);
    c[0] = F.one().enc;  // will negate below
    c[23] = F.one().enc;
    c[0] = F.neg(c[0]);
    Poly x23m1(F, c);
    CHECK(x23m1.mod(mp).is_zero());
    for (uint64_t e : mp.coeffs()) CHECK(F.in_subfield(e, 2));
  }

  SECTION("primitive element of GF(9) over 3") {
    FieldElement g = F9.primitive();
    Poly mp = minimal_polynomial(g, 3);
    CHECK(mp.degree() == 2);
    CHECK(mp.eval(g).is_zero());
    // irreducible over GF(3): no root among the scalars
    for (uint64_t s = 0; s < 3; ++s) CHECK(!mp.eval(F9.scalar(s)).is_zero());
  }

  SECTION("rejects non-subfield order") {
    CHECK_THROWS_AS(minimal_polynomial(F9.primitive(), 4), DomainError);
  }

  SECTION("vanishes at x and is irreducible over GF(q), sampled") {
    const FieldDesc& F64 = make_field(2, 6);
    const FieldDesc& F4 = make_field(2, 2);
    for (uint64_t e = 1; e < 64; e += 5) {
      FieldElement x = F64.element(e);
      Poly mp = minimal_polynomial(x, 4);
      CHECK(mp.eval(x).is_zero());
      CHECK(uint64_t(mp.degree()) == degree_and_qorder(x, 4).m);
      Poly down = minimal_polynomial_over(x, F4);
      CHECK((down.degree() == 1 || poly_is_irreducible(down)));
    }
  }
}

TEST_CASE("degree_and_qorder") {
  SECTION("subfield element") {
    const FieldDesc& F9 = make_field(3, 2);
    FieldElement two = F9.scalar(2);
    auto dq = degree_and_qorder(two, 9);
    CHECK(dq.m == 1);
    CHECK(dq.d == 1);
    CHECK(dq.n == 2);
    CHECK(dq.e == 2);
  }
  SECTION("23rd root of unity, q = 2") {
    const FieldDesc& F = make_field(2, 11);
    auto dq = degree_and_qorder(pow(F.primitive(), 89), 2);
    CHECK(dq.m == 11);
    CHECK(dq.d == 23);
    CHECK(dq.n == 23);
    CHECK(dq.e == 1);
  }
  SECTION("primitive element of GF(9), q = 3") {
    const FieldDesc& F9 = make_field(3, 2);
    auto dq = degree_and_qorder(F9.primitive(), 3);
    CHECK(dq.m == 2);
    CHECK(dq.d == 4);
    CHECK(dq.n == 8);
    CHECK(dq.e == 2);
  }
  SECTION("zero rejected") {
    const FieldDesc& F9 = make_field(3, 2);
    CHECK_THROWS_AS(degree_and_qorder(F9.zero(), 3), DomainError);
  }
  SECTION("xi^d lands in GF(q) and no earlier power does") {
    const FieldDesc& F = make_field(3, 4);  // GF(81) over GF(9)
    for (uint64_t e = 1; e < F.q(); e += 7) {
      FieldElement x = F.element(e);
      auto dq = degree_and_qorder(x, 9);
      CHECK(F.in_subfield(pow(x, dq.d).enc, 9));
      for (uint64_t k = 1; k < dq.d; ++k)
        CHECK(!F.in_subfield(pow(x, k).enc, 9));
    }
  }
}

TEST_CASE("embed") {
  const FieldDesc& F3 = make_field(3, 1);
  const FieldDesc& F9 = make_field(3, 2);
  const FieldDesc& F729 = make_field(3, 6);

  SECTION("prime subfield is canonical") {
    FieldElement two = F3.element(2);
    CHECK(embed(two, F9) == F9.scalar(2));
  }

  SECTION("image is a root of the minimal polynomial") {
    FieldElement g = F9.primitive();
    Poly mp = minimal_polynomial(g, 3);
    FieldElement img = embed(g, F729);
    // evaluate mp (GF(3)-subfield coefficients transfer by scalar encoding)
    Poly mp729(F729, mp.coeffs());
    CHECK(mp729.eval(img).is_zero());
    CHECK(element_order(img) == 8);
  }

  SECTION("homomorphism on all pairs of GF(9) into GF(3^6)") {
    for (uint64_t a = 0; a < 9; ++a)
      for (uint64_t b = 0; b < 9; ++b) {
        FieldElement x = F9.element(a), y = F9.element(b);
        CHECK(embed(x + y, F729) == embed(x, F729) + embed(y, F729));
        CHECK(embed(x * y, F729) == embed(x, F729) * embed(y, F729));
      }
  }

  SECTION("degree obstruction") {
    const FieldDesc& F4 = make_field(2, 2);
    const FieldDesc& F8 = make_field(2, 3);
    CHECK_THROWS_AS(embed(F4.primitive(), F8), DomainError);  // 2 does not divide 3
  }

  SECTION("project inverts embed") {
    for (uint64_t a = 0; a < 9; ++a) {
      FieldElement x = F9.element(a);
      auto back = project(embed(x, F729), F9);
      REQUIRE(back.has_value());
      CHECK(*back == x);
    }
    // an element of degree 3 over GF(9) has no preimage
    FieldElement g = F729.primitive();
    CHECK(!project(g, F9).has_value());
  }
}

TEST_CASE("subfield detection by Frobenius fixed points") {
  const FieldDesc& F81 = make_field(3, 4);
  auto& subs = F81.subfield_elements(9);
  CHECK(subs.size() == 9);
  for (uint64_t e : subs) CHECK(F81.pow_enc(e, 9) == e);
  CHECK_THROWS_AS(F81.subfield_elements(27), DomainError);
}

TEST_CASE("subfield coordinates") {
  const FieldDesc& F64 = make_field(2, 6);
  const SubfieldCoords& C = subfield_coords(F64, 4);
  REQUIRE(C.dim() == 3);
  for (uint64_t e = 0; e < 64; e += 5) {
    auto c = C.coords(e);
    uint64_t acc = 0;
    for (unsigned j = 0; j < 3; ++j) {
      CHECK(F64.in_subfield(c[j], 4));
      acc = F64.add(acc, F64.mul(c[j], C.basis()[j]));
    }
    CHECK(acc == e);
  }
}

TEST_CASE("poly helpers") {
  const FieldDesc& F5 = make_field(5, 1);
  // x^2 - 2 irreducible over GF(5), x^2 - 1 splits
  CHECK(poly_is_irreducible(Poly(F5, {3, 0, 1})));
  CHECK(!poly_is_irreducible(Poly(F5, {4, 0, 1})));
  // ord(x^2 - x - 1) over GF(3) is 8 (a primitive quadratic)
  const FieldDesc& F3 = make_field(3, 1);
  CHECK(poly_order(Poly(F3, {2, 2, 1})) == 8);
  CHECK(poly_order(Poly(F3, {1, 0, 1})) == 4);   // x^2 + 1, fourth roots of unity
  CHECK(poly_order(Poly(F3, {2, 0, 1})) == 2);   // x^2 - 1
  SECTION("textual form, constant term first") {
    CHECK(Poly(F3, {2, 2, 1}).str() == "2,2,1");
    CHECK(Poly::zero(F3).str() == "0");
    CHECK(Poly::zero(F3).degree() == -1);
  }
}
