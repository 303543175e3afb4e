#include <doctest.h>
#include <gmpxx.h>

#include <random>

#include "hochmod/fields.hpp"

using namespace hochmod;

TEST_CASE("field_make examples") {
  PrimeField f5(5);
  CHECK(f5.add(2, 4) == 1);

  Rationals q;
  CHECK(q.add(Rational(1, 3), Rational(1, 6)) == Rational(1, 2));

  CyclotomicField c4(4);
  auto z = c4.generator();
  CHECK(c4.eq(c4.mul(z, z), c4.from_int(-1)));
}

TEST_CASE("scalar_invert examples") {
  PrimeField f7(7);
  CHECK(f7.inv(3) == 5);
  Rationals q;
  CHECK(q.inv(Rational(-2, 3)) == Rational(-3, 2));
  PrimeField f5(5);
  CHECK_THROWS_AS(f5.inv(0), DivisionByZero);
  CHECK_THROWS_AS(q.inv(Rational()), DivisionByZero);
  CyclotomicField c5(5);
  CHECK_THROWS_AS(c5.inv(c5.zero()), DivisionByZero);
}

TEST_CASE("invalid field specs are rejected") {
  CHECK_THROWS_AS(PrimeField(4), InvalidField);
  CHECK_THROWS_AS(PrimeField(1), InvalidField);
  CHECK_THROWS_AS(CyclotomicField(0), InvalidField);
  CHECK_THROWS_AS(FieldSpec::parse("F9"), InvalidField);
  CHECK(FieldSpec::parse("F5") == FieldSpec::prime(5));
  CHECK(FieldSpec::parse("Fp7") == FieldSpec::prime(7));
  CHECK(FieldSpec::parse("cyclotomic-8") == FieldSpec::cyclotomic(8));
  CHECK(FieldSpec::parse("Q").to_string() == "Q");
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of absolute value 2.
  auto p = cyclotomic_polynomial(105);
  CHECK(p.size() == 49);
  CHECK(std::find(p.begin(), p.end(), -2) != p.end());
}

TEST_CASE("cyclotomic(1) behaves as the rationals") {
  CyclotomicField c1(1);
  CHECK(c1.degree() == 1);
  auto a = c1.parse("3/4");
  CHECK(c1.format(c1.mul(a, c1.inv(a))) == "[1]");
  CHECK(c1.eq(c1.generator(), c1.one()));
}

namespace {

mpq_class to_gmp(const Rational& r) {
  mpq_class out;
  r.to_mpq(out.get_mpq_t());
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0:
      return Rational(static_cast<long long>(rng() % 21) - 10, static_cast<long long>(rng() % 9) + 1);
    case 1:
      return Rational(static_cast<long long>(rng() >> 1) * ((rng() & 1) ? 1 : -1),
                      static_cast<long long>((rng() >> 2) | 1));
    case 2:
      return Rational::parse(std::to_string(rng()) + std::to_string(rng()) + "/" +
                             std::to_string(rng() | 1));
    default:
      return Rational(static_cast<long long>(rng() % 1000003) - 500000);
  }
}

void check_normalized(const Rational& r) {
  mpq_class g = to_gmp(r);
  mpz_class gcd;
  mpz_gcd(gcd.get_mpz_t(), g.get_num_mpz_t(), g.get_den_mpz_t());
  CHECK(gcd == 1);
  CHECK(sgn(g.get_den()) > 0);
  // inline whenever it fits
  bool fits = g.get_num().fits_slong_p() && g.get_den().fits_slong_p() &&
              g.get_num() != mpz_class(std::numeric_limits<long>::min());
  CHECK(r.is_small() == fits);
}

}  // namespace

TEST_CASE("rational arithmetic matches GMP reference") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 4000; ++iter) {
    Rational a = random_rational(rng), b = random_rational(rng);
    mpq_class ga = to_gmp(a), gb = to_gmp(b);
    Rational s = a + b, d = a - b, p = a * b;
    CHECK(to_gmp(s) == ga + gb);
    CHECK(to_gmp(d) == ga - gb);
    CHECK(to_gmp(p) == ga * gb);
    check_normalized(s);
    check_normalized(d);
    check_normalized(p);
    if (!b.is_zero()) {
      Rational q = a / b;
      CHECK(to_gmp(q) == ga / gb);
      check_normalized(q);
    }
    CHECK(((a < b) == (ga < gb)));
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("rational edge values") {
  const long long mn = std::numeric_limits<long long>::min();
  const long long mx = std::numeric_limits<long long>::max();
  Rational a(mn);
  CHECK_FALSE(a.is_small());
  CHECK((-a).to_string() == "9223372036854775808");
  CHECK((a + Rational(1)) == Rational(mn + 1));
  CHECK((a + Rational(1)).is_small());
  Rational b(mx);
  CHECK((b + Rational(1)).to_string() == "9223372036854775808");
  CHECK((b * b / b) == b);
  CHECK(Rational(mx, mn).to_string() == "-9223372036854775807/9223372036854775808");
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational::parse(" -10/4 ") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), DivisionByZero);
  CHECK_THROWS_AS(Rational::parse("x"), ParseError);
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
}

TEST_CASE_TEMPLATE_DEFINE("field axioms on random triples", F, field_axioms) {
  std::mt19937_64 rng(777);
  auto make = [] {
    if constexpr (std::is_same_v<F, PrimeField>) return PrimeField(101);
    else if constexpr (std::is_same_v<F, CyclotomicField>) return CyclotomicField(12);
    else return Rationals();
  }();
  auto random = [&]() {
    if constexpr (std::is_same_v<F, CyclotomicField>) {
      typename F::value_type v = make.zero();
      for (auto& c : v.coeffs) c = Rational(static_cast<long long>(rng() % 11) - 5, static_cast<long long>(rng() % 3) + 1);
      return v;
    } else if constexpr (std::is_same_v<F, Rationals>) {
      return Rational(static_cast<long long>(rng() % 41) - 20, static_cast<long long>(rng() % 7) + 1);
    } else {
      return make.from_int(static_cast<long long>(rng() % 1000));
    }
  };
  const F& K = make;
  for (int iter = 0; iter < 300; ++iter) {
    auto a = random(), b = random(), c = random();
    CHECK(K.eq(K.add(K.add(a, b), c), K.add(a, K.add(b, c))));
    CHECK(K.eq(K.mul(K.mul(a, b), c), K.mul(a, K.mul(b, c))));
    CHECK(K.eq(K.mul(a, K.add(b, c)), K.add(K.mul(a, b), K.mul(a, c))));
    CHECK(K.eq(K.mul(a, b), K.mul(b, a)));
    CHECK(K.is_zero(K.add(a, K.neg(a))));
    CHECK(K.eq(K.sub(a, b), K.add(a, K.neg(b))));
    if (!K.is_zero(a)) CHECK(K.is_one(K.mul(a, K.inv(a))));
    CHECK(K.eq(K.parse(K.format(a)), a));
    auto acc = c;
    K.add_mul(acc, a, b);
    CHECK(K.eq(acc, K.add(c, K.mul(a, b))));
  }
}
TEST_CASE_TEMPLATE_INVOKE(field_axioms, Rationals, PrimeField, CyclotomicField);

TEST_CASE("cyclotomic products are reduced") {
  CyclotomicField c9(9);  // phi(9) = 6
  auto z = c9.generator();
  auto p = c9.one();
  for (int k = 0; k < 9; ++k) {
    CHECK(p.coeffs.size() == 6);
    p = c9.mul(p, z);
  }
  CHECK(c9.is_one(p));
  CHECK(c9.format(c9.parse("[1,2,3]")) == "[1,2,3,0,0,0]");
  CHECK(c9.format(c9.parse("-1/2")) == "[-1/2,0,0,0,0,0]");
}

TEST_CASE("prime field parsing") {
  PrimeField f5(5);
  CHECK(f5.parse("7") == 2);
  CHECK(f5.parse("-1") == 4);
  CHECK(f5.parse("1/2") == 3);
  CHECK(f5.parse("123456789012345678901234567890") == 0);
  CHECK_THROWS_AS(f5.parse("1/5"), DivisionByZero);
  CHECK_THROWS_AS(f5.parse("abc"), ParseError);
}

TEST_CASE("with_field dispatch") {
  auto name = [](auto K) { return K.spec().to_string(); };
  CHECK(with_field(FieldSpec::rationals(), name) == "Q");
  CHECK(with_field(FieldSpec::prime(3), name) == "F3");
  CHECK(with_field(FieldSpec::cyclotomic(8), name) == "cyclotomic-8");
  CHECK_THROWS_AS(with_field(FieldSpec::prime(6), name), InvalidField);
}
