#include <doctest.h>

#include <random>

#include "hochmod/builders.hpp"
#include "hochmod/hochschild.hpp"
#include "hochmod/ribbon.hpp"
#include "support/fixtures.hpp"

using namespace hochmod;
using namespace hochmod::testing;

TEST_CASE("coface maps on small cases") {
  Rationals Q;
  auto H = build_preset("sweedler", Q).hopf;
  const auto& A = H.algebra();
  CochainComplex<Rationals> C(A, regular_bimodule(A));
  // n = 1, i = 0: m -> (a -> a m); column m, row (a, k).
  auto c0 = C.coface_matrix(1, 0), c1 = C.coface_matrix(1, 1);
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(c0.at(a * 4 + k, m) == A.left(a).at(k, m));
        CHECK(c1.at(a * 4 + k, m) == A.right(a).at(k, m));
      }
  // n = 2, i = 1: f -> f(ab).
  auto c21 = C.coface_matrix(2, 1);
  for (std::size_t j = 0; j < C.dim(1); ++j) {
    const std::size_t t = j / 4, k = j % 4;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) {
        Rational expect = 0;
        for (const auto& e : A.product(a, b))
          if (e.index == t) expect = e.value;
        CHECK(c21.at((a * 4 + b) * 4 + k, j) == expect);
      }
  }
  CHECK_THROWS_AS(C.coface_matrix(2, 3), DimensionMismatch);
  CHECK_THROWS_AS(C.coface_matrix(0, 0), DimensionMismatch);
}

TEST_CASE("d^0 and HH^0") {
  Rationals Q;
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    auto H = build_preset(name, Q).hopf;
    const auto& A = H.algebra();
    CochainComplex<Rationals> C(A, regular_bimodule(A));
    // d^0(m)(a) = a m - m a.
    auto d0 = C.differential_matrix(0);
    CHECK(d0 == C.coface_matrix(1, 0) - C.coface_matrix(1, 1));
    CHECK(kernel_basis(d0) == center_basis(A));
    CHECK(C.cohomology(0).dim() == center_basis(A).dim());
    // HH^0 with coefficients in (A_{S^-2})^* is the space of class functions.
    CochainComplex<Rationals> Cd(A, dual_bimodule(twist_s2inv(H)));
    CHECK(kernel_basis(Cd.differential_matrix(0)) == class_functions(H));
  }
  auto kz2 = build_preset("kZ2", Q).hopf;
  CHECK(CochainComplex<Rationals>(kz2.algebra(), regular_bimodule(kz2.algebra())).differential_matrix(-1).cols() == 0);
}

TEST_CASE("d o d = 0 on every preset and twist") {
  PrimeField F(5);
  Rationals Q;
  SUBCASE("materialized, small presets over Q") {
    for (std::string name : {"kZ2", "kZ3", "sweedler", "D-kZ2"}) {
      auto H = build_preset(name, Q).hopf;
      for (const auto& M : twists(H)) {
        CAPTURE(name);
        CAPTURE(M.name);
        CochainComplex<Rationals> C(H.algebra(), M);
        for (long n = -1; n <= 2; ++n) CHECK((C.differential_matrix(n + 1) * C.differential_matrix(n)).is_zero());
      }
    }
  }
  SUBCASE("streamed, every preset over F_5") {
    for (const auto& name : preset_names()) {
      auto H = build_preset(name, F).hopf;
      for (const auto& M : twists(H)) {
        CAPTURE(name);
        CAPTURE(M.name);
        CochainComplex<PrimeField> C(H.algebra(), M);
        for (long n = 0; n <= 1; ++n) CHECK_FALSE(C.first_nonzero_dd(n));
      }
    }
  }
  SUBCASE("a broken bimodule is detected") {
    auto H = build_preset("sweedler", Q).hopf;
    auto M = regular_bimodule(H.algebra());
    M.right[1] = Matrix<Rationals>::identity(Q, 4);  // g acts trivially on the right
    CochainComplex<Rationals> C(H.algebra(), M);
    CHECK(C.first_nonzero_dd(0));
  }
}

TEST_CASE("central-element homotopy") {
  Rationals Q;
  std::mt19937 rng(7);
  for (std::string name : {"sweedler", "D-kZ2"}) {
    auto H = build_preset(name, Q).hopf;
    const auto& A = H.algebra();
    for (const auto& M : twists(H)) {
      CAPTURE(name);
      CAPTURE(M.name);
      CochainComplex<Rationals> C(A, M);
      for (int trial = 0; trial < 3; ++trial) {
        auto c = random_central(A, rng);
        for (long n = 0; n <= 2; ++n) {
          auto lhs = C.differential_matrix(n - 1) * C.homotopy_matrix(c, n) +
                     C.homotopy_matrix(c, n + 1) * C.differential_matrix(n);
          CHECK(lhs == C.left_mult(c, n) - C.right_mult(c, n));
        }
      }
      // c = 1: both sides vanish.
      for (long n = 0; n <= 2; ++n) {
        auto lhs = C.differential_matrix(n - 1) * C.homotopy_matrix(A.unit(), n) +
                   C.homotopy_matrix(A.unit(), n + 1) * C.differential_matrix(n);
        CHECK(lhs.is_zero());
      }
    }
  }
  SUBCASE("h^1 is evaluation at c") {
    auto H = build_preset("kS3", Q).hopf;
    const auto& A = H.algebra();
    CochainComplex<Rationals> C(A, regular_bimodule(A));
    auto c = random_central(A, rng);
    auto h1 = C.homotopy_matrix(c, 1);
    for (std::size_t j = 0; j < C.dim(1); ++j) {
      const std::size_t t = j / 6, k = j % 6;
      CHECK(h1.at(k, j) == c[t]);
    }
  }
  SUBCASE("non-central elements are rejected") {
    auto H = build_preset("sweedler", Q).hopf;
    CochainComplex<Rationals> C(H.algebra(), regular_bimodule(H.algebra()));
    CHECK_THROWS_AS(C.homotopy_matrix(H.algebra().basis(1), 1), VerificationError);
  }
}

TEST_CASE("cohomology dimensions") {
  Rationals Q;
  SUBCASE("semisimple doubles over Q") {
    for (std::string name : {"D-kZ2", "D-kZ3"}) {
      CAPTURE(name);
      auto H = build_preset(name, Q).hopf;
      CochainComplex<Rationals> C(H.algebra(), regular_bimodule(H.algebra()));
      CHECK(C.cohomology(0).dim() == H.dim());
      CHECK(C.cohomology(1).dim() == 0);
      CHECK(C.cohomology(2).dim() == 0);
    }
  }
  SUBCASE("F_2[Z/2] against the periodic resolution") {
    PrimeField F2(2);
    auto H = build_preset("kZ2", F2).hopf;
    CochainComplex<PrimeField> C(H.algebra(), regular_bimodule(H.algebra()));
    auto oracle = periodic_oracle(2, 3);
    for (long n = 0; n <= 3; ++n) CHECK(C.cohomology(n).dim() == oracle[n]);
    CHECK(oracle == std::vector<std::size_t>{2, 2, 2, 2});
  }
  SUBCASE("Q[x]/(x^2) against the periodic resolution") {
    auto A = dual_numbers(Q);
    CochainComplex<Rationals> C(A, regular_bimodule(A));
    auto oracle = periodic_oracle(0, 3);
    for (long n = 0; n <= 3; ++n) CHECK(C.cohomology(n).dim() == oracle[n]);
  }
  SUBCASE("representatives are independent cocycles modulo coboundaries") {
    PrimeField F3(3);
    auto H = build_preset("sweedler", F3).hopf;
    CochainComplex<PrimeField> C(H.algebra(), regular_bimodule(H.algebra()));
    auto hh = C.cohomology(1);
    CHECK(hh.dim() > 0);
    auto d1 = C.differential_matrix(1);
    for (std::size_t i = 0; i < hh.dim(); ++i) {
      CHECK(d1.apply(hh.representatives[i]).empty());
      auto coords = hh.coordinates(hh.representatives[i]);
      REQUIRE(coords);
      for (std::size_t j = 0; j < hh.dim(); ++j) CHECK(F3.eq((*coords)[j], i == j ? F3.one() : F3.zero()));
    }
  }
}

TEST_CASE("memory cap") {
  Rationals Q;
  auto H = build_preset("D-sweedler", Q).hopf;
  CochainComplex<Rationals> C(H.algebra(), regular_bimodule(H.algebra()));
  CHECK(C.memory_cap() == 1'000'000);
  try {
    C.cohomology(3);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(e.required() == 16u * 65536u);
    CHECK(e.cap() == 1'000'000);
  }
  CochainComplex<Rationals> small(H.algebra(), regular_bimodule(H.algebra()), 100);
  CHECK_THROWS_AS(small.differential_matrix(1), ResourceError);
}

TEST_CASE("induced maps") {
  std::mt19937 rng(11);
  PrimeField F3(3);
  auto H = build_preset("sweedler", F3).hopf;
  const auto& A = H.algebra();
  CochainComplex<PrimeField> C(A, regular_bimodule(A));
  for (long n = 0; n <= 2; ++n) {
    auto hh = C.cohomology(n);
    CHECK(induced_map(Matrix<PrimeField>::identity(F3, C.dim(n)), hh, hh).is_identity());
    // Homotopic maps induce the same map.
    for (int trial = 0; trial < 3; ++trial) {
      auto c = random_central(A, rng);
      CHECK(induced_map(C.left_mult(c, n), hh, hh) == induced_map(C.right_mult(c, n), hh, hh));
    }
  }
  // Scaling commutes with taking classes.
  auto hh1 = C.cohomology(1);
  auto two = Matrix<PrimeField>::identity(F3, C.dim(1)).scaled(F3.from_int(2));
  CHECK(induced_map(two, hh1, hh1) == Matrix<PrimeField>::identity(F3, hh1.dim()).scaled(F3.from_int(2)));
  // A map sending a cocycle to a non-cocycle is rejected.
  std::size_t bad_row = 0;
  while (C.apply_differential(1, {{index_t(bad_row), F3.one()}}).empty()) ++bad_row;
  REQUIRE(hh1.dim() > 0);
  const auto p = hh1.representatives[0].front().index;
  auto bad = Matrix<PrimeField>::from_triplets(F3, C.dim(1), C.dim(1), {{index_t(bad_row), p, F3.one()}});
  CHECK_THROWS_AS(induced_map(bad, hh1, hh1), VerificationError);
}
