#include <doctest.h>

#include <random>

#include "hochmod/linalg.hpp"

using namespace hochmod;

namespace {

template <class K>
Matrix<K> dense(const K& F, std::vector<std::vector<long long>> rows) {
  std::vector<std::vector<typename K::value_type>> v;
  for (auto& r : rows) {
    v.emplace_back();
    for (long long x : r) v.back().push_back(F.from_int(x));
  }
  return Matrix<K>::from_dense(F, v);
}

template <class K>
Matrix<K> random_matrix(const K& F, std::size_t r, std::size_t c, double density, std::mt19937_64& rng) {
  std::vector<Triplet<typename K::value_type>> t;
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (u(rng) < density) t.push_back({index_t(i), index_t(j), F.from_int(long(rng() % 7) - 3)});
  return Matrix<K>::from_triplets(F, r, c, std::move(t));
}

// Low-rank matrix: product of random thin factors.
template <class K>
Matrix<K> random_low_rank(const K& F, std::size_t r, std::size_t c, std::size_t k, std::mt19937_64& rng) {
  return random_matrix(F, r, k, 0.5, rng) * random_matrix(F, k, c, 0.5, rng);
}

}  // namespace

TEST_CASE("rref examples") {
  Rationals Q;
  auto r = rref(dense(Q, {{1, 1}, {1, 1}}));
  CHECK(r.reduced == dense(Q, {{1, 1}, {0, 0}}));
  CHECK(r.pivots == std::vector<index_t>{0});

  auto id = Matrix<Rationals>::identity(Q, 3);
  auto ri = rref(id);
  CHECK(ri.reduced == id);
  CHECK(ri.pivots == std::vector<index_t>{0, 1, 2});

  PrimeField F5(5);
  auto r5 = rref(dense(F5, {{2}}));
  CHECK(r5.reduced == dense(F5, {{1}}));
  CHECK(r5.pivots == std::vector<index_t>{0});
}

TEST_CASE("kernel_basis examples") {
  Rationals Q;
  auto k = kernel_basis(dense(Q, {{1, 1}, {1, 1}}));
  REQUIRE(k.dim() == 1);
  CHECK(k == Subspace<Rationals>::span(Q, 2, {{{0, Rational(1)}, {1, Rational(-1)}}}));
  CHECK(kernel_basis(Matrix<Rationals>(Q, 2, 3)) == Subspace<Rationals>::full(Q, 3));
  CHECK(kernel_basis(dense(Q, {{1, 2}, {3, 4}})).dim() == 0);
}

TEST_CASE("solve examples") {
  Rationals Q;
  auto x = solve(dense(Q, {{1, 0}, {0, 2}}), {Rational(1), Rational(1)});
  REQUIRE(x);
  CHECK((*x)[0] == Rational(1));
  CHECK((*x)[1] == Rational(1, 2));
  CHECK_FALSE(solve(dense(Q, {{1, 1}, {1, 1}}), {Rational(1), Rational(0)}));
  auto empty = solve(Matrix<Rationals>(Q, 0, 3), {});
  REQUIRE(empty);
  CHECK(empty->size() == 3);
  CHECK(std::all_of(empty->begin(), empty->end(), [](const Rational& r) { return r.is_zero(); }));
  CHECK_THROWS_AS(solve(dense(Q, {{1}}), {Rational(1), Rational(2)}), DimensionMismatch);
}

TEST_CASE("quotient_representation examples") {
  Rationals Q;
  auto modulo = Subspace<Rationals>::span(Q, 2, {{{1, Rational(1)}}});
  SparseVector<Rational> e0{{0, Rational(1)}};
  auto c = quotient_representation<Rationals>({{{0, Rational(3)}, {1, Rational(7)}}}, modulo, {e0});
  REQUIRE(c[0]);
  CHECK((*c[0])[0] == Rational(3));
  auto z = quotient_representation<Rationals>({{{1, Rational(5)}}}, modulo, {e0});
  REQUIRE(z[0]);
  CHECK((*z[0])[0].is_zero());
  auto bad = quotient_representation<Rationals>({{{1, Rational(1)}}}, Subspace<Rationals>::zero(Q, 2), {e0});
  CHECK_FALSE(bad[0]);
}

TEST_CASE("tensor_index examples and bijectivity") {
  std::vector<std::size_t> a{1, 0};
  CHECK(tensor_index(a, 2) == 2);
  std::vector<std::size_t> b{0, 0, 0};
  CHECK(tensor_index(b, 4) == 0);
  CHECK(tensor_index({}, 7) == 0);
  std::vector<std::size_t> bad{2};
  CHECK_THROWS_AS(tensor_index(bad, 2), DimensionMismatch);
  for (std::size_t d = 1; d <= 4; ++d)
    for (std::size_t n = 0; n <= 4; ++n) {
      std::size_t total = checked_power(d, n);
      std::vector<char> seen(total, 0);
      for (std::size_t t = 0; t < total; ++t) {
        auto digits = tensor_digits(t, d, n);
        std::size_t back = tensor_index(digits, d);
        REQUIRE(back == t);
        seen[back] = 1;
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](char s) { return s; }));
    }
}

TEST_CASE_TEMPLATE("rank-nullity, solve round trip, dense and sparse rref agree", K, Rationals, PrimeField) {
  std::mt19937_64 rng(99);
  K F = [] {
    if constexpr (std::is_same_v<K, PrimeField>) return PrimeField(7);
    else return Rationals();
  }();
  for (int iter = 0; iter < 40; ++iter) {
    std::size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
    auto m = (iter % 2) ? random_matrix(F, r, c, 0.3, rng) : random_low_rank(F, r, c, 1 + rng() % 6, rng);
    auto d = detail::rref_dense(m);
    auto s = detail::rref_sparse(m);
    CHECK(d.reduced == s.reduced);
    CHECK(d.pivots == s.pivots);
    auto k = kernel_basis(m);
    CHECK(d.pivots.size() + k.dim() == c);
    CHECK(rank(m) == d.pivots.size());
    CHECK(rank(m.transpose()) == d.pivots.size());
    for (const auto& v : k.basis) CHECK(m.apply(v).empty());
    std::vector<typename K::value_type> x0(c);
    for (auto& x : x0) x = F.from_int(long(rng() % 5) - 2);
    auto b = m.apply_dense(x0);
    auto x = solve(m, b);
    REQUIRE(x);
    CHECK(m.apply_dense(*x) == b);
  }
}

TEST_CASE("large sparse elimination over Q matches F_p rank bound") {
  std::mt19937_64 rng(5);
  Rationals Q;
  auto m = random_low_rank(Q, 300, 200, 37, rng);
  auto k = kernel_basis(m);
  CHECK(k.dim() + rank(m) == 200);
  CHECK(rank(m) <= 37);
  for (const auto& v : k.basis) CHECK(m.apply(v).empty());
}

TEST_CASE("kernel dimension matches brute-force enumeration over F_3") {
  std::mt19937_64 rng(2024);
  PrimeField F3(3);
  for (int iter = 0; iter < 20; ++iter) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    auto m = random_matrix(F3, r, c, 0.5, rng);
    auto dm = m.to_dense();
    std::size_t count = 0, total = checked_power(3, c);
    for (std::size_t t = 0; t < total; ++t) {
      auto x = tensor_digits(t, 3, c);
      bool zero = true;
      for (std::size_t i = 0; i < r && zero; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < c; ++j) s += dm[i][j] * x[j];
        zero = s % 3 == 0;
      }
      count += zero;
    }
    CHECK(count == checked_power(3, kernel_basis(m).dim()));
  }
}

TEST_CASE("matrix algebra") {
  Rationals Q;
  auto a = dense(Q, {{1, 2}, {0, 1}});
  auto b = dense(Q, {{0, 1}, {1, 0}});
  CHECK(a * b == dense(Q, {{2, 1}, {1, 0}}));
  CHECK(a - a == Matrix<Rationals>(Q, 2, 2));
  CHECK((a + b).at(0, 1) == Rational(3));
  CHECK(a.transpose().transpose() == a);
  CHECK(kron(Matrix<Rationals>::identity(Q, 2), b).at(3, 2) == Rational(1));
  CHECK(a.first_difference(b).value() == std::pair<std::size_t, std::size_t>{0, 0});
  auto s = Subspace<Rationals>::column_span(a);
  CHECK(s == Subspace<Rationals>::full(Q, 2));
}
