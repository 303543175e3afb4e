#include <doctest.h>

#include <map>
#include <set>

#include "hochmod/builders.hpp"

using namespace hochmod;

namespace {

template <class K>
K make_field();
template <>
Rationals make_field<Rationals>() { return Rationals(); }
template <>
PrimeField make_field<PrimeField>() { return PrimeField(5); }

// Sweedler product from the normal form g^a x^b, with x g = -g x and x^2 = 0.
// Basis order 1, g, x, gx.
std::map<std::pair<int, int>, std::pair<int, int>> sweedler_oracle() {
  std::map<std::pair<int, int>, std::pair<int, int>> out;  // (i,j) -> (index or -1, sign)
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      int a = i & 1, b = i >> 1, c = j & 1, e = j >> 1;
      int sign = (b && c) ? -1 : 1;
      if (b + e > 1) out[{i, j}] = {-1, 0};
      else out[{i, j}] = {((a + c) % 2) | ((b + e) << 1), sign};
    }
  return out;
}

// Conjugacy class sums of a group given by its table.
std::vector<std::set<std::size_t>> conjugacy_classes(const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  std::size_t e = 0;
  while (t[e][0] != 0) ++e;
  std::vector<std::size_t> inv(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t[a][b] == e) inv[a] = b;
  std::vector<std::set<std::size_t>> classes;
  std::vector<char> seen(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> c;
    for (std::size_t g = 0; g < n; ++g) c.insert(t[t[g][x]][inv[g]]);
    for (auto y : c) seen[y] = 1;
    classes.push_back(c);
  }
  return classes;
}

// Count of z in F_p^d commuting with every basis element, by enumeration.
std::size_t brute_force_center_size(const Algebra<PrimeField>& A) {
  const auto& F = A.field();
  const std::size_t d = A.dim(), p = F.characteristic(), total = checked_power(p, d);
  std::size_t count = 0;
  for (std::size_t t = 0; t < total; ++t) {
    auto digits = tensor_digits(t, p, d);
    Vec<PrimeField> z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = F.from_int(long(digits[i]));
    bool central = true;
    for (std::size_t i = 0; i < d && central; ++i) central = A.mul(A.basis(i), z) == A.mul(z, A.basis(i));
    count += central;
  }
  return count;
}

}  // namespace

TEST_CASE_TEMPLATE("presets satisfy the Hopf axioms", K, Rationals, PrimeField) {
  K F = make_field<K>();
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    auto data = build_preset(name, F);
    auto r = verify_hopf(data.hopf);
    INFO(r.summary());
    CHECK(r.ok());
    CHECK(r.checks > 0);
    CHECK(data.hopf.antipode_invertible());
    CHECK(data.labels.size() == data.hopf.dim());
  }
}

TEST_CASE("group algebras over F_2 and F_3") {
  for (std::uint64_t p : {2u, 3u}) {
    PrimeField F(p);
    for (std::string name : {"kZ2", "kZ3", "kS3", "D-kZ2", "D-kZ3"}) {
      CAPTURE(name);
      CHECK(verify_hopf(build_preset(name, F).hopf).ok());
    }
  }
}

TEST_CASE("Sweedler structure constants match the normal-form oracle") {
  Rationals Q;
  auto H = build_sweedler(Q);
  for (const auto& [ij, res] : sweedler_oracle()) {
    auto prod = H.algebra().product(ij.first, ij.second);
    if (res.first < 0) {
      CHECK(prod.empty());
    } else {
      REQUIRE(prod.size() == 1);
      CHECK(prod[0].index == index_t(res.first));
      CHECK(prod[0].value == Rational(res.second));
    }
  }
  // S^2(x) = g x g^{-1} = -x, S^4 = id.
  auto s2 = H.antipode_power(2);
  CHECK(s2.apply_dense(H.algebra().basis(2)) == vec_scale(Q, H.algebra().basis(2), Rational(-1)));
  CHECK(H.antipode_power(4).is_identity());
  CHECK(H.antipode_power(-1) == H.antipode_inverse());
  CHECK(H.antipode_power(3) == H.antipode_inverse());
  CHECK_THROWS_AS(build_sweedler(PrimeField(2)), InvalidField);
}

TEST_CASE("verifiers report injected violations") {
  Rationals Q;
  auto H = build_sweedler(Q);
  SUBCASE("associativity") {
    auto prod = H.algebra().products();
    prod[2 * 4 + 2] = {{0, Rational(1)}};  // x^2 = 1 breaks x (x g) = (x x) g
    Algebra<Rationals> bad(Q, 4, prod, H.algebra().unit());
    auto r = verify_algebra(bad);
    CHECK_FALSE(r.ok());
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().check.find("assoc") != std::string::npos);
    CHECK(r.violations.front().basis.size() == 3);
  }
  SUBCASE("antipode replaced by the identity") {
    Hopf<Rationals> bad(H.algebra(), H.coproducts(), H.counit(), Matrix<Rationals>::identity(Q, 4));
    auto r = verify_hopf(bad);
    CHECK_FALSE(r.ok());
    bool antipode = false;
    for (const auto& v : r.violations) antipode |= v.check.find("antipode") != std::string::npos;
    CHECK(antipode);
  }
  SUBCASE("non-coassociative coproduct") {
    auto co = H.coproducts();
    co[2] = {{2 * 4 + 0, Rational(1)}};  // Delta(x) = x (x) 1 loses the g (x) x term
    Hopf<Rationals> bad(H.algebra(), co, H.counit(), H.antipode());
    CHECK_FALSE(verify_hopf(bad).ok());
  }
}

TEST_CASE("group tables are validated") {
  CHECK(check_group_table(cyclic_group_table(4)) == 0);
  CHECK(check_group_table(symmetric_group3_table()) == 0);
  std::vector<std::vector<std::size_t>> not_group{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(check_group_table(not_group), VerificationError);
  std::vector<std::vector<std::size_t>> no_identity{{1, 1}, {1, 1}};
  CHECK_THROWS_AS(check_group_table(no_identity), VerificationError);
  // Latin square with identity that is not associative.
  std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(check_group_table(loop), VerificationError);
}

TEST_CASE("center of group algebras is spanned by class sums") {
  Rationals Q;
  for (auto table : {cyclic_group_table(3), symmetric_group3_table()}) {
    auto H = build_group_algebra(table, Q);
    auto Z = center_basis(H.algebra());
    auto classes = conjugacy_classes(table);
    std::vector<SparseVector<Rational>> sums;
    for (const auto& c : classes) {
      SparseVector<Rational> v;
      for (auto g : c) v.push_back({index_t(g), Rational(1)});
      sums.push_back(v);
    }
    CHECK(Z == Subspace<Rationals>::span(Q, table.size(), sums));
  }
  CHECK(conjugacy_classes(symmetric_group3_table()).size() == 3);
}

TEST_CASE("center dimension matches enumeration over F_3") {
  PrimeField F3(3);
  for (std::string name : {"kZ2", "kS3", "sweedler"}) {
    CAPTURE(name);
    auto H = build_preset(name, F3).hopf;
    auto z = center_basis(H.algebra());
    CHECK(brute_force_center_size(H.algebra()) == checked_power(3, z.dim()));
  }
  CHECK(center_basis(build_sweedler(F3).algebra()).dim() == 1);
}

TEST_CASE_TEMPLATE("twisted bimodules satisfy the bimodule axioms", K, Rationals, PrimeField) {
  K F = make_field<K>();
  for (std::string name : {"kZ3", "kS3", "sweedler", "D-kZ2"}) {
    CAPTURE(name);
    auto H = build_preset(name, F).hopf;
    const auto& A = H.algebra();
    auto reg = regular_bimodule(A);
    auto s2 = twist_s2inv(H);
    auto dual = dual_bimodule(s2);
    for (const auto& M : {reg, s2, dual, twist_eps_ad(H, reg), twist_eps_cad(H, reg), twist_eps_ad(H, dual),
                          coadjoint_bimodule(H)}) {
      CAPTURE(M.name);
      auto r = verify_bimodule(A, M);
      INFO(r.summary());
      CHECK(r.ok());
    }
  }
}

TEST_CASE("coadjoint action agrees with the adjoint twist of the dual of A_{S^-2}") {
  Rationals Q;
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    auto H = build_preset(name, Q).hopf;
    auto tw = twist_eps_ad(H, dual_bimodule(twist_s2inv(H)));
    for (std::size_t a = 0; a < H.dim(); ++a) CHECK(coadjoint_action_matrix(H, a) == tw.right[a]);
  }
}

TEST_CASE("adjoint action at element level matches the ad twist") {
  Rationals Q;
  auto H = build_sweedler(Q);
  auto ad = twist_eps_ad(H, regular_bimodule(H.algebra()));
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t a = 0; a < 4; ++a)
      CHECK(adjoint(H, H.algebra().basis(m), H.algebra().basis(a)) ==
            ad.right[a].apply_dense(H.algebra().basis(m)));
  // ad(x (x) g) = g^{-1} x g = -x
  CHECK(adjoint(H, H.algebra().basis(2), H.algebra().basis(1)) == vec_scale(Q, H.algebra().basis(2), Rational(-1)));
}

TEST_CASE("iterated coproducts") {
  Rationals Q;
  auto H = build_sweedler(Q);
  auto d0 = iterated_coproduct(H, 0);
  CHECK(d0.rows() == 1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(d0.at(0, i) == H.counit()[i]);
  CHECK(iterated_coproduct(H, 1).is_identity());
  CHECK(iterated_coproduct(H, 2) == H.coproduct_matrix());
  // Delta^{(3)}(x) = x(x)1(x)1 + g(x)x(x)1 + g(x)g(x)x
  auto d3 = iterated_coproduct(H, 3);
  auto col = d3.column_vector(2);
  SparseVector<Rational> expect{{2 * 16 + 0 + 0, Rational(1)}, {1 * 16 + 2 * 4 + 0, Rational(1)},
                                {1 * 16 + 1 * 4 + 2, Rational(1)}};
  std::sort(expect.begin(), expect.end(), [](auto& a, auto& b) { return a.index < b.index; });
  CHECK(col.size() == expect.size());
  for (std::size_t k = 0; k < col.size() && k < expect.size(); ++k) {
    CHECK(col[k].index == expect[k].index);
    CHECK(col[k].value == expect[k].value);
  }
  // Coassociativity in the other bracketing.
  auto D = H.coproduct_matrix();
  auto left = kron(D, Matrix<Rationals>::identity(Q, 4)) * D;
  auto right = kron(Matrix<Rationals>::identity(Q, 4), D) * D;
  CHECK(left == d3);
  CHECK(right == d3);
}

TEST_CASE("Drinfel'd double dimensions and the cap") {
  Rationals Q;
  auto D = build_preset("D-sweedler", Q);
  CHECK(D.hopf.dim() == 16);
  REQUIRE(D.R);
  CHECK(D.R->size() == 256);
  CHECK_THROWS_AS(build_drinfeld_double(build_sweedler(Q), {}, 8), ResourceError);
  CHECK_THROWS_AS(build_preset("nope", Q), ParseError);
  CHECK_THROWS_AS(build_preset("D-sweedler", PrimeField(2)), InvalidField);
}
