#pragma once

#include <random>

#include "hochmod/hochschild.hpp"
#include "hochmod/hopf.hpp"

// Fixtures shared by the unit tests and the acceptance run.
namespace hochmod::testing {

// A, (A_{S^-2})^*, ^eps A_ad and ^eps A_cad.
template <class K>
std::vector<Bimodule<K>> twists(const Hopf<K>& H) {
  auto A = regular_bimodule(H.algebra());
  return {A, dual_bimodule(twist_s2inv(H)), twist_eps_ad(H, A), twist_eps_cad(H, A)};
}

// k[x]/(x^2) on the basis 1, x.
template <class K>
Algebra<K> dual_numbers(const K& F) {
  using V = typename K::value_type;
  std::vector<SparseVector<V>> p(4);
  p[0] = {{0, F.one()}};
  p[1] = {{1, F.one()}};
  p[2] = {{1, F.one()}};
  return Algebra<K>(F, 2, std::move(p), Vec<K>{F.one(), F.zero()});
}

// dim HH^n(k[x]/(x^2)) from the 2-periodic resolution: the cochains are A in
// every degree with maps alternately 0 and multiplication by 2x
// (tests/oracles/periodic_resolution.py computes the same numbers).
inline std::vector<std::size_t> periodic_oracle(std::uint64_t characteristic, std::size_t top) {
  const bool two_is_zero = characteristic == 2;
  std::vector<std::size_t> rank(top + 1);
  for (std::size_t n = 0; n <= top; ++n) rank[n] = (n % 2 == 1 && !two_is_zero) ? 1 : 0;
  std::vector<std::size_t> dims;
  for (std::size_t n = 0; n <= top; ++n) dims.push_back(2 - rank[n] - (n ? rank[n - 1] : 0));
  return dims;
}

template <class K>
Vec<K> random_central(const Algebra<K>& A, std::mt19937& rng) {
  const K& F = A.field();
  auto Z = center_basis(A);
  Vec<K> c = A.zero();
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& b : Z.basis) {
    auto s = F.from_int(coef(rng));
    for (const auto& e : b) F.add_mul(c[e.index], s, e.value);
  }
  return c;
}

}  // namespace hochmod::testing
