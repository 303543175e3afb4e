#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hochmod/hopf.hpp"

namespace hochmod {

// Elements of A (x) A are vectors in K^{d^2}, row-major: x = sum x[i*d+j] e_i (x) e_j.

/// Places x in A^{(x)k} at the given legs, with the unit in the others.
template <class K>
Vec<K> embed_legs(const Algebra<K>& A, const Vec<K>& x, std::size_t k, const std::vector<std::size_t>& legs) {
  const K& F = A.field();
  const std::size_t d = A.dim(), m = legs.size();
  std::vector<std::size_t> unit_support;
  for (std::size_t i = 0; i < d; ++i)
    if (!F.is_zero(A.unit()[i])) unit_support.push_back(i);
  std::vector<std::size_t> others;
  for (std::size_t s = 0; s < k; ++s)
    if (std::find(legs.begin(), legs.end(), s) == legs.end()) others.push_back(s);
  Vec<K> out(checked_power(d, k), F.zero());
  std::vector<std::size_t> digits(k);
  const std::size_t combos = checked_power(unit_support.size(), others.size());
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (F.is_zero(x[p])) continue;
    auto xd = tensor_digits(p, d, m);
    for (std::size_t s = 0; s < m; ++s) digits[legs[s]] = xd[s];
    for (std::size_t c = 0; c < combos; ++c) {
      auto cd = tensor_digits(c, unit_support.size(), others.size());
      auto coeff = x[p];
      for (std::size_t s = 0; s < others.size(); ++s) {
        digits[others[s]] = unit_support[cd[s]];
        coeff = F.mul(coeff, A.unit()[unit_support[cd[s]]]);
      }
      F.add_mul(out[tensor_index(digits, d)], coeff, F.one());
    }
  }
  return out;
}

/// Left multiplication by x in A (x) A, as a d^2 x d^2 matrix.
template <class K>
Matrix<K> tensor2_left(const Algebra<K>& A, const Vec<K>& x) {
  const K& F = A.field();
  const std::size_t d = A.dim();
  Matrix<K> out(F, d * d, d * d);
  for (std::size_t p = 0; p < x.size(); ++p)
    if (!F.is_zero(x[p])) out = out + kron(A.left(p / d), A.left(p % d)).scaled(x[p]);
  return out;
}

/// Applies f (x) g to an element of A (x) A.
template <class K>
Vec<K> apply_tensor2(const Matrix<K>& f, const Matrix<K>& g, const Vec<K>& x, std::size_t d) {
  return apply_to_slot(g, apply_to_slot(f, x, d, 2, 0), d, 2, 1);
}

/// Inverse of x in A (x) A, if any.
template <class K>
std::optional<Vec<K>> tensor2_inverse(const Algebra<K>& A, const Vec<K>& x) {
  auto sol = solve(tensor2_left(A, x), A.tensor_unit(2));
  if (!sol) return std::nullopt;
  if (A.tensor_mul(2, *sol, x) != A.tensor_unit(2)) return std::nullopt;
  return sol;
}

/// Inverse of a in A by solving L_a x = 1, checked on both sides.
template <class K>
std::optional<Vec<K>> element_inverse(const Algebra<K>& A, const Vec<K>& a) {
  auto sol = solve(A.left_of(a), A.unit());
  if (!sol || A.mul(*sol, a) != A.unit()) return std::nullopt;
  return sol;
}

template <class K>
Report verify_quasitriangular(const Hopf<K>& H, const Vec<K>& R) {
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  Report rep{"quasitriangular", {}, 0, 0, {}};
  if (R.size() != d * d) throw DimensionMismatch("R must live in A (x) A");
  auto Rinv = tensor2_inverse(A, R);
  rep.expect(Rinv.has_value(), "R invertible", {}, detail::fmt(F, R), "no inverse");
  for (std::size_t a = 0; a < d; ++a) {
    auto delta = to_dense(F, H.coproducts()[a], d * d);
    auto lhs = A.tensor_mul(2, flip<K>(delta, d), R);
    auto rhs = A.tensor_mul(2, R, delta);
    if (lhs == rhs) rep.pass();
    else rep.fail("Delta^cop(a) R = R Delta(a)", {a}, detail::fmt(F, lhs), detail::fmt(F, rhs));
  }
  auto coproduct = H.coproduct_matrix();
  auto id = Matrix<K>::identity(F, d);
  {
    // (Delta (x) id)(R) = R_13 R_23
    Vec<K> lhs(d * d * d, F.zero());
    for (std::size_t p = 0; p < R.size(); ++p) {
      if (F.is_zero(R[p])) continue;
      for (const auto& e : coproduct.column(p / d)) F.add_mul(lhs[e.index * d + p % d], R[p], e.value);
    }
    auto rhs = A.tensor_mul(3, embed_legs(A, R, 3, {0, 2}), embed_legs(A, R, 3, {1, 2}));
    rep.expect(lhs == rhs, "(Delta (x) id)(R) = R13 R23", {}, detail::fmt(F, lhs), detail::fmt(F, rhs));
  }
  {
    // (id (x) Delta)(R) = R_13 R_12
    Vec<K> lhs(d * d * d, F.zero());
    for (std::size_t p = 0; p < R.size(); ++p) {
      if (F.is_zero(R[p])) continue;
      for (const auto& e : coproduct.column(p % d)) F.add_mul(lhs[(p / d) * d * d + e.index], R[p], e.value);
    }
    auto rhs = A.tensor_mul(3, embed_legs(A, R, 3, {0, 2}), embed_legs(A, R, 3, {0, 1}));
    rep.expect(lhs == rhs, "(id (x) Delta)(R) = R13 R12", {}, detail::fmt(F, lhs), detail::fmt(F, rhs));
  }
  const auto& S = H.antipode();
  auto ss = apply_tensor2(S, S, R, d);
  rep.expect(ss == R, "(S (x) S)(R) = R", {}, detail::fmt(F, ss), detail::fmt(F, R));
  if (Rinv) {
    auto sid = apply_tensor2(S, id, R, d);
    rep.expect(sid == *Rinv, "(S (x) id)(R) = R^-1", {}, detail::fmt(F, sid), detail::fmt(F, *Rinv));
  }
  return rep;
}

/// Q = tau(R) R.
template <class K>
Vec<K> monodromy(const Algebra<K>& A, const Vec<K>& R) {
  return A.tensor_mul(2, flip<K>(R, A.dim()), R);
}

/// u = S(R_2) R_1.
template <class K>
Vec<K> drinfeld_element(const Hopf<K>& H, const Vec<K>& R) {
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  Vec<K> u = A.zero();
  for (std::size_t p = 0; p < R.size(); ++p) {
    if (F.is_zero(R[p])) continue;
    auto term = A.mul(H.S(A.basis(p % d)), A.basis(p / d));
    u = vec_add(F, u, vec_scale(F, term, R[p]));
  }
  return u;
}

/// Matrix of the Drinfel'd map phi -> phi(Q_1) Q_2 in dual/primal bases.
template <class K>
Matrix<K> drinfeld_map_matrix(const Algebra<K>& A, const Vec<K>& Q) {
  const std::size_t d = A.dim();
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t p = 0; p < Q.size(); ++p)
    if (!A.field().is_zero(Q[p])) t.push_back({index_t(p % d), index_t(p / d), Q[p]});
  return Matrix<K>::from_triplets(A.field(), d, d, std::move(t));
}

template <class K>
Vec<K> drinfeld_map(const Algebra<K>& A, const Vec<K>& Q, const Vec<K>& phi) {
  return drinfeld_map_matrix(A, Q).apply_dense(phi);
}

struct FactorizableResult {
  bool factorizable = false;
  std::size_t rank = 0;
};

template <class K>
FactorizableResult verify_factorizable(const Hopf<K>& H, const Vec<K>& R) {
  auto r = rank(drinfeld_map_matrix(H.algebra(), monodromy(H.algebra(), R)));
  return {r == H.dim(), r};
}

enum class IntegralConvention { right, mirrored };

inline std::string to_string(IntegralConvention c) {
  return c == IntegralConvention::right ? "rho(a_(1)) a_(2) = rho(a) 1" : "a_(1) rho(a_(2)) = rho(a) 1";
}

/// Solutions of rho(a_(1)) a_(2) = rho(a) 1 (or the mirrored condition).
template <class K>
Subspace<K> integral_space(const Hopf<K>& H, IntegralConvention conv) {
  const K& F = H.field();
  const std::size_t d = H.dim();
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t a = 0; a < d; ++a) {
    for (const auto& term : H.coproduct_terms(a)) {
      auto [probe, out] = conv == IntegralConvention::right ? std::pair{term.left, term.right}
                                                            : std::pair{term.right, term.left};
      t.push_back({index_t(a * d + out), probe, term.coeff});
    }
    for (std::size_t m = 0; m < d; ++m)
      if (!F.is_zero(H.algebra().unit()[m])) t.push_back({index_t(a * d + m), index_t(a), F.neg(H.algebra().unit()[m])});
  }
  return kernel_basis(Matrix<K>::from_triplets(F, d * d, d, std::move(t)));
}

/// C(A) = { phi : phi(b S^{-2}(a)) = phi(ab) for all a, b }.
template <class K>
Subspace<K> class_functions(const Hopf<K>& H) {
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  auto s2inv = H.antipode_power(-2);
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t a = 0; a < d; ++a) {
    auto sa = to_dense(F, s2inv.column_vector(a), d);
    for (std::size_t b = 0; b < d; ++b) {
      auto diff = vec_sub(F, A.mul(A.basis(b), sa), A.mul(A.basis(a), A.basis(b)));
      for (std::size_t k = 0; k < d; ++k)
        if (!F.is_zero(diff[k])) t.push_back({index_t(a * d + b), index_t(k), diff[k]});
    }
  }
  return kernel_basis(Matrix<K>::from_triplets(F, d * d, d, std::move(t)));
}

template <class K>
bool in_class_functions(const Hopf<K>& H, const Vec<K>& phi) {
  return class_functions(H).contains(to_sparse(H.field(), phi));
}

template <class K>
struct IntegralResult {
  Vec<K> rho;
  IntegralConvention convention = IntegralConvention::right;
  bool sentinel = false;  // rho lies in the class functions
};

/// Right integral with the convention sentinel: the primary convention is
/// kept when rho is a class function, otherwise the mirrored one is tried.
template <class K>
IntegralResult<K> find_right_integrals(const Hopf<K>& H) {
  const K& F = H.field();
  auto solve_for = [&](IntegralConvention conv) {
    auto space = integral_space(H, conv);
    if (space.dim() != 1)
      throw VerificationError("integral space has dimension " + std::to_string(space.dim()));
    auto rho = to_dense(F, space.basis[0], H.dim());
    return IntegralResult<K>{rho, conv, in_class_functions(H, rho)};
  };
  auto primary = solve_for(IntegralConvention::right);
  if (primary.sentinel) return primary;
  auto mirrored = solve_for(IntegralConvention::mirrored);
  // Neither passing the sentinel keeps the primary convention, flagged.
  return mirrored.sentinel ? mirrored : primary;
}

/// Matrix of the Radford map a -> (b -> rho(ab)).
template <class K>
Matrix<K> radford_matrix(const Algebra<K>& A, const Vec<K>& rho) {
  const K& F = A.field();
  const std::size_t d = A.dim();
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      auto v = F.zero();
      for (const auto& e : A.product(a, b)) F.add_mul(v, e.value, rho[e.index]);
      if (!F.is_zero(v)) t.push_back({index_t(b), index_t(a), v});
    }
  return Matrix<K>::from_triplets(F, d, d, std::move(t));
}

template <class K>
Vec<K> radford_map(const Algebra<K>& A, const Vec<K>& rho, const Vec<K>& a) {
  return radford_matrix(A, rho).apply_dense(a);
}

template <class K>
Vec<K> ribbon_normalize(const K& F, const Vec<K>& rho, const Vec<K>& v) {
  auto rv = vec_dot(F, rho, v);
  if (F.is_zero(rv)) throw VerificationError("rho(v) = 0: inconsistent ribbon data");
  return vec_scale(F, rho, F.inv(rv));
}

/// Outcome of the five ribbon conditions for a candidate v. The ribbon
/// element is the one multiplied in by frak T, normalized so that
/// v^2 = (u S(u))^{-1} and Delta(v) = Q (v (x) v).
template <class K>
Report check_ribbon_element(const Hopf<K>& H, const Vec<K>& Q, const Vec<K>& u, const Vec<K>& v) {
  const K& F = H.field();
  const auto& A = H.algebra();
  Report rep{"ribbon element", {}, 0, 0, {}};
  bool central = true;
  for (std::size_t i = 0; i < H.dim() && central; ++i) central = A.mul(A.basis(i), v) == A.mul(v, A.basis(i));
  rep.expect(central, "v central", {}, detail::fmt(F, v));
  rep.expect(H.S(v) == v, "S(v) = v", {}, detail::fmt(F, H.S(v)), detail::fmt(F, v));
  rep.expect(F.is_one(H.eps(v)), "eps(v) = 1", {}, F.format(H.eps(v)), "1");
  auto prod = A.mul(A.mul(v, v), A.mul(u, H.S(u)));
  rep.expect(prod == A.unit(), "v^2 u S(u) = 1", {}, detail::fmt(F, prod), detail::fmt(F, A.unit()));
  Vec<K> vtv(H.dim() * H.dim(), F.zero());
  for (std::size_t i = 0; i < H.dim(); ++i)
    for (std::size_t j = 0; j < H.dim(); ++j) vtv[i * H.dim() + j] = F.mul(v[i], v[j]);
  auto delta = H.delta(v);
  auto qvv = A.tensor_mul(2, Q, vtv);
  rep.expect(delta == qvv, "Delta(v) = Q (v (x) v)", {}, detail::fmt(F, delta), detail::fmt(F, qvv));
  return rep;
}

namespace detail {

// Roots in F of a polynomial (coefficients from degree 0).
template <class K>
std::vector<typename K::value_type> field_roots(const K& F, std::vector<typename K::value_type> poly) {
  using V = typename K::value_type;
  while (!poly.empty() && F.is_zero(poly.back())) poly.pop_back();
  std::vector<V> roots;
  if (poly.size() <= 1) return roots;
  auto eval = [&](const V& x) {
    V acc = F.zero();
    for (std::size_t i = poly.size(); i-- > 0;) acc = F.add(F.mul(acc, x), poly[i]);
    return acc;
  };
  if constexpr (std::is_same_v<K, PrimeField>) {
    const std::uint64_t p = F.characteristic();
    if (p > (1u << 20)) throw ResourceError("root enumeration over a large prime field", p, 1u << 20);
    for (std::uint64_t x = 0; x < p; ++x)
      if (F.is_zero(eval(V(x)))) roots.push_back(V(x));
  } else if constexpr (std::is_same_v<K, Rationals>) {
    if (F.is_zero(poly.front())) roots.push_back(F.zero());
    std::size_t low = 0;
    while (F.is_zero(poly[low])) ++low;
    std::vector<V> q(poly.begin() + low, poly.end());
    if (q.size() <= 1) return roots;
    make_primitive(q.data(), q.size());
    auto as_int = [](const Rational& r) -> std::uint64_t {
      std::string s = r.numerator_string();
      if (!s.empty() && s[0] == '-') s = s.substr(1);
      if (s.size() > 15) throw ResourceError("rational root search on large coefficients", s.size(), 15);
      return std::stoull(s);
    };
    auto divisors = [](std::uint64_t n) {
      std::vector<std::uint64_t> out;
      for (std::uint64_t k = 1; k * k <= n; ++k)
        if (n % k == 0) {
          out.push_back(k);
          if (k != n / k) out.push_back(n / k);
        }
      return out;
    };
    for (auto num : divisors(as_int(q.front())))
      for (auto den : divisors(as_int(q.back())))
        for (int sign : {1, -1}) {
          Rational x(sign * static_cast<long long>(num), static_cast<long long>(den));
          if (F.is_zero(eval(x)) && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
        }
  } else {
    throw InvalidField("ribbon elements must be supplied explicitly over cyclotomic fields");
  }
  std::sort(roots.begin(), roots.end(), [&](const V& a, const V& b) { return F.less(a, b); });
  return roots;
}

}  // namespace detail

template <class K>
struct RibbonSearch {
  std::vector<Vec<K>> candidates;  // lexicographically sorted
  std::vector<Vec<K>> grouplikes;  // l with l a l^{-1} = S^2(a)
  std::size_t branches = 0;
};

/// All ribbon elements. Every ribbon element has the form v = u^{-1} l with
/// l grouplike and l a l^{-1} = S^2(a), so the search enumerates such l by
/// fixing one coordinate at a time: a grouplike g satisfies
/// (e^i (x) id)Delta(g) = g_i g, hence g_i is an eigenvalue of that operator.
template <class K>
RibbonSearch<K> find_ribbon_elements(const Hopf<K>& H, const Vec<K>& R) {
  using V = typename K::value_type;
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  auto Q = monodromy(A, R);
  auto u = drinfeld_element(H, R);

  // Linear part: eps(x) = 1 and x e_a - S^2(e_a) x = 0.
  std::vector<SparseVector<V>> rows;
  std::vector<V> rhs;
  rows.push_back(to_sparse(F, H.counit()));
  rhs.push_back(F.one());
  auto s2 = H.antipode_power(2);
  for (std::size_t a = 0; a < d; ++a) {
    auto m = A.right(a) - A.left_of(to_dense(F, s2.column_vector(a), d));
    auto mt = m.transpose();
    for (std::size_t r = 0; r < d; ++r) {
      auto row = mt.column_vector(r);
      if (row.empty()) continue;
      rows.push_back(std::move(row));
      rhs.push_back(F.zero());
    }
  }
  // T_i = (e^i (x) id) o Delta.
  std::vector<Matrix<K>> T;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Triplet<V>> t;
    for (std::size_t a = 0; a < d; ++a)
      for (const auto& term : H.coproduct_terms(a))
        if (term.left == i) t.push_back({term.right, index_t(a), term.coeff});
    T.push_back(Matrix<K>::from_triplets(F, d, d, std::move(t)));
  }
  std::map<std::size_t, std::vector<V>> eigen_cache;
  auto eigenvalues = [&](std::size_t i) -> const std::vector<V>& {
    auto it = eigen_cache.find(i);
    if (it == eigen_cache.end()) it = eigen_cache.emplace(i, detail::field_roots(F, charpoly(T[i]))).first;
    return it->second;
  };

  RibbonSearch<K> out;
  auto solve_affine = [&](const std::vector<SparseVector<V>>& rs, const std::vector<V>& bs)
      -> std::optional<std::pair<Vec<K>, Subspace<K>>> {
    std::vector<Triplet<V>> t;
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (const auto& e : rs[r]) t.push_back({index_t(r), e.index, e.value});
    auto M = Matrix<K>::from_triplets(F, rs.size(), d, std::move(t));
    auto x0 = solve(M, bs);
    if (!x0) return std::nullopt;
    return std::pair{std::move(*x0), kernel_basis(M)};
  };
  std::vector<Vec<K>> found;
  std::function<void(std::vector<SparseVector<V>>, std::vector<V>)> search = [&](std::vector<SparseVector<V>> rs,
                                                                                  std::vector<V> bs) {
    ++out.branches;
    auto sol = solve_affine(rs, bs);
    if (!sol) return;
    const auto& [x0, ker] = *sol;
    if (ker.dim() == 0) {
      Vec<K> g = x0;
      Vec<K> gg(d * d, F.zero());
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) gg[i * d + j] = F.mul(g[i], g[j]);
      if (H.delta(g) == gg && std::find(found.begin(), found.end(), g) == found.end()) found.push_back(g);
      return;
    }
    // Branch on the first coordinate that is not yet constant.
    std::size_t i = 0;
    for (; i < d; ++i) {
      bool varies = false;
      for (const auto& b : ker.basis)
        for (const auto& e : b) varies |= e.index == i;
      if (varies) break;
    }
    for (const auto& lambda : eigenvalues(i)) {
      auto rs2 = rs;
      auto bs2 = bs;
      rs2.push_back({{index_t(i), F.one()}});
      bs2.push_back(lambda);
      auto shifted = T[i] - Matrix<K>::scalar(F, d, lambda);
      auto st = shifted.transpose();
      for (std::size_t r = 0; r < d; ++r) {
        auto row = st.column_vector(r);
        if (row.empty()) continue;
        rs2.push_back(std::move(row));
        bs2.push_back(F.zero());
      }
      search(std::move(rs2), std::move(bs2));
    }
  };
  search(rows, rhs);
  out.grouplikes = found;
  auto uinv = element_inverse(A, u);
  if (!uinv) throw VerificationError("Drinfel'd element is not invertible");
  for (const auto& l : found) {
    auto v = A.mul(*uinv, l);
    if (check_ribbon_element(H, Q, u, v).ok() && std::find(out.candidates.begin(), out.candidates.end(), v) == out.candidates.end())
      out.candidates.push_back(v);
  }
  std::sort(out.candidates.begin(), out.candidates.end(), [&](const Vec<K>& a, const Vec<K>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [&](const V& x, const V& y) { return F.less(x, y); });
  });
  return out;
}

/// Matrix of the frak S map; the composite S o Phi o iota and the explicit
/// a -> rho(a Q_1) S(Q_2) must agree.
template <class K>
Matrix<K> frak_S_matrix(const Hopf<K>& H, const Vec<K>& Q, const Vec<K>& rho) {
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  auto composite = H.antipode() * drinfeld_map_matrix(A, Q) * radford_matrix(A, rho);
  ColumnBuilder<K> b(F, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t p = 0; p < Q.size(); ++p) {
      if (F.is_zero(Q[p])) continue;
      auto r = F.zero();
      for (const auto& e : A.product(a, p / d)) F.add_mul(r, e.value, rho[e.index]);
      if (F.is_zero(r)) continue;
      b.add_vector(H.antipode().column(p % d), F.mul(r, Q[p]));
    }
    b.finish_column();
  }
  auto explicit_form = b.build();
  if (!(composite == explicit_form)) throw InternalError("frak S: composite and explicit forms disagree");
  return explicit_form;
}

template <class K>
Matrix<K> frak_T_matrix(const Algebra<K>& A, const Vec<K>& v) {
  return A.left_of(v);
}

/// Antipode of the transmutation, by both formulas
///   S(S(R_1(1)) a R_1(2)) R_2  and  R_1 S(a) S(R_2) S(u^{-1}).
template <class K>
Matrix<K> transmutation_antipode(const Hopf<K>& H, const Vec<K>& R) {
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim();
  auto u = drinfeld_element(H, R);
  auto uinv = element_inverse(A, u);
  if (!uinv) throw VerificationError("Drinfel'd element is not invertible");
  auto s_uinv = H.S(*uinv);
  ColumnBuilder<K> b1(F, d), b2(F, d);
  for (std::size_t a = 0; a < d; ++a) {
    Vec<K> f1 = A.zero(), f2 = A.zero();
    const auto ea = A.basis(a);
    const auto sa = H.S(ea);
    for (std::size_t p = 0; p < R.size(); ++p) {
      if (F.is_zero(R[p])) continue;
      const std::size_t i = p / d, j = p % d;
      for (const auto& t : H.coproduct_terms(i)) {
        auto inner = A.mul(A.mul(H.S(A.basis(t.left)), ea), A.basis(t.right));
        f1 = vec_add(F, f1, vec_scale(F, A.mul(H.S(inner), A.basis(j)), F.mul(R[p], t.coeff)));
      }
      auto term = A.mul(A.mul(A.mul(A.basis(i), sa), H.S(A.basis(j))), s_uinv);
      f2 = vec_add(F, f2, vec_scale(F, term, R[p]));
    }
    b1.add_vector(to_sparse(F, f1), F.one());
    b1.finish_column();
    b2.add_vector(to_sparse(F, f2), F.one());
    b2.finish_column();
  }
  auto m1 = b1.build(), m2 = b2.build();
  if (!(m1 == m2)) throw InternalError("transmutation antipode: the two formulas disagree");
  return m1;
}

/// Everything derived from (H, R) that the modular constructions use.
template <class K>
struct RibbonData {
  Vec<K> R;
  Vec<K> Q;
  Vec<K> u, u_inv;
  Vec<K> v, v_inv;
  Vec<K> rho;  // ribbon-normalized
  typename K::value_type rho_v, rho_vinv, omega;
  IntegralConvention convention = IntegralConvention::right;
  bool sentinel = false;
  std::string v_source;    // "supplied" or "solved"
  std::string rho_source;  // "supplied" or "solved"
  std::size_t ribbon_candidates = 0;
};

/// Completes and validates ribbon data. Throws VerificationError on inputs
/// that are not factorizable ribbon, with the reason.
template <class K>
RibbonData<K> make_ribbon_data(const Hopf<K>& H, const Vec<K>& R, const std::optional<Vec<K>>& v_in = std::nullopt,
                               const std::optional<Vec<K>>& rho_in = std::nullopt) {
  const K& F = H.field();
  const auto& A = H.algebra();
  auto qt = verify_quasitriangular(H, R);
  if (!qt.ok()) throw VerificationError("R-matrix axioms fail: " + qt.summary());
  RibbonData<K> out;
  out.R = R;
  out.Q = monodromy(A, R);
  out.u = drinfeld_element(H, R);
  auto uinv = element_inverse(A, out.u);
  if (!uinv) throw VerificationError("Drinfel'd element is not invertible");
  out.u_inv = *uinv;
  if (v_in) {
    auto rep = check_ribbon_element(H, out.Q, out.u, *v_in);
    if (!rep.ok()) throw VerificationError("supplied ribbon element fails: " + rep.summary());
    out.v = *v_in;
    out.v_source = "supplied";
    out.ribbon_candidates = 1;
  } else {
    auto search = find_ribbon_elements(H, R);
    if (search.candidates.empty()) throw VerificationError("no ribbon element exists for this R-matrix");
    out.v = search.candidates.front();
    out.v_source = "solved";
    out.ribbon_candidates = search.candidates.size();
  }
  auto vinv = element_inverse(A, out.v);
  if (!vinv) throw VerificationError("ribbon element is not invertible");
  out.v_inv = *vinv;
  Vec<K> rho;
  if (rho_in) {
    auto space = integral_space(H, IntegralConvention::right);
    if (space.contains(to_sparse(F, *rho_in))) {
      out.convention = IntegralConvention::right;
    } else if (integral_space(H, IntegralConvention::mirrored).contains(to_sparse(F, *rho_in))) {
      out.convention = IntegralConvention::mirrored;
    } else {
      throw VerificationError("supplied rho is not an integral");
    }
    if (vec_is_zero(F, *rho_in)) throw VerificationError("supplied rho is zero");
    rho = *rho_in;
    out.sentinel = in_class_functions(H, rho);
    out.rho_source = "supplied";
  } else {
    auto ir = find_right_integrals(H);
    rho = ir.rho;
    out.convention = ir.convention;
    out.sentinel = ir.sentinel;
    out.rho_source = "solved";
  }
  out.rho = ribbon_normalize(F, rho, out.v);
  out.rho_v = vec_dot(F, out.rho, out.v);
  out.rho_vinv = vec_dot(F, out.rho, out.v_inv);
  const std::size_t d = H.dim();
  out.omega = F.zero();
  for (std::size_t p = 0; p < out.Q.size(); ++p)
    if (!F.is_zero(out.Q[p])) F.add_mul(out.omega, out.Q[p], F.mul(out.rho[p / d], out.rho[p % d]));
  return out;
}

/// Center-level relations and the projective representation on Z(A).
template <class K>
struct CenterRelations {
  Report report;
  Matrix<K> S, T, transmutation;  // on A
  Subspace<K> center;
  Matrix<K> S_center, T_center;  // in the center basis
  typename K::value_type s4_scalar;   // S^4 = s4_scalar id on Z(A)
  typename K::value_type sts_scalar;  // STS = sts_scalar T^-1 S T^-1
  bool linear = false;                // omega = +-1
};

/// Coordinates of the columns of m (restricted to sub) in the basis of sub.
template <class K>
Matrix<K> restrict_to(const Matrix<K>& m, const Subspace<K>& sub) {
  const K& F = m.field();
  std::vector<SparseVector<typename K::value_type>> images;
  for (const auto& b : sub.basis) images.push_back(m.apply(b));
  auto coords = quotient_representation(images, Subspace<K>::zero(F, m.rows()), sub.basis);
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (!coords[j]) throw VerificationError("map does not preserve the subspace");
    for (std::size_t i = 0; i < coords[j]->size(); ++i)
      if (!F.is_zero((*coords[j])[i])) t.push_back({index_t(i), index_t(j), (*coords[j])[i]});
  }
  return Matrix<K>::from_triplets(F, sub.dim(), sub.dim(), std::move(t));
}

template <class K>
CenterRelations<K> check_center_relations(const Hopf<K>& H, const RibbonData<K>& rd) {
  const K& F = H.field();
  const auto& A = H.algebra();
  Report rep{"center relations", {}, 0, 0, {}};
  auto S = frak_S_matrix(H, rd.Q, rd.rho);
  auto T = frak_T_matrix(A, rd.v);
  auto Tinv = frak_T_matrix(A, rd.v_inv);
  auto Sbar = transmutation_antipode(H, rd.R);
  auto lhs1 = S * T * S;
  auto rhs1 = (Tinv * S * Tinv).scaled(rd.rho_v);
  auto diff = lhs1.first_difference(rhs1);
  rep.expect(!diff, "STS = rho(v) T^-1 S T^-1", diff ? std::vector<std::size_t>{diff->first, diff->second}
                                                           : std::vector<std::size_t>{});
  auto S2 = S * S;
  auto rhs2 = (Sbar * S2).scaled(F.inv(rd.omega));  // Sbar S^2 = omega id
  rep.expect(!F.is_zero(rd.omega) && rhs2.is_identity(), "S^2 = omega Sbar^-1");
  auto ad_v = twist_eps_ad(H, regular_bimodule(A)).right_of(rd.v);
  auto sb2 = Sbar * Sbar;
  rep.expect(sb2 == ad_v, "Sbar^2 = ad(- (x) v)");
  auto Z = center_basis(A);
  auto SZ = restrict_to(S, Z), TZ = restrict_to(T, Z);
  auto SbarZ = restrict_to(Sbar, Z), SZ_plain = restrict_to(H.antipode(), Z);
  rep.expect(SbarZ == SZ_plain, "Sbar = S on Z(A)");
  auto s4 = SZ * SZ * SZ * SZ;
  auto omega2 = F.mul(rd.omega, rd.omega);
  rep.expect(s4 == Matrix<K>::scalar(F, Z.dim(), omega2), "S^4 = omega^2 on Z(A)");
  auto TZinv = restrict_to(Tinv, Z);
  rep.expect(SZ * TZ * SZ == (TZinv * SZ * TZinv).scaled(rd.rho_v), "sts = rho(v) t^-1 s t^-1 on Z(A)");
  auto minus_one = F.neg(F.one());
  bool linear = F.is_one(rd.omega) || F.eq(rd.omega, minus_one);
  bool linear_v = F.is_one(rd.rho_vinv) || F.eq(rd.rho_vinv, minus_one);
  rep.expect(linear == linear_v, "omega = +-1 iff rho(v^-1) = +-1");
  return CenterRelations<K>{std::move(rep), std::move(S), std::move(T), std::move(Sbar), std::move(Z), std::move(SZ),
                            std::move(TZ), omega2, rd.rho_v, linear};
}

}  // namespace hochmod
