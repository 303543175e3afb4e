#pragma once

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hochmod/hochschild.hpp"
#include "hochmod/ribbon.hpp"

namespace hochmod {

/// Per-degree matrices F^0..F^N of a cochain map C(A, source) -> C(A, target).
template <class K>
struct CochainMapFamily {
  std::string name;
  std::string path;  // construction paths that were compared
  Bimodule<K> source, target;
  std::vector<Matrix<K>> maps;
  std::vector<Matrix<K>> inverses;  // only when an explicit inverse formula exists

  std::size_t top() const { return maps.size() - 1; }

  const Matrix<K>& operator[](std::size_t n) const {
    if (n >= maps.size()) throw DimensionMismatch(name + ": degree " + std::to_string(n) + " not built");
    return maps[n];
  }

  const Matrix<K>& inverse(std::size_t n) const {
    if (n >= inverses.size()) throw DimensionMismatch(name + ": inverse in degree " + std::to_string(n) + " not built");
    return inverses[n];
  }
};

/// Lifts an operator L on (one tensor slot) x (module), of size
/// (d m_out) x (d m_in) with column b*m_in + k and row a*m_out + k', to
/// C^n(A, M) -> C^n(A, M') acting on slot `slot` (0-based).
template <class K>
Matrix<K> lift_slot_operator(const Matrix<K>& L, std::size_t d, std::size_t m_in, std::size_t m_out, std::size_t n,
                             std::size_t slot) {
  using V = typename K::value_type;
  if (slot >= n || L.rows() != d * m_out || L.cols() != d * m_in)
    throw DimensionMismatch("lift_slot_operator: bad operator or slot");
  const std::size_t low_w = checked_power(d, n - 1 - slot), high_n = checked_power(d, slot);
  const std::size_t cols = high_n * d * low_w * m_in;
  std::vector<SparseVector<V>> columns(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t k = j % m_in, t = j / m_in;
    const std::size_t low = t % low_w, b = (t / low_w) % d, high = t / (low_w * d);
    auto& col = columns[j];
    for (const auto& e : L.column(b * m_in + k)) {
      const std::size_t a = e.index / m_out, k2 = e.index % m_out;
      col.push_back({index_t(((high * d + a) * low_w + low) * m_out + k2), e.value});
    }
  }
  return Matrix<K>::from_columns(L.field(), high_n * d * low_w * m_out, std::move(columns));
}

enum class OmegaVariant { ad, cad };

/// One slot of Omega (variant ad) or Omega' (variant cad), or of the
/// explicit inverses:
///   ad:  f -> a_(1).f(a_(2)),  inverse  S(a_(1)).f(a_(2))
///   cad: f -> a_(2).f(a_(1)),  inverse  S^-1(a_(2)).f(a_(1))
template <class K>
Matrix<K> omega_slot_operator(const Hopf<K>& H, const Bimodule<K>& M, OmegaVariant variant, bool inverse) {
  using V = typename K::value_type;
  const K& F = H.field();
  const std::size_t d = H.dim(), m = M.dim;
  std::vector<Matrix<K>> act;
  for (std::size_t i = 0; i < d; ++i) {
    if (!inverse) act.push_back(M.left[i]);
    else if (variant == OmegaVariant::ad) act.push_back(M.left_of(H.S(H.algebra().basis(i))));
    else act.push_back(M.left_of(H.S_inv(H.algebra().basis(i))));
  }
  std::vector<Triplet<V>> t;
  for (std::size_t a = 0; a < d; ++a)
    for (const auto& term : H.coproduct_terms(a)) {
      const std::size_t b = variant == OmegaVariant::ad ? term.right : term.left;
      const auto& g = act[variant == OmegaVariant::ad ? term.left : term.right];
      for (std::size_t k = 0; k < m; ++k)
        for (const auto& e : g.column(k))
          t.push_back({index_t(a * m + e.index), index_t(b * m + k), F.mul(term.coeff, e.value)});
    }
  return Matrix<K>::from_triplets(F, d * m, d * m, std::move(t));
}

enum class LegMap { id, S, S_inv };

/// A product of one coproduct leg over all slots: a_{1(leg)} ... a_{n(leg)}
/// (or its reverse), each factor passed through `map`.
struct LegFactor {
  std::size_t leg = 0;
  LegMap map = LegMap::id;
  bool reversed = false;
};

/// Shape of a closed formula
///   F(f)(a_1..a_n) = sum P(X, Y, f(a_{1(b)}, ..., a_{n(b)}))
/// over the `legs`-fold coproducts of the a_j, with X and Y leg products and
/// P bilinear in (X, Y) and linear in the value.
struct LegPattern {
  std::size_t legs = 2;
  std::size_t b_leg = 1;
  std::optional<LegFactor> x, y;
};

/// Assembles a closed formula as a matrix C^n(A, M) -> C^n(A, M').
/// P[(x*yd + y)*m_in + k] is P(e_x, e_y, e_k) in K^{m_out}, where xd (yd)
/// is d when the factor is present and 1 otherwise.
template <class K>
Matrix<K> explicit_cochain_map(const Hopf<K>& H, std::size_t n, const LegPattern& pat, std::size_t m_in,
                               std::size_t m_out, const std::vector<SparseVector<typename K::value_type>>& P) {
  using V = typename K::value_type;
  const K& F = H.field();
  const auto& A = H.algebra();
  const std::size_t d = H.dim(), L = pat.legs;
  const std::size_t xd = pat.x ? d : 1, yd = pat.y ? d : 1;
  if (P.size() != xd * yd * m_in) throw DimensionMismatch("explicit_cochain_map: coefficient table has wrong size");

  struct Term {
    V c;
    std::vector<std::size_t> legs;
  };
  std::vector<std::vector<Term>> terms(d);
  auto co = iterated_coproduct(H, L);
  for (std::size_t a = 0; a < d; ++a)
    for (const auto& e : co.column(a)) terms[a].push_back({e.value, tensor_digits(e.index, d, L)});

  // Step matrices: X -> X.phi(e_i) (ordered) or phi(e_i).X (reversed).
  auto steps = [&](const std::optional<LegFactor>& f) {
    std::vector<Matrix<K>> out;
    if (!f) return out;
    for (std::size_t i = 0; i < d; ++i) {
      auto e = A.basis(i);
      if (f->map == LegMap::S) e = H.S(e);
      else if (f->map == LegMap::S_inv) e = H.S_inv(e);
      out.push_back(f->reversed ? A.left_of(e) : A.right_of(e));
    }
    return out;
  };
  const auto xs = steps(pat.x), ys = steps(pat.y);
  const Vec<K> start_x = pat.x ? A.unit() : Vec<K>{F.one()};
  const Vec<K> start_y = pat.y ? A.unit() : Vec<K>{F.one()};

  std::vector<Triplet<V>> out;
  std::map<std::size_t, std::vector<V>> acc;  // b -> sum c X (x) Y
  std::vector<std::size_t> digits;
  std::function<void(std::size_t, const V&, const Vec<K>&, const Vec<K>&, std::size_t)> walk =
      [&](std::size_t s, const V& c, const Vec<K>& X, const Vec<K>& Y, std::size_t b) {
        if (s == n) {
          auto& T = acc.try_emplace(b, xd * yd, F.zero()).first->second;
          for (std::size_t i = 0; i < xd; ++i) {
            if (F.is_zero(X[i])) continue;
            const V cx = F.mul(c, X[i]);
            for (std::size_t j = 0; j < yd; ++j)
              if (!F.is_zero(Y[j])) F.add_mul(T[i * yd + j], cx, Y[j]);
          }
          return;
        }
        for (const auto& term : terms[digits[s]]) {
          Vec<K> X2 = pat.x ? xs[term.legs[pat.x->leg]].apply_dense(X) : X;
          Vec<K> Y2 = pat.y ? ys[term.legs[pat.y->leg]].apply_dense(Y) : Y;
          walk(s + 1, F.mul(c, term.c), X2, Y2, b * d + term.legs[pat.b_leg]);
        }
      };

  const std::size_t tuples = checked_power(d, n);
  std::vector<V> buf(m_out, F.zero());
  for (std::size_t t = 0; t < tuples; ++t) {
    digits = tensor_digits(t, d, n);
    acc.clear();
    walk(0, F.one(), start_x, start_y, 0);
    for (const auto& [b, T] : acc)
      for (std::size_t k = 0; k < m_in; ++k) {
        std::fill(buf.begin(), buf.end(), F.zero());
        for (std::size_t p = 0; p < T.size(); ++p) {
          if (F.is_zero(T[p])) continue;
          for (const auto& e : P[p * m_in + k]) F.add_mul(buf[e.index], T[p], e.value);
        }
        for (std::size_t k2 = 0; k2 < m_out; ++k2)
          if (!F.is_zero(buf[k2])) out.push_back({index_t(t * m_out + k2), index_t(b * m_in + k), buf[k2]});
      }
  }
  return Matrix<K>::from_triplets(F, tuples * m_out, tuples * m_in, std::move(out));
}

namespace detail {

template <class K>
std::vector<SparseVector<typename K::value_type>> columns_of(const std::vector<Matrix<K>>& blocks) {
  std::vector<SparseVector<typename K::value_type>> out;
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < b.cols(); ++k) out.push_back(b.column_vector(k));
  return out;
}

template <class K>
void require_agreement(const Matrix<K>& a, const Matrix<K>& b, const std::string& what, std::size_t n) {
  if (auto diff = a.first_difference(b))
    throw InternalError(what + " disagree in degree " + std::to_string(n) + " (first differing column " +
                        std::to_string(diff->second) + ", row " + std::to_string(diff->first) + ")");
}

}  // namespace detail

/// Closed-formula tables for Omega and Omega' (and their inverses).
template <class K>
std::pair<LegPattern, std::vector<SparseVector<typename K::value_type>>> omega_formula(const Hopf<K>&,
                                                                                         const Bimodule<K>& M,
                                                                                         OmegaVariant variant,
                                                                                         bool inverse) {
  LegPattern p;
  p.legs = 2;
  if (variant == OmegaVariant::ad) {
    p.b_leg = 1;
    p.x = LegFactor{0, inverse ? LegMap::S : LegMap::id, inverse};
  } else {
    p.b_leg = 0;
    p.x = LegFactor{1, inverse ? LegMap::S_inv : LegMap::id, inverse};
  }
  return {p, detail::columns_of(M.left)};
}

/// Caches cochain complexes and their differentials by bimodule name.
template <class K>
class DifferentialCache {
 public:
  DifferentialCache(Algebra<K> A, std::size_t cap) : A_(std::move(A)), cap_(cap) {}

  const CochainComplex<K>& complex(const Bimodule<K>& M) {
    auto it = complexes_.find(M.name);
    if (it == complexes_.end())
      it = complexes_.emplace(M.name, std::make_unique<CochainComplex<K>>(A_, M, cap_)).first;
    return *it->second;
  }

  const Matrix<K>& differential(const Bimodule<K>& M, long n) {
    auto key = std::make_pair(M.name, n);
    auto it = diffs_.find(key);
    if (it == diffs_.end()) it = diffs_.emplace(key, complex(M).differential_matrix(n)).first;
    return it->second;
  }

  std::size_t cap() const { return cap_; }

 private:
  Algebra<K> A_;
  std::size_t cap_;
  std::map<std::string, std::unique_ptr<CochainComplex<K>>> complexes_;
  std::map<std::pair<std::string, long>, Matrix<K>> diffs_;
};

/// F^{n+1} D^n = D^n F^n for n = 0..top-1.
template <class K>
Report verify_cochain_map(const CochainMapFamily<K>& f, DifferentialCache<K>& cache) {
  Report rep{"cochain map " + f.name, {}, 0, 0, {}};
  for (std::size_t n = 0; n < f.top(); ++n) {
    auto lhs = f[n + 1] * cache.differential(f.source, long(n));
    auto rhs = cache.differential(f.target, long(n)) * f[n];
    auto diff = lhs.first_difference(rhs);
    rep.expect(!diff, "F D = D F in degree " + std::to_string(n),
               diff ? std::vector<std::size_t>{n, diff->second} : std::vector<std::size_t>{});
  }
  return rep;
}

/// F^n G^n = id and G^n F^n = id for every degree with a stored inverse.
template <class K>
Report verify_inverses(const CochainMapFamily<K>& f) {
  Report rep{"inverse " + f.name, {}, 0, 0, {}};
  for (std::size_t n = 0; n < f.inverses.size(); ++n) {
    rep.expect((f[n] * f.inverse(n)).is_identity(), "F G = id in degree " + std::to_string(n), {n});
    rep.expect((f.inverse(n) * f[n]).is_identity(), "G F = id in degree " + std::to_string(n), {n});
  }
  return rep;
}

/// The cochain maps of the modular action on C(A, A), built lazily for
/// degrees 0..top and cached. Without a ribbon element only the v-free
/// families (Omega, iota, Phi-bar, S, frak S) are available.
template <class K>
class ModularCochains {
 public:
  using V = typename K::value_type;

  ModularCochains(Hopf<K> H, Vec<K> R, Vec<K> rho, std::optional<Vec<K>> v, std::size_t top,
                  std::size_t cap = default_memory_cap())
      : H_(std::move(H)), R_(std::move(R)), rho_(std::move(rho)), v_(std::move(v)), top_(top),
        cache_(H_.algebra(), cap),
        regular_(regular_bimodule(H_.algebra())),
        ad_(twist_eps_ad(H_, regular_)),
        cad_(twist_eps_cad(H_, regular_)),
        dual_(dual_bimodule(twist_s2inv(H_))),
        dual_ad_(twist_eps_ad(H_, dual_)) {
    const K& F = H_.field();
    const auto& A = H_.algebra();
    const std::size_t d = H_.dim();
    if (R_.size() != d * d || rho_.size() != d) throw DimensionMismatch("modular data has wrong sizes");
    Q_ = monodromy(A, R_);
    omega_ = F.zero();
    for (std::size_t p = 0; p < Q_.size(); ++p)
      if (!F.is_zero(Q_[p])) F.add_mul(omega_, Q_[p], F.mul(rho_[p / d], rho_[p % d]));
    if (v_) {
      auto vinv = element_inverse(A, *v_);
      if (!vinv) throw VerificationError("ribbon element is not invertible");
      v_inv_ = *vinv;
      rho_v_ = vec_dot(F, rho_, *v_);
    }
    for (std::size_t n = 0; n <= top_; ++n) cache_.complex(regular_).require(long(n), "modular cochain maps");
  }

  ModularCochains(const Hopf<K>& H, const RibbonData<K>& data, std::size_t top, std::size_t cap = default_memory_cap())
      : ModularCochains(H, data.R, data.rho, data.v, top, cap) {}

  const Hopf<K>& hopf() const { return H_; }
  const K& field() const { return H_.field(); }
  std::size_t top() const { return top_; }
  const Vec<K>& Q() const { return Q_; }
  const Vec<K>& rho() const { return rho_; }
  bool has_ribbon() const { return v_.has_value(); }
  const Vec<K>& v() const { return need_v(), *v_; }
  const Vec<K>& v_inv() const { return need_v(), v_inv_; }
  /// (rho (x) rho)(Q).
  const V& omega() const { return omega_; }
  const V& rho_v() const { return need_v(), rho_v_; }

  const Bimodule<K>& regular() const { return regular_; }
  const Bimodule<K>& eps_ad() const { return ad_; }
  const Bimodule<K>& eps_cad() const { return cad_; }
  /// (A_{S^-2})^*.
  const Bimodule<K>& s2inv_dual() const { return dual_; }
  /// ^eps((A_{S^-2})^*)_ad.
  const Bimodule<K>& s2inv_dual_ad() const { return dual_ad_; }

  DifferentialCache<K>& cache() { return cache_; }
  const CochainComplex<K>& complex(const Bimodule<K>& M) { return cache_.complex(M); }
  const Matrix<K>& differential(const Bimodule<K>& M, long n) { return cache_.differential(M, n); }

  /// Omega: C(A, ^eps M_ad) -> C(A, M) for M = A.
  const CochainMapFamily<K>& omega_ad() { return lazy(omega_ad_, [&] { return omega(regular_, OmegaVariant::ad); }); }
  /// Omega': C(A, ^eps A_cad) -> C(A, A).
  const CochainMapFamily<K>& omega_cad() {
    return lazy(omega_cad_, [&] { return omega(regular_, OmegaVariant::cad); });
  }
  /// Omega'': C(A, ^eps((A_{S^-2})^*)_ad) -> C(A, (A_{S^-2})^*).
  const CochainMapFamily<K>& omega_dual() {
    return lazy(omega_dual_, [&] { return omega(dual_, OmegaVariant::ad); });
  }

  /// Omega (variant ad) or Omega' (variant cad) for an arbitrary bimodule M.
  /// The slot-local factorization and the closed formula are compared in
  /// every degree, for the maps and for the explicit inverses.
  CochainMapFamily<K> omega(const Bimodule<K>& M, OmegaVariant variant) {
    const K& F = field();
    const std::size_t d = H_.dim(), m = M.dim;
    if (M.left.size() != d || M.right.size() != d) throw DimensionMismatch("omega: bimodule does not match the algebra");
    const bool ad = variant == OmegaVariant::ad;
    CochainMapFamily<K> f{std::string(ad ? "Omega" : "Omega'") + " on " + M.name, "slot factorization = closed formula",
                          ad ? twist_eps_ad(H_, M) : twist_eps_cad(H_, M), M, {}, {}};
    auto fwd = omega_slot_operator(H_, M, variant, false), inv = omega_slot_operator(H_, M, variant, true);
    auto fwd_formula = omega_formula(H_, M, variant, false), inv_formula = omega_formula(H_, M, variant, true);
    for (std::size_t n = 0; n <= top_; ++n) {
      if (n == 0) {
        f.maps.push_back(Matrix<K>::identity(F, m));
        f.inverses.push_back(Matrix<K>::identity(F, m));
        continue;
      }
      // Omega^n = T_1 ... T_n,  (Omega^n)^{-1} = U_n ... U_1.
      auto a = lift_slot_operator(fwd, d, m, m, n, n - 1);
      for (std::size_t s = n - 1; s-- > 0;) a = lift_slot_operator(fwd, d, m, m, n, s) * a;
      auto b = lift_slot_operator(inv, d, m, m, n, 0);
      for (std::size_t s = 1; s < n; ++s) b = lift_slot_operator(inv, d, m, m, n, s) * b;
      detail::require_agreement(a, explicit_cochain_map(H_, n, fwd_formula.first, m, m, fwd_formula.second),
                                f.name + ": factorization and closed formula", n);
      detail::require_agreement(b, explicit_cochain_map(H_, n, inv_formula.first, m, m, inv_formula.second),
                                f.name + " inverse: factorization and closed formula", n);
      f.maps.push_back(std::move(a));
      f.inverses.push_back(std::move(b));
    }
    return f;
  }

  /// iota^n = iota_*, iota(a) = rho(a -): C(A, A) -> C(A, (A_{S^-2})^*).
  const CochainMapFamily<K>& radford() {
    return lazy(radford_, [&] {
      auto iota = radford_matrix(H_.algebra(), rho_);
      return pushforward_family("iota", regular_, dual_, iota);
    });
  }

  /// iota_* between the twisted complexes C(A, ^eps A_ad) -> C(A, ^eps((A_{S^-2})^*)_ad).
  const CochainMapFamily<K>& radford_twisted() {
    return lazy(radford_twisted_, [&] {
      auto iota = radford_matrix(H_.algebra(), rho_);
      return pushforward_family("iota (twisted)", ad_, dual_ad_, iota);
    });
  }

  /// Phi-bar^n: C(A, (A_{S^-2})^*) -> C(A, A), composite Omega' Phi-bar_* Omega''^{-1}
  /// compared with the closed formula
  ///   f(a_(2))(Q_1 S^-1(a_{n(1)})..S^-1(a_{1(1)})) a_{1(3)}..a_{n(3)} Q_2.
  const CochainMapFamily<K>& drinfeld() {
    return lazy(drinfeld_, [&] {
      const K& F = field();
      const auto& A = H_.algebra();
      const std::size_t d = H_.dim();
      auto phi = drinfeld_map_matrix(A, Q_);
      const auto& oc = omega_cad();
      const auto& od = omega_dual();
      // P(x, y, k) = sum_ij Q_ij (e_i e_y)_k e_x e_j
      std::vector<SparseVector<V>> P(d * d * d);
      for (std::size_t y = 0; y < d; ++y) {
        std::vector<Vec<K>> qk(d, A.zero());  // qk[k] = sum_ij Q_ij (e_i e_y)_k e_j
        for (std::size_t p = 0; p < Q_.size(); ++p) {
          if (F.is_zero(Q_[p])) continue;
          const std::size_t i = p / d, j = p % d;
          for (const auto& e : A.product(i, y)) F.add_mul(qk[e.index][j], Q_[p], e.value);
        }
        for (std::size_t x = 0; x < d; ++x)
          for (std::size_t k = 0; k < d; ++k)
            P[(x * d + y) * d + k] = to_sparse(F, A.left(x).apply_dense(qk[k]));
      }
      LegPattern pat{3, 1, LegFactor{2, LegMap::id, false}, LegFactor{0, LegMap::S_inv, true}};
      CochainMapFamily<K> f{"Phi-bar", "composite = closed formula", dual_, regular_, {}, {}};
      for (std::size_t n = 0; n <= top_; ++n) {
        auto composite = oc[n] * cache_.complex(dual_ad_).pushforward(phi, long(n)) * od.inverse(n);
        detail::require_agreement(composite, explicit_cochain_map(H_, n, pat, d, d, P), "Phi-bar: composite and closed formula", n);
        f.maps.push_back(std::move(composite));
      }
      return f;
    });
  }

  /// S^n: C(A, A) -> C(A, A), composite Omega S_* Omega'^{-1} compared with
  /// a_{1(1)}..a_{n(1)} S(f(a_(2))) a_{1(3)}..a_{n(3)}.
  const CochainMapFamily<K>& antipode() {
    return lazy(antipode_, [&] {
      const K& F = field();
      const auto& A = H_.algebra();
      const std::size_t d = H_.dim();
      const auto& oa = omega_ad();
      const auto& oc = omega_cad();
      std::vector<SparseVector<V>> P(d * d * d);
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
          auto blk = A.left(x) * A.right(y) * H_.antipode();
          for (std::size_t k = 0; k < d; ++k) P[(x * d + y) * d + k] = blk.column_vector(k);
        }
      (void)F;
      LegPattern pat{3, 1, LegFactor{0, LegMap::id, false}, LegFactor{2, LegMap::id, false}};
      CochainMapFamily<K> f{"S", "composite = closed formula", regular_, regular_, {}, {}};
      for (std::size_t n = 0; n <= top_; ++n) {
        auto composite = oa[n] * cache_.complex(cad_).pushforward(H_.antipode(), long(n)) * oc.inverse(n);
        detail::require_agreement(composite, explicit_cochain_map(H_, n, pat, d, d, P), "S: composite and closed formula", n);
        f.maps.push_back(std::move(composite));
      }
      return f;
    });
  }

  /// frak S^n = S^n Phi-bar^n iota^n, compared with the closed formula
  ///   rho(S(a_{n(2)})..S(a_{1(2)}) f(a_(3)) Q_1) a_{1(1)}..a_{n(1)} S(Q_2)
  /// and with the conjugate Omega frak S_* Omega^{-1}.
  const CochainMapFamily<K>& frak_S() {
    return lazy(frak_S_, [&] {
      const K& F = field();
      const auto& A = H_.algebra();
      const std::size_t d = H_.dim();
      auto fs = frak_S_matrix(H_, Q_, rho_);
      const auto& oa = omega_ad();
      const auto& st = antipode();
      const auto& dr = drinfeld();
      const auto& io = radford();
      // P(x, y, k) = e_x W(e_y e_k), W(z) = rho(z Q_1) S(Q_2) is frak S on A.
      std::vector<SparseVector<V>> P(d * d * d);
      for (std::size_t x = 0; x < d; ++x)
        for (std::size_t y = 0; y < d; ++y) {
          auto blk = A.left(x) * fs * A.left(y);
          for (std::size_t k = 0; k < d; ++k) P[(x * d + y) * d + k] = blk.column_vector(k);
        }
      (void)F;
      LegPattern pat{3, 2, LegFactor{0, LegMap::id, false}, LegFactor{1, LegMap::S, true}};
      CochainMapFamily<K> f{"frak S", "composite = closed formula = Omega conjugate", regular_, regular_, {}, {}};
      for (std::size_t n = 0; n <= top_; ++n) {
        auto composite = st[n] * dr[n] * io[n];
        detail::require_agreement(composite, explicit_cochain_map(H_, n, pat, d, d, P),
                                  "frak S: composite and closed formula", n);
        auto conj = oa[n] * cache_.complex(ad_).pushforward(fs, long(n)) * oa.inverse(n);
        detail::require_agreement(composite, conj, "frak S: composite and Omega conjugate", n);
        f.maps.push_back(std::move(composite));
      }
      return f;
    });
  }

  /// frak T^n(f) = v f, with inverse multiplication by v^{-1}.
  const CochainMapFamily<K>& frak_T() {
    return lazy(frak_T_, [&] {
      need_v();
      const auto& A = H_.algebra();
      auto f = pushforward_family("frak T", regular_, regular_, A.left_of(*v_));
      auto inv = pushforward_family("frak T inverse", regular_, regular_, A.left_of(v_inv_));
      f.inverses = std::move(inv.maps);
      return f;
    });
  }

 private:
  void need_v() const {
    if (!v_) throw VerificationError("no ribbon element: this construction needs v");
  }

  CochainMapFamily<K> pushforward_family(std::string name, const Bimodule<K>& src, const Bimodule<K>& tgt,
                                         const Matrix<K>& g) {
    CochainMapFamily<K> f{std::move(name), "pushforward", src, tgt, {}, {}};
    for (std::size_t n = 0; n <= top_; ++n) f.maps.push_back(cache_.complex(src).pushforward(g, long(n)));
    return f;
  }

  template <class Build>
  const CochainMapFamily<K>& lazy(std::optional<CochainMapFamily<K>>& slot, Build&& build) {
    if (!slot) slot = build();
    return *slot;
  }

  Hopf<K> H_;
  Vec<K> R_, Q_, rho_;
  std::optional<Vec<K>> v_;
  Vec<K> v_inv_;
  V omega_{}, rho_v_{};
  std::size_t top_;
  DifferentialCache<K> cache_;
  Bimodule<K> regular_, ad_, cad_, dual_, dual_ad_;
  std::optional<CochainMapFamily<K>> omega_ad_, omega_cad_, omega_dual_, radford_, radford_twisted_, drinfeld_,
      antipode_, frak_S_, frak_T_;
};

/// frak S T S = rho(v) T^{-1} S T^{-1} on C^n(A, A), n = 0..N.
template <class K>
Report verify_sts_cochain(ModularCochains<K>& mc, std::size_t N) {
  Report rep{"frak S frak T frak S", {}, 0, 0, {}};
  const auto& S = mc.frak_S();
  const auto& T = mc.frak_T();
  for (std::size_t n = 0; n <= N; ++n) {
    auto lhs = S[n] * T[n] * S[n];
    auto rhs = (T.inverse(n) * S[n] * T.inverse(n)).scaled(mc.rho_v());
    auto diff = lhs.first_difference(rhs);
    rep.expect(!diff, "STS = rho(v) T^-1 S T^-1 in degree " + std::to_string(n),
               diff ? std::vector<std::size_t>{n, diff->second} : std::vector<std::size_t>{});
  }
  rep.notes.push_back("verified through degree " + std::to_string(N));
  return rep;
}

template <class K>
struct S4Witness {
  std::vector<Matrix<K>> K_maps;  // K^n : C^n -> C^{n-1}, n = 0..N+1
  Report report;
};

/// K^n = -omega^2 Omega^{n-1} h^n_{v^-1} (Omega^n)^{-1} with h the central
/// homotopy on C(A, ^eps A_ad); checks (frak S^n)^4 - omega^2 = D K^n + K^{n+1} D
/// for n = 0..N. Needs the families through degree N+1.
template <class K>
S4Witness<K> s4_homotopy_witness(ModularCochains<K>& mc, std::size_t N) {
  const K& F = mc.field();
  if (N + 1 > mc.top()) throw DimensionMismatch("s4 witness: families must be built through degree N+1");
  const auto& S = mc.frak_S();
  const auto& O = mc.omega_ad();
  const auto& Cad = mc.complex(mc.eps_ad());
  const auto omega2 = F.mul(mc.omega(), mc.omega());
  const auto scale = F.neg(omega2);
  S4Witness<K> out;
  out.report = Report{"frak S^4 homotopy witness", {}, 0, 0, {}};
  for (std::size_t n = 0; n <= N + 1; ++n) {
    auto h = Cad.homotopy_matrix(mc.v_inv(), long(n));
    if (n == 0) out.K_maps.push_back(h);
    else out.K_maps.push_back((O[n - 1] * h * O.inverse(n)).scaled(scale));
  }
  const auto& reg = mc.regular();
  for (std::size_t n = 0; n <= N; ++n) {
    auto s2 = S[n] * S[n];
    auto lhs = s2 * s2 - Matrix<K>::scalar(F, S[n].rows(), omega2);
    auto rhs = mc.differential(reg, long(n) - 1) * out.K_maps[n] + out.K_maps[n + 1] * mc.differential(reg, long(n));
    auto diff = lhs.first_difference(rhs);
    out.report.expect(!diff, "S^4 - omega^2 = DK + KD in degree " + std::to_string(n),
                      diff ? std::vector<std::size_t>{n, diff->second} : std::vector<std::size_t>{});
  }
  return out;
}

/// The projective SL(2, Z) representation on HH^n(A, A).
template <class K>
struct ModularRep {
  using V = typename K::value_type;
  std::size_t degree = 0;
  CohomologySpace<K> space;
  Matrix<K> S, T, S_inv, T_inv;
  V sigma_sts{};  // STS = sigma_sts T^-1 S T^-1
  V sigma_s4{};   // S^4 = sigma_s4 id
  bool linear = false;
  Report report;

  std::size_t dim() const { return space.dim(); }
};

template <class K>
ModularRep<K> modular_rep(ModularCochains<K>& mc, std::size_t n) {
  const K& F = mc.field();
  if (n > mc.top()) throw DimensionMismatch("modular_rep: degree above the built families");
  auto hh = mc.complex(mc.regular()).cohomology(long(n));
  const auto& Sf = mc.frak_S();
  const auto& Tf = mc.frak_T();
  auto S = induced_map(Sf[n], hh, hh);
  auto T = induced_map(Tf[n], hh, hh);
  auto T_inv = induced_map(Tf.inverse(n), hh, hh);
  const std::size_t k = hh.dim();
  Report rep{"modular representation on HH^" + std::to_string(n), {}, 0, 0, {}};
  const auto omega2 = F.mul(mc.omega(), mc.omega());
  auto s2 = S * S;
  rep.expect(s2 * s2 == Matrix<K>::scalar(F, k, omega2), "S^4 = omega^2 id");
  rep.expect(S * T * S == (T_inv * S * T_inv).scaled(mc.rho_v()), "STS = rho(v) T^-1 S T^-1");
  rep.expect((T * T_inv).is_identity(), "T T^-1 = id");
  Matrix<K> S_inv(F, k, k);
  if (!F.is_zero(omega2)) S_inv = (s2 * S).scaled(F.inv(omega2));
  rep.expect((S * S_inv).is_identity(), "S invertible");
  const auto minus_one = F.neg(F.one());
  const bool linear = F.is_one(mc.omega()) || F.eq(mc.omega(), minus_one);
  return ModularRep<K>{n, std::move(hh), std::move(S), std::move(T), std::move(S_inv), std::move(T_inv),
                       mc.rho_v(), omega2, linear, std::move(rep)};
}

enum class Sl2Generator { s, t, s_inv, t_inv };

/// Row-major (a, b, c, d).
using Sl2Matrix = std::array<long long, 4>;

std::string to_string(Sl2Generator g);

/// s = (0 -1; 1 0), t = (1 1; 0 1) and their inverses.
Sl2Matrix generator_matrix(Sl2Generator g);
Sl2Matrix sl2_multiply(const Sl2Matrix& x, const Sl2Matrix& y);

/// Word g_1 ... g_k whose product equals M, by the Euclidean algorithm on
/// the first column. Throws DimensionMismatch unless det M = 1.
std::vector<Sl2Generator> sl2z_word(const Sl2Matrix& M);

/// Product of the generator matrices of a word.
Sl2Matrix sl2z_evaluate(const std::vector<Sl2Generator>& word);

template <class K>
struct ActionResult {
  std::vector<typename K::value_type> coordinates;
  std::vector<Sl2Generator> word;
  std::string note;
};

/// Acts by M on a class given in the representative basis of rep.space.
template <class K>
ActionResult<K> act(const Sl2Matrix& M, std::vector<typename K::value_type> cls, const ModularRep<K>& rep) {
  const K& F = rep.S.field();
  if (cls.size() != rep.dim()) throw DimensionMismatch("act: class has the wrong number of coordinates");
  ActionResult<K> out;
  out.word = sl2z_word(M);
  for (std::size_t i = out.word.size(); i-- > 0;) {
    const Matrix<K>* g = nullptr;
    switch (out.word[i]) {
      case Sl2Generator::s: g = &rep.S; break;
      case Sl2Generator::t: g = &rep.T; break;
      case Sl2Generator::s_inv: g = &rep.S_inv; break;
      case Sl2Generator::t_inv: g = &rep.T_inv; break;
    }
    cls = g->apply_dense(cls);
  }
  out.coordinates = std::move(cls);
  out.note = rep.linear ? "linear action (omega = +-1)"
                        : "projective: defined up to a product of powers of " + F.format(rep.sigma_sts) + " and " +
                              F.format(rep.sigma_s4);
  return out;
}

}  // namespace hochmod
