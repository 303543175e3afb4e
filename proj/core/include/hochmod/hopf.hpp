#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hochmod/linalg.hpp"
#include "hochmod/report.hpp"

namespace hochmod {

template <class K>
using Vec = std::vector<typename K::value_type>;

template <class K>
std::string format_vector(const K& field, const Vec<K>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += field.format(v[i]);
  }
  return out + "]";
}

template <class K>
bool vec_eq(const K& field, const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!field.eq(a[i], b[i])) return false;
  return true;
}

template <class K>
bool vec_is_zero(const K& field, const Vec<K>& a) {
  for (const auto& x : a)
    if (!field.is_zero(x)) return false;
  return true;
}

template <class K>
Vec<K> vec_add(const K& field, Vec<K> a, const Vec<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = field.add(a[i], b[i]);
  return a;
}

template <class K>
Vec<K> vec_sub(const K& field, Vec<K> a, const Vec<K>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = field.sub(a[i], b[i]);
  return a;
}

template <class K>
Vec<K> vec_scale(const K& field, Vec<K> a, const typename K::value_type& s) {
  for (auto& x : a) x = field.mul(x, s);
  return a;
}

template <class K>
typename K::value_type vec_dot(const K& field, const Vec<K>& a, const Vec<K>& b) {
  auto s = field.zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!field.is_zero(a[i]) && !field.is_zero(b[i])) field.add_mul(s, a[i], b[i]);
  return s;
}

/// Finite-dimensional associative algebra given by structure constants.
template <class K>
class Algebra {
 public:
  using V = typename K::value_type;

  /// products[i*d + j] = e_i e_j as a sparse vector.
  Algebra(K field, std::size_t dim, std::vector<SparseVector<V>> products, Vec<K> unit)
      : field_(std::move(field)), dim_(dim), products_(std::move(products)), unit_(std::move(unit)) {
    if (products_.size() != dim_ * dim_) throw DimensionMismatch("multiplication table has wrong size");
    if (unit_.size() != dim_) throw DimensionMismatch("unit has wrong size");
    for (std::size_t i = 0; i < dim_; ++i) {
      ColumnBuilder<K> lb(field_, dim_), rb(field_, dim_);
      for (std::size_t j = 0; j < dim_; ++j) {
        lb.add_vector(product(i, j), field_.one());
        lb.finish_column();
        rb.add_vector(product(j, i), field_.one());
        rb.finish_column();
      }
      left_.push_back(lb.build());
      right_.push_back(rb.build());
    }
  }

  const K& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  std::span<const Entry<V>> product(std::size_t i, std::size_t j) const { return products_[i * dim_ + j]; }
  const std::vector<SparseVector<V>>& products() const { return products_; }

  Vec<K> zero() const { return Vec<K>(dim_, field_.zero()); }
  Vec<K> basis(std::size_t i) const {
    Vec<K> v = zero();
    v[i] = field_.one();
    return v;
  }
  const Vec<K>& unit() const { return unit_; }

  /// Left and right multiplication by a basis element.
  const Matrix<K>& left(std::size_t i) const { return left_[i]; }
  const Matrix<K>& right(std::size_t i) const { return right_[i]; }

  Matrix<K> left_of(const Vec<K>& a) const { return combination(left_, a); }
  Matrix<K> right_of(const Vec<K>& a) const { return combination(right_, a); }

  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const {
    Vec<K> out = zero();
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(b[j])) continue;
        auto ab = field_.mul(a[i], b[j]);
        for (const auto& e : product(i, j)) field_.add_mul(out[e.index], ab, e.value);
      }
    }
    return out;
  }

  /// Product in A^{(x)k}, coordinates row-major.
  Vec<K> tensor_mul(std::size_t k, const Vec<K>& x, const Vec<K>& y) const {
    const std::size_t total = checked_power(dim_, k);
    Vec<K> out(total, field_.zero());
    std::vector<std::size_t> stride(k);
    for (std::size_t s = 0; s < k; ++s) stride[s] = checked_power(dim_, k - 1 - s);
    for (std::size_t p = 0; p < total; ++p) {
      if (field_.is_zero(x[p])) continue;
      auto xp = tensor_digits(p, dim_, k);
      for (std::size_t q = 0; q < total; ++q) {
        if (field_.is_zero(y[q])) continue;
        auto yq = tensor_digits(q, dim_, k);
        // Expand the slotwise products.
        std::vector<std::pair<std::size_t, V>> acc{{0, field_.mul(x[p], y[q])}};
        for (std::size_t s = 0; s < k; ++s) {
          std::vector<std::pair<std::size_t, V>> next;
          for (const auto& [idx, c] : acc)
            for (const auto& e : product(xp[s], yq[s]))
              next.push_back({idx + e.index * stride[s], field_.mul(c, e.value)});
          acc = std::move(next);
        }
        for (const auto& [idx, c] : acc) out[idx] = field_.add(out[idx], c);
      }
    }
    return out;
  }

  Vec<K> tensor_unit(std::size_t k) const {
    Vec<K> out(checked_power(dim_, k), field_.zero());
    for (std::size_t p = 0; p < out.size(); ++p) {
      auto digits = tensor_digits(p, dim_, k);
      V c = field_.one();
      for (std::size_t s : digits) c = field_.mul(c, unit_[s]);
      out[p] = c;
    }
    return out;
  }

  std::vector<std::string> labels;

 private:
  Matrix<K> combination(const std::vector<Matrix<K>>& mats, const Vec<K>& a) const {
    Matrix<K> out(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      if (!field_.is_zero(a[i])) out = out + mats[i].scaled(a[i]);
    return out;
  }

  K field_;
  std::size_t dim_;
  std::vector<SparseVector<V>> products_;
  Vec<K> unit_;
  std::vector<Matrix<K>> left_;
  std::vector<Matrix<K>> right_;
};

/// A-bimodule structure on K^m: one m x m matrix per basis element of A for
/// each side.
template <class K>
struct Bimodule {
  K field;
  std::size_t dim = 0;
  std::vector<Matrix<K>> left;
  std::vector<Matrix<K>> right;
  std::string name;

  Matrix<K> left_of(const Vec<K>& a) const { return combine(left, a); }
  Matrix<K> right_of(const Vec<K>& a) const { return combine(right, a); }

 private:
  Matrix<K> combine(const std::vector<Matrix<K>>& mats, const Vec<K>& a) const {
    Matrix<K> out(field, dim, dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!field.is_zero(a[i])) out = out + mats[i].scaled(a[i]);
    return out;
  }
};

/// Term c * e_left (x) e_right of a coproduct.
template <class V>
struct CoTerm {
  index_t left;
  index_t right;
  V coeff;
};

/// Hopf algebra given by structure constants.
template <class K>
class Hopf {
 public:
  using V = typename K::value_type;

  /// coproducts[i] = Delta(e_i) in K^{d^2}; antipode is the d x d matrix of S.
  Hopf(Algebra<K> algebra, std::vector<SparseVector<V>> coproducts, Vec<K> counit, Matrix<K> antipode)
      : alg_(std::move(algebra)),
        coproducts_(std::move(coproducts)),
        counit_(std::move(counit)),
        antipode_(std::move(antipode)) {
    const std::size_t d = alg_.dim();
    if (coproducts_.size() != d || counit_.size() != d || antipode_.rows() != d || antipode_.cols() != d)
      throw DimensionMismatch("Hopf structure maps have inconsistent sizes");
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<CoTerm<V>> t;
      for (const auto& e : coproducts_[i]) {
        if (e.index >= d * d) throw DimensionMismatch("coproduct index out of range");
        t.push_back({index_t(e.index / d), index_t(e.index % d), e.value});
      }
      terms_.push_back(std::move(t));
    }
    try {
      antipode_inverse_ = inverse(antipode_);
    } catch (const VerificationError&) {
      antipode_inverse_.reset();
    }
  }

  const K& field() const { return alg_.field(); }
  std::size_t dim() const { return alg_.dim(); }
  const Algebra<K>& algebra() const { return alg_; }

  const std::vector<SparseVector<V>>& coproducts() const { return coproducts_; }
  const std::vector<CoTerm<V>>& coproduct_terms(std::size_t i) const { return terms_[i]; }
  const Vec<K>& counit() const { return counit_; }
  const Matrix<K>& antipode() const { return antipode_; }
  bool antipode_invertible() const { return antipode_inverse_.has_value(); }
  const Matrix<K>& antipode_inverse() const {
    if (!antipode_inverse_) throw VerificationError("antipode is not invertible");
    return *antipode_inverse_;
  }

  /// S^k for any integer k.
  Matrix<K> antipode_power(int k) const {
    Matrix<K> base = k >= 0 ? antipode_ : antipode_inverse();
    Matrix<K> out = Matrix<K>::identity(field(), dim());
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) out = base * out;
    return out;
  }

  Vec<K> S(const Vec<K>& a) const { return antipode_.apply_dense(a); }
  Vec<K> S_inv(const Vec<K>& a) const { return antipode_inverse().apply_dense(a); }
  V eps(const Vec<K>& a) const { return vec_dot(field(), counit_, a); }
  Vec<K> mul(const Vec<K>& a, const Vec<K>& b) const { return alg_.mul(a, b); }

  Vec<K> delta(const Vec<K>& a) const {
    const K& F = field();
    Vec<K> out(dim() * dim(), F.zero());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (F.is_zero(a[i])) continue;
      for (const auto& e : coproducts_[i]) F.add_mul(out[e.index], a[i], e.value);
    }
    return out;
  }

  /// Matrix of Delta: K^d -> K^{d^2}.
  Matrix<K> coproduct_matrix() const { return Matrix<K>::from_columns(field(), dim() * dim(), coproducts_); }

 private:
  Algebra<K> alg_;
  std::vector<SparseVector<V>> coproducts_;
  std::vector<std::vector<CoTerm<V>>> terms_;
  Vec<K> counit_;
  Matrix<K> antipode_;
  std::optional<Matrix<K>> antipode_inverse_;
};

/// Applies a d x d map to slot `slot` of a k-fold tensor.
template <class K>
Vec<K> apply_to_slot(const Matrix<K>& f, const Vec<K>& x, std::size_t d, std::size_t k, std::size_t slot) {
  const K& F = f.field();
  Vec<K> out(x.size(), F.zero());
  const std::size_t stride = checked_power(d, k - 1 - slot);
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (F.is_zero(x[p])) continue;
    std::size_t digit = (p / stride) % d;
    std::size_t base = p - digit * stride;
    for (const auto& e : f.column(digit)) F.add_mul(out[base + e.index * stride], e.value, x[p]);
  }
  return out;
}

/// Swaps the two legs of an element of A (x) A.
template <class K>
Vec<K> flip(const Vec<K>& x, std::size_t d) {
  Vec<K> out(x.size());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out[j * d + i] = x[i * d + j];
  return out;
}

/// Iterated coproduct K^d -> K^{d^k}: epsilon for k = 0, identity for k = 1,
/// and (Delta (x) id^{k-2}) o Delta^{(k-1)} for k >= 2.
template <class K>
Matrix<K> iterated_coproduct(const Hopf<K>& H, std::size_t k) {
  const K& F = H.field();
  const std::size_t d = H.dim();
  if (k == 0) {
    std::vector<SparseVector<typename K::value_type>> cols;
    for (std::size_t i = 0; i < d; ++i) {
      cols.push_back({});
      if (!F.is_zero(H.counit()[i])) cols.back().push_back({0, H.counit()[i]});
    }
    return Matrix<K>::from_columns(F, 1, std::move(cols));
  }
  Matrix<K> cur = Matrix<K>::identity(F, d);
  for (std::size_t level = 2; level <= k; ++level) {
    // (Delta (x) id^{level-2}) applied to every column of cur.
    const std::size_t rest = checked_power(d, level - 2);
    ColumnBuilder<K> b(F, checked_power(d, level));
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& e : cur.column(j)) {
        std::size_t head = e.index / rest, tail = e.index % rest;
        for (const auto& t : H.coproducts()[head])
          b.add_mul(t.index * rest + tail, t.value, e.value);
      }
      b.finish_column();
    }
    cur = b.build();
  }
  return cur;
}

namespace detail {

template <class K>
std::string fmt(const K& F, const Vec<K>& v) {
  return format_vector(F, v);
}

template <class K>
std::string fmt_matrix_column(const Matrix<K>& m, std::size_t j) {
  return format_vector(m.field(), to_dense(m.field(), m.column_vector(j), m.rows()));
}

}  // namespace detail

/// Associativity and unit laws on all basis triples.
template <class K>
Report verify_algebra(const Algebra<K>& A) {
  Report r{"algebra", {}, 0, 0, {}};
  const K& F = A.field();
  const std::size_t d = A.dim();
  for (std::size_t i = 0; i < d; ++i) {
    auto ei = A.basis(i);
    auto l = A.mul(A.unit(), ei), rr = A.mul(ei, A.unit());
    r.expect(vec_eq(F, l, ei), "left unit", {i}, detail::fmt(F, l), detail::fmt(F, ei));
    r.expect(vec_eq(F, rr, ei), "right unit", {i}, detail::fmt(F, rr), detail::fmt(F, ei));
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto ij = to_dense(F, SparseVector<typename K::value_type>(A.product(i, j).begin(), A.product(i, j).end()), d);
      for (std::size_t k = 0; k < d; ++k) {
        auto jk = to_dense(F, SparseVector<typename K::value_type>(A.product(j, k).begin(), A.product(j, k).end()), d);
        auto lhs = A.mul(ij, A.basis(k));
        auto rhs = A.mul(A.basis(i), jk);
        r.expect(vec_eq(F, lhs, rhs), "associativity", {i, j, k}, detail::fmt(F, lhs), detail::fmt(F, rhs));
      }
    }
  return r;
}

/// Unital, associative, commuting left and right actions.
template <class K>
Report verify_bimodule(const Algebra<K>& A, const Bimodule<K>& M) {
  Report r{"bimodule " + M.name};
  const K& F = A.field();
  const std::size_t d = A.dim();
  if (M.left.size() != d || M.right.size() != d) {
    r.fail("action count", {M.left.size(), M.right.size()});
    return r;
  }
  auto id = Matrix<K>::identity(F, M.dim);
  r.expect(M.left_of(A.unit()) == id, "left unit");
  r.expect(M.right_of(A.unit()) == id, "right unit");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec<K> ij = to_dense(F, SparseVector<typename K::value_type>(A.product(i, j).begin(), A.product(i, j).end()), d);
      r.expect(M.left[i] * M.left[j] == M.left_of(ij), "left associativity", {i, j});
      r.expect(M.right[j] * M.right[i] == M.right_of(ij), "right associativity", {i, j});
      r.expect(M.left[i] * M.right[j] == M.right[j] * M.left[i], "actions commute", {i, j});
    }
  return r;
}

/// Coassociativity, counit, bialgebra compatibility, antipode axioms and
/// invertibility of S.
template <class K>
Report verify_hopf(const Hopf<K>& H) {
  Report r{"hopf", {}, 0, 0, {}};
  r.merge(verify_algebra(H.algebra()));
  const K& F = H.field();
  const std::size_t d = H.dim();
  const auto& A = H.algebra();
  // (Delta (x) id) Delta versus (id (x) Delta) Delta.
  auto left3 = iterated_coproduct(H, 3);
  ColumnBuilder<K> rb(F, d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (const auto& t : H.coproduct_terms(i))
      for (const auto& e : H.coproducts()[t.right]) rb.add_mul(t.left * d * d + e.index, t.coeff, e.value);
    rb.finish_column();
  }
  auto right3 = rb.build();
  for (std::size_t i = 0; i < d; ++i) {
    auto a = left3.column_vector(i), b = right3.column_vector(i);
    bool same = a.size() == b.size();
    for (std::size_t k = 0; same && k < a.size(); ++k)
      same = a[k].index == b[k].index && F.eq(a[k].value, b[k].value);
    r.expect(same, "coassociativity", {i}, detail::fmt_matrix_column(left3, i), detail::fmt_matrix_column(right3, i));
  }
  for (std::size_t i = 0; i < d; ++i) {
    Vec<K> l(d, F.zero()), rr(d, F.zero());
    for (const auto& t : H.coproduct_terms(i)) {
      F.add_mul(l[t.right], H.counit()[t.left], t.coeff);
      F.add_mul(rr[t.left], H.counit()[t.right], t.coeff);
    }
    r.expect(vec_eq(F, l, A.basis(i)), "left counit", {i}, detail::fmt(F, l), detail::fmt(F, A.basis(i)));
    r.expect(vec_eq(F, rr, A.basis(i)), "right counit", {i}, detail::fmt(F, rr), detail::fmt(F, A.basis(i)));
  }
  // Delta and epsilon are algebra maps.
  Vec<K> u2 = A.tensor_unit(2);
  auto du = H.delta(A.unit());
  r.expect(vec_eq(F, du, u2), "coproduct of unit", {}, detail::fmt(F, du), detail::fmt(F, u2));
  r.expect(F.is_one(H.eps(A.unit())), "counit of unit");
  for (std::size_t i = 0; i < d; ++i) {
    auto di = to_dense(F, H.coproducts()[i], d * d);
    for (std::size_t j = 0; j < d; ++j) {
      auto dj = to_dense(F, H.coproducts()[j], d * d);
      auto ij = A.mul(A.basis(i), A.basis(j));
      auto lhs = H.delta(ij);
      auto rhs = A.tensor_mul(2, di, dj);
      r.expect(vec_eq(F, lhs, rhs), "coproduct multiplicative", {i, j}, detail::fmt(F, lhs), detail::fmt(F, rhs));
      auto el = H.eps(ij), er = F.mul(H.counit()[i], H.counit()[j]);
      r.expect(F.eq(el, er), "counit multiplicative", {i, j}, F.format(el), F.format(er));
    }
  }
  // S(a_(1)) a_(2) = eps(a) 1 = a_(1) S(a_(2)).
  for (std::size_t i = 0; i < d; ++i) {
    Vec<K> l(d, F.zero()), rr(d, F.zero());
    for (const auto& t : H.coproduct_terms(i)) {
      auto sl = H.S(A.basis(t.left)), sr = H.S(A.basis(t.right));
      l = vec_add(F, l, vec_scale(F, A.mul(sl, A.basis(t.right)), t.coeff));
      rr = vec_add(F, rr, vec_scale(F, A.mul(A.basis(t.left), sr), t.coeff));
    }
    auto expect = vec_scale(F, A.unit(), H.counit()[i]);
    r.expect(vec_eq(F, l, expect), "antipode left", {i}, detail::fmt(F, l), detail::fmt(F, expect));
    r.expect(vec_eq(F, rr, expect), "antipode right", {i}, detail::fmt(F, rr), detail::fmt(F, expect));
  }
  r.expect(H.antipode_invertible(), "antipode invertible");
  return r;
}

/// Basis of the center {z : a z = z a}.
template <class K>
Subspace<K> center_basis(const Algebra<K>& A) {
  const std::size_t d = A.dim();
  const K& F = A.field();
  // Stack L_i - R_i for all i: rows (i, k), columns z.
  std::vector<Triplet<typename K::value_type>> t;
  for (std::size_t i = 0; i < d; ++i) {
    auto c = A.left(i) - A.right(i);
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& e : c.column(j)) t.push_back({index_t(i * d + e.index), index_t(j), e.value});
  }
  return kernel_basis(Matrix<K>::from_triplets(F, d * d, d, std::move(t)));
}

template <class K>
Bimodule<K> regular_bimodule(const Algebra<K>& A) {
  Bimodule<K> M{A.field(), A.dim(), {}, {}, "A"};
  for (std::size_t i = 0; i < A.dim(); ++i) {
    M.left.push_back(A.left(i));
    M.right.push_back(A.right(i));
  }
  return M;
}

/// (a.phi.b)(m) = phi(b.m.a) in dual coordinates.
template <class K>
Bimodule<K> dual_bimodule(const Bimodule<K>& M) {
  Bimodule<K> D{M.field, M.dim, {}, {}, "(" + M.name + ")^*"};
  for (std::size_t i = 0; i < M.left.size(); ++i) {
    D.left.push_back(M.right[i].transpose());
    D.right.push_back(M.left[i].transpose());
  }
  return D;
}

/// A_{S^{-2}}: left multiplication, right action b.a = b S^{-2}(a).
template <class K>
Bimodule<K> twist_s2inv(const Hopf<K>& H) {
  const auto& A = H.algebra();
  auto s2inv = H.antipode_power(-2);
  Bimodule<K> M{H.field(), H.dim(), {}, {}, "A_{S^-2}"};
  for (std::size_t i = 0; i < H.dim(); ++i) {
    M.left.push_back(A.left(i));
    M.right.push_back(A.right_of(to_dense(H.field(), s2inv.column_vector(i), H.dim())));
  }
  return M;
}

/// ^eps(M_ad): trivial left action, right action m.a = S(a_(1)).m.a_(2).
template <class K>
Bimodule<K> twist_eps_ad(const Hopf<K>& H, const Bimodule<K>& M) {
  const K& F = H.field();
  Bimodule<K> out{F, M.dim, {}, {}, "^eps(" + M.name + ")_ad"};
  std::vector<Matrix<K>> s_left;
  for (std::size_t j = 0; j < H.dim(); ++j) s_left.push_back(M.left_of(H.antipode().apply_dense(H.algebra().basis(j))));
  for (std::size_t i = 0; i < H.dim(); ++i) {
    out.left.push_back(Matrix<K>::scalar(F, M.dim, H.counit()[i]));
    Matrix<K> acc(F, M.dim, M.dim);
    for (const auto& t : H.coproduct_terms(i)) acc = acc + (s_left[t.left] * M.right[t.right]).scaled(t.coeff);
    out.right.push_back(std::move(acc));
  }
  return out;
}

/// ^eps(M_cad): trivial left action, right action m.a = S^{-1}(a_(2)).m.a_(1).
template <class K>
Bimodule<K> twist_eps_cad(const Hopf<K>& H, const Bimodule<K>& M) {
  const K& F = H.field();
  Bimodule<K> out{F, M.dim, {}, {}, "^eps(" + M.name + ")_cad"};
  std::vector<Matrix<K>> sinv_left;
  for (std::size_t j = 0; j < H.dim(); ++j)
    sinv_left.push_back(M.left_of(H.antipode_inverse().apply_dense(H.algebra().basis(j))));
  for (std::size_t i = 0; i < H.dim(); ++i) {
    out.left.push_back(Matrix<K>::scalar(F, M.dim, H.counit()[i]));
    Matrix<K> acc(F, M.dim, M.dim);
    for (const auto& t : H.coproduct_terms(i)) acc = acc + (sinv_left[t.right] * M.right[t.left]).scaled(t.coeff);
    out.right.push_back(std::move(acc));
  }
  return out;
}

/// Matrix of phi -> coad(phi (x) e_a) on A^*, where
/// coad(phi, a)(b) = phi(a_(2) b S^{-1}(a_(1))).
template <class K>
Matrix<K> coadjoint_action_matrix(const Hopf<K>& H, std::size_t a) {
  const K& F = H.field();
  const auto& A = H.algebra();
  Matrix<K> n(F, H.dim(), H.dim());
  for (const auto& t : H.coproduct_terms(a)) {
    auto sinv = H.antipode_inverse().apply_dense(A.basis(t.left));
    n = n + (A.left(t.right) * A.right_of(sinv)).scaled(t.coeff);
  }
  return n.transpose();
}

/// ^eps(A^*)_coad as a bimodule.
template <class K>
Bimodule<K> coadjoint_bimodule(const Hopf<K>& H) {
  Bimodule<K> out{H.field(), H.dim(), {}, {}, "^eps(A^*)_coad"};
  for (std::size_t i = 0; i < H.dim(); ++i) {
    out.left.push_back(Matrix<K>::scalar(H.field(), H.dim(), H.counit()[i]));
    out.right.push_back(coadjoint_action_matrix(H, i));
  }
  return out;
}

/// ad(m (x) a) = S(a_(1)) m a_(2) for m, a in A.
template <class K>
Vec<K> adjoint(const Hopf<K>& H, const Vec<K>& m, const Vec<K>& a) {
  const K& F = H.field();
  const auto& A = H.algebra();
  Vec<K> out = A.zero();
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (F.is_zero(a[i])) continue;
    for (const auto& t : H.coproduct_terms(i)) {
      auto x = A.mul(A.mul(H.S(A.basis(t.left)), m), A.basis(t.right));
      out = vec_add(F, out, vec_scale(F, x, F.mul(a[i], t.coeff)));
    }
  }
  return out;
}

}  // namespace hochmod
