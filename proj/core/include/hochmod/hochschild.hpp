#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hochmod/hopf.hpp"
#include "hochmod/linalg.hpp"

namespace hochmod {

// A cochain f in C^n(A, M) is an m x d^n matrix; it is vectorized with the
// module index fastest: coordinate (t, k) of tuple index t and module basis
// index k sits at t*m + k. Every family matrix uses this order.

/// Entry-count cap for cochain matrices: HOCHMOD_MEMORY_CAP, default 10^6.
std::size_t default_memory_cap();

template <class K>
struct CohomologySpace {
  using V = typename K::value_type;

  std::size_t degree = 0;
  std::vector<SparseVector<V>> representatives;
  Subspace<K> image;  // image of d^{n-1} inside C^n

  std::size_t dim() const { return representatives.size(); }

  /// Coordinates of a cocycle in the representative basis; nullopt if it is
  /// not in span(representatives) + image.
  std::optional<std::vector<V>> coordinates(const SparseVector<V>& cocycle) const {
    return quotient_representation(std::vector<SparseVector<V>>{cocycle}, image, representatives).front();
  }
};

/// The Hochschild cochain complex C(A, M).
template <class K>
class CochainComplex {
 public:
  using V = typename K::value_type;

  CochainComplex(Algebra<K> A, Bimodule<K> M, std::size_t cap = default_memory_cap())
      : A_(std::move(A)), M_(std::move(M)), cap_(cap), preimages_(A_.dim()) {
    if (M_.left.size() != A_.dim() || M_.right.size() != A_.dim())
      throw DimensionMismatch("bimodule does not match the algebra");
    const std::size_t d = A_.dim();
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (const auto& e : A_.product(x, y)) preimages_[e.index].push_back({index_t(x), index_t(y), e.value});
  }

  const Algebra<K>& algebra() const { return A_; }
  const Bimodule<K>& module() const { return M_; }
  const K& field() const { return A_.field(); }
  std::size_t memory_cap() const { return cap_; }

  /// dim C^n = m d^n (0 for n < 0).
  std::size_t dim(long n) const { return n < 0 ? 0 : M_.dim * checked_power(A_.dim(), std::size_t(n)); }

  void require(long n, const std::string& what) const {
    const std::size_t need = dim(n);
    if (need > cap_) throw ResourceError(what + ": C^" + std::to_string(n) + " is too large", need, cap_);
  }

  /// Adds scale * d^n(f) to out (C^n -> C^{n+1}); `only` restricts to one coface.
  void scatter_differential(long n, const SparseVector<V>& f, ColumnBuilder<K>& out, const V& scale,
                            std::optional<std::size_t> only = std::nullopt) const {
    if (n < 0) return;
    const K& F = field();
    const std::size_t d = A_.dim(), m = M_.dim, nn = std::size_t(n);
    const V one = F.one(), minus = F.neg(one);
    std::vector<std::size_t> pw(nn + 2, 1);
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = pw[k - 1] * d;
    for (const auto& e : f) {
      const std::size_t t = e.index / m, k = e.index % m;
      const V val = F.mul(e.value, scale);
      // i = 0: a_0 . f(a_1, ..., a_n)
      if (!only || *only == 0)
        for (std::size_t a = 0; a < d; ++a)
          for (const auto& c : M_.left[a].column(k)) out.add_mul((a * pw[nn] + t) * m + c.index, c.value, val);
      // 0 < i <= n: f(..., a_{i-1} a_i, ...), merging slot p = i-1 of t
      for (std::size_t i = 1; i <= nn; ++i) {
        if (only && *only != i) continue;
        const std::size_t p = i - 1, low_w = pw[nn - 1 - p];
        const std::size_t high = t / (low_w * d), digit = (t / low_w) % d, low = t % low_w;
        const V sv = (i % 2) ? F.mul(minus, val) : val;
        for (const auto& [x, y, c] : preimages_[digit])
          out.add_mul(((high * d * d + x * d + y) * low_w + low) * m + k, c, sv);
      }
      // i = n+1: f(a_0, ..., a_{n-1}) . a_n
      if (!only || *only == nn + 1) {
        const V sv = ((nn + 1) % 2) ? F.mul(minus, val) : val;
        for (std::size_t a = 0; a < d; ++a)
          for (const auto& c : M_.right[a].column(k)) out.add_mul((t * d + a) * m + c.index, c.value, sv);
      }
    }
  }

  SparseVector<V> apply_differential(long n, const SparseVector<V>& f) const {
    ColumnBuilder<K> b(field(), dim(n + 1));
    scatter_differential(n, f, b, field().one());
    return b.take();
  }

  /// Coface map d^{n-1}_i : C^{n-1} -> C^n, 0 <= i <= n.
  Matrix<K> coface_matrix(long n, std::size_t i) const {
    if (n < 1 || i > std::size_t(n)) throw DimensionMismatch("coface index out of range");
    require(n, "coface matrix");
    ColumnBuilder<K> b(field(), dim(n));
    const V sign = (i % 2) ? field().neg(field().one()) : field().one();
    for (std::size_t j = 0; j < dim(n - 1); ++j) {
      scatter_differential(n - 1, {{index_t(j), field().one()}}, b, sign, i);
      b.finish_column();
    }
    return b.build();
  }

  /// d^n : C^n -> C^{n+1}; the zero map for n < 0.
  Matrix<K> differential_matrix(long n) const {
    require(n + 1, "differential matrix");
    ColumnBuilder<K> b(field(), dim(n + 1));
    for (std::size_t j = 0; j < dim(n); ++j) {
      scatter_differential(n, {{index_t(j), field().one()}}, b, field().one());
      b.finish_column();
    }
    return b.build();
  }

  /// h^n : C^n -> C^{n-1}, h^n(f)(a_1..a_{n-1}) = sum_j (-1)^j f(a_1..a_j, c, a_{j+1}..).
  /// Zero for n <= 0. The element c must be central.
  Matrix<K> homotopy_matrix(const Vec<K>& c, long n) const {
    check_central(c);
    require(n, "homotopy matrix");
    const K& F = field();
    ColumnBuilder<K> b(F, dim(n - 1));
    const std::size_t d = A_.dim(), m = M_.dim;
    for (std::size_t j = 0; j < dim(n); ++j) {
      if (n >= 1) {
        const std::size_t nn = std::size_t(n), t = j / m, k = j % m;
        auto digits = tensor_digits(t, d, nn);
        for (std::size_t s = 0; s < nn; ++s) {
          if (F.is_zero(c[digits[s]])) continue;
          std::size_t rest = 0;
          for (std::size_t q = 0; q < nn; ++q)
            if (q != s) rest = rest * d + digits[q];
          b.add(rest * m + k, (s % 2) ? F.neg(c[digits[s]]) : c[digits[s]]);
        }
      }
      b.finish_column();
    }
    return b.build();
  }

  /// (g)_* : f -> g o f for an m' x m module map g, as a matrix C^n(M) -> C^n(M').
  Matrix<K> pushforward(const Matrix<K>& g, long n) const {
    if (g.cols() != M_.dim) throw DimensionMismatch("pushforward: module map has wrong source dimension");
    return kron(Matrix<K>::identity(field(), checked_power(A_.dim(), std::size_t(std::max(n, 0L)))), g);
  }

  /// (l_c)_* and (r_c)_*.
  Matrix<K> left_mult(const Vec<K>& c, long n) const { return pushforward(M_.left_of(c), n); }
  Matrix<K> right_mult(const Vec<K>& c, long n) const { return pushforward(M_.right_of(c), n); }

  /// HH^n: kernel of d^n modulo the image of d^{n-1}. Representatives are
  /// the kernel basis vectors that extend an echelon basis of the image.
  CohomologySpace<K> cohomology(long n) const {
    if (n < 0) throw DimensionMismatch("negative cohomological degree");
    require(n + 1, "cohomology");
    auto Z = kernel_basis(differential_matrix(n));
    auto B = n == 0 ? Subspace<K>::zero(field(), dim(0)) : Subspace<K>::column_span(differential_matrix(n - 1));
    auto e = B.echelon();
    CohomologySpace<K> out{std::size_t(n), {}, std::move(B)};
    for (const auto& z : Z.basis)
      if (e.insert(z)) out.representatives.push_back(z);
    return out;
  }

  /// First basis cochain of C^n with d^{n+1} d^n nonzero, streaming one
  /// column at a time so neither differential is materialized.
  std::optional<std::size_t> first_nonzero_dd(long n) const {
    ColumnBuilder<K> mid(field(), dim(n + 1)), out(field(), dim(n + 2));
    for (std::size_t j = 0; j < dim(n); ++j) {
      scatter_differential(n, {{index_t(j), field().one()}}, mid, field().one());
      scatter_differential(n + 1, mid.take(), out, field().one());
      if (!out.take().empty()) return j;
    }
    return std::nullopt;
  }

 private:
  void check_central(const Vec<K>& c) const {
    for (std::size_t i = 0; i < A_.dim(); ++i)
      if (A_.mul(A_.basis(i), c) != A_.mul(c, A_.basis(i)))
        throw VerificationError("homotopy: element is not central");
  }

  struct Pre {
    index_t x, y;
    V c;
  };

  Algebra<K> A_;
  Bimodule<K> M_;
  std::size_t cap_;
  std::vector<std::vector<Pre>> preimages_;
};

/// Matrix of the map induced on cohomology by a cochain map F^n, in the
/// representative bases. Throws VerificationError if an image is not a
/// cocycle class of the target.
template <class K>
Matrix<K> induced_map(const Matrix<K>& Fn, const CohomologySpace<K>& source, const CohomologySpace<K>& target) {
  using V = typename K::value_type;
  std::vector<SparseVector<V>> images;
  for (const auto& r : source.representatives) images.push_back(Fn.apply(r));
  auto coords = quotient_representation(images, target.image, target.representatives);
  const K& F = Fn.field();
  std::vector<Triplet<V>> t;
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (!coords[j]) throw VerificationError("induced map: image of representative " + std::to_string(j) +
                                            " is not a cocycle class");
    for (std::size_t i = 0; i < coords[j]->size(); ++i)
      if (!F.is_zero((*coords[j])[i])) t.push_back({index_t(i), index_t(j), (*coords[j])[i]});
  }
  return Matrix<K>::from_triplets(F, target.dim(), source.dim(), std::move(t));
}

}  // namespace hochmod
