#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hochmod/hopf.hpp"
#include "hochmod/ribbon.hpp"

namespace hochmod {

/// Hopf algebra together with an optional R-matrix and basis labels.
template <class K>
struct HopfData {
  Hopf<K> hopf;
  std::optional<Vec<K>> R;  // element of A (x) A, row-major
  std::vector<std::string> labels;
};

/// Validates a multiplication table and returns the identity index.
std::size_t check_group_table(const std::vector<std::vector<std::size_t>>& table);

/// Cyclic group Z/n and the symmetric group S_3 (permutations in lexicographic order).
std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n);
std::vector<std::vector<std::size_t>> symmetric_group3_table();
std::vector<std::string> symmetric_group3_labels();

/// Group algebra kG with Delta(g) = g (x) g, eps(g) = 1, S(g) = g^{-1}.
template <class K>
Hopf<K> build_group_algebra(const std::vector<std::vector<std::size_t>>& table, const K& F) {
  const std::size_t e = check_group_table(table);
  const std::size_t n = table.size();
  std::vector<SparseVector<typename K::value_type>> prod(n * n), comult(n);
  std::vector<Triplet<typename K::value_type>> s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) prod[i * n + j] = {{index_t(table[i][j]), F.one()}};
    comult[i] = {{index_t(i * n + i), F.one()}};
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == e) s.push_back({index_t(j), index_t(i), F.one()});
  }
  Vec<K> unit(n, F.zero()), counit(n, F.one());
  unit[e] = F.one();
  Algebra<K> A(F, n, std::move(prod), std::move(unit));
  return Hopf<K>(std::move(A), std::move(comult), std::move(counit),
                 Matrix<K>::from_triplets(F, n, n, std::move(s)));
}

/// Sweedler's four-dimensional Hopf algebra on {1, g, x, gx}.
template <class K>
Hopf<K> build_sweedler(const K& F) {
  if (F.characteristic() == 2) throw InvalidField("the Sweedler algebra requires characteristic different from 2");
  using V = typename K::value_type;
  const V one = F.one(), m1 = F.neg(F.one());
  enum { I = 0, G = 1, X = 2, GX = 3 };
  std::vector<SparseVector<V>> prod(16);
  auto set = [&](int a, int b, SparseVector<V> v) { prod[a * 4 + b] = std::move(v); };
  for (int b = 0; b < 4; ++b) {
    set(I, b, {{index_t(b), one}});
    set(b, I, {{index_t(b), one}});
  }
  set(G, G, {{I, one}});
  set(G, X, {{GX, one}});
  set(G, GX, {{X, one}});
  set(X, G, {{GX, m1}});
  set(X, X, {});
  set(X, GX, {});
  set(GX, G, {{X, m1}});
  set(GX, X, {});
  set(GX, GX, {});
  Vec<K> unit{one, F.zero(), F.zero(), F.zero()};
  std::vector<SparseVector<V>> comult(4);
  comult[I] = {{I * 4 + I, one}};
  comult[G] = {{G * 4 + G, one}};
  comult[X] = {{G * 4 + X, one}, {X * 4 + I, one}};
  comult[GX] = {{I * 4 + GX, one}, {GX * 4 + G, one}};
  Vec<K> counit{one, one, F.zero(), F.zero()};
  auto S = Matrix<K>::from_triplets(F, 4, 4, {{I, I, one}, {G, G, one}, {GX, X, m1}, {X, GX, one}});
  Algebra<K> A(F, 4, std::move(prod), std::move(unit));
  return Hopf<K>(std::move(A), std::move(comult), std::move(counit), std::move(S));
}

/// Drinfel'd double D(H) = H^{*cop} bowtie H on the basis e^i # e_a (index
/// i*d + a), with
///   (phi # a)(psi # b) = phi psi(S^{-1}(a_(3)) - a_(1)) # a_(2) b,
///   Delta(phi # a) = (phi_(2) # a_(1)) (x) (phi_(1) # a_(2)),
///   S(phi # a) = (eps # S(a)) (phi o S^{-1} # 1),
/// and R = sum_i (eps # e_i) (x) (e^i # 1).
template <class K>
HopfData<K> build_drinfeld_double(const Hopf<K>& H, const std::vector<std::string>& labels = {},
                                  std::size_t max_dim = 1024) {
  using V = typename K::value_type;
  const K& F = H.field();
  const std::size_t d = H.dim(), D = d * d;
  if (D > max_dim) throw ResourceError("Drinfel'd double dimension exceeds the cap", D, max_dim);
  const auto& A = H.algebra();
  const auto& Sinv = H.antipode_inverse();
  // Convolution product on H^*: e^i e^j = sum_k [coefficient of e_i (x) e_j in Delta(e_k)] e^k.
  std::vector<Vec<K>> dual_prod(d * d, Vec<K>(d, F.zero()));
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& t : H.coproduct_terms(k)) F.add_mul(dual_prod[t.left * d + t.right][k], t.coeff, F.one());
  auto delta3 = iterated_coproduct(H, 3);
  // conj[a] lists (q, c, W) with W[j][k] = [S^{-1}(e_r) e_k e_p]_j for the
  // Delta^{(3)} term c e_p (x) e_q (x) e_r of e_a.
  struct Conj {
    std::size_t q;
    V c;
    std::vector<Vec<K>> w;  // w[k] = S^{-1}(e_r) e_k e_p
  };
  std::vector<std::vector<Conj>> conj(d);
  for (std::size_t a = 0; a < d; ++a)
    for (const auto& e : delta3.column(a)) {
      std::size_t p = e.index / (d * d), q = (e.index / d) % d, r = e.index % d;
      Vec<K> sr = to_dense(F, Sinv.column_vector(r), d);
      Conj cj{q, e.value, {}};
      for (std::size_t k = 0; k < d; ++k) cj.w.push_back(A.mul(A.mul(sr, A.basis(k)), A.basis(p)));
      conj[a].push_back(std::move(cj));
    }
  std::vector<SparseVector<V>> prod(D * D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t b = 0; b < d; ++b) {
          ColumnBuilder<K> acc(F, D);
          for (const auto& cj : conj[a]) {
            // psi' = sum_k c W[j][k] e^k ; result (e^i psi') # (e_q e_b)
            Vec<K> phi(d, F.zero());
            for (std::size_t k = 0; k < d; ++k) {
              if (F.is_zero(cj.w[k][j])) continue;
              auto s = F.mul(cj.c, cj.w[k][j]);
              for (std::size_t l = 0; l < d; ++l)
                if (!F.is_zero(dual_prod[i * d + k][l])) F.add_mul(phi[l], s, dual_prod[i * d + k][l]);
            }
            for (std::size_t l = 0; l < d; ++l) {
              if (F.is_zero(phi[l])) continue;
              for (const auto& x : A.product(cj.q, b)) acc.add_mul(l * d + x.index, phi[l], x.value);
            }
          }
          prod[(i * d + a) * D + (j * d + b)] = acc.take();
        }
  Vec<K> unit(D, F.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) unit[k * d + l] = F.mul(H.counit()[k], A.unit()[l]);
  Algebra<K> DA(F, D, std::move(prod), unit);

  // Delta_{H^*}(e^i) = sum m_{st}^i e^s (x) e^t.
  std::vector<std::vector<std::tuple<std::size_t, std::size_t, V>>> dual_coprod(d);
  for (std::size_t s = 0; s < d; ++s)
    for (std::size_t t = 0; t < d; ++t)
      for (const auto& e : A.product(s, t)) dual_coprod[e.index].push_back({s, t, e.value});
  std::vector<SparseVector<V>> comult(D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) {
      ColumnBuilder<K> acc(F, D * D);
      for (const auto& [s, t, m] : dual_coprod[i])
        for (const auto& ct : H.coproduct_terms(a))
          acc.add_mul((t * d + ct.left) * D + (s * d + ct.right), m, ct.coeff);
      comult[i * d + a] = acc.take();
    }
  Vec<K> counit(D, F.zero());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) counit[i * d + a] = F.mul(A.unit()[i], H.counit()[a]);

  // S(e^i # e_a) = (eps # S(e_a)) (e^i o S^{-1} # 1).
  ColumnBuilder<K> sb(F, D);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) {
      Vec<K> left(D, F.zero()), right(D, F.zero());
      Vec<K> sa = H.S(A.basis(a));
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) left[k * d + l] = F.mul(H.counit()[k], sa[l]);
      for (std::size_t k = 0; k < d; ++k) {
        auto c = Sinv.at(i, k);  // (e^i o S^{-1})(e_k)
        if (F.is_zero(c)) continue;
        for (std::size_t l = 0; l < d; ++l) right[k * d + l] = F.mul(c, A.unit()[l]);
      }
      sb.add_vector(to_sparse(F, DA.mul(left, right)), F.one());
      sb.finish_column();
    }
  Hopf<K> DH(std::move(DA), std::move(comult), std::move(counit), sb.build());

  Vec<K> R(D * D, F.zero());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (F.is_zero(H.counit()[k])) continue;
      for (std::size_t l = 0; l < d; ++l) {
        if (F.is_zero(A.unit()[l])) continue;
        F.add_mul(R[(k * d + i) * D + (i * d + l)], H.counit()[k], A.unit()[l]);
      }
    }
  std::vector<std::string> dl;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < d; ++a) {
      std::string li = i < labels.size() ? labels[i] : std::to_string(i);
      std::string la = a < labels.size() ? labels[a] : std::to_string(a);
      dl.push_back("e^" + li + "#" + la);
    }
  return HopfData<K>{std::move(DH), std::move(R), std::move(dl)};
}

/// Names of the built-in presets.
const std::vector<std::string>& preset_names();

/// Builds a preset by name, together with an R-matrix: trivial on group
/// algebras, triangular on Sweedler, canonical on doubles.
template <class K>
HopfData<K> build_preset(const std::string& name, const K& F) {
  // Group algebras carry the trivial R = 1 (x) 1.
  auto group = [&](std::vector<std::vector<std::size_t>> table, std::vector<std::string> labels) {
    auto H = build_group_algebra(table, F);
    auto R = H.algebra().tensor_unit(2);
    return HopfData<K>{std::move(H), std::move(R), std::move(labels)};
  };
  auto zn_labels = [](std::size_t n) {
    std::vector<std::string> l{"e"};
    for (std::size_t k = 1; k < n; ++k) l.push_back(k == 1 ? "g" : "g" + std::to_string(k));
    return l;
  };
  if (name == "kZ2") return group(cyclic_group_table(2), zn_labels(2));
  if (name == "kZ3") return group(cyclic_group_table(3), zn_labels(3));
  if (name == "kS3") return group(symmetric_group3_table(), symmetric_group3_labels());
  if (name == "sweedler") {
    // R = (1 (x) 1 + 1 (x) g + g (x) 1 - g (x) g) / 2, triangular.
    auto H = build_sweedler(F);
    Vec<K> R(16, F.zero());
    auto half = F.inv(F.from_int(2));
    R[0 * 4 + 0] = half;
    R[0 * 4 + 1] = half;
    R[1 * 4 + 0] = half;
    R[1 * 4 + 1] = F.neg(half);
    return HopfData<K>{std::move(H), std::move(R), {"1", "g", "x", "gx"}};
  }
  if (name.rfind("D-", 0) == 0) {
    auto base = build_preset(name.substr(2), F);
    return build_drinfeld_double(base.hopf, base.labels);
  }
  throw ParseError("unknown preset '" + name + "'", "");
}

/// Raw presentation document: scalars kept as strings until a field is chosen.
struct RawPresentation {
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> mult;
  std::vector<std::pair<std::size_t, std::string>> unit;
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, std::string>> comult;
  std::vector<std::pair<std::size_t, std::string>> counit;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> antipode;
  std::optional<std::vector<std::tuple<std::size_t, std::size_t, std::string>>> R;
  std::optional<std::vector<std::pair<std::size_t, std::string>>> v;
  std::optional<std::vector<std::pair<std::size_t, std::string>>> rho;
  std::string source;

  friend bool operator==(const RawPresentation&, const RawPresentation&) = default;
};

/// Parses the JSON presentation format; throws ParseError with a location.
RawPresentation parse_presentation(std::string_view text, const std::string& source);
RawPresentation read_presentation(const std::string& path);
/// Canonical JSON text (stable key order and formatting).
std::string write_presentation(const RawPresentation& raw);

template <class K>
Vec<K> parse_sparse_vector(const K& F, std::size_t dim, const std::vector<std::pair<std::size_t, std::string>>& entries,
                           const std::string& what) {
  Vec<K> v(dim, F.zero());
  for (const auto& [k, s] : entries) {
    if (k >= dim) throw ParseError(what + ": index " + std::to_string(k) + " out of range", what);
    v[k] = F.add(v[k], F.parse(s));
  }
  return v;
}

/// Builds structures from a raw presentation over F.
template <class K>
HopfData<K> hopf_from_raw(const RawPresentation& raw, const K& F) {
  using V = typename K::value_type;
  const std::size_t d = raw.dim;
  auto bad = [&](const std::string& where, std::size_t idx) {
    return ParseError(where + ": index out of range in entry " + std::to_string(idx), raw.source + ":" + where);
  };
  std::vector<Triplet<V>> mt;
  for (std::size_t n = 0; n < raw.mult.size(); ++n) {
    const auto& [i, j, k, s] = raw.mult[n];
    if (i >= d || j >= d || k >= d) throw bad("mult", n);
    mt.push_back({index_t(k), index_t(i * d + j), F.parse(s)});
  }
  auto mm = Matrix<K>::from_triplets(F, d, d * d, std::move(mt));
  std::vector<SparseVector<V>> prod;
  for (std::size_t c = 0; c < d * d; ++c) prod.push_back(mm.column_vector(c));
  std::vector<Triplet<V>> ct;
  for (std::size_t n = 0; n < raw.comult.size(); ++n) {
    const auto& [i, j, k, s] = raw.comult[n];
    if (i >= d || j >= d || k >= d) throw bad("comult", n);
    ct.push_back({index_t(j * d + k), index_t(i), F.parse(s)});
  }
  auto cm = Matrix<K>::from_triplets(F, d * d, d, std::move(ct));
  std::vector<SparseVector<V>> comult;
  for (std::size_t c = 0; c < d; ++c) comult.push_back(cm.column_vector(c));
  std::vector<Triplet<V>> st;
  for (std::size_t n = 0; n < raw.antipode.size(); ++n) {
    const auto& [i, k, s] = raw.antipode[n];
    if (i >= d || k >= d) throw bad("antipode", n);
    st.push_back({index_t(k), index_t(i), F.parse(s)});
  }
  Algebra<K> A(F, d, std::move(prod), parse_sparse_vector(F, d, raw.unit, raw.source + ":unit"));
  Hopf<K> H(std::move(A), std::move(comult), parse_sparse_vector(F, d, raw.counit, raw.source + ":counit"),
            Matrix<K>::from_triplets(F, d, d, std::move(st)));
  std::optional<Vec<K>> R;
  if (raw.R) {
    Vec<K> r(d * d, F.zero());
    for (std::size_t n = 0; n < raw.R->size(); ++n) {
      const auto& [i, j, s] = (*raw.R)[n];
      if (i >= d || j >= d) throw bad("R", n);
      r[i * d + j] = F.add(r[i * d + j], F.parse(s));
    }
    R = std::move(r);
  }
  return HopfData<K>{std::move(H), std::move(R), raw.labels};
}

template <class K>
std::vector<std::pair<std::size_t, std::string>> raw_vector(const K& F, const Vec<K>& v) {
  std::vector<std::pair<std::size_t, std::string>> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!F.is_zero(v[i])) out.push_back({i, F.format(v[i])});
  return out;
}

/// Serializes structures (and optional v, rho) into a raw presentation.
template <class K>
RawPresentation raw_from_hopf(const HopfData<K>& data, const std::optional<Vec<K>>& v = std::nullopt,
                              const std::optional<Vec<K>>& rho = std::nullopt) {
  const auto& H = data.hopf;
  const K& F = H.field();
  const std::size_t d = H.dim();
  RawPresentation raw;
  raw.field = F.spec();
  raw.dim = d;
  raw.labels = data.labels;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& e : H.algebra().product(i, j)) raw.mult.emplace_back(i, j, e.index, F.format(e.value));
  raw.unit = raw_vector(F, H.algebra().unit());
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& t : H.coproduct_terms(i)) raw.comult.emplace_back(i, t.left, t.right, F.format(t.coeff));
  raw.counit = raw_vector(F, H.counit());
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& e : H.antipode().column(i)) raw.antipode.emplace_back(i, e.index, F.format(e.value));
  if (data.R) {
    raw.R.emplace();
    for (std::size_t p = 0; p < data.R->size(); ++p)
      if (!F.is_zero((*data.R)[p])) raw.R->emplace_back(p / d, p % d, F.format((*data.R)[p]));
  }
  if (v) raw.v = raw_vector(F, *v);
  if (rho) raw.rho = raw_vector(F, *rho);
  return raw;
}

/// A presentation after every structural verifier has run, with the
/// integral and ribbon element completed where possible.
template <class K>
struct LoadedPresentation {
  HopfData<K> data;
  Report report;  // algebra, Hopf and (with R) quasitriangular axioms
  std::optional<FactorizableResult> factorizable;
  std::optional<Vec<K>> rho;  // an integral, supplied or solved
  std::string rho_source;     // "supplied" or "solved"
  std::optional<RibbonData<K>> ribbon;
  std::string ribbon_error;  // why ribbon data is missing, if it is

  bool ok() const { return report.ok(); }
};

/// Builds and validates a raw presentation over F. Structural failures are
/// reported, not thrown; bad scalars or indices throw ParseError.
template <class K>
LoadedPresentation<K> load_presentation(const RawPresentation& raw, const K& F) {
  LoadedPresentation<K> out{hopf_from_raw(raw, F), Report{"presentation " + raw.source, {}, 0, 0, {}}, {}, {}, {}, {},
                            {}};
  const auto& H = out.data.hopf;
  out.report.merge(verify_hopf(H));
  if (!out.ok()) return out;
  const std::size_t d = H.dim();
  auto pinned = [&](const std::optional<std::vector<std::pair<std::size_t, std::string>>>& e, const char* what) {
    return e ? std::optional<Vec<K>>(parse_sparse_vector(F, d, *e, raw.source + ":" + what)) : std::nullopt;
  };
  auto v_in = pinned(raw.v, "v");
  auto rho_in = pinned(raw.rho, "rho");
  if (rho_in) {
    out.rho = rho_in;
    out.rho_source = "supplied";
    bool integral = integral_space(H, IntegralConvention::right).contains(to_sparse(F, *rho_in)) ||
                    integral_space(H, IntegralConvention::mirrored).contains(to_sparse(F, *rho_in));
    out.report.expect(integral && !vec_is_zero(F, *rho_in), "supplied rho is a nonzero integral");
  } else {
    out.rho = find_right_integrals(H).rho;
    out.rho_source = "solved";
  }
  if (!out.data.R) {
    out.ribbon_error = "no R-matrix";
    return out;
  }
  auto qt = verify_quasitriangular(H, *out.data.R);
  out.report.merge(qt);
  if (!qt.ok()) return out;
  out.factorizable = verify_factorizable(H, *out.data.R);
  if (!out.factorizable->factorizable) {
    out.ribbon_error = "R is not factorizable (rank " + std::to_string(out.factorizable->rank) + " of " +
                       std::to_string(d) + ")";
    return out;
  }
  try {
    out.ribbon = make_ribbon_data(H, *out.data.R, v_in, rho_in);
  } catch (const VerificationError& e) {
    out.ribbon_error = e.what();
    if (v_in) out.report.fail("supplied ribbon element", {}, e.what());
  }
  return out;
}

}  // namespace hochmod
