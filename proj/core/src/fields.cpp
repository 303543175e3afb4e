#include "hochmod/fields.hpp"

#include <algorithm>
#include <cctype>

namespace hochmod {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Integer (arbitrary size, either sign) reduced mod p.
std::uint32_t reduce_decimal(std::string_view digits, std::uint32_t p, std::string_view whole) {
  bool negative = false;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
    negative = digits[0] == '-';
    digits.remove_prefix(1);
  }
  if (digits.empty()) throw ParseError("invalid field element '" + std::string(whole) + "'", "");
  std::uint64_t r = 0;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw ParseError("invalid field element '" + std::string(whole) + "'", "");
    r = (r * 10 + std::uint64_t(c - '0')) % p;
  }
  if (negative && r != 0) r = p - r;
  return static_cast<std::uint32_t>(r);
}

using Poly = std::vector<Rational>;

void strip(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace

Rationals::Rationals(const FieldSpec& spec) {
  if (spec.kind != FieldKind::rationals) throw InvalidField("expected the rational field");
}

Rational Rationals::parse(std::string_view text) const { return Rational::parse(trim(text)); }

PrimeField::PrimeField(std::uint64_t p) : p_(0) {
  FieldSpec::prime(p).validate();
  p_ = static_cast<std::uint32_t>(p);
}

PrimeField::PrimeField(const FieldSpec& spec) : PrimeField(spec.parameter) {
  if (spec.kind != FieldKind::prime) throw InvalidField("expected a prime field");
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw DivisionByZero();
  // Extended Euclid over signed 64-bit.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<value_type>(t);
}

PrimeField::value_type PrimeField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) return reduce_decimal(s, p_, text);
  value_type num = reduce_decimal(trim(s.substr(0, slash)), p_, text);
  value_type den = reduce_decimal(trim(s.substr(slash + 1)), p_, text);
  return div(num, den);
}

std::vector<long long> cyclotomic_polynomial(std::uint64_t n) {
  if (n == 0) throw InvalidField("cyclotomic order must be positive");
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact polynomial division.
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<long long> div = cyclotomic_polynomial(d);
    std::size_t dd = div.size() - 1;
    std::vector<long long> quot(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
      long long c = num[k];  // divisor is monic
      quot[k - dd] = c;
      for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * div[j];
    }
    num = std::move(quot);
  }
  return num;
}

CyclotomicField::CyclotomicField(std::uint64_t n) {
  FieldSpec::cyclotomic(n).validate();
  auto data = std::make_shared<Data>();
  data->order = n;
  for (long long c : cyclotomic_polynomial(n)) data->phi.emplace_back(c);
  data->degree = data->phi.size() - 1;
  data_ = std::move(data);
}

CyclotomicField::CyclotomicField(const FieldSpec& spec) : CyclotomicField(spec.parameter) {
  if (spec.kind != FieldKind::cyclotomic) throw InvalidField("expected a cyclotomic field");
}

CyclotomicElement CyclotomicField::from_int(long long v) const { return from_rational(Rational(v)); }

CyclotomicElement CyclotomicField::from_rational(const Rational& r) const {
  value_type out = zero();
  out.coeffs[0] = r;
  return out;
}

CyclotomicElement CyclotomicField::generator() const {
  Poly p(2);
  p[1] = 1;
  reduce(p);
  return value_type{std::move(p)};
}

void CyclotomicField::reduce(Poly& poly) const {
  const std::size_t deg = data_->degree;
  const Poly& phi = data_->phi;
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k].is_zero()) continue;
    Rational c = poly[k];
    for (std::size_t j = 0; j <= deg; ++j)
      if (!phi[j].is_zero()) poly[k - deg + j] -= c * phi[j];
  }
  poly.resize(deg);
}

CyclotomicElement CyclotomicField::add(const value_type& a, const value_type& b) const {
  value_type out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

CyclotomicElement CyclotomicField::sub(const value_type& a, const value_type& b) const {
  value_type out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
  return out;
}

CyclotomicElement CyclotomicField::neg(const value_type& a) const {
  value_type out = a;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

CyclotomicElement CyclotomicField::mul(const value_type& a, const value_type& b) const {
  const std::size_t deg = data_->degree;
  Poly prod(2 * deg - 1);
  for (std::size_t i = 0; i < deg; ++i) {
    if (a.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < deg; ++j)
      if (!b.coeffs[j].is_zero()) prod[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  reduce(prod);
  return value_type{std::move(prod)};
}

CyclotomicElement CyclotomicField::inv(const value_type& a) const {
  if (is_zero(a)) throw DivisionByZero();
  // Extended Euclid in Q[x]: track s with s*a = r (mod phi).
  Poly r0 = data_->phi, r1 = a.coeffs;
  Poly s0, s1{Rational(1)};
  strip(r1);
  while (r1.size() > 1) {
    Poly q(r0.size() - r1.size() + 1);
    Rational lead_inv = r1.back().inverse();
    while (r0.size() >= r1.size() && !r0.empty()) {
      std::size_t shift = r0.size() - r1.size();
      Rational c = r0.back() * lead_inv;
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) r0[shift + j] -= c * r1[j];
      strip(r0);
    }
    // s_next = s0 - q * s1
    Poly next(std::max(s0.size(), q.size() + s1.size()));
    for (std::size_t i = 0; i < s0.size(); ++i) next[i] = s0[i];
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < s1.size(); ++j) next[i + j] -= q[i] * s1[j];
    strip(next);
    s0 = std::move(s1);
    s1 = std::move(next);
    std::swap(r0, r1);
  }
  // r1 is a nonzero constant because phi is irreducible.
  if (r1.empty()) throw InternalError("cyclotomic inverse: gcd is not a unit");
  Rational scale = r1[0].inverse();
  for (auto& c : s1) c *= scale;
  s1.resize(std::max(s1.size(), data_->degree));
  reduce(s1);
  return value_type{std::move(s1)};
}

bool CyclotomicField::is_zero(const value_type& a) const {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](const Rational& c) { return c.is_zero(); });
}

bool CyclotomicField::less(const value_type& a, const value_type& b) const {
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                      b.coeffs.end());
}

std::string CyclotomicField::format(const value_type& a) const {
  std::string out = "[";
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) out += ",";
    out += a.coeffs[i].to_string();
  }
  return out + "]";
}

CyclotomicElement CyclotomicField::parse(std::string_view text) const {
  std::string_view s = trim(text);
  if (s.empty() || s.front() != '[') return from_rational(Rational::parse(s));
  if (s.back() != ']') throw ParseError("invalid cyclotomic element '" + std::string(text) + "'", "");
  s = s.substr(1, s.size() - 2);
  Poly coeffs;
  while (!trim(s).empty()) {
    std::size_t comma = s.find(',');
    coeffs.push_back(Rational::parse(trim(s.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  if (coeffs.size() < data_->degree) coeffs.resize(data_->degree);
  reduce(coeffs);
  return value_type{std::move(coeffs)};
}

}  // namespace hochmod
