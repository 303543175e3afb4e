#include "hochmod/rational.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>

#include "hochmod/error.hpp"

namespace hochmod {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

std::uint64_t uabs(std::int64_t x) {
  return x < 0 ? std::uint64_t(0) - std::uint64_t(x) : std::uint64_t(x);
}

u128 uabs128(i128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

std::uint64_t gcd_u128_u64(u128 a, std::uint64_t b) {
  if (b == 0) return 0;
  return std::gcd(static_cast<std::uint64_t>(a % b), b);
}

u128 gcd_u128(u128 a, u128 b) {
  while (b != 0) {
    u128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

void mpz_set_i128(mpz_t out, i128 value) {
  u128 mag = uabs128(value);
  std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
  mpz_import(out, 2, -1, sizeof(std::uint64_t), 0, 0, words);
  if (value < 0) mpz_neg(out, out);
}

bool fits_small(mpz_srcptr z) {
  return mpz_fits_slong_p(z) && mpz_cmp_si(z, kMin) != 0;
}

}  // namespace

Rational::Rational(long long value) noexcept : num_(value), den_(1) {
  if (value == kMin) {
    // INT64_MIN is kept on the heap so negation never overflows inline.
    __mpq_struct* q = new __mpq_struct;
    mpq_init(q);
    mpz_set_si(mpq_numref(q), value);
    big_ = q;
    den_ = 0;
  }
}

Rational::Rational(long long num, long long den) : Rational() {
  if (den == 0) throw DivisionByZero();
  *this = from_i128(num, den);
}

Rational::Rational(BigTag, mpq_srcptr value) : den_(0) {
  big_ = new __mpq_struct;
  mpq_init(big_);
  mpq_set(big_, value);
}

Rational::Rational(const Rational& other) : den_(other.den_) {
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = new __mpq_struct;
    mpq_init(big_);
    mpq_set(big_, other.big_);
  }
}

Rational::Rational(Rational&& other) noexcept : den_(other.den_) {
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
}

Rational& Rational::operator=(const Rational& other) {
  if (this == &other) return *this;
  if (other.is_small()) {
    release();
    num_ = other.num_;
    den_ = other.den_;
  } else if (!is_small()) {
    mpq_set(big_, other.big_);
  } else {
    Rational copy(other);
    *this = std::move(copy);
  }
  return *this;
}

Rational& Rational::operator=(Rational&& other) noexcept {
  if (this == &other) return *this;
  release();
  den_ = other.den_;
  if (other.is_small()) {
    num_ = other.num_;
  } else {
    big_ = other.big_;
    other.num_ = 0;
    other.den_ = 1;
  }
  return *this;
}

Rational::~Rational() { release(); }

void Rational::release() noexcept {
  if (!is_small()) {
    mpq_clear(big_);
    delete big_;
    num_ = 0;
    den_ = 1;
  }
}

Rational Rational::from_mpq(const mpq_t value) {
  if (fits_small(mpq_numref(value)) && fits_small(mpq_denref(value))) {
    Rational r;
    r.num_ = mpz_get_si(mpq_numref(value));
    r.den_ = mpz_get_si(mpq_denref(value));
    return r;
  }
  return Rational(BigTag{}, value);
}

Rational Rational::from_i128(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  u128 g = gcd_u128(uabs128(num), u128(den));
  if (g != 1) {
    num /= i128(g);
    den /= i128(g);
  }
  if (num > kMin && num <= kMax && den <= kMax) {
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }
  mpq_t q;
  mpq_init(q);
  mpz_set_i128(mpq_numref(q), num);
  mpz_set_i128(mpq_denref(q), den);
  Rational r(BigTag{}, q);
  mpq_clear(q);
  return r;
}

void Rational::to_mpq(mpq_t out) const {
  if (is_small()) {
    mpz_set_si(mpq_numref(out), num_);
    mpz_set_si(mpq_denref(out), den_);
  } else {
    mpq_set(out, big_);
  }
}

Rational Rational::big_binary(const Rational& a, const Rational& b, char op) {
  mpq_t x, y, z;
  mpq_init(x);
  mpq_init(y);
  mpq_init(z);
  a.to_mpq(x);
  b.to_mpq(y);
  switch (op) {
    case '+':
      mpq_add(z, x, y);
      break;
    case '-':
      mpq_sub(z, x, y);
      break;
    case '*':
      mpq_mul(z, x, y);
      break;
    default:
      mpq_div(z, x, y);
      break;
  }
  Rational r = from_mpq(z);
  mpq_clear(x);
  mpq_clear(y);
  mpq_clear(z);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.num_ == 0) return b;
    if (b.num_ == 0) return a;
    if (a.den_ == b.den_) {
      i128 n = i128(a.num_) + b.num_;
      if (n == 0) return Rational();
      if (a.den_ == 1 && n > kMin && n <= kMax) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        return r;
      }
      std::uint64_t g = gcd_u128_u64(uabs128(n), std::uint64_t(a.den_));
      return Rational::from_i128(n / i128(g), i128(a.den_ / std::int64_t(g)));
    }
    std::int64_t g = std::int64_t(std::gcd(std::uint64_t(a.den_), std::uint64_t(b.den_)));
    i128 t = i128(a.num_) * (b.den_ / g) + i128(b.num_) * (a.den_ / g);
    if (t == 0) return Rational();
    std::int64_t g2 = std::int64_t(gcd_u128_u64(uabs128(t), std::uint64_t(g)));
    return Rational::from_i128(t / g2, i128(a.den_ / g) * (b.den_ / g2));
  }
  return Rational::big_binary(a, b, '+');
}

Rational Rational::operator-() const {
  if (is_small()) {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  mpq_t z;
  mpq_init(z);
  mpq_neg(z, big_);
  Rational r = from_mpq(z);
  mpq_clear(z);
  return r;
}

Rational operator-(const Rational& a, const Rational& b) {
  if (b.is_small()) return a + (-b);
  return Rational::big_binary(a, b, '-');
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    if (a.den_ == 1 && b.den_ == 1) return Rational::from_i128(i128(a.num_) * b.num_, 1);
    std::int64_t g1 = std::int64_t(std::gcd(uabs(a.num_), std::uint64_t(b.den_)));
    std::int64_t g2 = std::int64_t(std::gcd(uabs(b.num_), std::uint64_t(a.den_)));
    i128 n = i128(a.num_ / g1) * (b.num_ / g2);
    i128 d = i128(a.den_ / g2) * (b.den_ / g1);
    if (n > kMin && n <= kMax && d <= kMax) {
      Rational r;
      r.num_ = static_cast<std::int64_t>(n);
      r.den_ = static_cast<std::int64_t>(d);
      return r;
    }
    return Rational::from_i128(n, d);
  }
  return Rational::big_binary(a, b, '*');
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_small()) {
    Rational r;
    if (num_ < 0) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }
  mpq_t z;
  mpq_init(z);
  mpq_inv(z, big_);
  Rational r = from_mpq(z);
  mpq_clear(z);
  return r;
}

Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

bool operator==(const Rational& a, const Rational& b) noexcept {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.num_ == b.num_ && a.den_ == b.den_;
  return mpq_equal(a.big_, b.big_) != 0;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.is_small() && b.is_small()) {
    i128 lhs = i128(a.num_) * b.den_;
    i128 rhs = i128(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  mpq_t x, y;
  mpq_init(x);
  mpq_init(y);
  a.to_mpq(x);
  b.to_mpq(y);
  int c = mpq_cmp(x, y);
  mpq_clear(x);
  mpq_clear(y);
  return c <=> 0;
}

int Rational::sign() const noexcept {
  if (is_small()) return (num_ > 0) - (num_ < 0);
  return mpq_sgn(big_);
}

bool Rational::is_integer() const {
  if (is_small()) return den_ == 1;
  return mpz_cmp_ui(mpq_denref(big_), 1) == 0;
}

std::string Rational::numerator_string() const {
  if (is_small()) return std::to_string(num_);
  char* s = mpz_get_str(nullptr, 10, mpq_numref(big_));
  std::string out(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::string Rational::denominator_string() const {
  if (is_small()) return std::to_string(den_);
  char* s = mpz_get_str(nullptr, 10, mpq_denref(big_));
  std::string out(s);
  void (*freefunc)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(s, out.size() + 1);
  return out;
}

std::string Rational::to_string() const {
  if (is_small() && den_ == 1) return std::to_string(num_);
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  auto valid_integer = [](std::string_view t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den))
    throw ParseError("invalid rational '" + std::string(text) + "'", "");
  mpq_t q;
  mpq_init(q);
  mpz_set_str(mpq_numref(q), num.c_str(), 10);
  mpz_set_str(mpq_denref(q), den.c_str(), 10);
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw DivisionByZero();
  }
  mpq_canonicalize(q);
  Rational r = from_mpq(q);
  mpq_clear(q);
  return r;
}

bool make_primitive(Rational* values, std::size_t count) {
  std::size_t first = 0;
  while (first < count && values[first].is_zero()) ++first;
  if (first == count) return false;
  // Fast path: every entry inline, gcd of numerators and lcm of denominators in 64 bits.
  bool small = true;
  std::uint64_t g = 0, l = 1;
  for (std::size_t i = first; i < count && small; ++i) {
    const Rational& v = values[i];
    if (v.is_zero()) continue;
    if (!v.is_small()) {
      small = false;
      break;
    }
    g = std::gcd(g, uabs(v.num_));
    std::uint64_t den = std::uint64_t(v.den_);
    std::uint64_t q = l / std::gcd(l, den);
    u128 next = u128(q) * den;
    if (next > u128(kMax)) small = false;
    l = static_cast<std::uint64_t>(next);
  }
  bool negative = values[first].sign() < 0;
  if (small) {
    if (g == 1 && l == 1 && !negative) return true;
    Rational factor(static_cast<long long>(l), static_cast<long long>(g));
    if (negative) factor = -factor;
    for (std::size_t i = first; i < count; ++i)
      if (!values[i].is_zero()) values[i] *= factor;
    return true;
  }
  mpz_t gz, lz;
  mpz_init_set_ui(gz, 0);
  mpz_init_set_ui(lz, 1);
  mpq_t tmp;
  mpq_init(tmp);
  for (std::size_t i = first; i < count; ++i) {
    if (values[i].is_zero()) continue;
    values[i].to_mpq(tmp);
    mpz_gcd(gz, gz, mpq_numref(tmp));
    mpz_lcm(lz, lz, mpq_denref(tmp));
  }
  mpq_set_num(tmp, lz);
  mpq_set_den(tmp, gz);
  mpq_canonicalize(tmp);
  if (negative) mpq_neg(tmp, tmp);
  Rational factor = Rational::from_mpq(tmp);
  mpq_clear(tmp);
  mpz_clear(gz);
  mpz_clear(lz);
  for (std::size_t i = first; i < count; ++i)
    if (!values[i].is_zero()) values[i] *= factor;
  return true;
}

}  // namespace hochmod
