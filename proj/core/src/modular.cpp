#include "hochmod/modular.hpp"

namespace hochmod {

namespace {

long long checked(long long a, long long b, bool multiply) {
  long long r = 0;
  if (multiply ? __builtin_mul_overflow(a, b, &r) : __builtin_add_overflow(a, b, &r))
    throw ResourceError("SL(2,Z) entry overflow", 0, 0);
  return r;
}

}  // namespace

std::string to_string(Sl2Generator g) {
  switch (g) {
    case Sl2Generator::s: return "s";
    case Sl2Generator::t: return "t";
    case Sl2Generator::s_inv: return "s^-1";
    case Sl2Generator::t_inv: return "t^-1";
  }
  return "?";
}

Sl2Matrix generator_matrix(Sl2Generator g) {
  switch (g) {
    case Sl2Generator::s: return {0, -1, 1, 0};
    case Sl2Generator::t: return {1, 1, 0, 1};
    case Sl2Generator::s_inv: return {0, 1, -1, 0};
    case Sl2Generator::t_inv: return {1, -1, 0, 1};
  }
  return {1, 0, 0, 1};
}

Sl2Matrix sl2_multiply(const Sl2Matrix& x, const Sl2Matrix& y) {
  auto dot = [](long long p, long long q, long long r, long long s) {
    return checked(checked(p, q, true), checked(r, s, true), false);
  };
  return {dot(x[0], y[0], x[1], y[2]), dot(x[0], y[1], x[1], y[3]), dot(x[2], y[0], x[3], y[2]),
          dot(x[2], y[1], x[3], y[3])};
}

Sl2Matrix sl2z_evaluate(const std::vector<Sl2Generator>& word) {
  Sl2Matrix acc{1, 0, 0, 1};
  for (auto g : word) acc = sl2_multiply(acc, generator_matrix(g));
  return acc;
}

std::vector<Sl2Generator> sl2z_word(const Sl2Matrix& M) {
  if (checked(checked(M[0], M[3], true), -checked(M[1], M[2], true), false) != 1)
    throw DimensionMismatch("sl2z_word: determinant is not 1");
  // Left-multiply by t^-q and s^-1 until the first column is (+-1, 0); the
  // word is the inverse of the steps taken, followed by what is left.
  std::vector<Sl2Generator> word;
  Sl2Matrix cur = M;
  auto left_mul = [&](Sl2Generator g) { cur = sl2_multiply(generator_matrix(g), cur); };
  while (cur[2] != 0) {
    const long long c = cur[2], abs_c = c < 0 ? -c : c;
    long long r = cur[0] % abs_c;
    if (r < 0) r += abs_c;
    const long long q = (cur[0] - r) / c;
    for (long long i = 0; i < (q < 0 ? -q : q); ++i) {
      left_mul(q > 0 ? Sl2Generator::t_inv : Sl2Generator::t);
      word.push_back(q > 0 ? Sl2Generator::t : Sl2Generator::t_inv);
    }
    left_mul(Sl2Generator::s_inv);
    word.push_back(Sl2Generator::s);
  }
  // cur = (1 b; 0 1) = t^b, or (-1 b; 0 -1) = s^2 t^-b.
  long long b = cur[1];
  if (cur[0] == -1) {
    word.push_back(Sl2Generator::s);
    word.push_back(Sl2Generator::s);
    b = -b;
  }
  for (long long i = 0; i < (b < 0 ? -b : b); ++i) word.push_back(b > 0 ? Sl2Generator::t : Sl2Generator::t_inv);
  if (sl2z_evaluate(word) != M) throw InternalError("sl2z_word: word does not multiply back to the input");
  return word;
}

}  // namespace hochmod
