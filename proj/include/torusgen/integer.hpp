#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace torusgen {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using IntVector = std::vector<Integer>;

// Floor division; b must be nonzero.
inline Integer floor_div(Integer const& a, Integer const& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Representative of a mod b in [0, |b|).
inline Integer floor_mod(Integer const& a, Integer const& b) {
  Integer m = a % b;
  if (m < 0) m += abs(b);
  return m;
}

struct ExtendedGcd {
  Integer g, x, y;  // g = x*a + y*b, g >= 0
};

inline ExtendedGcd extended_gcd(Integer const& a, Integer const& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline IntVector zero_vector(std::size_t n) { return IntVector(n, Integer(0)); }

inline bool is_zero(IntVector const& v) {
  for (auto const& x : v)
    if (x != 0) return false;
  return true;
}

inline IntVector operator+(IntVector a, IntVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline IntVector operator-(IntVector a, IntVector const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline IntVector operator-(IntVector a) {
  for (auto& x : a) x = -x;
  return a;
}

inline IntVector operator*(Integer const& c, IntVector a) {
  for (auto& x : a) x *= c;
  return a;
}

inline IntVector make_vector(std::initializer_list<long long> xs) {
  IntVector v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(x);
  return v;
}

inline std::string to_string(IntVector const& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out + ")";
}

}  // namespace torusgen
