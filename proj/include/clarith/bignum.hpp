#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace clarith {

using Nat = boost::multiprecision::cpp_int;

// |n| = number of bits of n, i.e. ceil(log2(n+1)); |0| = 0.
inline Nat nat_size(const Nat& n) {
  if (n == 0) return 0;
  return Nat(boost::multiprecision::msb(n) + 1);
}

inline Nat nat_pow(const Nat& base, const Nat& e) {
  Nat r = 1, b = base, k = e;
  while (k > 0) {
    if ((k & 1) != 0) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

}  // namespace clarith
