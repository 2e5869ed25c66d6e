#include "nilzeta/arith.hpp"

#include <string>

#include "nilzeta/errors.hpp"

namespace nilzeta {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow("integer overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow("integer overflow in multiplication");
  return r;
}

Int ipow(Int p, int e) {
  if (e < 0) throw InvalidArgument("negative exponent");
  Int r = 1;
  for (int i = 0; i < e; ++i) {
    r = checked_mul(r, p);
    if (r >= kModulusLimit || r <= -kModulusLimit) {
      throw Overflow(std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^62");
    }
  }
  return r;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod_floor(Int a, Int b) {
  Int r = a % b;
  return r < 0 ? r + b : r;
}

int valuation(Int a, Int p) {
  if (a == 0) return kInfiniteValuation;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mod_inverse(Int a, Int m) {
  if (m == 1) return 0;
  // Extended Euclid on (a mod m, m); intermediate values stay below m.
  Int old_r = mod_floor(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidArgument(std::to_string(a) + " is not a unit modulo " + std::to_string(m));
  return mod_floor(old_s, m);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace nilzeta
