#pragma once

// Small exact-integer helpers shared by every module. All arithmetic is on
// signed 64-bit integers; operations that could wrap throw Overflow.

#include <cstdint>
#include <limits>

namespace nilzeta {

using Int = std::int64_t;

// Valuations of zero are reported as this sentinel, which compares greater
// than every finite valuation.
inline constexpr int kInfiniteValuation = std::numeric_limits<int>::max();

// Largest exponent allowed for a modulus p^n (p^n < 2^62).
inline constexpr Int kModulusLimit = Int{1} << 62;

Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);

// p^e; throws Overflow when the result reaches kModulusLimit.
Int ipow(Int p, int e);

// Floor division and the matching nonnegative remainder (b > 0).
Int floor_div(Int a, Int b);
Int mod_floor(Int a, Int b);

// v_p(a); kInfiniteValuation for a == 0.
int valuation(Int a, Int p);

Int gcd(Int a, Int b);

// Inverse of a modulo m; throws InvalidArgument when gcd(a,m) != 1.
Int mod_inverse(Int a, Int m);

// Trial division.
bool is_prime(Int n);

}  // namespace nilzeta
