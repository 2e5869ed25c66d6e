#pragma once

// Truncated power series in t = p^{-s} and the multiplicative arithmetic
// built on them: local zeta factors, the global counts g(n) assembled prime
// by prime, and the summatory function with its linear-growth constant.

#include <cstdint>
#include <vector>

#include "nilzeta/arith.hpp"

namespace nilzeta::series {

inline constexpr int kDefaultMaxDegree = 64;

// Coefficients c_0..c_d of a series truncated at degree d (inclusive).
class LocalSeries {
 public:
  explicit LocalSeries(std::vector<Int> coeffs);

  int max_degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Int operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<Int>& coeffs() const { return coeffs_; }

  friend bool operator==(const LocalSeries&, const LocalSeries&) = default;

 private:
  std::vector<Int> coeffs_;
};

// Expansion of 1/((1-t)(1-t^2)(1-t^3)^2(1-t^4)), the local factor shared by
// every prime. Computed by inverting the expanded denominator polynomial.
LocalSeries local_factor_closed_form(int max_degree = kDefaultMaxDegree);

// Cauchy product truncated at the smaller of the two degrees.
LocalSeries series_multiply(const LocalSeries& a, const LocalSeries& b);

// Local factor of prod_{i=1}^d zeta(i s): partitions into parts <= d.
LocalSeries abelian_factor(int d, int max_degree = kDefaultMaxDegree);

// g(1..N), indexed from 1.
class GlobalCoefficients {
 public:
  GlobalCoefficients(std::vector<Int> values_from_one);

  Int bound() const { return static_cast<Int>(values_.size()); }
  Int operator()(Int n) const;
  const std::vector<Int>& values() const { return values_; }

 private:
  std::vector<Int> values_;
};

// g(n) = prod over p^k || n of c_k, factorizing with a smallest-prime-factor
// sieve. Throws InvalidArgument for N < 1.
GlobalCoefficients global_coefficients(Int N);

// Same assembly for an arbitrary local factor (must cover the exponents that
// occur below N).
GlobalCoefficients global_coefficients(Int N, const LocalSeries& local);

// pi^6/540 * zeta(3)^2 = zeta(2) zeta(3)^2 zeta(4), the residue at s = 1.
long double reference_constant();

struct AsymptoticReport {
  Int bound = 0;
  Int summatory = 0;
  long double ratio = 0;
  long double target_constant = 0;

  long double relative_error() const;
};

AsymptoticReport summatory(Int N);

}  // namespace nilzeta::series
