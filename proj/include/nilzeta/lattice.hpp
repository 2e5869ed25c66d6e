#pragma once

// Full-rank sublattices of Z^3 with p-power index, stored as Hermite normal
// forms. Rows are generators, written in the basis (x, y, z):
//
//     ( p^n1  a12   a13 )
//     (  0   p^n2   a23 )      0 <= a12 < p^n2,  0 <= a13, a23 < p^n3.
//     (  0    0    p^n3 )
//
// A lattice of index p^n in Z^3 and a Z_p-lattice of the same index in Z_p^3
// determine each other, so integer HNF is all that is needed.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nilzeta/arith.hpp"

namespace nilzeta::lattice {

using Vec3 = std::array<Int, 3>;
using Mat3 = std::array<Vec3, 3>;  // row-major, rows are generators

Mat3 identity_matrix();
Mat3 multiply(const Mat3& a, const Mat3& b);
Vec3 row_times(const Vec3& v, const Mat3& a);
Int determinant(const Mat3& a);

class HnfMatrix {
 public:
  // Validates p prime and the off-diagonal ranges; throws InvalidArgument.
  HnfMatrix(Int p, std::array<int, 3> exponents, Int a12, Int a13, Int a23);

  static HnfMatrix identity(Int p) { return HnfMatrix(p, {0, 0, 0}, 0, 0, 0); }

  Int p() const { return p_; }
  int n1() const { return n_[0]; }
  int n2() const { return n_[1]; }
  int n3() const { return n_[2]; }
  const std::array<int, 3>& exponents() const { return n_; }
  Int a12() const { return a12_; }
  Int a13() const { return a13_; }
  Int a23() const { return a23_; }

  // p^{n_i}
  Int diagonal(int i) const;
  int index_exponent() const { return n_[0] + n_[1] + n_[2]; }
  Int index() const;

  Mat3 rows() const;

  // Lexicographic in (p, n1, n2, n3, a12, a13, a23).
  friend auto operator<=>(const HnfMatrix&, const HnfMatrix&) = default;
  friend bool operator==(const HnfMatrix&, const HnfMatrix&) = default;

 private:
  Int p_;
  std::array<int, 3> n_;
  Int a12_, a13_, a23_;
};

struct HnfMatrixHash {
  std::size_t operator()(const HnfMatrix& m) const noexcept;
};

// Row-style integer HNF of the span of `rows` (any number >= 3 of them).
// Throws SingularMatrix when the span is not of full rank.
Mat3 hnf_rows(std::span<const Vec3> rows);

// HNF of a 3x3 generator matrix as an HnfMatrix; throws SingularMatrix or,
// when the index is not a power of p, NotPPower.
HnfMatrix hnf(const Mat3& rows, Int p);

// HNF of span(rows) + p^e Z^3. The result always has index dividing p^{3e};
// used to push lattices through matrices that are only invertible over Z_p.
HnfMatrix hnf_with_modulus(std::span<const Vec3> rows, Int p, int e);

// Every HNF with n1+n2+n3 = n, in lexicographic order.
std::vector<HnfMatrix> enumerate_sublattices(Int p, int n);

// n3 <= n1, n3 <= n2, v_p(a12) >= n3.
bool is_ideal_hnf(const HnfMatrix& m);

std::vector<HnfMatrix> enumerate_ideals(Int p, int n);

// Back-substitution membership test for the row span.
bool contains(const HnfMatrix& m, const Vec3& v);

// Closed-form sizes of the two enumerations, saturating at UINT64_MAX.
std::uint64_t sublattice_count(Int p, int n);
std::uint64_t ideal_count(Int p, int n);

// "a,b,c,d,e,f,g,h,i", row-major.
Mat3 parse_matrix(std::string_view text);
std::string format_matrix(const Mat3& m);
std::string format_matrix(const HnfMatrix& m);

}  // namespace nilzeta::lattice
