#pragma once

// The Heisenberg Lie ring on basis (x, y, z) with [x,y] = z, and the matrix
// model of its automorphisms over Z_p:
//
//     ( alpha      v     )      alpha in GL_2(Z_p), v arbitrary,
//     (  0  0  det(alpha) )     acting on row vectors from the right.
//
// A lattice of index p^n contains p^n Z^3, so automorphisms only matter
// modulo p^n and plain integer matrices suffice.

#include <vector>

#include "nilzeta/lattice.hpp"

namespace nilzeta::heisenberg {

using lattice::HnfMatrix;
using lattice::Mat3;
using lattice::Vec3;

// (0, 0, u_x v_y - u_y v_x)
Vec3 bracket(const Vec3& u, const Vec3& v);

// Closure of the row span under brackets with x, y, z, checked with
// lattice::contains on every (basis vector, row) pair.
bool is_ideal_bracket(const HnfMatrix& m);

// Block shape, unit determinant of alpha at p, and
// bracket(e_i A, e_j A) = bracket(e_i, e_j) A on basis vectors.
bool is_automorphism_shape(const Mat3& a, Int p);

class AutElement {
 public:
  // Throws InvalidAutomorphism unless is_automorphism_shape(a, p).
  AutElement(const Mat3& a, Int p);

  // alpha = [[a11, a12], [a21, a22]], translation column v = (v1, v2).
  static AutElement from_block(Int a11, Int a12, Int a21, Int a22, Int v1, Int v2, Int p);

  const Mat3& matrix() const { return a_; }
  Int p() const { return p_; }

 private:
  Mat3 a_;
  Int p_;
};

// Least generator of the unit group modulo p^max(n,1) for odd p, found by
// exhaustive search and cached.
Int primitive_root(Int p, int n);

// Transvections E12(1), E21(1); diag(g,1) and diag(1,g) for each unit
// generator g (a primitive root for odd p, both 5 and -1 for p = 2); the sign
// element diag(-1,1); z-translations v = (1,0) and v = (0,1).
std::vector<AutElement> aut_generators(Int p, int n);

// hnf(rows(m) * A) computed modulo p^{index exponent}. Throws
// InvalidAutomorphism for a mismatched prime.
HnfMatrix apply_aut(const HnfMatrix& m, const AutElement& a);

}  // namespace nilzeta::heisenberg
