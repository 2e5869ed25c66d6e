#pragma once

// Normal form for ideals up to automorphism. An invariant tuple
// (e1, ..., e5) with e4, e5 <= e3 and e5 <= e4 <= e5 + e1 names the matrix
//
//     ( p^{e1+e2+e3}    0        p^{e4} )
//     (      0      p^{e2+e3}    p^{e5} )
//     (      0          0        p^{e3} )
//
// where an entry p^{e3} is stored as 0 to stay inside the HNF range.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "nilzeta/lattice.hpp"

namespace nilzeta::orbits {
class OrbitPartition;
}

namespace nilzeta::canonical {

using lattice::HnfMatrix;

struct InvariantTuple {
  int e1 = 0, e2 = 0, e3 = 0, e4 = 0, e5 = 0;

  bool valid() const;
  friend auto operator<=>(const InvariantTuple&, const InvariantTuple&) = default;
  friend bool operator==(const InvariantTuple&, const InvariantTuple&) = default;
};

// e1 + 2 e2 + 3 e3, the index exponent of the associated matrix.
int weight(const InvariantTuple& t);

// Throws InvalidTuple when the constraints fail.
HnfMatrix tuple_to_matrix(const InvariantTuple& t, Int p);

// All valid tuples of the given weight, lexicographic.
std::vector<InvariantTuple> enumerate_tuples(int n);

// Reduces an ideal to its normal form with explicit row operations (basis
// changes of the lattice) and column operations on the first two columns
// (automorphisms), all modulo p^{n+1}:
//
//   1. Smith-normalize the top-left block, pivoting on the entry of least
//      valuation (leftmost, then topmost), then order it as
//      diag(p^n1, p^n2) with n1 >= n2.
//   2. Make the (2,3) entry carry the least valuation of the last column by
//      adding row 1 to row 2, then scale it to p^{e5}.
//   3. Reduce the (1,3) entry modulo p^{e1} * (row 2) and scale it to a pure
//      power of p.
//
// Each row move that disturbs the block is undone by a column move.
// Throws NotAnIdeal, or ReductionDiverged if the loop does not settle within
// 4 * (weight + 1) passes or lands outside the normal form.
InvariantTuple canonical_invariants(const HnfMatrix& m);

// Slow path: the tuple whose matrix shares m's orbit in `partition`.
// Throws ReductionDiverged if no tuple (or more than one) matches.
InvariantTuple canonical_invariants_by_orbit(const HnfMatrix& m, const orbits::OrbitPartition& partition);

// "e1,e2,e3,e4,e5"
InvariantTuple parse_tuple(std::string_view text);
std::string format_tuple(const InvariantTuple& t);

}  // namespace nilzeta::canonical
