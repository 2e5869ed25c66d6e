#pragma once

// Brute-force orbit partition of the ideals of index p^n under the
// automorphism generators. Each orbit is one isomorphism class of groups of
// order p^n that are nilpotent of class <= 2 on <= 2 generators.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nilzeta/lattice.hpp"

namespace nilzeta::orbits {

using lattice::HnfMatrix;

struct Budget {
  // Upper bound on |enumerate_ideals(p, n)|, checked before any work.
  std::uint64_t max_ideals = 200'000;
  // Upper bound on generator applications during the search.
  std::uint64_t max_actions = 20'000'000;
};

class OrbitPartition {
 public:
  OrbitPartition(Int p, int n, std::vector<std::vector<HnfMatrix>> cells);

  Int p() const { return p_; }
  int n() const { return n_; }
  // Cells in order of their least element; each cell is sorted.
  const std::vector<std::vector<HnfMatrix>>& orbits() const { return cells_; }
  const HnfMatrix& representative(std::size_t cell) const { return cells_.at(cell).front(); }
  std::size_t size() const { return cells_.size(); }
  std::size_t ideal_count() const { return lookup_.size(); }

  // Throws InvalidArgument for a matrix that is not one of the ideals.
  std::size_t cell_of(const HnfMatrix& m) const;

 private:
  Int p_;
  int n_;
  std::vector<std::vector<HnfMatrix>> cells_;
  std::unordered_map<HnfMatrix, std::size_t, lattice::HnfMatrixHash> lookup_;
};

// BFS from each unvisited ideal in enumeration order, expanding by every
// generator of heisenberg::aut_generators(p, n). Throws BudgetExceeded.
OrbitPartition orbit_partition(Int p, int n, const Budget& budget = {});

std::uint64_t count_isoclasses(Int p, int n, const Budget& budget = {});

// Throws IncomparableLattices for different primes or indices and NotAnIdeal
// for non-ideals.
bool same_orbit(const OrbitPartition& partition, const HnfMatrix& a, const HnfMatrix& b);
bool same_orbit(const HnfMatrix& a, const HnfMatrix& b, const Budget& budget = {});

}  // namespace nilzeta::orbits
