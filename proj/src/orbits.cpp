#include "nilzeta/orbits.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "nilzeta/errors.hpp"
#include "nilzeta/heisenberg.hpp"

namespace nilzeta::orbits {

OrbitPartition::OrbitPartition(Int p, int n, std::vector<std::vector<HnfMatrix>> cells)
    : p_(p), n_(n), cells_(std::move(cells)) {
  for (std::size_t c = 0; c < cells_.size(); ++c)
    for (const auto& m : cells_[c])
      if (!lookup_.emplace(m, c).second) throw InvalidArgument("orbit cells are not disjoint");
}

std::size_t OrbitPartition::cell_of(const HnfMatrix& m) const {
  auto it = lookup_.find(m);
  if (it == lookup_.end()) throw InvalidArgument(lattice::format_matrix(m) + " is not an ideal of this partition");
  return it->second;
}

OrbitPartition orbit_partition(Int p, int n, const Budget& budget) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const std::uint64_t expected = lattice::ideal_count(p, n);
  if (expected > budget.max_ideals) {
    throw BudgetExceeded("p = " + std::to_string(p) + ", n = " + std::to_string(n) + " has " +
                         std::to_string(expected) + " ideals, over the budget of " +
                         std::to_string(budget.max_ideals));
  }

  const auto ideals = lattice::enumerate_ideals(p, n);
  const auto gens = heisenberg::aut_generators(p, n);

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::unordered_map<HnfMatrix, std::size_t, lattice::HnfMatrixHash> cell;
  cell.reserve(ideals.size());
  for (const auto& m : ideals) cell.emplace(m, kUnvisited);

  std::vector<std::vector<HnfMatrix>> cells;
  std::uint64_t actions = 0;
  std::size_t classified = 0;
  std::deque<HnfMatrix> queue;

  for (const auto& seed : ideals) {
    if (cell.at(seed) != kUnvisited) continue;
    const std::size_t id = cells.size();
    cells.emplace_back();
    cell[seed] = id;
    queue.push_back(seed);
    while (!queue.empty()) {
      HnfMatrix cur = queue.front();
      queue.pop_front();
      cells[id].push_back(cur);
      ++classified;
      for (const auto& g : gens) {
        if (++actions > budget.max_actions) {
          throw BudgetExceeded("generator application budget of " + std::to_string(budget.max_actions) +
                               " exhausted at p = " + std::to_string(p) + ", n = " + std::to_string(n) +
                               ": " + std::to_string(classified) + " of " + std::to_string(ideals.size()) +
                               " ideals classified, " + std::to_string(id) + " orbits complete");
        }
        HnfMatrix img = heisenberg::apply_aut(cur, g);
        auto it = cell.find(img);
        if (it == cell.end())
          throw Error("automorphism image " + lattice::format_matrix(img) + " is not an ideal of index p^n");
        if (it->second == kUnvisited) {
          it->second = id;
          queue.push_back(img);
        }
      }
    }
    std::sort(cells[id].begin(), cells[id].end());
  }
  return OrbitPartition(p, n, std::move(cells));
}

std::uint64_t count_isoclasses(Int p, int n, const Budget& budget) { return orbit_partition(p, n, budget).size(); }

namespace {

void check_comparable(const HnfMatrix& a, const HnfMatrix& b) {
  if (a.p() != b.p() || a.index_exponent() != b.index_exponent())
    throw IncomparableLattices("lattices " + lattice::format_matrix(a) + " and " + lattice::format_matrix(b) +
                               " differ in prime or index");
  for (const auto* m : {&a, &b})
    if (!lattice::is_ideal_hnf(*m)) throw NotAnIdeal(lattice::format_matrix(*m) + " is not an ideal");
}

}  // namespace

bool same_orbit(const OrbitPartition& partition, const HnfMatrix& a, const HnfMatrix& b) {
  check_comparable(a, b);
  if (a.p() != partition.p() || a.index_exponent() != partition.n())
    throw IncomparableLattices("lattice does not belong to the given partition");
  return partition.cell_of(a) == partition.cell_of(b);
}

bool same_orbit(const HnfMatrix& a, const HnfMatrix& b, const Budget& budget) {
  check_comparable(a, b);
  return same_orbit(orbit_partition(a.p(), a.index_exponent(), budget), a, b);
}

}  // namespace nilzeta::orbits
