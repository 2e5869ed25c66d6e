#include <map>
#include <set>

#include "doctest.h"
#include "nilzeta/canonical.hpp"
#include "nilzeta/errors.hpp"
#include "nilzeta/heisenberg.hpp"
#include "nilzeta/orbits.hpp"
#include "nilzeta/series.hpp"

using namespace nilzeta;
using namespace nilzeta::canonical;

namespace {

// Brute-force enumeration of tuples straight from the constraints, over a
// box, with no shared loop structure.
std::set<InvariantTuple> tuples_by_box(int n) {
  std::set<InvariantTuple> out;
  for (int e1 = 0; e1 <= n; ++e1)
    for (int e2 = 0; e2 <= n; ++e2)
      for (int e3 = 0; e3 <= n; ++e3)
        for (int e4 = 0; e4 <= n; ++e4)
          for (int e5 = 0; e5 <= n; ++e5) {
            InvariantTuple t{e1, e2, e3, e4, e5};
            if (e1 + 2 * e2 + 3 * e3 == n && e4 <= e3 && e5 <= e3 && e5 <= e4 && e4 <= e5 + e1) out.insert(t);
          }
  return out;
}

}  // namespace

TEST_CASE("tuple validity and weight") {
  CHECK(InvariantTuple{}.valid());
  CHECK(weight({}) == 0);
  CHECK(weight({1, 1, 0, 0, 0}) == 3);
  CHECK(weight({0, 0, 1, 1, 1}) == 3);
  CHECK_FALSE(InvariantTuple{0, 0, 1, 0, 1}.valid());  // e5 > e4
  CHECK_FALSE(InvariantTuple{0, 0, 1, 1, 0}.valid());  // e4 > e5 + e1
  CHECK_FALSE(InvariantTuple{2, 0, 1, 2, 0}.valid());  // e4 > e3
  CHECK_FALSE(InvariantTuple{-1, 0, 0, 0, 0}.valid());
}

TEST_CASE("tuple_to_matrix") {
  CHECK(tuple_to_matrix({}, 2) == HnfMatrix::identity(2));
  CHECK(tuple_to_matrix({0, 0, 1, 1, 1}, 2) == HnfMatrix(2, {1, 1, 1}, 0, 0, 0));
  CHECK(tuple_to_matrix({1, 0, 1, 0, 0}, 2) == HnfMatrix(2, {2, 1, 1}, 0, 1, 1));
  CHECK(tuple_to_matrix({2, 1, 3, 2, 1}, 3) == HnfMatrix(3, {6, 4, 3}, 0, 9, 3));
  CHECK_THROWS_AS(tuple_to_matrix({0, 0, 1, 1, 0}, 2), InvalidTuple);
  for (int n = 0; n <= 12; ++n)
    for (const auto& t : enumerate_tuples(n)) {
      const auto m = tuple_to_matrix(t, 3);
      CHECK(weight(t) == m.index_exponent());
      CHECK(lattice::is_ideal_hnf(m));
    }
}

TEST_CASE("enumerate_tuples") {
  CHECK(enumerate_tuples(0) == std::vector<InvariantTuple>{InvariantTuple{}});
  const std::vector<InvariantTuple> three{{0, 0, 1, 0, 0}, {0, 0, 1, 1, 1}, {1, 1, 0, 0, 0}, {3, 0, 0, 0, 0}};
  CHECK(enumerate_tuples(3) == three);
  CHECK(enumerate_tuples(4).size() == 6);
  for (int n = 0; n <= 14; ++n) {
    const auto ts = enumerate_tuples(n);
    CHECK(std::is_sorted(ts.begin(), ts.end()));
    CHECK(std::set<InvariantTuple>(ts.begin(), ts.end()) == tuples_by_box(n));
  }
  const auto c = series::local_factor_closed_form(30);
  for (int n = 0; n <= 30; ++n) CHECK(enumerate_tuples(n).size() == static_cast<std::size_t>(c[n]));
}

TEST_CASE("canonical_invariants worked examples") {
  CHECK(canonical_invariants(HnfMatrix::identity(2)) == InvariantTuple{});
  CHECK(canonical_invariants(HnfMatrix(2, {1, 1, 1}, 0, 0, 1)) == InvariantTuple{0, 0, 1, 0, 0});
  CHECK(canonical_invariants(HnfMatrix(2, {1, 1, 1}, 0, 0, 0)) == InvariantTuple{0, 0, 1, 1, 1});
  CHECK(canonical_invariants(HnfMatrix(2, {1, 1, 1}, 0, 1, 0)) == InvariantTuple{0, 0, 1, 0, 0});
  CHECK(canonical_invariants(HnfMatrix(3, {2, 0, 0}, 0, 0, 0)) == InvariantTuple{2, 0, 0, 0, 0});
  // The small diagonal entry comes first in some HNFs; the normal form reorders.
  CHECK(canonical_invariants(HnfMatrix(3, {0, 2, 0}, 0, 0, 0)) == InvariantTuple{2, 0, 0, 0, 0});
  CHECK_THROWS_AS(canonical_invariants(HnfMatrix(2, {0, 0, 1}, 0, 0, 0)), NotAnIdeal);
}

TEST_CASE("round trip and idempotence") {
  for (Int p : {2, 3, 5})
    for (int n = 0; n <= 8; ++n)
      for (const auto& t : enumerate_tuples(n)) {
        const auto m = tuple_to_matrix(t, p);
        const auto back = canonical_invariants(m);
        REQUIRE(back == t);
        CHECK(canonical_invariants(tuple_to_matrix(back, p)) == back);
      }
}

TEST_CASE("canonical invariants classify orbits") {
  for (Int p : {2, 3})
    for (int n = 0; n <= 5; ++n) {
      const auto part = orbits::orbit_partition(p, n);
      std::map<InvariantTuple, std::size_t> cell_of_tuple;
      for (std::size_t c = 0; c < part.size(); ++c) {
        const auto t = canonical_invariants(part.representative(c));
        for (const auto& m : part.orbits()[c]) REQUIRE(canonical_invariants(m) == t);
        CHECK(cell_of_tuple.emplace(t, c).second);
      }
      const auto ts = enumerate_tuples(n);
      CHECK(cell_of_tuple.size() == ts.size());
      for (const auto& t : ts) {
        REQUIRE(cell_of_tuple.count(t) == 1);
        CHECK(part.cell_of(tuple_to_matrix(t, p)) == cell_of_tuple.at(t));
      }
    }
}

TEST_CASE("constancy under generators") {
  for (Int p : {2, 3})
    for (int n = 0; n <= 4; ++n) {
      const auto gens = heisenberg::aut_generators(p, n);
      for (const auto& m : lattice::enumerate_ideals(p, n))
        for (const auto& g : gens) REQUIRE(canonical_invariants(heisenberg::apply_aut(m, g)) == canonical_invariants(m));
    }
}

TEST_CASE("orbit-search fallback agrees with the direct reduction") {
  for (Int p : {2, 3})
    for (int n = 0; n <= 4; ++n) {
      const auto part = orbits::orbit_partition(p, n);
      for (const auto& m : lattice::enumerate_ideals(p, n))
        REQUIRE(canonical_invariants_by_orbit(m, part) == canonical_invariants(m));
    }
}

TEST_CASE("tuple text format") {
  CHECK(parse_tuple("0,0,1,0,0") == InvariantTuple{0, 0, 1, 0, 0});
  CHECK(parse_tuple("2, 1, 3, 2, 1") == InvariantTuple{2, 1, 3, 2, 1});
  CHECK(format_tuple({2, 1, 3, 2, 1}) == "2,1,3,2,1");
  CHECK_THROWS_AS(parse_tuple("0,0,1,0"), ParseError);
  CHECK_THROWS_AS(parse_tuple("0,0,1,0,0,0"), ParseError);
  CHECK_THROWS_AS(parse_tuple("0,0,a,0,0"), ParseError);
}
