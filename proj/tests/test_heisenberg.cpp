#include <random>

#include "doctest.h"
#include "nilzeta/errors.hpp"
#include "nilzeta/heisenberg.hpp"

using namespace nilzeta;
using namespace nilzeta::heisenberg;
using lattice::identity_matrix;

namespace {

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(Int k, const Vec3& a) { return {k * a[0], k * a[1], k * a[2]}; }

}  // namespace

TEST_CASE("bracket") {
  CHECK(bracket({1, 0, 0}, {0, 1, 0}) == Vec3{0, 0, 1});
  CHECK(bracket({0, 1, 0}, {1, 0, 0}) == Vec3{0, 0, -1});
  CHECK(bracket({2, 3, 5}, {1, 4, 7}) == Vec3{0, 0, 5});
  CHECK(bracket({0, 0, 1}, {1, 1, 1}) == Vec3{0, 0, 0});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> d(-20, 20);
  auto rv = [&] { return Vec3{d(rng), d(rng), d(rng)}; };
  for (int trial = 0; trial < 500; ++trial) {
    const Vec3 u = rv(), v = rv(), w = rv();
    const Int k = d(rng);
    CHECK(bracket(u, u) == Vec3{0, 0, 0});
    CHECK(bracket(u, v) == scale(-1, bracket(v, u)));
    CHECK(bracket(add(u, scale(k, w)), v) == add(bracket(u, v), scale(k, bracket(w, v))));
    const Vec3 jacobi = add(add(bracket(u, bracket(v, w)), bracket(v, bracket(w, u))), bracket(w, bracket(u, v)));
    CHECK(jacobi == Vec3{0, 0, 0});
    CHECK(bracket(bracket(u, v), w) == Vec3{0, 0, 0});
  }
}

TEST_CASE("bracket-closure ideal oracle") {
  CHECK(is_ideal_bracket(HnfMatrix::identity(2)));
  // Contains x and y but not [x, y] = z.
  CHECK_FALSE(is_ideal_bracket(HnfMatrix(2, {0, 0, 1}, 0, 0, 0)));
  CHECK(is_ideal_bracket(HnfMatrix(2, {2, 2, 1}, 2, 1, 1)));
  CHECK_FALSE(is_ideal_bracket(HnfMatrix(2, {0, 0, 2}, 0, 0, 0)));
  CHECK_FALSE(is_ideal_bracket(HnfMatrix(2, {1, 1, 1}, 1, 0, 0)));
  CHECK(is_ideal_bracket(HnfMatrix(2, {1, 1, 1}, 0, 0, 0)));
}

TEST_CASE("valuation ideal test agrees with bracket closure") {
  for (Int p : {2, 3})
    for (int n = 0; n <= 4; ++n)
      for (const auto& m : lattice::enumerate_sublattices(p, n)) REQUIRE(is_ideal_bracket(m) == lattice::is_ideal_hnf(m));
}

TEST_CASE("automorphism shape") {
  CHECK(is_automorphism_shape(identity_matrix(), 2));
  const Mat3 swap_plus{Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 1}};
  const Mat3 swap_minus{Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, -1}};
  CHECK_FALSE(is_automorphism_shape(swap_plus, 3));
  CHECK(is_automorphism_shape(swap_minus, 3));
  // Nonzero bottom row breaks bracket preservation.
  CHECK_FALSE(is_automorphism_shape(Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 0, 1}}, 3));
  // det(alpha) = 3 is not a unit at 3 but is at 2.
  const Mat3 three{Vec3{3, 0, 5}, Vec3{0, 1, 7}, Vec3{0, 0, 3}};
  CHECK_FALSE(is_automorphism_shape(three, 3));
  CHECK(is_automorphism_shape(three, 2));
  CHECK_FALSE(is_automorphism_shape(identity_matrix(), 4));
  CHECK_THROWS_AS(AutElement(swap_plus, 3), InvalidAutomorphism);
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(3, 2) == 2);
  CHECK(primitive_root(3, 0) == 2);
  CHECK(primitive_root(5, 3) == 2);
  CHECK(primitive_root(7, 2) == 3);
  CHECK(primitive_root(7, 2) == 3);  // cached path
  CHECK_THROWS_AS(primitive_root(2, 3), InvalidArgument);
}

TEST_CASE("generators") {
  for (Int p : {2, 3, 5})
    for (int n = 0; n <= 5; ++n) {
      const auto gens = aut_generators(p, n);
      CHECK(gens.size() == (p == 2 ? 9u : 7u));
      for (const auto& g : gens) {
        CHECK(is_automorphism_shape(g.matrix(), p));
        CHECK(g.p() == p);
      }
    }
  const auto g32 = aut_generators(3, 2);
  CHECK(g32[2].matrix()[0][0] == 2);
  CHECK(g32[3].matrix()[1][1] == 2);
  CHECK(aut_generators(2, 1).size() == 9);
}

TEST_CASE("apply_aut") {
  const HnfMatrix m(2, {1, 1, 1}, 0, 0, 0);
  CHECK(apply_aut(m, AutElement(identity_matrix(), 2)) == m);
  CHECK(apply_aut(m, AutElement::from_block(1, 0, 0, 1, 1, 0, 2)) == m);

  // An automorphism for p = 3 cannot act on a 2-adic lattice.
  CHECK_THROWS_AS(apply_aut(m, AutElement(identity_matrix(), 3)), InvalidAutomorphism);

  // Swapping x and y sends the ideal with a23 = 1 to the one with a13 = 1.
  const HnfMatrix b(2, {1, 1, 1}, 0, 0, 1);
  CHECK(apply_aut(b, AutElement(Mat3{Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, -1}}, 2)) == HnfMatrix(2, {1, 1, 1}, 0, 1, 0));
}

TEST_CASE("generators preserve index and the ideal property") {
  for (Int p : {2, 3})
    for (int n = 0; n <= 4; ++n) {
      const auto gens = aut_generators(p, n);
      for (const auto& m : lattice::enumerate_ideals(p, n))
        for (const auto& g : gens) {
          const auto img = apply_aut(m, g);
          REQUIRE(img.index() == m.index());
          REQUIRE(lattice::is_ideal_hnf(img));
        }
    }
}

TEST_CASE("unimodular generators agree with the plain integer image") {
  // det(A) = +-1 over Z, so the modulus shortcut must give hnf(rows * A).
  for (Int p : {2, 3})
    for (int n = 0; n <= 3; ++n)
      for (const auto& m : lattice::enumerate_sublattices(p, n))
        for (const auto& g : aut_generators(p, n)) {
          if (std::abs(lattice::determinant(g.matrix())) != 1) continue;
          REQUIRE(apply_aut(m, g) == lattice::hnf(lattice::multiply(m.rows(), g.matrix()), p));
        }
}

TEST_CASE("inverse words return to the start") {
  for (Int p : {2, 3})
    for (int n = 1; n <= 4; ++n) {
      const Int q = ipow(p, n);
      const auto gens = aut_generators(p, n);
      for (const auto& m : lattice::enumerate_ideals(p, n)) {
        // E12(1)^q acts trivially modulo p^n, so E12(1)^(q-1) inverts E12(1).
        for (std::size_t gi : {std::size_t{0}, std::size_t{1}}) {
          auto x = apply_aut(m, gens[gi]);
          for (Int k = 1; k < q; ++k) x = apply_aut(x, gens[gi]);
          CHECK(x == m);
        }
        // The sign element is an involution.
        const auto& sign = gens[gens.size() - 3];
        CHECK(apply_aut(apply_aut(m, sign), sign) == m);
      }
    }
}
