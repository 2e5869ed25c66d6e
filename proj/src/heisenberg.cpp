#include "nilzeta/heisenberg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "nilzeta/errors.hpp"

namespace nilzeta::heisenberg {

Vec3 bracket(const Vec3& u, const Vec3& v) {
  return Vec3{0, 0, checked_add(checked_mul(u[0], v[1]), -checked_mul(u[1], v[0]))};
}

bool is_ideal_bracket(const HnfMatrix& m) {
  static const Mat3 basis = lattice::identity_matrix();
  const Mat3 rows = m.rows();
  for (const auto& b : basis)
    for (const auto& r : rows)
      if (!lattice::contains(m, bracket(b, r))) return false;
  return true;
}

bool is_automorphism_shape(const Mat3& a, Int p) {
  if (!is_prime(p)) return false;
  if (a[2][0] != 0 || a[2][1] != 0) return false;
  const Int det_alpha = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (a[2][2] != det_alpha) return false;
  if (det_alpha % p == 0) return false;
  const Mat3 basis = lattice::identity_matrix();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vec3 lhs = bracket(a[i], a[j]);
      const Vec3 rhs = lattice::row_times(bracket(basis[i], basis[j]), a);
      if (lhs != rhs) return false;
    }
  return true;
}

AutElement::AutElement(const Mat3& a, Int p) : a_(a), p_(p) {
  if (!is_automorphism_shape(a, p))
    throw InvalidAutomorphism("matrix " + lattice::format_matrix(a) + " is not an automorphism at p = " +
                              std::to_string(p));
}

AutElement AutElement::from_block(Int a11, Int a12, Int a21, Int a22, Int v1, Int v2, Int p) {
  const Int det = a11 * a22 - a12 * a21;
  return AutElement(Mat3{Vec3{a11, a12, v1}, Vec3{a21, a22, v2}, Vec3{0, 0, det}}, p);
}

Int primitive_root(Int p, int n) {
  if (!is_prime(p) || p == 2) throw InvalidArgument("primitive roots are searched for odd primes only");
  const int m = std::max(n, 1);
  static std::mutex mutex;
  static std::map<std::pair<Int, int>, Int> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  }
  const Int q = ipow(p, m);
  const Int phi = q / p * (p - 1);
  Int found = 0;
  for (Int g = 2; g < q && found == 0; ++g) {
    if (g % p == 0) continue;
    Int x = g, order = 1;
    while (x != 1) {
      x = static_cast<Int>((static_cast<__int128>(x) * g) % q);
      ++order;
    }
    if (order == phi) found = g;
  }
  if (found == 0) throw Error("no primitive root found modulo " + std::to_string(q));
  std::lock_guard lock(mutex);
  cache.emplace(std::pair{p, m}, found);
  return found;
}

std::vector<AutElement> aut_generators(Int p, int n) {
  if (n < 0) throw InvalidArgument("n must be nonnegative");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  std::vector<Int> units;
  if (p == 2) {
    units = {5, -1};
  } else {
    units = {primitive_root(p, n)};
  }
  std::vector<AutElement> gens;
  gens.push_back(AutElement::from_block(1, 1, 0, 1, 0, 0, p));
  gens.push_back(AutElement::from_block(1, 0, 1, 1, 0, 0, p));
  for (Int g : units) {
    gens.push_back(AutElement::from_block(g, 0, 0, 1, 0, 0, p));
    gens.push_back(AutElement::from_block(1, 0, 0, g, 0, 0, p));
  }
  gens.push_back(AutElement::from_block(-1, 0, 0, 1, 0, 0, p));
  gens.push_back(AutElement::from_block(1, 0, 0, 1, 1, 0, p));
  gens.push_back(AutElement::from_block(1, 0, 0, 1, 0, 1, p));
  return gens;
}

HnfMatrix apply_aut(const HnfMatrix& m, const AutElement& a) {
  if (a.p() != m.p())
    throw InvalidAutomorphism("automorphism prime " + std::to_string(a.p()) + " does not match lattice prime " +
                              std::to_string(m.p()));
  const Mat3 image = lattice::multiply(m.rows(), a.matrix());
  return lattice::hnf_with_modulus(std::span<const Vec3>(image.data(), image.size()), m.p(), m.index_exponent());
}

}  // namespace nilzeta::heisenberg
