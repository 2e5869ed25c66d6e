#include "nilzeta/canonical.hpp"

#include <algorithm>
#include <charconv>

#include "nilzeta/errors.hpp"
#include "nilzeta/orbits.hpp"

namespace nilzeta::canonical {

bool InvariantTuple::valid() const {
  for (int e : {e1, e2, e3, e4, e5})
    if (e < 0) return false;
  return e4 <= e3 && e5 <= e3 && e5 <= e4 && e4 <= e5 + e1;
}

int weight(const InvariantTuple& t) { return t.e1 + 2 * t.e2 + 3 * t.e3; }

HnfMatrix tuple_to_matrix(const InvariantTuple& t, Int p) {
  if (!t.valid()) throw InvalidTuple("tuple " + format_tuple(t) + " violates the normal-form constraints");
  const Int a13 = t.e4 < t.e3 ? ipow(p, t.e4) : 0;
  const Int a23 = t.e5 < t.e3 ? ipow(p, t.e5) : 0;
  return HnfMatrix(p, {t.e1 + t.e2 + t.e3, t.e2 + t.e3, t.e3}, 0, a13, a23);
}

std::vector<InvariantTuple> enumerate_tuples(int n) {
  if (n < 0) throw InvalidArgument("weight must be nonnegative");
  std::vector<InvariantTuple> out;
  for (int e1 = 0; e1 <= n; ++e1)
    for (int e2 = 0; e1 + 2 * e2 <= n; ++e2) {
      const int rest = n - e1 - 2 * e2;
      if (rest % 3 != 0) continue;
      const int e3 = rest / 3;
      for (int e4 = 0; e4 <= e3; ++e4)
        for (int e5 = 0; e5 <= e4; ++e5)
          if (e4 <= e5 + e1) out.push_back({e1, e2, e3, e4, e5});
    }
  return out;
}

namespace {

using lattice::Mat3;

// Working copy of the generator matrix modulo q = p^{n+1}. The lattice
// contains p^n Z^3, so every entry is only meaningful modulo q and units
// modulo q are units of Z_p.
class Reducer {
 public:
  Reducer(const HnfMatrix& m) : p_(m.p()), q_(ipow(m.p(), m.index_exponent() + 1)), m_(m.rows()), n3_(m.n3()) {
    d3_ = ipow(p_, n3_);
  }

  Int at(int i, int j) const { return m_[i][j]; }
  int val(int i, int j) const { return std::min(valuation(m_[i][j], p_), n3_cap_); }
  int raw_val(int i, int j) const { return valuation(m_[i][j], p_); }
  void set_cap(int cap) { n3_cap_ = cap; }
  Int p() const { return p_; }
  Int q() const { return q_; }

  // Row operations (left multiplication by GL_3(Z_p)).
  void add_row(int dst, int src, Int k) {
    k = mod_floor(k, q_);
    for (int j = 0; j < 3; ++j) m_[dst][j] = mod_floor(m_[dst][j] + mul(k, m_[src][j]), q_);
  }
  void scale_row(int r, Int u) {
    for (int j = 0; j < 3; ++j) m_[r][j] = mul(m_[r][j], u);
  }
  void swap_rows(int a, int b) { std::swap(m_[a], m_[b]); }

  // Column operations on the first two columns (right multiplication by an
  // automorphism with v = 0); the last column picks up det(alpha).
  void add_col(int dst, int src, Int k) {
    k = mod_floor(k, q_);
    for (int i = 0; i < 3; ++i) m_[i][dst] = mod_floor(m_[i][dst] + mul(k, m_[i][src]), q_);
  }
  void scale_col(int c, Int u) {
    for (int i = 0; i < 3; ++i) {
      m_[i][c] = mul(m_[i][c], u);
      m_[i][2] = mul(m_[i][2], u);
    }
  }
  void swap_cols() {
    for (int i = 0; i < 3; ++i) {
      std::swap(m_[i][0], m_[i][1]);
      m_[i][2] = mod_floor(-m_[i][2], q_);
    }
  }

  // Restore row 3 to (0, 0, p^{n3}) and reduce the last column of rows 1, 2
  // into [0, p^{n3}).
  void tidy_third_column() {
    const Int unit = m_[2][2] / d3_;
    if (unit != 1) scale_row(2, mod_inverse(unit, q_));
    for (int i = 0; i < 2; ++i) add_row(i, 2, -(m_[i][2] / d3_));
  }

  Int unit_part(int i, int j) const {
    Int x = m_[i][j];
    while (x % p_ == 0) x /= p_;
    return x;
  }

 private:
  Int mul(Int a, Int b) const { return static_cast<Int>(mod_floor(static_cast<Int>((static_cast<__int128>(a) * b) % q_), q_)); }

  Int p_, q_;
  Mat3 m_;
  int n3_;
  Int d3_ = 1;
  int n3_cap_ = kInfiniteValuation;
};

}  // namespace

InvariantTuple canonical_invariants(const HnfMatrix& m) {
  if (!lattice::is_ideal_hnf(m)) throw NotAnIdeal(lattice::format_matrix(m) + " is not an ideal");
  const int n = m.index_exponent();
  if (n == 0) return {};
  const int bound = 4 * (n + 1);
  int passes = 0;
  auto tick = [&] {
    if (++passes > bound)
      throw ReductionDiverged("reduction of " + lattice::format_matrix(m) + " did not settle in " +
                              std::to_string(bound) + " passes");
  };

  Reducer r(m);
  const Int p = r.p();

  // Stage 1: Smith form of the top-left block.
  for (;;) {
    tick();
    if (r.at(0, 1) == 0 && r.at(1, 0) == 0 && r.raw_val(0, 0) <= r.raw_val(1, 1) && r.unit_part(0, 0) == 1 &&
        r.unit_part(1, 1) == 1)
      break;
    const int order[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    int bi = 0, bj = 0, bv = kInfiniteValuation;
    for (const auto& ij : order) {
      const int v = r.raw_val(ij[0], ij[1]);
      if (v < bv) {
        bv = v;
        bi = ij[0];
        bj = ij[1];
      }
    }
    if (bv == kInfiniteValuation) throw ReductionDiverged("top-left block vanished modulo p^{n+1}");
    if (bi == 1) r.swap_rows(0, 1);
    if (bj == 1) r.swap_cols();
    r.scale_row(0, mod_inverse(r.unit_part(0, 0), r.q()));
    const Int pivot = ipow(p, bv);
    r.add_row(1, 0, -(r.at(1, 0) / pivot));
    r.add_col(1, 0, -(r.at(0, 1) / pivot));
    if (r.at(1, 1) == 0) throw ReductionDiverged("top-left block is singular modulo p^{n+1}");
    r.scale_row(1, mod_inverse(r.unit_part(1, 1), r.q()));
  }
  const int small = r.raw_val(0, 0), large = r.raw_val(1, 1);
  r.swap_rows(0, 1);
  r.swap_cols();
  r.tidy_third_column();

  const int e3 = m.n3();
  InvariantTuple t{large - small, small - e3, e3, 0, 0};
  if (t.e2 < 0) throw ReductionDiverged("Smith form of " + lattice::format_matrix(m) + " contradicts the ideal condition");
  if (e3 == 0) return t;

  // Stage 2: normalize the last column (b1, b2) = (row 1, row 2) entries.
  r.set_cap(e3);
  const Int p_e1 = ipow(p, t.e1);
  for (;;) {
    tick();
    const int v1 = r.val(0, 2), v2 = r.val(1, 2);
    if (v1 < v2) {
      // row 2 += row 1; column 1 -= p^{e1} column 2 clears the new (2,1) entry.
      r.add_row(1, 0, 1);
      r.add_col(0, 1, -p_e1);
      r.tidy_third_column();
      continue;
    }
    t.e5 = v2;
    if (t.e5 == e3) {
      t.e4 = e3;
      break;
    }
    if (const Int w = r.unit_part(1, 2); w != 1) {
      // b2 -> b2 / w via the basis change diag(w, 1) against alpha = diag(1/w, 1).
      r.scale_row(0, w);
      r.scale_col(0, mod_inverse(w, r.q()));
      r.tidy_third_column();
      continue;
    }
    const int k = t.e1 + t.e5;
    if (v1 >= std::min(k, e3)) {
      if (k >= e3) {
        t.e4 = e3;
        break;
      }
      // b1 is a multiple of p^k; move it to exactly p^k with row 1 -= s p^{e1} row 2.
      const Int pk = ipow(p, k);
      const Int s = r.at(0, 2) / pk - 1;
      if (s != 0) {
        r.add_row(0, 1, -s * p_e1);
        r.add_col(1, 0, s);
        r.tidy_third_column();
        continue;
      }
      t.e4 = k;
      break;
    }
    const Int pk = ipow(p, k);
    if (const Int s = r.at(0, 2) / pk; k < e3 && s != 0) {
      r.add_row(0, 1, -s * p_e1);
      r.add_col(1, 0, s);
      r.tidy_third_column();
      continue;
    }
    if (const Int w = r.unit_part(0, 2); w != 1) {
      // b1 -> b1 / w via diag(1, w) against alpha = diag(1, 1/w).
      r.scale_row(1, w);
      r.scale_col(1, mod_inverse(w, r.q()));
      r.tidy_third_column();
      continue;
    }
    t.e4 = v1;
    break;
  }

  const HnfMatrix expected = tuple_to_matrix(t, p);
  const Mat3 want = expected.rows();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (r.at(i, j) != want[i][j])
        throw ReductionDiverged("reduction of " + lattice::format_matrix(m) + " ended outside the normal form of " +
                                format_tuple(t));
  return t;
}

InvariantTuple canonical_invariants_by_orbit(const HnfMatrix& m, const orbits::OrbitPartition& partition) {
  if (!lattice::is_ideal_hnf(m)) throw NotAnIdeal(lattice::format_matrix(m) + " is not an ideal");
  const std::size_t target = partition.cell_of(m);
  std::vector<InvariantTuple> hits;
  for (const auto& t : enumerate_tuples(m.index_exponent()))
    if (partition.cell_of(tuple_to_matrix(t, m.p())) == target) hits.push_back(t);
  if (hits.size() != 1)
    throw ReductionDiverged(std::to_string(hits.size()) + " normal-form tuples share the orbit of " +
                            lattice::format_matrix(m));
  return hits.front();
}

InvariantTuple parse_tuple(std::string_view text) {
  int e[5];
  std::size_t pos = 0;
  for (int i = 0; i < 5; ++i) {
    std::size_t end = text.find(',', pos);
    if ((end == std::string_view::npos) != (i == 4)) throw ParseError("tuple text needs exactly 5 integers");
    if (end == std::string_view::npos) end = text.size();
    std::string_view field = text.substr(pos, end - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), e[i]);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw ParseError("malformed tuple entry '" + std::string(field) + "'");
    pos = end + 1;
  }
  return {e[0], e[1], e[2], e[3], e[4]};
}

std::string format_tuple(const InvariantTuple& t) {
  return std::to_string(t.e1) + "," + std::to_string(t.e2) + "," + std::to_string(t.e3) + "," + std::to_string(t.e4) +
         "," + std::to_string(t.e5);
}

}  // namespace nilzeta::canonical
