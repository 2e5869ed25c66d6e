#include "nilzeta/lattice.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include "nilzeta/errors.hpp"

namespace nilzeta::lattice {

Mat3 identity_matrix() { return Mat3{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}; }

Vec3 row_times(const Vec3& v, const Mat3& a) {
  Vec3 r{0, 0, 0};
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) r[j] = checked_add(r[j], checked_mul(v[k], a[k][j]));
  return r;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i) r[i] = row_times(a[i], b);
  return r;
}

Int determinant(const Mat3& a) {
  auto minor = [&](int r0, int r1, int c0, int c1) {
    return checked_add(checked_mul(a[r0][c0], a[r1][c1]), -checked_mul(a[r0][c1], a[r1][c0]));
  };
  Int d = checked_mul(a[0][0], minor(1, 2, 1, 2));
  d = checked_add(d, -checked_mul(a[0][1], minor(1, 2, 0, 2)));
  d = checked_add(d, checked_mul(a[0][2], minor(1, 2, 0, 1)));
  return d;
}

HnfMatrix::HnfMatrix(Int p, std::array<int, 3> exponents, Int a12, Int a13, Int a23)
    : p_(p), n_(exponents), a12_(a12), a13_(a13), a23_(a23) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  for (int e : n_)
    if (e < 0) throw InvalidArgument("HNF exponents must be nonnegative");
  ipow(p, index_exponent());  // overflow guard
  const Int d2 = diagonal(1), d3 = diagonal(2);
  if (a12 < 0 || a12 >= d2 || a13 < 0 || a13 >= d3 || a23 < 0 || a23 >= d3)
    throw InvalidArgument("HNF off-diagonal entries out of range");
}

Int HnfMatrix::diagonal(int i) const { return ipow(p_, n_.at(static_cast<std::size_t>(i))); }

Int HnfMatrix::index() const { return ipow(p_, index_exponent()); }

Mat3 HnfMatrix::rows() const {
  return Mat3{Vec3{diagonal(0), a12_, a13_}, Vec3{0, diagonal(1), a23_}, Vec3{0, 0, diagonal(2)}};
}

std::size_t HnfMatrixHash::operator()(const HnfMatrix& m) const noexcept {
  std::size_t h = std::hash<Int>{}(m.p());
  auto mix = [&h](std::uint64_t v) { h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  mix(static_cast<std::uint64_t>(m.n1()) | (static_cast<std::uint64_t>(m.n2()) << 16) |
      (static_cast<std::uint64_t>(m.n3()) << 32));
  mix(static_cast<std::uint64_t>(m.a12()));
  mix(static_cast<std::uint64_t>(m.a13()));
  mix(static_cast<std::uint64_t>(m.a23()));
  return h;
}

namespace {

void sub_multiple(Vec3& target, const Vec3& source, Int q) {
  if (q == 0) return;
  for (int j = 0; j < 3; ++j) target[j] = checked_add(target[j], -checked_mul(q, source[j]));
}

Int abs_value(Int a) { return a < 0 ? -a : a; }

}  // namespace

Mat3 hnf_rows(std::span<const Vec3> input) {
  if (input.size() < 3) throw SingularMatrix("fewer than three generators cannot span a full lattice");
  std::vector<Vec3> a(input.begin(), input.end());
  const std::size_t k = a.size();

  for (std::size_t col = 0; col < 3; ++col) {
    const std::size_t r = col;
    // Euclid down the column until only row r is nonzero there.
    for (;;) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i) {
        if (a[i][col] == 0) continue;
        if (best == k || abs_value(a[i][col]) < abs_value(a[best][col])) best = i;
      }
      if (best == k) throw SingularMatrix("generator matrix is singular");
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (a[i][col] == 0) continue;
        sub_multiple(a[i], a[r], floor_div(a[i][col], a[r][col]));
        if (a[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][col] < 0)
      for (auto& x : a[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) sub_multiple(a[i], a[r], floor_div(a[i][col], a[r][col]));
  }
  return Mat3{a[0], a[1], a[2]};
}

namespace {

int exact_log(Int d, Int p) {
  int e = 0;
  while (d % p == 0) {
    d /= p;
    ++e;
  }
  return d == 1 ? e : -1;
}

HnfMatrix to_hnf_matrix(const Mat3& h, Int p) {
  std::array<int, 3> n{};
  for (int i = 0; i < 3; ++i) {
    n[static_cast<std::size_t>(i)] = exact_log(h[i][i], p);
    if (n[static_cast<std::size_t>(i)] < 0)
      throw NotPPower("lattice index is not a power of " + std::to_string(p) + " (diagonal entry " +
                      std::to_string(h[i][i]) + ")");
  }
  return HnfMatrix(p, n, h[0][1], h[0][2], h[1][2]);
}

}  // namespace

HnfMatrix hnf(const Mat3& rows, Int p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  return to_hnf_matrix(hnf_rows(std::span<const Vec3>(rows.data(), rows.size())), p);
}

HnfMatrix hnf_with_modulus(std::span<const Vec3> rows, Int p, int e) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  const Int q = ipow(p, e);
  std::vector<Vec3> stacked;
  stacked.reserve(rows.size() + 3);
  for (const auto& r : rows) stacked.push_back(Vec3{mod_floor(r[0], q), mod_floor(r[1], q), mod_floor(r[2], q)});
  stacked.push_back(Vec3{q, 0, 0});
  stacked.push_back(Vec3{0, q, 0});
  stacked.push_back(Vec3{0, 0, q});
  return to_hnf_matrix(hnf_rows(stacked), p);
}

std::vector<HnfMatrix> enumerate_sublattices(Int p, int n) {
  if (n < 0) throw InvalidArgument("index exponent must be nonnegative");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  ipow(p, n);
  std::vector<HnfMatrix> out;
  for (int n1 = 0; n1 <= n; ++n1) {
    for (int n2 = 0; n1 + n2 <= n; ++n2) {
      const int n3 = n - n1 - n2;
      const Int d2 = ipow(p, n2), d3 = ipow(p, n3);
      for (Int a12 = 0; a12 < d2; ++a12)
        for (Int a13 = 0; a13 < d3; ++a13)
          for (Int a23 = 0; a23 < d3; ++a23) out.emplace_back(p, std::array<int, 3>{n1, n2, n3}, a12, a13, a23);
    }
  }
  return out;
}

bool is_ideal_hnf(const HnfMatrix& m) {
  const int v12 = valuation(m.a12(), m.p());
  return m.n3() <= m.n1() && m.n3() <= m.n2() && v12 >= m.n3();
}

std::vector<HnfMatrix> enumerate_ideals(Int p, int n) {
  if (n < 0) throw InvalidArgument("index exponent must be nonnegative");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  ipow(p, n);
  // Same order as enumerate_sublattices, skipping non-ideals without
  // materializing them.
  std::vector<HnfMatrix> out;
  for (int n1 = 0; n1 <= n; ++n1) {
    for (int n2 = 0; n1 + n2 <= n; ++n2) {
      const int n3 = n - n1 - n2;
      if (n3 > n1 || n3 > n2) continue;
      const Int d2 = ipow(p, n2), d3 = ipow(p, n3);
      const Int step = ipow(p, n3);
      for (Int a12 = 0; a12 < d2; a12 += step)
        for (Int a13 = 0; a13 < d3; ++a13)
          for (Int a23 = 0; a23 < d3; ++a23) out.emplace_back(p, std::array<int, 3>{n1, n2, n3}, a12, a13, a23);
    }
  }
  return out;
}

bool contains(const HnfMatrix& m, const Vec3& v) {
  const Mat3 rows = m.rows();
  Vec3 w = v;
  for (int i = 0; i < 3; ++i) {
    const Int d = rows[i][i];
    if (w[i] % d != 0) return false;
    sub_multiple(w, rows[i], w[i] / d);
  }
  return true;
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_mul_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  return __builtin_add_overflow(a, b, &r) ? std::numeric_limits<std::uint64_t>::max() : r;
}

std::uint64_t sat_pow(std::uint64_t p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, p);
  return r;
}

}  // namespace

std::uint64_t sublattice_count(Int p, int n) {
  std::uint64_t total = 0;
  for (int n1 = 0; n1 <= n; ++n1)
    for (int n2 = 0; n1 + n2 <= n; ++n2) {
      const int n3 = n - n1 - n2;
      total = sat_add(total, sat_pow(static_cast<std::uint64_t>(p), n2 + 2 * n3));
    }
  return total;
}

std::uint64_t ideal_count(Int p, int n) {
  std::uint64_t total = 0;
  for (int n1 = 0; n1 <= n; ++n1)
    for (int n2 = 0; n1 + n2 <= n; ++n2) {
      const int n3 = n - n1 - n2;
      if (n3 > n1 || n3 > n2) continue;
      total = sat_add(total, sat_pow(static_cast<std::uint64_t>(p), n2 + n3));
    }
  return total;
}

Mat3 parse_matrix(std::string_view text) {
  std::vector<Int> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view field = text.substr(pos, end - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw ParseError("malformed matrix entry '" + std::string(field) + "'");
    values.push_back(v);
    pos = end + 1;
  }
  if (values.size() != 9)
    throw ParseError("matrix text needs 9 comma-separated integers, got " + std::to_string(values.size()));
  Mat3 m{};
  for (std::size_t i = 0; i < 9; ++i) m[i / 3][i % 3] = values[i];
  return m;
}

std::string format_matrix(const Mat3& m) {
  std::string s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i + j > 0) s += ',';
      s += std::to_string(m[i][j]);
    }
  return s;
}

std::string format_matrix(const HnfMatrix& m) { return format_matrix(m.rows()); }

}  // namespace nilzeta::lattice
