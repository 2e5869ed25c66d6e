#include "nilzeta/series.hpp"

#include <algorithm>
#include <string>

#include "nilzeta/errors.hpp"

namespace nilzeta::series {

LocalSeries::LocalSeries(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("a truncated series needs at least the constant term");
}

namespace {

std::vector<Int> poly_mul(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  return r;
}

// 1 - t^k
std::vector<Int> one_minus_power(int k) {
  std::vector<Int> r(static_cast<std::size_t>(k) + 1, 0);
  r.front() = 1;
  r.back() = -1;
  return r;
}

}  // namespace

LocalSeries local_factor_closed_form(int max_degree) {
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  std::vector<Int> den{1};
  for (int k : {1, 2, 3, 3, 4}) den = poly_mul(den, one_minus_power(k));

  // den has constant term 1, so c_k = -sum_{j>=1} den_j c_{k-j}.
  std::vector<Int> c(static_cast<std::size_t>(max_degree) + 1, 0);
  c[0] = 1;
  for (int k = 1; k <= max_degree; ++k) {
    Int acc = 0;
    const int top = std::min<int>(k, static_cast<int>(den.size()) - 1);
    for (int j = 1; j <= top; ++j) acc = checked_add(acc, checked_mul(-den[j], c[k - j]));
    c[k] = acc;
  }
  return LocalSeries(std::move(c));
}

LocalSeries series_multiply(const LocalSeries& a, const LocalSeries& b) {
  const int d = std::min(a.max_degree(), b.max_degree());
  std::vector<Int> r(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i <= d; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= d; ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
  }
  return LocalSeries(std::move(r));
}

LocalSeries abelian_factor(int d, int max_degree) {
  if (d < 1) throw InvalidArgument("abelian_factor needs d >= 1");
  if (max_degree < 0) throw InvalidArgument("max_degree must be nonnegative");
  std::vector<Int> c(static_cast<std::size_t>(max_degree) + 1, 0);
  c[0] = 1;
  // Multiplying by 1/(1-t^i) in place: c_k += c_{k-i}, ascending k.
  for (int i = 1; i <= d; ++i)
    for (int k = i; k <= max_degree; ++k) c[k] = checked_add(c[k], c[k - i]);
  return LocalSeries(std::move(c));
}

GlobalCoefficients::GlobalCoefficients(std::vector<Int> values_from_one) : values_(std::move(values_from_one)) {}

Int GlobalCoefficients::operator()(Int n) const {
  if (n < 1 || n > bound()) throw InvalidArgument("index " + std::to_string(n) + " outside 1.." + std::to_string(bound()));
  return values_[static_cast<std::size_t>(n - 1)];
}

GlobalCoefficients global_coefficients(Int N) {
  if (N < 1) throw InvalidArgument("bound N must be at least 1");
  int max_exp = 0;
  for (Int x = N; x > 1; x /= 2) ++max_exp;
  return global_coefficients(N, local_factor_closed_form(std::max(max_exp, 1)));
}

GlobalCoefficients global_coefficients(Int N, const LocalSeries& local) {
  if (N < 1) throw InvalidArgument("bound N must be at least 1");
  const auto size = static_cast<std::size_t>(N) + 1;

  std::vector<std::uint32_t> spf(size, 0);
  for (std::size_t i = 2; i < size; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j < size; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }

  // g(n) = g(n / p^k) * c_k with p = spf(n), p^k || n; the cofactor is smaller
  // so a single ascending pass suffices.
  std::vector<Int> g(size, 0);
  g[1] = 1;
  for (std::size_t n = 2; n < size; ++n) {
    const std::size_t p = spf[n];
    std::size_t m = n;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (k > local.max_degree()) throw InvalidArgument("local series too short for exponent " + std::to_string(k));
    g[n] = checked_mul(g[m], local[k]);
  }
  g.erase(g.begin());
  return GlobalCoefficients(std::move(g));
}

long double reference_constant() {
  // zeta(2) = pi^2/6 and zeta(4) = pi^4/90 give zeta(2) zeta(4) = pi^6/540.
  constexpr long double pi = 3.14159265358979323846264338327950288L;
  constexpr long double zeta3 = 1.20205690315959428539973816151144999L;
  const long double pi2 = pi * pi;
  return pi2 * pi2 * pi2 / 540.0L * zeta3 * zeta3;
}

long double AsymptoticReport::relative_error() const {
  const long double d = ratio - target_constant;
  return (d < 0 ? -d : d) / target_constant;
}

AsymptoticReport summatory(Int N) {
  const auto g = global_coefficients(N);
  Int s = 0;
  for (Int v : g.values()) s = checked_add(s, v);
  AsymptoticReport r;
  r.bound = N;
  r.summatory = s;
  r.ratio = static_cast<long double>(s) / static_cast<long double>(N);
  r.target_constant = reference_constant();
  return r;
}

}  // namespace nilzeta::series
