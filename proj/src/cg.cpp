#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "reflectron/errors.hpp"
#include "reflectron/repthy.hpp"

namespace reflectron {

namespace mp = boost::multiprecision;

namespace {

mp::cpp_int factorial(int k) {
  static std::mutex mutex;
  static std::vector<mp::cpp_int> table{1};
  std::lock_guard<std::mutex> lock(mutex);
  if (k < 0) throw DomainError("negative factorial argument");
  while (static_cast<int>(table.size()) <= k)
    table.push_back(table.back() * static_cast<unsigned>(table.size()));
  return table[k];
}

double to_double(const mp::cpp_rational& r) {
  mp::cpp_int num = mp::numerator(r);
  mp::cpp_int den = mp::denominator(r);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  const long shift_n = std::max<long>(0, static_cast<long>(mp::msb(num)) - 62);
  const long shift_d = std::max<long>(0, static_cast<long>(mp::msb(den)) - 62);
  const double value =
      std::ldexp(static_cast<double>(num >> shift_n) / static_cast<double>(den >> shift_d),
                 static_cast<int>(shift_n - shift_d));
  return negative ? -value : value;
}

void require_label(int two_j, int two_m) {
  if (two_j < 0 || std::abs(two_m) > two_j || (two_j - two_m) % 2 != 0)
    throw DomainError("invalid spin label (2j=" + std::to_string(two_j) +
                      ", 2m=" + std::to_string(two_m) + ")");
}

}  // namespace

double cg_su2(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
  require_label(two_j1, two_m1);
  require_label(two_j2, two_m2);
  require_label(two_J, two_M);
  if (two_M != two_m1 + two_m2) return 0.0;
  if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) return 0.0;
  if ((two_j1 + two_j2 + two_J) % 2 != 0) return 0.0;

  const int a = (two_J + two_j1 - two_j2) / 2;  // J + j1 - j2
  const int b = (two_J - two_j1 + two_j2) / 2;  // J - j1 + j2
  const int c = (two_j1 + two_j2 - two_J) / 2;  // j1 + j2 - J
  const int s = (two_j1 + two_j2 + two_J) / 2 + 1;
  const int jm1 = (two_j1 - two_m1) / 2, jp1 = (two_j1 + two_m1) / 2;
  const int jm2 = (two_j2 - two_m2) / 2, jp2 = (two_j2 + two_m2) / 2;
  const int Jm = (two_J - two_M) / 2, Jp = (two_J + two_M) / 2;

  mp::cpp_rational sum = 0;
  // k runs over all values keeping every factorial argument nonnegative.
  const int t1 = (two_J - two_j2 + two_m1) / 2;   // J - j2 + m1
  const int t2 = (two_J - two_j1 - two_m2) / 2;   // J - j1 - m2
  const int k_min = std::max({0, -t1, -t2});
  const int k_max = std::min({c, jm1, jp2});
  for (int k = k_min; k <= k_max; ++k) {
    const mp::cpp_int den = factorial(k) * factorial(c - k) * factorial(jm1 - k) *
                            factorial(jp2 - k) * factorial(t1 + k) * factorial(t2 + k);
    const mp::cpp_rational term(mp::cpp_int(1), den);
    if (k % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  if (sum == 0) return 0.0;
  const mp::cpp_rational pref(
      mp::cpp_int(two_J + 1) * factorial(a) * factorial(b) * factorial(c) * factorial(Jp) *
          factorial(Jm) * factorial(jm1) * factorial(jp1) * factorial(jm2) * factorial(jp2),
      factorial(s));
  const mp::cpp_rational squared = pref * sum * sum;
  const double magnitude = std::sqrt(to_double(squared));
  return sum > 0 ? magnitude : -magnitude;
}

double magic_sum_check(int two_j) {
  if (two_j < 0) throw DomainError("spin must be nonnegative");
  double total = 0.0;
  for (int two_m = -two_j; two_m <= two_j; two_m += 2) {
    const int j_minus_m = (two_j - two_m) / 2;
    const double sign = (j_minus_m % 2 == 0) ? 1.0 : -1.0;
    total += sign * cg_su2(two_j, two_m, two_j, -two_m, 0, 0);
  }
  return total;
}

}  // namespace reflectron
