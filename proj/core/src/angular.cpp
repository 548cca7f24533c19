#include "readout/angular.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace readout::angular {

namespace {

constexpr int kMaxFact = 64;

const std::array<double, kMaxFact>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFact> f{};
    f[0] = 1.0;
    for (int i = 1; i < kMaxFact; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

double fact(double x) {
  const int n = static_cast<int>(std::lround(x));
  if (n < 0 || std::abs(x - n) > 1e-9 || n >= kMaxFact) {
    throw std::invalid_argument("angular: factorial argument out of range");
  }
  return factorials()[n];
}

bool is_half_integer(double x) {
  return std::abs(2.0 * x - std::lround(2.0 * x)) < 1e-9;
}

bool triangle_ok(double a, double b, double c) {
  return c >= std::abs(a - b) - 1e-9 && c <= a + b + 1e-9 &&
         is_half_integer(a + b + c) &&
         std::abs(std::remainder(a + b + c, 1.0)) < 1e-9;  // integer perimeter
}

// sqrt of the triangle coefficient Delta(abc)
double triangle_coeff(double a, double b, double c) {
  return std::sqrt(fact(a + b - c) * fact(a - b + c) * fact(-a + b + c) /
                   fact(a + b + c + 1.0));
}

}  // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double j, double m) {
  if (!is_half_integer(j1) || !is_half_integer(j2) || !is_half_integer(j) ||
      !is_half_integer(m1) || !is_half_integer(m2) || !is_half_integer(m)) {
    throw std::invalid_argument("angular: arguments must be (half-)integers");
  }
  if (std::abs(m1 + m2 - m) > 1e-9) return 0.0;
  if (std::abs(m1) > j1 + 1e-9 || std::abs(m2) > j2 + 1e-9 || std::abs(m) > j + 1e-9) return 0.0;
  if (!triangle_ok(j1, j2, j)) return 0.0;

  const double prefactor =
      std::sqrt((2.0 * j + 1.0) * fact(j1 + j2 - j) * fact(j1 - j2 + j) * fact(-j1 + j2 + j) /
                fact(j1 + j2 + j + 1.0)) *
      std::sqrt(fact(j1 + m1) * fact(j1 - m1) * fact(j2 + m2) * fact(j2 - m2) * fact(j + m) *
                fact(j - m));

  const int k_min = static_cast<int>(std::lround(
      std::max({0.0, j2 - j - m1, j1 + m2 - j})));
  const int k_max = static_cast<int>(std::lround(
      std::min({j1 + j2 - j, j1 - m1, j2 + m2})));

  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double denom = fact(k) * fact(j1 + j2 - j - k) * fact(j1 - m1 - k) *
                         fact(j2 + m2 - k) * fact(j - j2 + m1 + k) * fact(j - j1 - m2 + k);
    sum += ((k % 2 == 0) ? 1.0 : -1.0) / denom;
  }
  return prefactor * sum;
}

double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
  const double phase_exp = j1 - j2 - m3;
  const double phase = (std::lround(phase_exp) % 2 == 0) ? 1.0 : -1.0;
  return phase / std::sqrt(2.0 * j3 + 1.0) * clebsch_gordan(j1, m1, j2, m2, j3, -m3);
}

double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6) {
  if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) ||
      !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3)) {
    return 0.0;
  }

  const double pre = triangle_coeff(j1, j2, j3) * triangle_coeff(j1, j5, j6) *
                     triangle_coeff(j4, j2, j6) * triangle_coeff(j4, j5, j3);

  const double s1 = j1 + j2 + j3;
  const double s2 = j1 + j5 + j6;
  const double s3 = j4 + j2 + j6;
  const double s4 = j4 + j5 + j3;
  const double q1 = j1 + j2 + j4 + j5;
  const double q2 = j2 + j3 + j5 + j6;
  const double q3 = j1 + j3 + j4 + j6;

  const int t_min = static_cast<int>(std::lround(std::max({s1, s2, s3, s4})));
  const int t_max = static_cast<int>(std::lround(std::min({q1, q2, q3})));

  double sum = 0.0;
  for (int t = t_min; t <= t_max; ++t) {
    const double denom = fact(t - s1) * fact(t - s2) * fact(t - s3) * fact(t - s4) *
                         fact(q1 - t) * fact(q2 - t) * fact(q3 - t);
    sum += ((t % 2 == 0) ? 1.0 : -1.0) * fact(t + 1.0) / denom;
  }
  return pre * sum;
}

}  // namespace readout::angular
