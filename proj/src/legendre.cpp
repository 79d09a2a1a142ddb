#include "icrack/legendre.hpp"

#include "icrack/error.hpp"

#include <cmath>

namespace icrack::legendre {

namespace {

std::vector<std::vector<double>> monomial_table(int n) {
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  if (n > 0) p[0][0] = 1.0;
  if (n > 1) p[1][1] = 1.0;
  for (int k = 1; k + 1 < n; ++k) {
    for (int j = 0; j < n; ++j) {
      double v = -k * p[k - 1][j];
      if (j > 0) v += (2.0 * k + 1.0) * p[k][j - 1];
      p[k + 1][j] = v / (k + 1.0);
    }
  }
  return p;
}

}  // namespace

void derivatives(double x, int order, std::span<double> out) {
  if (order < 0 || order > 3) throw InvalidArgument("Legendre derivative order must be 0..3");
  const int n = static_cast<int>(out.size());
  if (n == 0) return;
  double d[4][2]{};  // d[m][0] = P_{k-1}^(m), d[m][1] = P_k^(m)
  d[0][0] = 0.0;
  d[0][1] = 1.0;  // k = 0
  out[0] = order == 0 ? 1.0 : 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    double next[4];
    for (int m = 0; m <= order; ++m) {
      double v = (2.0 * k + 1.0) * (x * d[m][1] + (m > 0 ? m * d[m - 1][1] : 0.0));
      v -= k * d[m][0];
      next[m] = v / (k + 1.0);
    }
    for (int m = 0; m <= order; ++m) {
      d[m][0] = d[m][1];
      d[m][1] = next[m];
    }
    out[k + 1] = d[order][1];
  }
}

void second_kind(double x, std::span<double> out) {
  if (!(std::abs(x) < 1.0)) throw InvalidArgument("second-kind Legendre needs |x| < 1");
  const int n = static_cast<int>(out.size());
  if (n == 0) return;
  out[0] = 0.5 * std::log((1.0 + x) / (1.0 - x));
  if (n > 1) out[1] = x * out[0] - 1.0;
  for (int k = 1; k + 1 < n; ++k) {
    out[k + 1] = ((2.0 * k + 1.0) * x * out[k] - k * out[k - 1]) / (k + 1.0);
  }
}

std::vector<double> to_monomial(std::span<const double> c) {
  const int n = static_cast<int>(c.size());
  const auto p = monomial_table(n);
  std::vector<double> m(n, 0.0);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j <= k; ++j) m[j] += c[k] * p[k][j];
  }
  return m;
}

std::vector<double> from_monomial(std::span<const double> m) {
  const int n = static_cast<int>(m.size());
  const auto p = monomial_table(n);
  std::vector<double> rest(m.begin(), m.end());
  std::vector<double> c(n, 0.0);
  for (int k = n - 1; k >= 0; --k) {
    c[k] = rest[k] / p[k][k];
    for (int j = 0; j <= k; ++j) rest[j] -= c[k] * p[k][j];
  }
  return c;
}

}  // namespace icrack::legendre
