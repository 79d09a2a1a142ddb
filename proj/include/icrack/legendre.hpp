#pragma once

#include <span>
#include <vector>

namespace icrack::legendre {

/// P_k^(order)(x) for k = 0..out.size()-1, order 0..3.
void derivatives(double x, int order, std::span<double> out);

/// Legendre functions of the second kind Q_k(x), |x| < 1, k = 0..out.size()-1.
/// PV int_{-1}^{1} P_k(y) / (y - x) dy = -2 Q_k(x).
void second_kind(double x, std::span<double> out);

/// Coefficients of the monomials x^j in sum_k c_k P_k(x).
std::vector<double> to_monomial(std::span<const double> c);

/// Legendre coefficients of sum_j m_j x^j.
std::vector<double> from_monomial(std::span<const double> m);

}  // namespace icrack::legendre
