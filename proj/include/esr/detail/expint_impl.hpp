#pragma once

// Precision-generic kernels behind scaled_neg_ei. Instantiated for double
// and for the multiprecision types used by the hypoexponential combination.

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>

namespace esr::detail {

// Ein(mu) = sum_{i>=1} (-1)^{i+1} mu^i / (i * i!). Only used for mu <= 1,
// where the alternating terms shrink monotonically.
template <class Real> Real ein_series(const Real &mu) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real term = mu; // mu^i / i!
  Real sum = mu;
  for (int i = 2; i < 100000; ++i) {
    term *= mu / i;
    const Real contrib = term / i;
    if (i % 2 == 0)
      sum -= contrib;
    else
      sum += contrib;
    if (abs(contrib) <= eps * abs(sum))
      break;
  }
  return sum;
}

// E1(mu) for 0 < mu <= 1.
template <class Real> Real e1_small(const Real &mu) {
  using std::log;
  return -boost::math::constants::euler<Real>() - log(mu) + ein_series(mu);
}

// e^{mu} E1(mu) by the continued fraction
//   1/(mu+1- 1/(mu+3- 4/(mu+5- ...))), modified Lentz. Converges for mu >= 1.
template <class Real> Real scaled_e1_continued_fraction(const Real &mu) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  Real b = mu + 1;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (int i = 1; i < 100000; ++i) {
    const Real an = -Real(i) * i;
    b += 2;
    d = 1 / (an * d + b);
    c = b + an / c;
    const Real del = c * d;
    h *= del;
    if (abs(del - 1) <= eps)
      break;
  }
  return h;
}

// Divergent asymptotic series (1/mu) sum_k k!/(-mu)^k, truncated at the
// smallest term. Accurate to ~sqrt(2 pi mu) e^{-mu}, so double only.
inline double scaled_e1_asymptotic(double mu) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double next = -term * k / mu;
    if (std::abs(next) >= std::abs(term))
      break;
    term = next;
    sum += term;
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() * std::abs(sum))
      break;
  }
  return sum / mu;
}

template <class Real> Real scaled_neg_ei_generic(const Real &mu) {
  using std::exp;
  if (mu <= 1)
    return exp(mu) * e1_small(mu);
  return scaled_e1_continued_fraction(mu);
}

} // namespace esr::detail
