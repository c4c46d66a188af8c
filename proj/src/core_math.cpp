#include "esr/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "esr/detail/expint_impl.hpp"

namespace esr {

namespace {

constexpr double kSeriesCutoff = 1.0;
constexpr double kAsymptoticCutoff = 40.0;

} // namespace

double scaled_neg_ei(double mu) {
  if (!std::isfinite(mu) || mu <= 0.0)
    throw std::domain_error("scaled_neg_ei: mu must be positive and finite, got " +
                            std::to_string(mu));
  if (mu <= kSeriesCutoff)
    return std::exp(mu) * detail::e1_small(mu);
  if (mu <= kAsymptoticCutoff)
    return detail::scaled_e1_continued_fraction(mu);
  return detail::scaled_e1_asymptotic(mu);
}

double expint_ei(double x) {
  if (!std::isfinite(x) || x >= 0.0)
    throw std::domain_error("expint_ei: x must be negative and finite, got " +
                            std::to_string(x));
  const double mu = -x;
  if (mu <= kSeriesCutoff)
    return -detail::e1_small(mu);
  return -std::exp(-mu) * scaled_neg_ei(mu);
}

double GoodnessOfFit::critical_value() const {
  return ks_critical_value_1pct(sample_count);
}

double ks_critical_value_1pct(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("ks_critical_value_1pct: n must be positive");
  return 1.63 / std::sqrt(static_cast<double>(n));
}

GoodnessOfFit ks_test(std::span<const double> samples,
                      const std::function<double(double)> &cdf) {
  if (samples.empty())
    throw std::invalid_argument("ks_test: empty sample list");
  std::vector<double> sorted(samples.begin(), samples.end());
  if (std::any_of(sorted.begin(), sorted.end(), [](double v) { return std::isnan(v); }))
    throw std::invalid_argument("ks_test: NaN sample");
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    if (std::isnan(f))
      throw std::invalid_argument("ks_test: cdf returned NaN");
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }

  GoodnessOfFit fit;
  fit.statistic = std::clamp(d, 0.0, 1.0);
  fit.sample_count = sorted.size();
  fit.pass_at_1pct = fit.statistic < fit.critical_value();
  return fit;
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("pearson_correlation: length mismatch");
  if (x.size() < 2)
    throw std::invalid_argument("pearson_correlation: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i]))
      throw std::invalid_argument("pearson_correlation: NaN input");
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw std::invalid_argument("pearson_correlation: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

} // namespace esr
