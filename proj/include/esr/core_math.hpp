#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace esr {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

constexpr double euler_gamma() noexcept { return kEulerGamma; }

/// Exponential integral Ei(x) = -int_{-x}^inf e^{-t}/t dt for x < 0.
/// Throws std::domain_error for x >= 0 or non-finite x.
double expint_ei(double x);

/// g(mu) = -e^{mu} Ei(-mu) = e^{mu} E1(mu), evaluated without forming e^{mu}
/// for large mu. g(1/lambda)/ln2 is the ergodic rate (bits) of an
/// exponentially distributed SNR with mean lambda.
/// Throws std::domain_error for mu <= 0 or non-finite mu.
double scaled_neg_ei(double mu);

/// Result of a one-sample Kolmogorov-Smirnov test.
struct GoodnessOfFit {
  double statistic = 0.0;
  std::size_t sample_count = 0;
  bool pass_at_1pct = false;

  double critical_value() const;
};

/// Asymptotic 1% two-sided KS critical value, 1.63 / sqrt(n).
double ks_critical_value_1pct(std::size_t n);

/// One-sample KS test of `samples` against a continuous `cdf`.
/// Samples are copied and sorted; NaN samples or an empty list throw
/// std::invalid_argument.
GoodnessOfFit ks_test(std::span<const double> samples,
                      const std::function<double(double)> &cdf);

/// Sample Pearson correlation. Throws std::invalid_argument on length
/// mismatch, fewer than two points, NaN, or zero variance.
double pearson_correlation(std::span<const double> x, std::span<const double> y);

} // namespace esr
