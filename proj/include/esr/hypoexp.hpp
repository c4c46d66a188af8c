#pragma once

#include <span>
#include <vector>

namespace esr {

// Sums of independent exponentials with distinct means lambda_i. Every
// quantity here is a combination
//
//   sum_i f(lambda_i) * prod_{j != i} lambda_i / (lambda_i - lambda_j)
//
// whose weights alternate in sign and grow quickly as the means cluster
// (they reach ~1e18 for the 100-Eve geometry). Evaluation starts in double
// and escalates to multiprecision until the cancellation leaves at least
// 12 correct digits.

struct SeparatedMeans {
  std::vector<double> values;
  bool jittered = false;
};

/// Applies the clustered-means policy: any group of values closer than
/// rel_tol * max(values) is spread to relative spacing rel_spacing, in
/// ascending order, anchored at the group's smallest value. Input order is
/// preserved in the output. Throws std::invalid_argument on non-positive
/// or non-finite input.
SeparatedMeans separate_clustered(std::span<const double> values,
                                  double rel_tol = 1e-9, double rel_spacing = 1e-6);

/// prod_{j != i} lambda_i / (lambda_i - lambda_j) for each i, in double.
/// Large K or clustered means make these huge; callers that need the
/// weighted sums should use the functions below instead.
std::vector<double> hypoexp_weights(std::span<const double> lambda);

/// sum_i w_i; one by construction. Exposed for verification.
double hypoexp_weight_sum(std::span<const double> lambda);

/// Density of sum_i Exp(mean lambda_i) at x >= 0.
double hypoexp_pdf(std::span<const double> lambda, double x);

/// Distribution function of the same sum.
double hypoexp_cdf(std::span<const double> lambda, double x);

/// E[log2(1 + S)] for S hypoexponential with means lambda:
/// sum_i w_i * g(1/lambda_i) / ln 2.
double hypoexp_expected_log2_1p(std::span<const double> lambda);

/// sum_i w_i * log2(values_i), with weights built from `values`.
double hypoexp_weighted_log2(std::span<const double> values);

} // namespace esr
