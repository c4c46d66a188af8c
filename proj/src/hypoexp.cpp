#include "esr/hypoexp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "esr/detail/expint_impl.hpp"

namespace esr {

namespace {

namespace mp = boost::multiprecision;

template <unsigned Digits>
using Float = mp::number<mp::cpp_bin_float<Digits>, mp::et_off>;

constexpr double kTargetRelError = 1e-12;

void check_means(std::span<const double> lambda) {
  if (lambda.empty())
    throw std::invalid_argument("hypoexponential: empty mean list");
  for (double v : lambda)
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("hypoexponential: means must be positive and finite");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (lambda[i] == lambda[j])
        throw std::invalid_argument("hypoexponential: means must be pairwise distinct");
}

// Largest log10 |w_i|, computed without forming the products.
double max_log10_weight(std::span<const double> x) {
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lw = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i)
        lw += std::log10(x[i]) - std::log10(std::abs(x[i] - x[j]));
    best = std::max(best, lw);
  }
  return best;
}

struct Combined {
  double value;
  double condition; // sum |terms| / |value|
};

template <class Real, class F> Combined combine_at(std::span<const double> x, const F &f) {
  using std::abs;
  const std::size_t k = x.size();
  Real sum = 0;
  Real magnitude = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Real xi = x[i];
    Real w = 1;
    for (std::size_t j = 0; j < k; ++j)
      if (j != i)
        w *= xi / (xi - Real(x[j]));
    const Real term = f(xi) * w;
    sum += term;
    magnitude += abs(term);
  }
  const double value = static_cast<double>(sum);
  double condition = 1.0;
  if (sum != 0)
    condition = static_cast<double>(magnitude / abs(sum));
  else if (magnitude != 0)
    condition = std::numeric_limits<double>::infinity();
  return {value, condition};
}

template <class Real> bool accurate_enough(const Combined &c, std::size_t k) {
  const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
  return c.condition * eps * static_cast<double>(k + 1) <= kTargetRelError;
}

// F must be callable with double and with every Float<> tier.
template <class F> double combine(std::span<const double> x, const F &f) {
  check_means(x);
  if (x.size() == 1)
    return f(x[0]);

  const Combined in_double = combine_at<double>(x, f);
  if (accurate_enough<double>(in_double, x.size()) && max_log10_weight(x) < 2.0)
    return in_double.value;

  const Combined t50 = combine_at<Float<50>>(x, f);
  if (accurate_enough<Float<50>>(t50, x.size()))
    return t50.value;
  const Combined t120 = combine_at<Float<120>>(x, f);
  if (accurate_enough<Float<120>>(t120, x.size()))
    return t120.value;
  const Combined t400 = combine_at<Float<400>>(x, f);
  if (accurate_enough<Float<400>>(t400, x.size()))
    return t400.value;
  return combine_at<Float<1200>>(x, f).value;
}

} // namespace

SeparatedMeans separate_clustered(std::span<const double> values, double rel_tol,
                                  double rel_spacing) {
  SeparatedMeans out{std::vector<double>(values.begin(), values.end()), false};
  for (double v : out.values)
    if (!std::isfinite(v) || v <= 0.0)
      throw std::invalid_argument("separate_clustered: values must be positive and finite");
  if (out.values.size() < 2)
    return out;

  std::vector<std::size_t> order(out.values.size());
  for (int pass = 0; pass < 16; ++pass) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return out.values[a] < out.values[b];
    });
    const double tol = rel_tol * out.values[order.back()];
    bool changed = false;
    std::size_t start = 0;
    while (start < order.size()) {
      std::size_t end = start + 1;
      while (end < order.size() &&
             out.values[order[end]] - out.values[order[end - 1]] < tol)
        ++end;
      if (end - start > 1) {
        const double anchor = out.values[order[start]];
        for (std::size_t r = 0; r < end - start; ++r)
          out.values[order[start + r]] = anchor * (1.0 + static_cast<double>(r) * rel_spacing);
        changed = true;
        out.jittered = true;
      }
      start = end;
    }
    if (!changed)
      return out;
  }
  throw std::invalid_argument("separate_clustered: could not separate clustered values");
}

std::vector<double> hypoexp_weights(std::span<const double> lambda) {
  check_means(lambda);
  std::vector<double> w(lambda.size(), 1.0);
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = 0; j < lambda.size(); ++j)
      if (j != i)
        w[i] *= lambda[i] / (lambda[i] - lambda[j]);
  return w;
}

double hypoexp_weight_sum(std::span<const double> lambda) {
  return combine(lambda, [](const auto &l) {
    using Real = std::remove_cvref_t<decltype(l)>;
    return Real(1);
  });
}

double hypoexp_pdf(std::span<const double> lambda, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("hypoexp_pdf: x must be non-negative and finite");
  const double v = combine(lambda, [x](const auto &l) {
    using std::exp;
    return exp(-x / l) / l;
  });
  return std::max(v, 0.0);
}

double hypoexp_cdf(std::span<const double> lambda, double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument("hypoexp_cdf: x must be non-negative and finite");
  const double survival = combine(lambda, [x](const auto &l) {
    using std::exp;
    return exp(-x / l);
  });
  return std::clamp(1.0 - survival, 0.0, 1.0);
}

double hypoexp_expected_log2_1p(std::span<const double> lambda) {
  const double nats = combine(lambda, [](const auto &l) {
    using Real = std::remove_cvref_t<decltype(l)>;
    return detail::scaled_neg_ei_generic<Real>(Real(1) / l);
  });
  return nats / std::numbers::ln2;
}

double hypoexp_weighted_log2(std::span<const double> values) {
  const double nats = combine(values, [](const auto &v) {
    using std::log;
    return log(v);
  });
  return nats / std::numbers::ln2;
}

} // namespace esr
