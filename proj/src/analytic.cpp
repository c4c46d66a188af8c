#include "esr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "esr/core_math.hpp"
#include "esr/hypoexp.hpp"

namespace esr {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

void require_elements(int n) {
  if (n < 1)
    throw std::invalid_argument("number of surface elements must be >= 1");
}

} // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
  case Mode::non_colluding:
    return "non-colluding";
  case Mode::colluding:
    return "colluding";
  }
  return "unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
  case Method::analytic:
    return "analytic";
  case Method::monte_carlo:
    return "monte-carlo";
  case Method::asymptotic:
    return "asymptotic";
  case Method::large_k:
    return "large-K";
  case Method::baseline:
    return "baseline";
  }
  return "unknown";
}

AnalyticConstants constants(const Scenario &scenario, int n) {
  require_elements(n);
  const DistanceSet d = distances(scenario);
  const double alpha = scenario.alpha;
  const double eta = scenario.eta;
  const double levels = std::ldexp(1.0, scenario.bits);
  const double half_step = std::numbers::pi / levels; // pi / 2^b

  const double pl_sr = std::pow(d.d_sr, -alpha);
  const double pl_rd = std::pow(d.d_rd, -alpha);
  const double amp_chain = std::pow(d.d_sd, -alpha / 2) * std::pow(d.d_sr, -alpha / 2) *
                           std::pow(d.d_rd, -alpha / 2);

  AnalyticConstants c;
  c.n = n;
  c.rho = scenario.rho();
  c.direct_d_power = std::pow(d.d_sd, -alpha);
  c.a1 = eta * eta * pl_sr * pl_rd;
  c.a2 = std::sqrt(std::numbers::pi) * eta * levels / 4.0 * amp_chain * std::sin(half_step);
  // (eta^2 4^b / 32)(1 - cos(2pi/2^b)) written as a squared sine, which
  // stays accurate for fine codebooks.
  const double s = std::sin(half_step);
  c.a3 = eta * eta * levels * levels / 16.0 * pl_sr * pl_rd * s * s;

  for (std::size_t k = 0; k < d.d_re.size(); ++k) {
    const double pl_se = std::pow(d.d_se[k], -alpha);
    const double bk = eta * eta * pl_sr * std::pow(d.d_re[k], -alpha);
    c.direct_e_power.push_back(pl_se);
    c.b_k.push_back(bk);
    c.lambda_e.push_back(c.rho * (pl_se + static_cast<double>(n) * bk));
  }
  return c;
}

double rate_d(const AnalyticConstants &c) {
  const double n = static_cast<double>(c.n);
  const double snr = c.rho * n * c.a1 + c.rho * c.direct_d_power + c.rho * n * c.a2 +
                     c.rho * n * (n - 1.0) * c.a3;
  return log2_1p(snr);
}

double rate_d(const Scenario &scenario, int n) { return rate_d(constants(scenario, n)); }

double exponential_snr_rate(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("exponential_snr_rate: mean SNR must be positive and finite");
  return scaled_neg_ei(1.0 / lambda) / std::numbers::ln2;
}

double rate_e_noncolluding(const AnalyticConstants &c) {
  if (c.lambda_e.empty())
    throw std::invalid_argument("rate_e_noncolluding: no eavesdroppers");
  double best = -std::numeric_limits<double>::infinity();
  for (double lambda : c.lambda_e)
    best = std::max(best, exponential_snr_rate(lambda));
  return best;
}

CollusionRate rate_e_colluding(const AnalyticConstants &c) {
  if (c.lambda_e.empty())
    throw std::invalid_argument("rate_e_colluding: no eavesdroppers");
  if (c.lambda_e.size() == 1)
    return {exponential_snr_rate(c.lambda_e.front()), false};
  const SeparatedMeans means = separate_clustered(c.lambda_e);
  return {hypoexp_expected_log2_1p(means.values), means.jittered};
}

EsrResult esr_noncolluding(const Scenario &scenario, int n) {
  const AnalyticConstants c = constants(scenario, n);
  EsrResult r;
  r.mode = Mode::non_colluding;
  r.method = Method::analytic;
  r.rate_d = rate_d(c);
  r.rate_e = rate_e_noncolluding(c);
  r.rate_s = positive_part(r.rate_d - r.rate_e);
  return r;
}

EsrResult esr_colluding(const Scenario &scenario, int n) {
  const AnalyticConstants c = constants(scenario, n);
  const CollusionRate e = rate_e_colluding(c);
  EsrResult r;
  r.mode = Mode::colluding;
  r.method = Method::analytic;
  r.rate_d = rate_d(c);
  r.rate_e = e.rate;
  r.rate_s = positive_part(r.rate_d - r.rate_e);
  r.means_jittered = e.jittered;
  return r;
}

EsrResult esr_asymptotic(const Scenario &scenario, int n, Mode mode) {
  const AnalyticConstants c = constants(scenario, n);
  if (!(c.a3 > 0.0))
    throw std::domain_error("esr_asymptotic: undefined without a reflecting surface (eta = 0)");

  EsrResult r;
  r.mode = mode;
  r.method = Method::asymptotic;
  double eve_term = 0.0;
  if (mode == Mode::non_colluding) {
    eve_term = std::log2(*std::max_element(c.b_k.begin(), c.b_k.end()));
  } else if (c.b_k.size() == 1) {
    eve_term = std::log2(c.b_k.front());
  } else {
    const SeparatedMeans b = separate_clustered(c.b_k);
    eve_term = hypoexp_weighted_log2(b.values);
    r.means_jittered = b.jittered;
  }
  const double offset = std::log2(c.a3) + euler_gamma() / std::numbers::ln2 - eve_term;
  const double log_n = std::log2(static_cast<double>(n));
  const double secrecy = log_n + offset;
  r.rate_d = 2.0 * log_n + std::log2(c.rho) + std::log2(c.a3);
  r.rate_e = r.rate_d - secrecy;
  r.rate_s = positive_part(secrecy);
  return r;
}

EsrResult esr_largek_colluding(const Scenario &scenario, int n) {
  const AnalyticConstants c = constants(scenario, n);
  double total = 0.0;
  for (double lambda : c.lambda_e)
    total += lambda;
  EsrResult r;
  r.mode = Mode::colluding;
  r.method = Method::large_k;
  r.rate_d = rate_d(c);
  r.rate_e = log2_1p(total);
  r.rate_s = positive_part(r.rate_d - r.rate_e);
  return r;
}

double no_ris_rate(const Scenario &scenario, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("no_ris_rate: distance must be positive and finite");
  return exponential_snr_rate(scenario.rho() * std::pow(x, -scenario.alpha));
}

EsrResult baseline_no_ris(const Scenario &scenario, Mode mode) {
  const DistanceSet d = distances(scenario);
  EsrResult r;
  r.mode = mode;
  r.method = Method::baseline;
  r.rate_d = no_ris_rate(scenario, d.d_sd);
  if (mode == Mode::non_colluding || d.d_se.size() == 1) {
    double best = -std::numeric_limits<double>::infinity();
    for (double x : d.d_se)
      best = std::max(best, no_ris_rate(scenario, x));
    r.rate_e = best;
  } else {
    std::vector<double> lambda;
    for (double x : d.d_se)
      lambda.push_back(scenario.rho() * std::pow(x, -scenario.alpha));
    const SeparatedMeans means = separate_clustered(lambda);
    r.rate_e = hypoexp_expected_log2_1p(means.values);
    r.means_jittered = means.jittered;
  }
  r.rate_s = positive_part(r.rate_d - r.rate_e);
  return r;
}

} // namespace esr
