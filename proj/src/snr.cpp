#include "esr/snr.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "esr/detail/compensated_sum.hpp"

namespace esr {

namespace {

using cplx = std::complex<double>;

using CompensatedSum = detail::CompensatedComplexSum;

void check_shapes(const ChannelRealization &r, const PhaseConfig &p) {
  if (p.theta_err.size() != r.element_count() || p.psi.rows != r.eve_count() ||
      p.psi.cols != r.element_count())
    throw std::invalid_argument("phase configuration does not match realization");
}

} // namespace

LinkBudget link_budget(const Scenario &scenario) {
  const DistanceSet d = distances(scenario);
  const double half = -scenario.alpha / 2.0;
  LinkBudget b;
  b.rho = scenario.rho();
  b.direct_d = std::pow(d.d_sd, half);
  b.cascaded_d = scenario.eta * std::pow(d.d_sr, half) * std::pow(d.d_rd, half);
  for (std::size_t k = 0; k < d.d_se.size(); ++k) {
    b.direct_e.push_back(std::pow(d.d_se[k], half));
    b.cascaded_e.push_back(scenario.eta * std::pow(d.d_sr, half) * std::pow(d.d_re[k], half));
  }
  return b;
}

double gamma_d(const LinkBudget &budget, const ChannelRealization &realization,
               const PhaseConfig &phases) {
  check_shapes(realization, phases);
  CompensatedSum sum;
  for (std::size_t n = 0; n < realization.element_count(); ++n)
    sum.add(std::polar(std::abs(realization.g_sr[n] * realization.g_rd[n]), phases.theta_err[n]));
  const cplx total = budget.direct_d * std::abs(realization.g_sd) + budget.cascaded_d * sum.value();
  return budget.rho * std::norm(total);
}

double gamma_d(const Scenario &scenario, const ChannelRealization &realization,
               const PhaseConfig &phases) {
  return gamma_d(link_budget(scenario), realization, phases);
}

std::vector<double> gamma_eves(const LinkBudget &budget, const ChannelRealization &realization,
                               const PhaseConfig &phases) {
  check_shapes(realization, phases);
  std::vector<double> out(realization.eve_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    CompensatedSum sum;
    for (std::size_t n = 0; n < realization.element_count(); ++n)
      sum.add(std::polar(std::abs(realization.g_sr[n] * realization.g_e(k, n)), phases.psi(k, n)));
    const cplx total = budget.direct_e[k] * realization.g_se[k] + budget.cascaded_e[k] * sum.value();
    out[k] = budget.rho * std::norm(total);
  }
  return out;
}

std::vector<double> gamma_eves(const Scenario &scenario, const ChannelRealization &realization,
                               const PhaseConfig &phases) {
  return gamma_eves(link_budget(scenario), realization, phases);
}

SnrSample snr_sample(const LinkBudget &budget, const ChannelRealization &realization,
                     const PhaseConfig &phases) {
  return {gamma_d(budget, realization, phases), gamma_eves(budget, realization, phases)};
}

double gamma_d_direct(const Scenario &scenario, const ChannelRealization &realization,
                      const std::vector<double> &phi) {
  if (phi.size() != realization.element_count())
    throw std::invalid_argument("gamma_d_direct: phase count does not match N");
  const DistanceSet d = distances(scenario);
  const double half = -scenario.alpha / 2.0;
  const cplx h_sd = realization.g_sd * std::pow(d.d_sd, half);
  CompensatedSum reflected;
  for (std::size_t n = 0; n < phi.size(); ++n) {
    const cplx h_sr = realization.g_sr[n] * std::pow(d.d_sr, half);
    const cplx h_rd = realization.g_rd[n] * std::pow(d.d_rd, half);
    reflected.add(h_sr * std::polar(1.0, phi[n]) * h_rd);
  }
  return scenario.rho() * std::norm(h_sd + scenario.eta * reflected.value());
}

std::vector<double> gamma_eves_direct(const Scenario &scenario,
                                      const ChannelRealization &realization,
                                      const std::vector<double> &phi) {
  if (phi.size() != realization.element_count())
    throw std::invalid_argument("gamma_eves_direct: phase count does not match N");
  const DistanceSet d = distances(scenario);
  const double half = -scenario.alpha / 2.0;
  std::vector<double> out(realization.eve_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const cplx h_se = realization.g_se[k] * std::pow(d.d_se[k], half);
    CompensatedSum reflected;
    for (std::size_t n = 0; n < phi.size(); ++n) {
      const cplx h_sr = realization.g_sr[n] * std::pow(d.d_sr, half);
      const cplx h_k = realization.g_e(k, n) * std::pow(d.d_re[k], half);
      reflected.add(h_sr * std::polar(1.0, phi[n]) * h_k);
    }
    out[k] = scenario.rho() * std::norm(h_se + scenario.eta * reflected.value());
  }
  return out;
}

} // namespace esr
