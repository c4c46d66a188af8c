#pragma once

#include <vector>

#include "esr/channel.hpp"

namespace esr {

/// Large-scale amplitudes shared by every realization of a scenario.
struct LinkBudget {
  double rho = 0.0;
  double direct_d = 0.0;              ///< d_SD^{-alpha/2}
  double cascaded_d = 0.0;            ///< eta d_SR^{-alpha/2} d_RD^{-alpha/2}
  std::vector<double> direct_e;   ///< d_SE_k^{-alpha/2}
  std::vector<double> cascaded_e; ///< eta d_SR^{-alpha/2} d_k^{-alpha/2}
};

LinkBudget link_budget(const Scenario &scenario);

struct SnrSample {
  double gamma_d = 0.0;
  std::vector<double> gamma_e;
};

// Factored forms: amplitudes |g_SR,n g_RD,n| with the quantization errors,
// and |g_SR,n g_k,n| with the composite Eve phases.

double gamma_d(const Scenario &scenario, const ChannelRealization &realization,
               const PhaseConfig &phases);
double gamma_d(const LinkBudget &budget, const ChannelRealization &realization,
               const PhaseConfig &phases);

std::vector<double> gamma_eves(const Scenario &scenario, const ChannelRealization &realization,
                               const PhaseConfig &phases);
std::vector<double> gamma_eves(const LinkBudget &budget, const ChannelRealization &realization,
                               const PhaseConfig &phases);

SnrSample snr_sample(const LinkBudget &budget, const ChannelRealization &realization,
                     const PhaseConfig &phases);

// Direct forms: rho |h_S + eta sum_n [h_SR]_n e^{j phi_n} [h_R]_n|^2 from the
// complex channels and the applied surface phases phi.

double gamma_d_direct(const Scenario &scenario, const ChannelRealization &realization,
                      const std::vector<double> &phi);

std::vector<double> gamma_eves_direct(const Scenario &scenario,
                                      const ChannelRealization &realization,
                                      const std::vector<double> &phi);

} // namespace esr
