#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "esr/analytic.hpp"
#include "esr/channel.hpp"

namespace esr {

struct McConfig {
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  Mode mode = Mode::non_colluding;
};

inline constexpr std::size_t kMinTrials = 100;

/// Per-trial ergodic-rate statistics (bits/s/Hz) for one (scenario, N,
/// trials, seed). Both Eve modes come out of the same draws.
struct McSummary {
  std::size_t trials = 0;
  double mean_d = 0.0; ///< mean of log2(1 + gamma_D)
  double se_d = 0.0;
  std::vector<double> mean_e; ///< per Eve, mean of log2(1 + gamma_E_k)
  std::vector<double> se_e;
  double mean_c = 0.0; ///< mean of log2(1 + sum_k gamma_E_k)
  double se_c = 0.0;

  /// Difference of ergodic rates, [R_D - R_E]^+. Standard errors of the two
  /// rates are added in quadrature.
  EsrResult result(Mode mode) const;
};

/// OpenMP kernel. Trial t draws from RandomStream(seed).substream(t);
/// trials are grouped in fixed blocks whose statistics merge in block order,
/// so the output bits do not depend on the thread count.
McSummary run_monte_carlo(const Scenario &scenario, int n, std::size_t trials,
                          std::uint64_t seed);

/// Serial reference: the same draws pushed through the phase pipeline and
/// the factored SNR expressions one trial at a time.
McSummary run_monte_carlo_serial(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed);

EsrResult estimate_esr(const Scenario &scenario, int n, const McConfig &config);
EsrResult estimate_esr_serial(const Scenario &scenario, int n, const McConfig &config);

struct GammaSamples {
  std::vector<std::vector<double>> gamma_e; ///< K lists
  std::vector<double> gamma_d;
};

/// Raw linear SNRs, trial t from the same sub-stream as run_monte_carlo.
GammaSamples collect_gamma_samples(const Scenario &scenario, int n, std::size_t trials,
                                   std::uint64_t seed);

} // namespace esr
