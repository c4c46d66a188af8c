#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "esr/channel.hpp"
#include "esr/monte_carlo.hpp"

namespace esr {

/// One statistical or numerical check. Informational checks are recorded
/// but never fail a report (small-N contrast runs, expected failures).
struct Check {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool informational = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  /// True when every non-informational check passed.
  bool passed() const;

  void append(const ValidationReport &other);

  std::string to_text() const;
  /// JSON array of check records; byte-stable for identical input.
  std::string to_json() const;
};

inline constexpr double kCorrelationThreshold = 0.05;
inline constexpr double kMeanRatioTolerance = 0.03;
inline constexpr double kClosedFormTolerance = 0.35;
inline constexpr double kSmallNClosedFormTolerance = 0.5;
inline constexpr std::size_t kMinValidationTrials = 1000;
/// Below this N the large-N approximations are only reported, not enforced.
inline constexpr int kSmallN = 32;

/// Composite Eve phases of Eve 1 at elements 1 and 2, and f2 at element 1.
/// Only the channels these depend on are drawn, per trial in the order
/// g_sd, then (g_sr[i], g_rd[i], g_e(0, i)) for each element used.
struct PhaseSamples {
  std::vector<double> psi_11;
  std::vector<double> psi_12; ///< empty when N = 1
  std::vector<double> f2_1;
};

PhaseSamples collect_phase_samples(const Scenario &scenario, int n, std::size_t trials,
                                   std::uint64_t seed);

/// Uniformity of psi_11, and its decorrelation from f2_1 and psi_12
/// (cos and sin components).
ValidationReport evaluate_lemma1(const PhaseSamples &samples);

ValidationReport validate_lemma1(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed);

/// SNR samples shared by the lemma 2 and lemma 3 checks for one seed.
GammaSamples collect_validation_snrs(const Scenario &scenario, int n, std::size_t trials,
                                     std::uint64_t seed);

ValidationReport evaluate_lemma2(const GammaSamples &samples, const Scenario &scenario, int n);
ValidationReport evaluate_lemma3(const GammaSamples &samples, int n);

/// Per Eve: gamma_E_k / lambda_E_k against Exp(1), and the mean ratio.
ValidationReport validate_lemma2(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed);

/// Pairwise Pearson correlation of the Eve SNRs. Throws for K < 2.
ValidationReport validate_lemma3(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed);

/// Closed-form vs Monte Carlo ESR for each N and both Eve modes.
ValidationReport validate_closed_forms(const Scenario &scenario, const std::vector<int> &n_list,
                                       const McConfig &config);

/// Every applicable check at one N: lemma 1-3 (3 only when K >= 2) and the
/// closed forms.
ValidationReport run_validation_suite(const Scenario &scenario, int n, std::size_t trials,
                                      std::uint64_t seed);

} // namespace esr
