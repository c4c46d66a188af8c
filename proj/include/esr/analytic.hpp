#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esr/channel.hpp"

namespace esr {

enum class Mode { non_colluding, colluding };
enum class Method { analytic, monte_carlo, asymptotic, large_k, baseline };

std::string_view to_string(Mode mode);
std::string_view to_string(Method method);

/// Secrecy-rate triple in bits/s/Hz.
struct EsrResult {
  double rate_d = 0.0;
  double rate_e = 0.0;
  double rate_s = 0.0;
  Mode mode = Mode::non_colluding;
  Method method = Method::analytic;
  std::optional<double> stderr_bits; ///< Monte Carlo only
  bool means_jittered = false;       ///< clustered Eve means were separated
};

/// [x]^+
inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

struct AnalyticConstants {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  std::vector<double> b_k;
  std::vector<double> lambda_e;
  double rho = 0.0;
  double direct_d_power = 0.0;            ///< d_SD^{-alpha}
  std::vector<double> direct_e_power;     ///< d_SE_k^{-alpha}
  int n = 0;
};

AnalyticConstants constants(const Scenario &scenario, int n);

/// Closed-form ergodic rate at the destination, averaged over the
/// quantization errors.
double rate_d(const Scenario &scenario, int n);
double rate_d(const AnalyticConstants &c);

/// g(mu)/ln2 with mu = 1/lambda: ergodic rate of an exponential SNR.
double exponential_snr_rate(double lambda);

/// max_k of the per-Eve exponential-SNR rates.
double rate_e_noncolluding(const AnalyticConstants &c);

struct CollusionRate {
  double rate = 0.0;
  bool jittered = false;
};

/// E[log2(1 + sum_k gamma_E_k)] for independent exponential gamma_E_k with
/// means c.lambda_e, after separating clustered means.
CollusionRate rate_e_colluding(const AnalyticConstants &c);

EsrResult esr_noncolluding(const Scenario &scenario, int n);
EsrResult esr_colluding(const Scenario &scenario, int n);

/// Large-N asymptote: log2 N + log2 A3 + kappa/ln2 minus the Eve term
/// (max_k log2 B_k, or the hypoexponential-weighted sum over log2 B_i).
EsrResult esr_asymptotic(const Scenario &scenario, int n, Mode mode);

/// Colluding Eves with many Eves: R_E ~ log2(1 + sum_k lambda_k).
EsrResult esr_largek_colluding(const Scenario &scenario, int n);

/// Ergodic rate of the direct link alone at distance x, i.e. an
/// exponential SNR with mean rho x^{-alpha}. Decreasing in x.
double no_ris_rate(const Scenario &scenario, double x);

/// Secrecy rate with the surface absent. The colluding variant combines the
/// direct Eve links through the same hypoexponential machinery.
EsrResult baseline_no_ris(const Scenario &scenario, Mode mode = Mode::non_colluding);

} // namespace esr
