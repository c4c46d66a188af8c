#include "esr/validation.hpp"

#include <cmath>
#include <locale>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "esr/analytic.hpp"
#include "esr/core_math.hpp"

namespace esr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum StreamTag : std::uint64_t { kLemma1 = 1, kEveSnr = 2, kClosedForms = 4 };

std::uint64_t derived_seed(std::uint64_t seed, StreamTag tag) {
  return RandomStream(seed).substream(tag).key();
}

void require_trials(std::size_t trials) {
  if (trials < kMinValidationTrials)
    throw std::invalid_argument("validation needs at least 1000 trials");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(6);
  os << v;
  return os.str();
}

Check ks_check(std::string name, const std::vector<double> &samples,
               const std::function<double(double)> &cdf, std::string target) {
  const GoodnessOfFit fit = ks_test(samples, cdf);
  Check c;
  c.name = std::move(name);
  c.statistic = fit.statistic;
  c.threshold = fit.critical_value();
  c.passed = fit.pass_at_1pct;
  c.detail = "KS vs " + target + ", n=" + std::to_string(fit.sample_count) +
             ", 1% critical value 1.63/sqrt(n)";
  return c;
}

Check correlation_check(std::string name, const std::vector<double> &x,
                        const std::vector<double> &y, std::string what) {
  Check c;
  c.name = std::move(name);
  c.statistic = std::abs(pearson_correlation(x, y));
  c.threshold = kCorrelationThreshold;
  c.passed = c.statistic < c.threshold;
  c.detail = "|corr(" + what + ")| over n=" + std::to_string(x.size()) +
             ", threshold 0.05 (about 5 sigma under independence at n=1e4)";
  return c;
}

std::vector<double> map(const std::vector<double> &v, double (*f)(double)) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = f(v[i]);
  return out;
}

double cos_of(double x) { return std::cos(x); }
double sin_of(double x) { return std::sin(x); }

} // namespace

bool ValidationReport::passed() const {
  for (const auto &c : checks)
    if (!c.informational && !c.passed)
      return false;
  return true;
}

void ValidationReport::append(const ValidationReport &other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string ValidationReport::to_text() const {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  for (const auto &c : checks) {
    const char *tag = c.passed ? "PASS" : (c.informational ? "INFO" : "FAIL");
    os << tag << "  " << c.name << "  statistic=" << fmt(c.statistic)
       << " threshold=" << fmt(c.threshold);
    if (c.informational)
      os << " [informational]";
    os << "  " << c.detail << '\n';
  }
  os << (passed() ? "overall: PASS" : "overall: FAIL") << '\n';
  return os.str();
}

std::string ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto &c : checks)
    arr.push_back({{"name", c.name},
                   {"statistic", c.statistic},
                   {"threshold", c.threshold},
                   {"passed", c.passed},
                   {"informational", c.informational},
                   {"detail", c.detail}});
  return arr.dump(2) + "\n";
}

PhaseSamples collect_phase_samples(const Scenario &scenario, int n, std::size_t trials,
                                   std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("number of surface elements must be >= 1");
  Scenario s = scenario.with_elements(n);
  s.validate();
  const RandomStream root(seed);
  const std::size_t elements = n >= 2 ? 2 : 1;

  PhaseSamples out;
  out.psi_11.resize(trials);
  out.f2_1.resize(trials);
  if (elements == 2)
    out.psi_12.resize(trials);

#pragma omp parallel for schedule(static)
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream stream = root.substream(t);
    const double theta_sd = std::arg(stream.complex_normal());
    for (std::size_t i = 0; i < elements; ++i) {
      const double theta_sr = std::arg(stream.complex_normal());
      const double theta_rd = std::arg(stream.complex_normal());
      const double theta_e = std::arg(stream.complex_normal());
      const double phi_star = wrap_two_pi(theta_sd - theta_sr - theta_rd);
      const double f2 = wrap_two_pi(quantize_phase(phi_star, s.bits).phi + theta_sr);
      const double psi = wrap_two_pi(f2 + theta_e);
      if (i == 0) {
        out.psi_11[t] = psi;
        out.f2_1[t] = f2;
      } else {
        out.psi_12[t] = psi;
      }
    }
  }
  return out;
}

ValidationReport evaluate_lemma1(const PhaseSamples &samples) {
  ValidationReport report;
  report.checks.push_back(ks_check(
      "lemma1.a psi_11 uniform", samples.psi_11,
      [](double x) { return std::clamp(x / kTwoPi, 0.0, 1.0); }, "Uniform[0, 2pi)"));

  const auto cos_psi = map(samples.psi_11, cos_of);
  const auto sin_psi = map(samples.psi_11, sin_of);
  report.checks.push_back(correlation_check("lemma1.b cos(psi_11) vs cos(f2_1)", cos_psi,
                                            map(samples.f2_1, cos_of), "cos psi_11, cos f2_1"));
  report.checks.push_back(correlation_check("lemma1.b sin(psi_11) vs sin(f2_1)", sin_psi,
                                            map(samples.f2_1, sin_of), "sin psi_11, sin f2_1"));
  if (!samples.psi_12.empty()) {
    report.checks.push_back(correlation_check("lemma1.c cos(psi_11) vs cos(psi_12)", cos_psi,
                                              map(samples.psi_12, cos_of),
                                              "cos psi_11, cos psi_12"));
    report.checks.push_back(correlation_check("lemma1.c sin(psi_11) vs sin(psi_12)", sin_psi,
                                              map(samples.psi_12, sin_of),
                                              "sin psi_11, sin psi_12"));
  }
  return report;
}

ValidationReport validate_lemma1(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed) {
  require_trials(trials);
  return evaluate_lemma1(collect_phase_samples(scenario, n, trials, derived_seed(seed, kLemma1)));
}

ValidationReport evaluate_lemma2(const GammaSamples &samples, const Scenario &scenario, int n) {
  const AnalyticConstants c = constants(scenario, n);
  const bool small_n = n < kSmallN;

  ValidationReport report;
  for (std::size_t k = 0; k < c.lambda_e.size(); ++k) {
    std::vector<double> normalized(samples.gamma_e[k]);
    double sum = 0.0;
    for (double &v : normalized) {
      v /= c.lambda_e[k];
      sum += v;
    }
    const std::string eve = "E" + std::to_string(k + 1);

    Check ks = ks_check("lemma2 " + eve + " exponential", normalized,
                        [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); },
                        "Exp(1) after dividing by lambda_E");
    Check mean;
    mean.name = "lemma2 " + eve + " mean ratio";
    mean.statistic = sum / static_cast<double>(normalized.size());
    mean.threshold = kMeanRatioTolerance;
    mean.passed = std::abs(mean.statistic - 1.0) <= kMeanRatioTolerance;
    mean.detail = "mean(gamma_E)/lambda_E must lie in [0.97, 1.03]";
    if (small_n) {
      for (Check *chk : {&ks, &mean}) {
        chk->informational = true;
        chk->detail += "; expected-fail regime, N=" + std::to_string(n) +
                       " is below the large-N range of the exponential approximation";
      }
    }
    report.checks.push_back(std::move(ks));
    report.checks.push_back(std::move(mean));
  }
  return report;
}

ValidationReport evaluate_lemma3(const GammaSamples &samples, int n) {
  if (samples.gamma_e.size() < 2)
    throw std::invalid_argument("lemma 3 needs at least two eavesdroppers");
  ValidationReport report;
  for (std::size_t i = 0; i < samples.gamma_e.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.gamma_e.size(); ++j) {
      const std::string pair = "E" + std::to_string(i + 1) + ",E" + std::to_string(j + 1);
      Check c = correlation_check("lemma3 " + pair + " uncorrelated", samples.gamma_e[i],
                                  samples.gamma_e[j], "gamma_" + pair);
      if (n < kSmallN) {
        c.informational = true;
        c.detail += "; small-N contrast run (shared surface channels)";
      }
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

GammaSamples collect_validation_snrs(const Scenario &scenario, int n, std::size_t trials,
                                     std::uint64_t seed) {
  require_trials(trials);
  return collect_gamma_samples(scenario, n, trials, derived_seed(seed, kEveSnr));
}

ValidationReport validate_lemma2(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed) {
  return evaluate_lemma2(collect_validation_snrs(scenario, n, trials, seed), scenario, n);
}

ValidationReport validate_lemma3(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed) {
  if (scenario.eve_count() < 2)
    throw std::invalid_argument("validate_lemma3 needs at least two eavesdroppers");
  return evaluate_lemma3(collect_validation_snrs(scenario, n, trials, seed), n);
}

ValidationReport validate_closed_forms(const Scenario &scenario, const std::vector<int> &n_list,
                                       const McConfig &config) {
  const RandomStream root(derived_seed(config.seed, kClosedForms));
  ValidationReport report;
  for (int n : n_list) {
    const McSummary mc =
        run_monte_carlo(scenario, n, config.trials, root.substream(static_cast<std::uint64_t>(n)).key());
    const bool small_n = n < kSmallN;
    for (Mode mode : {Mode::non_colluding, Mode::colluding}) {
      const EsrResult analytic =
          mode == Mode::non_colluding ? esr_noncolluding(scenario, n) : esr_colluding(scenario, n);
      const EsrResult simulated = mc.result(mode);
      const double se = simulated.stderr_bits.value_or(0.0);
      Check c;
      c.name = "closed-form " + std::string(to_string(mode)) + " N=" + std::to_string(n);
      c.statistic = std::abs(analytic.rate_s - simulated.rate_s);
      c.threshold =
          std::max(small_n ? kSmallNClosedFormTolerance : kClosedFormTolerance, 4.0 * se);
      c.passed = c.statistic <= c.threshold;
      c.informational = small_n;
      c.detail = "|analytic - MC| ESR; analytic=" + fmt(analytic.rate_s) +
                 " MC=" + fmt(simulated.rate_s) + " stderr=" + fmt(se) +
                 ", trials=" + std::to_string(config.trials);
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

ValidationReport run_validation_suite(const Scenario &scenario, int n, std::size_t trials,
                                      std::uint64_t seed) {
  require_trials(trials);
  ValidationReport report = validate_lemma1(scenario, n, trials, seed);
  const GammaSamples snrs = collect_validation_snrs(scenario, n, trials, seed);
  report.append(evaluate_lemma2(snrs, scenario, n));
  if (scenario.eve_count() >= 2)
    report.append(evaluate_lemma3(snrs, n));
  report.append(validate_closed_forms(scenario, {n}, McConfig{trials, seed, Mode::non_colluding}));
  return report;
}

} // namespace esr
