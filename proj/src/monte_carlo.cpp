#include "esr/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "esr/detail/compensated_sum.hpp"
#include "esr/snr.hpp"

namespace esr {

namespace {

using cplx = std::complex<double>;

constexpr std::size_t kBlockTrials = 256;

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

// Welford accumulator; blocks merge with Chan's pairwise update.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments &o) {
    if (o.count == 0.0)
      return;
    const double total = count + o.count;
    const double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }

  double standard_error() const {
    if (count < 2.0)
      return 0.0;
    return std::sqrt(m2 / (count - 1.0) / count);
  }
};

struct TrialStats {
  Moments d;
  std::vector<Moments> e;
  Moments c;

  explicit TrialStats(std::size_t k = 0) : e(k) {}

  void add(double gamma_d, const std::vector<double> &gamma_e) {
    d.add(log2_1p(gamma_d));
    double sum = 0.0;
    for (std::size_t k = 0; k < gamma_e.size(); ++k) {
      e[k].add(log2_1p(gamma_e[k]));
      sum += gamma_e[k];
    }
    c.add(log2_1p(sum));
  }

  void merge(const TrialStats &o) {
    d.merge(o.d);
    for (std::size_t k = 0; k < e.size(); ++k)
      e[k].merge(o.e[k]);
    c.merge(o.c);
  }

  McSummary summary(std::size_t trials) const {
    McSummary s;
    s.trials = trials;
    s.mean_d = d.mean;
    s.se_d = d.standard_error();
    for (const auto &m : e) {
      s.mean_e.push_back(m.mean);
      s.se_e.push_back(m.standard_error());
    }
    s.mean_c = c.mean;
    s.se_c = c.standard_error();
    return s;
  }
};

// Per-trial SNRs straight from the complex channels: quantized phases come
// from a codebook table, so the trial costs one atan2 per element.
class TrialKernel {
public:
  TrialKernel(const Scenario &scenario)
      : scenario_(scenario), budget_(link_budget(scenario)),
        codebook_(static_cast<std::size_t>(1) << scenario.bits) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(codebook_.size());
    for (std::size_t i = 0; i < codebook_.size(); ++i)
      codebook_[i] = std::polar(1.0, step * static_cast<double>(i));
  }

  void run(RandomStream &stream, double &gamma_d, std::vector<double> &gamma_e) {
    sample_channels_into(scenario_, stream, realization_);
    const std::size_t n = realization_.element_count();
    const std::size_t k = realization_.eve_count();
    steered_.resize(n);

    detail::CompensatedComplexSum dest;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx cascade = realization_.g_sr[i] * realization_.g_rd[i];
      const double phi_star = wrap_two_pi(std::arg(realization_.g_sd * std::conj(cascade)));
      const cplx applied = codebook_[static_cast<std::size_t>(quantize_index(phi_star, scenario_.bits))];
      steered_[i] = realization_.g_sr[i] * applied;
      dest.add(cascade * applied);
    }
    gamma_d = budget_.rho *
              std::norm(budget_.direct_d * realization_.g_sd + budget_.cascaded_d * dest.value());

    gamma_e.resize(k);
    for (std::size_t e = 0; e < k; ++e) {
      detail::CompensatedComplexSum eve;
      for (std::size_t i = 0; i < n; ++i)
        eve.add(steered_[i] * realization_.g_e(e, i));
      gamma_e[e] = budget_.rho * std::norm(budget_.direct_e[e] * realization_.g_se[e] +
                                           budget_.cascaded_e[e] * eve.value());
    }
  }

private:
  const Scenario &scenario_;
  LinkBudget budget_;
  std::vector<cplx> codebook_;
  ChannelRealization realization_;
  std::vector<cplx> steered_;
};

Scenario prepared(const Scenario &scenario, int n, std::size_t trials) {
  if (n < 1)
    throw std::invalid_argument("number of surface elements must be >= 1");
  if (trials < kMinTrials)
    throw std::invalid_argument("Monte Carlo needs at least 100 trials");
  Scenario s = scenario.with_elements(n);
  s.validate();
  return s;
}

} // namespace

EsrResult McSummary::result(Mode mode) const {
  EsrResult r;
  r.mode = mode;
  r.method = Method::monte_carlo;
  r.rate_d = mean_d;
  double se_e_used = 0.0;
  if (mode == Mode::non_colluding) {
    const auto best = std::max_element(mean_e.begin(), mean_e.end());
    r.rate_e = *best;
    se_e_used = se_e[static_cast<std::size_t>(best - mean_e.begin())];
  } else {
    r.rate_e = mean_c;
    se_e_used = se_c;
  }
  r.rate_s = positive_part(r.rate_d - r.rate_e);
  r.stderr_bits = std::hypot(se_d, se_e_used);
  return r;
}

McSummary run_monte_carlo(const Scenario &scenario, int n, std::size_t trials,
                          std::uint64_t seed) {
  const Scenario s = prepared(scenario, n, trials);
  const RandomStream root(seed);
  const std::size_t k = s.eve_count();
  const std::size_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<TrialStats> block_stats(blocks, TrialStats(k));

#pragma omp parallel
  {
    TrialKernel kernel(s);
    double gamma_d = 0.0;
    std::vector<double> gamma_e(k);
#pragma omp for schedule(dynamic)
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t end = std::min(trials, (b + 1) * kBlockTrials);
      for (std::size_t t = b * kBlockTrials; t < end; ++t) {
        RandomStream stream = root.substream(t);
        kernel.run(stream, gamma_d, gamma_e);
        block_stats[b].add(gamma_d, gamma_e);
      }
    }
  }

  TrialStats total(k);
  for (const auto &b : block_stats)
    total.merge(b);
  return total.summary(trials);
}

McSummary run_monte_carlo_serial(const Scenario &scenario, int n, std::size_t trials,
                                 std::uint64_t seed) {
  const Scenario s = prepared(scenario, n, trials);
  const RandomStream root(seed);
  const LinkBudget budget = link_budget(s);
  TrialStats total(s.eve_count());
  for (std::size_t t = 0; t < trials; ++t) {
    RandomStream stream = root.substream(t);
    const ChannelRealization r = sample_channels(s, stream);
    const PhaseConfig phases = make_phase_config(r, s.bits);
    const SnrSample snr = snr_sample(budget, r, phases);
    total.add(snr.gamma_d, snr.gamma_e);
  }
  return total.summary(trials);
}

EsrResult estimate_esr(const Scenario &scenario, int n, const McConfig &config) {
  return run_monte_carlo(scenario, n, config.trials, config.seed).result(config.mode);
}

EsrResult estimate_esr_serial(const Scenario &scenario, int n, const McConfig &config) {
  return run_monte_carlo_serial(scenario, n, config.trials, config.seed).result(config.mode);
}

GammaSamples collect_gamma_samples(const Scenario &scenario, int n, std::size_t trials,
                                   std::uint64_t seed) {
  if (n < 1)
    throw std::invalid_argument("number of surface elements must be >= 1");
  if (trials == 0)
    throw std::invalid_argument("collect_gamma_samples: trials must be positive");
  Scenario s = scenario.with_elements(n);
  s.validate();
  const RandomStream root(seed);
  const std::size_t k = s.eve_count();

  GammaSamples out;
  out.gamma_d.resize(trials);
  out.gamma_e.assign(k, std::vector<double>(trials));

#pragma omp parallel
  {
    TrialKernel kernel(s);
    double gamma_d = 0.0;
    std::vector<double> gamma_e(k);
#pragma omp for schedule(static)
    for (std::size_t t = 0; t < trials; ++t) {
      RandomStream stream = root.substream(t);
      kernel.run(stream, gamma_d, gamma_e);
      out.gamma_d[t] = gamma_d;
      for (std::size_t e = 0; e < k; ++e)
        out.gamma_e[e][t] = gamma_e[e];
    }
  }
  return out;
}

} // namespace esr
