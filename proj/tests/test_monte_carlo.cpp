#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <omp.h>

#include "esr/analytic.hpp"
#include "esr/channel.hpp"
#include "esr/monte_carlo.hpp"
#include "esr/snr.hpp"
#include "oracles.hpp"

using namespace esr;

namespace {

bool same_bits(const McSummary &a, const McSummary &b) {
  return a.trials == b.trials && a.mean_d == b.mean_d && a.se_d == b.se_d &&
         a.mean_e == b.mean_e && a.se_e == b.se_e && a.mean_c == b.mean_c && a.se_c == b.se_c;
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

struct ThreadCount {
  int saved = omp_get_max_threads();
  explicit ThreadCount(int n) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
};

} // namespace

TEST_CASE("same seed, same bits") {
  const Scenario s = reference_scenario(3, 40);
  CHECK(same_bits(run_monte_carlo(s, 40, 1000, 5), run_monte_carlo(s, 40, 1000, 5)));
  CHECK_FALSE(same_bits(run_monte_carlo(s, 40, 1000, 5), run_monte_carlo(s, 40, 1000, 6)));
}

TEST_CASE("results do not depend on the thread count") {
  const Scenario s = reference_scenario(4, 33);
  McSummary one, many;
  {
    ThreadCount t(1);
    one = run_monte_carlo(s, 33, 3001, 21);
  }
  {
    ThreadCount t(4);
    many = run_monte_carlo(s, 33, 3001, 21);
  }
  CHECK(same_bits(one, many));

  GammaSamples g1, g4;
  {
    ThreadCount t(1);
    g1 = collect_gamma_samples(s, 33, 777, 2);
  }
  {
    ThreadCount t(3);
    g4 = collect_gamma_samples(s, 33, 777, 2);
  }
  CHECK(g1.gamma_d == g4.gamma_d);
  CHECK(g1.gamma_e == g4.gamma_e);
}

TEST_CASE("parallel kernel agrees with the serial reference") {
  for (int n : {1, 7, 64}) {
    const Scenario s = reference_scenario(3, n);
    const McSummary par = run_monte_carlo(s, n, 700, 13);
    const McSummary ser = run_monte_carlo_serial(s, n, 700, 13);
    CAPTURE(n);
    CHECK(oracle::relative_error(par.mean_d, ser.mean_d) < 1e-12);
    CHECK(oracle::relative_error(par.mean_c, ser.mean_c) < 1e-12);
    CHECK(oracle::relative_error(par.se_d, ser.se_d) < 1e-9);
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(oracle::relative_error(par.mean_e[k], ser.mean_e[k]) < 1e-12);
  }
  const Scenario s = reference_scenario(2, 16);
  const McConfig cfg{500, 3, Mode::colluding};
  CHECK(estimate_esr(s, 16, cfg).rate_d ==
        doctest::Approx(estimate_esr_serial(s, 16, cfg).rate_d).epsilon(1e-12));
}

TEST_CASE("gamma samples reproduce the summary statistics") {
  const Scenario s = reference_scenario(3, 20);
  const std::size_t trials = 1234;
  const GammaSamples g = collect_gamma_samples(s, 20, trials, 8);
  const McSummary mc = run_monte_carlo(s, 20, trials, 8);
  REQUIRE(g.gamma_d.size() == trials);
  REQUIRE(g.gamma_e.size() == 3);
  double d = 0.0, c = 0.0;
  std::vector<double> e(3, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    REQUIRE(g.gamma_d[t] >= 0.0);
    d += log2_1p(g.gamma_d[t]);
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      REQUIRE(g.gamma_e[k].size() == trials);
      REQUIRE(g.gamma_e[k][t] >= 0.0);
      e[k] += log2_1p(g.gamma_e[k][t]);
      sum += g.gamma_e[k][t];
    }
    c += log2_1p(sum);
  }
  CHECK(d / trials == doctest::Approx(mc.mean_d).epsilon(1e-12));
  CHECK(c / trials == doctest::Approx(mc.mean_c).epsilon(1e-12));
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(e[k] / trials == doctest::Approx(mc.mean_e[k]).epsilon(1e-12));
}

TEST_CASE("trial t uses sub-stream t of the seed") {
  const Scenario s = reference_scenario(2, 5);
  const GammaSamples g = collect_gamma_samples(s, 5, 10, 99);
  const LinkBudget b = link_budget(s);
  for (std::size_t t : {0u, 3u, 9u}) {
    RandomStream stream = RandomStream(99).substream(t);
    const ChannelRealization r = sample_channels(s, stream);
    const SnrSample snr = snr_sample(b, r, make_phase_config(r, s.bits));
    CHECK(g.gamma_d[t] == doctest::Approx(snr.gamma_d).epsilon(1e-12));
    CHECK(g.gamma_e[1][t] == doctest::Approx(snr.gamma_e[1]).epsilon(1e-12));
  }
}

TEST_CASE("summary to secrecy rate") {
  McSummary m;
  m.trials = 100;
  m.mean_d = 10.0;
  m.se_d = 0.3;
  m.mean_e = {7.0, 8.0, 6.0};
  m.se_e = {0.1, 0.4, 0.2};
  m.mean_c = 9.5;
  m.se_c = 0.5;
  const EsrResult nc = m.result(Mode::non_colluding);
  CHECK(nc.rate_e == 8.0);
  CHECK(nc.rate_s == 2.0);
  CHECK(*nc.stderr_bits == doctest::Approx(0.5));
  CHECK(nc.method == Method::monte_carlo);
  const EsrResult c = m.result(Mode::colluding);
  CHECK(c.rate_e == 9.5);
  CHECK(c.rate_s == doctest::Approx(0.5));
  CHECK(*c.stderr_bits == doctest::Approx(std::hypot(0.3, 0.5)));
  m.mean_c = 12.0;
  CHECK(m.result(Mode::colluding).rate_s == 0.0);
}

TEST_CASE("switched-off surface gives zero secrecy") {
  Scenario s = reference_scenario(5, 64);
  s.eta = 0.0;
  const EsrResult r = estimate_esr(s, 64, {20000, 4, Mode::non_colluding});
  CHECK(r.rate_s <= 2.0 * *r.stderr_bits);
}

TEST_CASE("simulated Eve rates follow the exponential model at large N") {
  const Scenario s = reference_scenario(3, 512);
  const McSummary mc = run_monte_carlo(s, 512, 20000, 17);
  const auto c = constants(s, 512);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(std::abs(mc.mean_e[k] - exponential_snr_rate(c.lambda_e[k])) < 4.0 * mc.se_e[k] + 0.01);
  CHECK(std::abs(mc.mean_c - rate_e_colluding(c).rate) < 4.0 * mc.se_c + 0.01);
}

TEST_CASE("standard errors shrink with the trial count") {
  const Scenario s = reference_scenario(2, 16);
  const McSummary small = run_monte_carlo(s, 16, 400, 1);
  const McSummary large = run_monte_carlo(s, 16, 6400, 1);
  CHECK(large.se_d < small.se_d);
  CHECK(large.se_d == doctest::Approx(small.se_d / 4.0).epsilon(0.25));
}

TEST_CASE("input errors") {
  const Scenario s = reference_scenario(2, 16);
  CHECK_THROWS_AS(run_monte_carlo(s, 0, 1000, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_monte_carlo(s, 16, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_monte_carlo_serial(s, 16, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(collect_gamma_samples(s, 16, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(collect_gamma_samples(s, -1, 10, 1), std::invalid_argument);
  Scenario bad = s;
  bad.eta = 2.0;
  CHECK_THROWS_AS(run_monte_carlo(bad, 16, 1000, 1), std::invalid_argument);
  CHECK_NOTHROW(run_monte_carlo(s, 16, kMinTrials, 1));
}
