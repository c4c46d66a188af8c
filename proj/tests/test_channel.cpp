#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "esr/channel.hpp"
#include "esr/core_math.hpp"
#include "esr/random.hpp"
#include "esr/scenario_io.hpp"

using namespace esr;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelRealization unit_realization(std::size_t k, std::size_t n) {
  ChannelRealization r;
  r.g_sd = 1.0;
  r.g_se.assign(k, 1.0);
  r.g_sr.assign(n, 1.0);
  r.g_rd.assign(n, 1.0);
  r.g_e = Grid<std::complex<double>>(k, n, 1.0);
  return r;
}

double circular_distance(double a, double b) { return std::abs(wrap_pi(a - b)); }

const char *kReferenceJson = R"({
  "source": [0, 0], "ris": [100, 0], "dest": [90, 20],
  "eves_auto": {"count": 5},
  "alpha": 3, "b": 3, "eta": 0.8,
  "p_dbm": 20, "noise_dbm": -96, "n_elements": 100
})";

} // namespace

TEST_CASE("reference geometry distances") {
  const DistanceSet d = distances(reference_scenario(5));
  CHECK(d.d_sr == doctest::Approx(100.0));
  CHECK(d.d_rd == doctest::Approx(std::sqrt(500.0)).epsilon(1e-12));
  CHECK(d.d_sd == doctest::Approx(std::sqrt(90.0 * 90.0 + 400.0)));
  REQUIRE(d.d_re.size() == 5);
  CHECK(d.d_re[4] == doctest::Approx(std::sqrt(500.0)).epsilon(1e-12));
  CHECK(d.d_se[0] == doctest::Approx(std::hypot(18.0, 20.0)));
}

TEST_CASE("reference eve placement") {
  const auto e = reference_eve_positions(4);
  REQUIRE(e.size() == 4);
  CHECK(e[0].x == doctest::Approx(22.5));
  CHECK(e[3].x == doctest::Approx(90.0));
  for (const auto &p : e)
    CHECK(p.y == -20.0);
  CHECK_THROWS_AS(reference_eve_positions(0), std::invalid_argument);
}

TEST_CASE("rho is the linear transmit SNR") {
  Scenario s = reference_scenario(1);
  CHECK(s.rho() == doctest::Approx(std::pow(10.0, 11.6)).epsilon(1e-12));
  s.p_dbm = 0.0;
  s.noise_dbm = 0.0;
  CHECK(s.rho() == 1.0);
}

TEST_CASE("scenario validation") {
  const Scenario ok = reference_scenario(3);
  CHECK_NOTHROW(ok.validate());
  auto broken = [&](auto mutate) {
    Scenario s = ok;
    mutate(s);
    return s;
  };
  CHECK_THROWS_AS(broken([](Scenario &s) { s.eves.clear(); }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.n_elements = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.bits = 0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.bits = 31; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.eta = 1.5; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.eta = -0.1; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.alpha = 0.0; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.dest = s.ris; }).validate(), std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.eves[1] = s.source; }).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(broken([](Scenario &s) { s.p_dbm = std::nan(""); }).validate(),
                  std::invalid_argument);
  CHECK_NOTHROW(broken([](Scenario &s) { s.eta = 0.0; }).validate());
}

TEST_CASE("random streams are reproducible and independent of derivation order") {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i)
    REQUIRE(a.uniform() == b.uniform());

  const RandomStream root(7);
  RandomStream late = root.substream(1000);
  for (int i = 0; i < 999; ++i)
    (void)root.substream(static_cast<std::uint64_t>(i));
  RandomStream again = root.substream(1000);
  CHECK(late.complex_normal() == again.complex_normal());
  CHECK(root.substream(1).key() != root.substream(2).key());
  CHECK(RandomStream(1).substream(0).key() != RandomStream(2).substream(0).key());
}

TEST_CASE("complex normal draws are circular with unit power") {
  RandomStream rng(99);
  const int n = 200000;
  double power = 0.0;
  double re2 = 0.0;
  std::complex<double> mean = 0.0;
  std::vector<double> phase(n);
  for (int i = 0; i < n; ++i) {
    const auto z = rng.complex_normal();
    power += std::norm(z);
    re2 += z.real() * z.real();
    mean += z;
    phase[i] = wrap_two_pi(std::arg(z));
  }
  CHECK(power / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(mean / static_cast<double>(n)) < 0.01);
  CHECK(ks_test(phase, [](double x) { return std::clamp(x / (2.0 * kPi), 0.0, 1.0); })
            .pass_at_1pct);
}

TEST_CASE("uniform and exponential draws") {
  RandomStream rng(3);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += rng.exponential(2.0);
  }
  CHECK(sum / 100000.0 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("sample_channels shape, determinism and draw order") {
  const Scenario s = reference_scenario(3, 7);
  RandomStream a(5);
  RandomStream b(5);
  const ChannelRealization r1 = sample_channels(s, a);
  const ChannelRealization r2 = sample_channels(s, b);
  CHECK(r1.eve_count() == 3);
  CHECK(r1.element_count() == 7);
  CHECK(r1.g_e.rows == 3);
  CHECK(r1.g_e.cols == 7);
  CHECK(r1.g_sd == r2.g_sd);
  CHECK(r1.g_e.data == r2.g_e.data);

  RandomStream c(5);
  CHECK(c.complex_normal() == r1.g_sd);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(c.complex_normal() == r1.g_se[k]);
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(c.complex_normal() == r1.g_sr[i]);
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(c.complex_normal() == r1.g_rd[i]);
  CHECK(c.complex_normal() == r1.g_e(0, 0));

  ChannelRealization reused = sample_channels(reference_scenario(1, 2), c);
  RandomStream d(5);
  sample_channels_into(s, d, reused);
  CHECK(reused.g_e.data == r1.g_e.data);
  CHECK(reused.g_sr == r1.g_sr);
}

TEST_CASE("angle wrapping") {
  CHECK(wrap_two_pi(0.0) == 0.0);
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(2.0 * kPi - 0.5));
  CHECK(wrap_two_pi(2.0 * kPi) == 0.0);
  CHECK(wrap_two_pi(7.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_two_pi(-1e-300) < 2.0 * kPi);
  CHECK(wrap_pi(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_pi(0.25) == doctest::Approx(0.25));
  CHECK(wrap_pi(-3.0 * kPi / 2.0) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("optimal phases") {
  ChannelRealization r = unit_realization(1, 2);
  for (double p : optimal_phases(r))
    CHECK(p == 0.0);
  r.g_sd = std::polar(1.0, kPi / 2.0);
  r.g_sr[0] = std::polar(2.0, kPi);
  r.g_rd[0] = std::polar(0.5, kPi);
  CHECK(optimal_phases(r)[0] == doctest::Approx(kPi / 2.0));
}

TEST_CASE("optimal phases co-phase every cascaded path with the direct path") {
  const Scenario s = reference_scenario(2, 16);
  RandomStream rng(8);
  const ChannelRealization r = sample_channels(s, rng);
  const auto phi = optimal_phases(r);
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto cascaded = r.g_sr[i] * std::polar(1.0, phi[i]) * r.g_rd[i];
    CHECK(circular_distance(std::arg(cascaded), std::arg(r.g_sd)) < 1e-12);
  }
}

TEST_CASE("quantize_phase examples") {
  const QuantizedPhase a = quantize_phase(kPi / 3.0, 1);
  CHECK(a.phi == 0.0);
  CHECK(a.theta_err == doctest::Approx(-kPi / 3.0));
  const QuantizedPhase b = quantize_phase(2.0 * kPi - 0.01, 3);
  CHECK(b.phi == 0.0);
  CHECK(b.theta_err == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(quantize_index(2.0 * kPi - 0.01, 3) == 0);
  CHECK(quantize_index(kPi, 1) == 1);
  CHECK(quantize_index(3.0 * kPi / 4.0 - 1e-9, 2) == 1);
  CHECK_THROWS_AS(quantize_phase(0.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(quantize_phase(0.0, 31), std::invalid_argument);
}

TEST_CASE("quantize_phase ties go to the lower codebook phase") {
  const double step = kPi / 4.0;
  const QuantizedPhase q = quantize_phase(step / 2.0, 3);
  CHECK(q.phi == 0.0);
  CHECK(q.theta_err == doctest::Approx(-step / 2.0));
  CHECK(quantize_index(5.5 * step, 3) == 5);
}

TEST_CASE("quantize_phase properties") {
  RandomStream rng(12);
  for (int bits : {1, 2, 3, 5, 8, 20}) {
    const double step = 2.0 * kPi / std::ldexp(1.0, bits);
    for (int i = 0; i < 2000; ++i) {
      const double phi_star = (rng.uniform() - 0.5) * 40.0;
      const QuantizedPhase q = quantize_phase(phi_star, bits);
      CAPTURE(bits);
      CAPTURE(phi_star);
      REQUIRE(q.phi >= 0.0);
      REQUIRE(q.phi < 2.0 * kPi);
      REQUIRE(std::abs(q.theta_err) <= step / 2.0 + 1e-12);
      REQUIRE(circular_distance(q.phi - q.theta_err, phi_star) < 1e-9);
      const double k = q.phi / step;
      REQUIRE(std::abs(k - std::round(k)) < 1e-9);
      REQUIRE(quantize_index(phi_star, bits) == static_cast<int>(std::lround(k)));
    }
  }
  for (int i = 0; i < 1000; ++i)
    CHECK(std::abs(quantize_phase(rng.uniform() * 7.0, 20).theta_err) < 3e-6);
}

TEST_CASE("quantization errors are uniform for random co-phasing targets") {
  RandomStream rng(31);
  const double half = kPi / 8.0;
  std::vector<double> err(20000);
  for (double &e : err)
    e = quantize_phase(rng.uniform() * 2.0 * kPi, 3).theta_err;
  CHECK(ks_test(err, [&](double x) { return std::clamp((x + half) / (2.0 * half), 0.0, 1.0); })
            .pass_at_1pct);
}

TEST_CASE("eavesdropper phases") {
  ChannelRealization r = unit_realization(2, 3);
  r.g_e(1, 2) = std::polar(1.0, kPi);
  const Grid<double> psi = eavesdropper_phases(r, {0.0, 0.0, 0.0});
  CHECK(psi(1, 2) == doctest::Approx(kPi));
  CHECK(psi(0, 0) == 0.0);
  CHECK_THROWS_AS(eavesdropper_phases(r, {0.0}), std::invalid_argument);
}

TEST_CASE("make_phase_config wires the phase pipeline together") {
  const Scenario s = reference_scenario(2, 9);
  RandomStream rng(4);
  const ChannelRealization r = sample_channels(s, rng);
  const PhaseConfig cfg = make_phase_config(r, 3);
  REQUIRE(cfg.phi.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    const QuantizedPhase q = quantize_phase(cfg.phi_star[i], 3);
    CHECK(cfg.phi[i] == q.phi);
    CHECK(cfg.theta_err[i] == q.theta_err);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(circular_distance(cfg.psi(k, i),
                              cfg.phi[i] + std::arg(r.g_sr[i]) + std::arg(r.g_e(k, i))) < 1e-12);
  }
}

TEST_CASE("parse_scenario reads the reference document") {
  const Scenario s = parse_scenario(kReferenceJson);
  CHECK(s.eve_count() == 5);
  CHECK(s.eves[4].x == doctest::Approx(90.0));
  CHECK(s.bits == 3);
  CHECK(s.eta == 0.8);
  CHECK(s.n_elements == 100);
  CHECK(s.noise_dbm == -96.0);
}

TEST_CASE("scenario json round trip") {
  Scenario s = reference_scenario(3, 64);
  s.eves[1] = {12.5, -7.25};
  const Scenario back = parse_scenario(scenario_to_json(s));
  REQUIRE(back.eve_count() == 3);
  CHECK(back.eves[1].x == 12.5);
  CHECK(back.eves[1].y == -7.25);
  CHECK(back.n_elements == 64);
  CHECK(back.alpha == s.alpha);
  CHECK(back.p_dbm == s.p_dbm);
}

TEST_CASE("parse_scenario errors") {
  auto with = [](const std::string &from, const std::string &to) {
    std::string text = kReferenceJson;
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
  };
  CHECK_THROWS_AS(parse_scenario("{"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario("[1, 2]"), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"alpha\": 3,", "")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"b\": 3", "\"b\": 2.5")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"b\": 3", "\"b\": 99999999999")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"eta\": 0.8", "\"eta\": \"high\"")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"eta\": 0.8", "\"eta\": 2")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("[0, 0]", "[0]")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("{\"count\": 5}", "{\"count\": 0}")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"eves_auto\": {\"count\": 5},", "")), ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"eves_auto\": {\"count\": 5}", "\"eves\": 3")),
                  ScenarioError);
  CHECK_THROWS_AS(parse_scenario(with("\"eves_auto\": {\"count\": 5}", "\"eves\": [[1, \"x\"]]")),
                  ScenarioError);
}

TEST_CASE("load_scenario names the path on failure") {
  const auto missing = std::filesystem::temp_directory_path() / "esr_no_such_scenario.json";
  std::filesystem::remove(missing);
  try {
    load_scenario(missing);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError &e) {
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }

  const auto bad = std::filesystem::temp_directory_path() / "esr_bad_scenario.json";
  std::ofstream(bad) << "{\"source\": [0, 0]}";
  try {
    load_scenario(bad);
    FAIL("expected ScenarioError");
  } catch (const ScenarioError &e) {
    CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
  }
  std::filesystem::remove(bad);
}
