#include "esr/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace esr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string &what) {
  if (!ok)
    throw std::invalid_argument("invalid scenario: " + what);
}

} // namespace

double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double Scenario::rho() const { return std::pow(10.0, (p_dbm - noise_dbm) / 10.0); }

void Scenario::validate() const {
  require(!eves.empty(), "at least one eavesdropper is required");
  require(n_elements >= 1, "n_elements must be >= 1");
  require(bits >= 1 && bits <= 30, "b must be in [1, 30]");
  require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "eta must be in [0, 1]");
  require(std::isfinite(alpha) && alpha > 0.0, "alpha must be positive");
  require(std::isfinite(p_dbm) && std::isfinite(noise_dbm), "powers must be finite");
  auto finite = [](Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); };
  require(finite(source) && finite(ris) && finite(dest), "positions must be finite");
  for (const auto &e : eves)
    require(finite(e), "eavesdropper positions must be finite");
  distances(*this);
}

Scenario Scenario::with_elements(int n) const {
  Scenario copy = *this;
  copy.n_elements = n;
  return copy;
}

std::vector<Vec2> reference_eve_positions(std::size_t k) {
  if (k == 0)
    throw std::invalid_argument("reference_eve_positions: K must be >= 1");
  std::vector<Vec2> eves;
  eves.reserve(k);
  for (std::size_t i = 1; i <= k; ++i)
    eves.push_back({90.0 * static_cast<double>(i) / static_cast<double>(k), -20.0});
  return eves;
}

Scenario reference_scenario(std::size_t k, int n_elements) {
  Scenario s;
  s.source = {0.0, 0.0};
  s.ris = {100.0, 0.0};
  s.dest = {90.0, 20.0};
  s.eves = reference_eve_positions(k);
  s.alpha = 3.0;
  s.bits = 3;
  s.eta = 0.8;
  s.p_dbm = 20.0;
  s.noise_dbm = -96.0;
  s.n_elements = n_elements;
  return s;
}

DistanceSet distances(const Scenario &scenario) {
  DistanceSet d;
  d.d_sd = distance(scenario.source, scenario.dest);
  d.d_sr = distance(scenario.source, scenario.ris);
  d.d_rd = distance(scenario.ris, scenario.dest);
  require(d.d_sd > 0.0, "source and destination are co-located");
  require(d.d_sr > 0.0, "source and surface are co-located");
  require(d.d_rd > 0.0, "surface and destination are co-located");
  d.d_se.reserve(scenario.eves.size());
  d.d_re.reserve(scenario.eves.size());
  for (std::size_t k = 0; k < scenario.eves.size(); ++k) {
    const double se = distance(scenario.source, scenario.eves[k]);
    const double re = distance(scenario.ris, scenario.eves[k]);
    require(se > 0.0, "eavesdropper " + std::to_string(k + 1) + " is co-located with the source");
    require(re > 0.0, "eavesdropper " + std::to_string(k + 1) + " is co-located with the surface");
    d.d_se.push_back(se);
    d.d_re.push_back(re);
  }
  return d;
}

void sample_channels_into(const Scenario &scenario, RandomStream &stream,
                          ChannelRealization &out) {
  const std::size_t k = scenario.eves.size();
  const std::size_t n = static_cast<std::size_t>(scenario.n_elements);
  out.g_se.resize(k);
  out.g_sr.resize(n);
  out.g_rd.resize(n);
  if (out.g_e.rows != k || out.g_e.cols != n)
    out.g_e = Grid<std::complex<double>>(k, n);

  out.g_sd = stream.complex_normal();
  for (auto &g : out.g_se)
    g = stream.complex_normal();
  for (auto &g : out.g_sr)
    g = stream.complex_normal();
  for (auto &g : out.g_rd)
    g = stream.complex_normal();
  for (auto &g : out.g_e.data)
    g = stream.complex_normal();
}

ChannelRealization sample_channels(const Scenario &scenario, RandomStream &stream) {
  ChannelRealization r;
  sample_channels_into(scenario, stream, r);
  return r;
}

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0)
    r += kTwoPi;
  if (r >= kTwoPi)
    r = 0.0;
  return r;
}

double wrap_pi(double angle) {
  double r = wrap_two_pi(angle + std::numbers::pi) - std::numbers::pi;
  return r;
}

std::vector<double> optimal_phases(const ChannelRealization &realization) {
  const double theta_sd = std::arg(realization.g_sd);
  std::vector<double> out(realization.element_count());
  for (std::size_t n = 0; n < out.size(); ++n)
    out[n] = wrap_two_pi(theta_sd - std::arg(realization.g_sr[n]) -
                         std::arg(realization.g_rd[n]));
  return out;
}

QuantizedPhase quantize_phase(double phi_star, int bits) {
  if (bits < 1 || bits > 30)
    throw std::invalid_argument("quantize_phase: bits must be in [1, 30]");
  const double levels = std::ldexp(1.0, bits);
  const double step = kTwoPi / levels;
  const double target = wrap_two_pi(phi_star);
  // ceil(q - 1/2) is round-to-nearest with ties to the lower index.
  const double index = std::ceil(target / step - 0.5);
  QuantizedPhase q;
  q.theta_err = index * step - target;
  q.phi = index >= levels ? 0.0 : index * step;
  return q;
}

int quantize_index(double phi_star, int bits) {
  const QuantizedPhase q = quantize_phase(phi_star, bits);
  const double step = kTwoPi / std::ldexp(1.0, bits);
  return static_cast<int>(std::lround(q.phi / step));
}

Grid<double> eavesdropper_phases(const ChannelRealization &realization,
                                 const std::vector<double> &phi) {
  const std::size_t k = realization.eve_count();
  const std::size_t n = realization.element_count();
  if (phi.size() != n)
    throw std::invalid_argument("eavesdropper_phases: phase count does not match N");
  Grid<double> psi(k, n);
  for (std::size_t e = 0; e < k; ++e)
    for (std::size_t i = 0; i < n; ++i)
      psi(e, i) = wrap_two_pi(phi[i] + std::arg(realization.g_sr[i]) +
                              std::arg(realization.g_e(e, i)));
  return psi;
}

PhaseConfig make_phase_config(const ChannelRealization &realization, int bits) {
  PhaseConfig cfg;
  cfg.phi_star = optimal_phases(realization);
  cfg.phi.resize(cfg.phi_star.size());
  cfg.theta_err.resize(cfg.phi_star.size());
  for (std::size_t i = 0; i < cfg.phi_star.size(); ++i) {
    const QuantizedPhase q = quantize_phase(cfg.phi_star[i], bits);
    cfg.phi[i] = q.phi;
    cfg.theta_err[i] = q.theta_err;
  }
  cfg.psi = eavesdropper_phases(realization, cfg.phi);
  return cfg;
}

} // namespace esr
