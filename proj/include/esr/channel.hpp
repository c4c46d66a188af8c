#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "esr/random.hpp"

namespace esr {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(Vec2 a, Vec2 b);

/// Row-major K x N table.
template <class T> struct Grid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(std::size_t r, std::size_t c, T fill = T{}) : rows(r), cols(c), data(r * c, fill) {}

  T &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Geometry and radio parameters. Powers are in dBm here only; everything
/// derived from a Scenario is linear.
struct Scenario {
  Vec2 source;
  Vec2 ris;
  Vec2 dest;
  std::vector<Vec2> eves;
  double alpha = 3.0;
  int bits = 3;
  double eta = 0.8;
  double p_dbm = 20.0;
  double noise_dbm = -96.0;
  int n_elements = 100;

  std::size_t eve_count() const noexcept { return eves.size(); }

  /// Linear transmit SNR P / sigma^2.
  double rho() const;

  /// Throws std::invalid_argument naming the first violated constraint.
  /// eta = 0 is accepted and models a switched-off surface.
  void validate() const;

  Scenario with_elements(int n) const;
};

/// Eve k (1-based) at (90k/K, -20).
std::vector<Vec2> reference_eve_positions(std::size_t k);

/// S=(0,0), R=(100,0), D=(90,20), alpha=3, b=3, eta=0.8, P=20 dBm,
/// sigma^2=-96 dBm, K Eves on the reference placement rule.
Scenario reference_scenario(std::size_t k, int n_elements = 100);

struct DistanceSet {
  double d_sd = 0.0;
  double d_sr = 0.0;
  double d_rd = 0.0;
  std::vector<double> d_se; ///< source -> Eve k
  std::vector<double> d_re; ///< surface -> Eve k
};

/// Throws std::invalid_argument if any used pair of nodes is co-located.
DistanceSet distances(const Scenario &scenario);

/// Small-scale fading for one trial; every entry CN(0, 1).
struct ChannelRealization {
  std::complex<double> g_sd;
  std::vector<std::complex<double>> g_se; ///< K
  std::vector<std::complex<double>> g_sr; ///< N
  std::vector<std::complex<double>> g_rd; ///< N
  Grid<std::complex<double>> g_e;         ///< K x N, surface -> Eve

  std::size_t eve_count() const noexcept { return g_se.size(); }
  std::size_t element_count() const noexcept { return g_sr.size(); }
};

/// Draw order: g_sd, g_se[0..K), g_sr[0..N), g_rd[0..N), g_e row by row.
ChannelRealization sample_channels(const Scenario &scenario, RandomStream &stream);

/// Same as sample_channels, reusing `out`'s storage.
void sample_channels_into(const Scenario &scenario, RandomStream &stream,
                          ChannelRealization &out);

/// Canonical angle in [0, 2pi).
double wrap_two_pi(double angle);

/// Canonical angle in [-pi, pi).
double wrap_pi(double angle);

/// Co-phasing surface phases theta_SD - theta_SR,n - theta_RD,n in [0, 2pi).
std::vector<double> optimal_phases(const ChannelRealization &realization);

struct QuantizedPhase {
  double phi = 0.0;       ///< codebook phase in [0, 2pi)
  double theta_err = 0.0; ///< phi - phi_star wrapped, within +-pi/2^b
};

/// Nearest codebook point of {0, 2pi/2^b, ..., (2^b-1)2pi/2^b} under circular
/// distance. Exact midpoints go to the lower codebook phase.
QuantizedPhase quantize_phase(double phi_star, int bits);

/// Codebook index in [0, 2^b) chosen by quantize_phase.
int quantize_index(double phi_star, int bits);

/// psi_{k,n} = phi_n + theta_SR,n + theta_{k,n} in [0, 2pi).
Grid<double> eavesdropper_phases(const ChannelRealization &realization,
                                 const std::vector<double> &phi);

struct PhaseConfig {
  std::vector<double> phi_star;
  std::vector<double> phi;
  std::vector<double> theta_err;
  Grid<double> psi;
};

PhaseConfig make_phase_config(const ChannelRealization &realization, int bits);

} // namespace esr
