#include "rfspec/oracle.hpp"

#include <cmath>

namespace rfspec {

CorrelationSeries integrate_correlation(const LiouvilleSystem& sys,
                                        const CorrelationIC& ic, double t_max,
                                        double dt) {
  if (!(dt > 0.0) || !(t_max > 0.0)) {
    throw std::invalid_argument("t_max and dt must be positive");
  }
  const int k0 = sys.basis.require_index(ic.pair.observed);
  const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));

  CorrelationSeries series;
  series.dt = dt;
  series.samples.reserve(steps + 1);
  ComplexVector y = ic.dy0;
  series.samples.push_back(y(k0));
  ComplexVector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size());
  for (std::size_t step = 0; step < steps; ++step) {
    k1 = sys.Q * y;
    k2 = sys.Q * (y + 0.5 * dt * k1);
    k3 = sys.Q * (y + 0.5 * dt * k2);
    k4 = sys.Q * (y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    series.samples.push_back(y(k0));
  }

  const double head = std::abs(series.samples.front());
  const double tail = std::abs(series.samples.back());
  if (head > 0.0 && tail > tol::truncation_tail_rel * head) {
    throw TruncationFailure("truncation inadequate: correlator tail above bound");
  }
  return series;
}

CorrelationSeries integrate_correlation_auto(const LiouvilleSystem& sys,
                                             const CorrelationIC& ic) {
  const EigenReport report = eigen_report(sys);
  const double fastest = std::max(report.max_magnitude, sys.config.gamma_1);
  const double dt = 0.05 / fastest;

  // Slowest decaying mode, ignoring exact zero modes of pinned sectors.
  double slowest_rate = sys.config.gamma_1;
  for (const Complex& ev : report.eigenvalues) {
    const double rate = -ev.real();
    if (rate > tol::singular_pivot_rel * fastest) {
      slowest_rate = std::min(slowest_rate, rate);
    }
  }

  double t_max = 20.0 / slowest_rate;
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      return integrate_correlation(sys, ic, t_max, dt);
    } catch (const TruncationFailure&) {
      t_max *= 2.0;
    }
  }
  return integrate_correlation(sys, ic, t_max, dt);
}

SpectrumResult fourier_spectrum(const CorrelationSeries& series,
                                const FrequencyGrid& grid, double gamma_1,
                                double u) {
  validate(grid);
  if (series.samples.empty()) {
    throw std::invalid_argument("correlation series is empty");
  }
  SpectrumResult result;
  result.grid = grid;
  result.method = Method::OracleTimeDomain;
  result.values.assign(static_cast<std::size_t>(grid.count), 0.0);
  const auto n = series.samples.size();
  parallel_for_index(grid.count, [&](int i) {
    const double nu = grid.nu(i) * gamma_1;
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const double tau = static_cast<double>(j) * series.dt;
      const double weight = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
      sum += weight * std::polar(1.0, -nu * tau) * series.samples[j];
    }
    result.values[static_cast<std::size_t>(i)] =
        gamma_1 * u * (sum * series.dt).real();
  });
  return result;
}

SpectrumResult mollow_reference(double omega_rabi, double gamma,
                                const FrequencyGrid& grid) {
  validate(grid);
  if (!(gamma > 0.0) || omega_rabi < 0.0) {
    throw InvalidConfig("mollow reference requires gamma > 0 and rabi >= 0");
  }

  // Resonant steady state: excited population p and coherence magnitude
  // beta = |<s_ge>|.
  const double denom = gamma * gamma / 4.0 + omega_rabi * omega_rabi / 2.0;
  const double p = omega_rabi * omega_rabi / 4.0 / denom;
  const double beta = omega_rabi * gamma / 4.0 / denom;

  // At resonance the in-phase quadrature decouples at rate gamma/2 and the
  // (population, out-of-phase) block carries the sidebands. The Laplace
  // transform of the fluctuation correlator is, with D(s) = (s + gamma)
  // (s + gamma/2) + rabi^2,
  //   C(s) = [ p/(s + gamma/2)
  //            - ((s + gamma)(2 beta^2 - p) - 2 rabi beta p)/D(s) ] / 2.
  SpectrumResult result;
  result.grid = grid;
  result.method = Method::MollowAnalytic;
  result.coherent_weight = gamma * beta * beta;
  result.values.assign(static_cast<std::size_t>(grid.count), 0.0);
  for (int i = 0; i < grid.count; ++i) {
    const Complex s = kImag * (grid.nu(i) * gamma);
    const Complex central = p / (s + gamma / 2.0);
    const Complex block_num =
        (s + gamma) * (2.0 * beta * beta - p) - 2.0 * omega_rabi * beta * p;
    const Complex block_den = (s + gamma) * (s + gamma / 2.0) +
                              omega_rabi * omega_rabi;
    const Complex transform = 0.5 * (central - block_num / block_den);
    result.values[static_cast<std::size_t>(i)] = gamma * transform.real();
  }
  return result;
}

}  // namespace rfspec
