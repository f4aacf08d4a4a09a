#pragma once

#include <vector>

#include "rfspec/correlation.hpp"
#include "rfspec/dynamics.hpp"

namespace rfspec {

// Uniform grid of detunings nu = omega - omega_1 in units of gamma_1.
struct FrequencyGrid {
  double nu_min = -10.0;
  double nu_max = 10.0;
  int count = 1001;

  double spacing() const { return (nu_max - nu_min) / (count - 1); }
  double nu(int i) const { return nu_min + i * spacing(); }
};

void validate(const FrequencyGrid& grid);  // throws InvalidConfig

enum class Method { Limit, Variance, OracleTimeDomain, MollowAnalytic };

// Incoherent spectral density sampled on a grid. The coherent elastic
// component is a delta function at nu = 0; its weight is kept as separate
// side data and never rasterized onto the grid, which is what produces
// spurious central-peak artifacts in naive implementations.
struct SpectrumResult {
  FrequencyGrid grid;
  std::vector<double> values;
  double coherent_weight = 0.0;
  Method method = Method::Variance;
  std::vector<int> invalid_points;  // grid indices where the resolvent failed

  double peak() const;
};

// Variance method: S(nu) = gamma_1 u Re[(i nu I - Q)^-1 dY(0)]_observed.
// The fluctuation correlator decays to zero, so its half-line Fourier
// transform is finite everywhere, including nu = 0.
SpectrumResult variance_spectrum(const LiouvilleSystem& sys, const SteadyState& ss,
                                 const CorrelationIC& ic, const FrequencyGrid& grid);

// Limit method: evaluates the finite part of the total spectrum from the
// full correlator vector Y(0), deliberately sharing no intermediate with
// the variance path beyond (Q, R, x_inf):
//
//   S(nu) = gamma_1 u Re[(sI-Q)^-1 Y(0) + Q^-1 (sI-Q)^-1 <fixed> R]_obs,
//   s = i nu,
//
// using s^-1 (sI-Q)^-1 = Q^-1 (sI-Q)^-1 - s^-1 Q^-1. The discarded s^-1
// pole carries the real coefficient |<observed>_ss|^2, so off the pole its
// real part vanishes and it contributes only the coherent delta, whose
// weight is reported separately (the subtraction happens by exclusion).
// A grid point at exactly nu = 0 is the same finite-part expression; no
// s = 0 substitution ever occurs.
SpectrumResult limit_spectrum(const LiouvilleSystem& sys, const SteadyState& ss,
                              const CorrelationIC& ic, const FrequencyGrid& grid);

// Weight of the coherent delta component, gamma_1 u |<observed>_ss|^2.
// Requires a physical pair (observed = adjoint(fixed)).
double coherent_weight(const SteadyState& ss, const DetectionPair& pair,
                       const ModelConfig& config);

struct IntegralResult {
  double value = 0.0;
  bool boundary_ok = true;  // boundary samples <= tol::boundary_decay_rel * peak
};

// Trapezoid integral over the grid. On a truncation-adequate grid this
// equals pi u (<s_ee> - |<s_eg>|^2) -- the zero-lag fluctuation variance;
// in absolute frequency units (grid nu times gamma_1) the integral is
// pi gamma_1 u (<s_ee> - |<s_eg>|^2).
IntegralResult integrated_intensity(const SpectrumResult& result);

}  // namespace rfspec
