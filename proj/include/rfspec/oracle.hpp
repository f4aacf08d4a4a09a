#pragma once

#include "rfspec/correlation.hpp"
#include "rfspec/spectrum.hpp"

namespace rfspec {

// Observed-slot fluctuation correlator C(tau_j) = dY_observed(j dt),
// sampled on a uniform time grid starting at tau = 0.
struct CorrelationSeries {
  double dt = 0.0;
  std::vector<Complex> samples;
};

// Propagates the homogeneous fluctuation dynamics d/dtau dY = Q dY from
// dy0 with classical fixed-step RK4 and returns the observed component at
// every step. Fixed step keeps golden outputs reproducible. Callers pick
// dt <= 0.05 / max |eigenvalue| and t_max covering ~20 decay times of the
// slowest mode; throws TruncationFailure when |C(t_max)| has not fallen
// below tol::truncation_tail_rel * |C(0)|.
CorrelationSeries integrate_correlation(const LiouvilleSystem& sys,
                                        const CorrelationIC& ic, double t_max,
                                        double dt);

// Convenience wrapper: derives dt and t_max from the eigenvalue report and
// doubles t_max until the tail bound holds.
CorrelationSeries integrate_correlation_auto(const LiouvilleSystem& sys,
                                             const CorrelationIC& ic);

// Half-line Fourier transform of the series by trapezoid quadrature:
// S(nu) = gamma_1 u Re sum_j e^{-i nu gamma_1 tau_j} C(tau_j) dt. The
// truncation error is bounded by |C(t_max)| / decay rate.
SpectrumResult fourier_spectrum(const CorrelationSeries& series,
                                const FrequencyGrid& grid, double gamma_1, double u);

// Closed-form incoherent spectrum of the resonantly driven two-level atom,
// evaluated from the factored characteristic cubic of its 3x3 generator:
// one mode at -gamma/2 (central line) and the conjugate pair
// -3 gamma / 4 +/- i sqrt(omega_rabi^2 - gamma^2/16) (sidebands). Scalar
// arithmetic only; shares no code with the matrix solvers, which is the
// point of the reference.
SpectrumResult mollow_reference(double omega_rabi, double gamma,
                                const FrequencyGrid& grid);

}  // namespace rfspec
