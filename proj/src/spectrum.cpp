#include "rfspec/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace rfspec {

namespace {

// Shared per-point evaluation harness: runs eval(i) across the grid in
// parallel, records points where the resolvent is resonant, and fails only
// if no point could be evaluated.
template <typename Eval>
SpectrumResult sample_grid(const FrequencyGrid& grid, Method method,
                           double coherent, Eval&& eval) {
  SpectrumResult result;
  result.grid = grid;
  result.method = method;
  result.coherent_weight = coherent;
  result.values.assign(static_cast<std::size_t>(grid.count), 0.0);
  std::vector<char> invalid(static_cast<std::size_t>(grid.count), 0);
  parallel_for_index(grid.count, [&](int i) {
    try {
      result.values[static_cast<std::size_t>(i)] = eval(i);
    } catch (const ResolventFailure&) {
      invalid[static_cast<std::size_t>(i)] = 1;
    }
  });
  for (int i = 0; i < grid.count; ++i) {
    if (invalid[static_cast<std::size_t>(i)]) result.invalid_points.push_back(i);
  }
  if (static_cast<int>(result.invalid_points.size()) == grid.count) {
    throw ResolventFailure("resolvent failed at every grid point");
  }
  return result;
}

int observed_slot(const LiouvilleSystem& sys, const CorrelationIC& ic) {
  return sys.basis.require_index(ic.pair.observed);
}

}  // namespace

void validate(const FrequencyGrid& grid) {
  if (!(grid.nu_min < grid.nu_max)) {
    throw InvalidConfig("grid.nu_min must be below grid.nu_max");
  }
  if (grid.count < 2) throw InvalidConfig("grid.count must be at least 2");
  if (!std::isfinite(grid.nu_min) || !std::isfinite(grid.nu_max)) {
    throw InvalidConfig("grid bounds must be finite");
  }
}

double SpectrumResult::peak() const {
  double p = 0.0;
  for (double v : values) p = std::max(p, v);
  return p;
}

SpectrumResult variance_spectrum(const LiouvilleSystem& sys, const SteadyState& ss,
                                 const CorrelationIC& ic, const FrequencyGrid& grid) {
  validate(grid);
  const int k0 = observed_slot(sys, ic);
  const double gamma_u = sys.config.gamma_1 * sys.config.geometry_factor;
  const double weight = coherent_weight(ss, ic.pair, sys.config);
  return sample_grid(grid, Method::Variance, weight, [&](int i) {
    const Complex s = kImag * (grid.nu(i) * sys.config.gamma_1);
    return gamma_u * resolvent_solve(sys, s, ic.dy0)(k0).real();
  });
}

SpectrumResult limit_spectrum(const LiouvilleSystem& sys, const SteadyState& ss,
                              const CorrelationIC& ic, const FrequencyGrid& grid) {
  validate(grid);
  const int k0 = observed_slot(sys, ic);
  const double gamma_u = sys.config.gamma_1 * sys.config.geometry_factor;
  const double weight = coherent_weight(ss, ic.pair, sys.config);
  const ComplexVector driven = ic.inhomogeneous_scale * sys.R;
  return sample_grid(grid, Method::Limit, weight, [&](int i) {
    const Complex s = kImag * (grid.nu(i) * sys.config.gamma_1);
    const Complex from_y0 = resolvent_solve(sys, s, ic.y0)(k0);
    const Complex from_drive = q_solve(sys, resolvent_solve(sys, s, driven))(k0);
    return gamma_u * (from_y0 + from_drive).real();
  });
}

double coherent_weight(const SteadyState& ss, const DetectionPair& pair,
                       const ModelConfig& config) {
  if (pair.observed != adjoint(pair.fixed)) {
    throw std::invalid_argument(
        "coherent weight requires a physical pair (observed = adjoint(fixed))");
  }
  // <sigma_ab> = <b| rho |a>
  const Complex mean = ss.rho(pair.observed.bra - 1, pair.observed.ket - 1);
  return config.gamma_1 * config.geometry_factor * std::norm(mean);
}

IntegralResult integrated_intensity(const SpectrumResult& result) {
  IntegralResult integral;
  const double d_nu = result.grid.spacing();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < result.values.size(); ++i) {
    sum += 0.5 * (result.values[i] + result.values[i + 1]) * d_nu;
  }
  integral.value = sum;
  const double peak = result.peak();
  const double boundary =
      std::max(std::abs(result.values.front()), std::abs(result.values.back()));
  integral.boundary_ok = boundary <= tol::boundary_decay_rel * peak;
  return integral;
}

}  // namespace rfspec
