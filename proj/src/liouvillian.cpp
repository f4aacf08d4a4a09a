#include "rfspec/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rfspec {

namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) {
    throw InvalidConfig(std::string(field) + " must be finite");
  }
}

// Expands the adjoint Lindblad generator on every basis slot:
//   d<s_k>/dt = <i[H, s_k] + sum_j gamma_j (C_j^+ s_k C_j
//                                           - (C_j^+ C_j s_k + s_k C_j^+ C_j)/2)>
// and eliminates sigma_11 through the trace constraint, which produces the
// inhomogeneous vector R.
LiouvilleSystem assemble(BasisMap basis, const ComplexMatrix& hamiltonian,
                         const std::vector<std::pair<double, TransitionOp>>& decays,
                         const ModelConfig& config, std::vector<int> live_slots,
                         bool raman_degenerate) {
  const int d = basis.dimension();
  const int n = basis.size();
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  ComplexVector r = ComplexVector::Zero(n);

  std::vector<ComplexMatrix> collapse;
  collapse.reserve(decays.size());
  for (const auto& [rate, op] : decays) collapse.push_back(to_matrix(op, d));

  for (int k = 0; k < n; ++k) {
    const ComplexMatrix s = to_matrix(basis.op_of(k), d);
    ComplexMatrix g = kImag * (hamiltonian * s - s * hamiltonian);
    for (std::size_t j = 0; j < decays.size(); ++j) {
      const double rate = decays[j].first;
      if (rate == 0.0) continue;
      const ComplexMatrix& c = collapse[j];
      const ComplexMatrix cdc = c.adjoint() * c;
      g += rate * (c.adjoint() * s * c - 0.5 * (cdc * s + s * cdc));
    }
    // g = sum_ab g(a-1, b-1) sigma_ab; fold sigma_11 into R and the
    // retained populations.
    for (int a = 1; a <= d; ++a) {
      for (int b = 1; b <= d; ++b) {
        const Complex coeff = g(a - 1, b - 1);
        if (coeff == Complex{0.0, 0.0}) continue;
        if (const auto slot = basis.index_of({a, b})) {
          q(k, *slot) += coeff;
        } else {
          r(k) += coeff;
          for (int pop : basis.population_slots()) q(k, pop) -= coeff;
        }
      }
    }
  }

  return LiouvilleSystem{std::move(basis), std::move(q), std::move(r), config,
                         std::move(live_slots), raman_degenerate};
}

std::vector<int> all_slots(const BasisMap& basis) {
  std::vector<int> live(static_cast<std::size_t>(basis.size()));
  for (int j = 0; j < basis.size(); ++j) live[static_cast<std::size_t>(j)] = j;
  return live;
}

std::vector<int> slots_avoiding_level(const BasisMap& basis, int level) {
  std::vector<int> live;
  for (int j = 0; j < basis.size(); ++j) {
    const TransitionOp op = basis.op_of(j);
    if (op.ket != level && op.bra != level) live.push_back(j);
  }
  return live;
}

}  // namespace

void validate(const ModelConfig& config) {
  require_finite(config.rabi_1, "rabi_1");
  require_finite(config.detuning_1, "detuning_1");
  require_finite(config.gamma_1, "gamma_1");
  require_finite(config.geometry_factor, "geometry_factor");
  if (config.gamma_1 <= 0.0) throw InvalidConfig("gamma_1 must be positive");
  if (config.rabi_1 < 0.0) throw InvalidConfig("rabi_1 must be nonnegative");
  if (config.geometry_factor <= 0.0) {
    throw InvalidConfig("geometry_factor must be positive");
  }
  if (config.model == Model::Lambda) {
    require_finite(config.rabi_2, "rabi_2");
    require_finite(config.detuning_2, "detuning_2");
    require_finite(config.gamma_2, "gamma_2");
    if (config.rabi_2 < 0.0) throw InvalidConfig("rabi_2 must be nonnegative");
    if (config.gamma_2 < 0.0) throw InvalidConfig("gamma_2 must be nonnegative");
  }
}

bool LiouvilleSystem::is_live(int slot) const {
  return std::find(live_slots.begin(), live_slots.end(), slot) != live_slots.end();
}

LiouvilleSystem build_two_level(const ModelConfig& config) {
  if (config.model != Model::TwoLevel) {
    throw InvalidConfig("model must be two_level for build_two_level");
  }
  validate(config);
  BasisMap basis(2);
  ComplexMatrix h = -config.detuning_1 * to_matrix({2, 2}, 2) +
                    0.5 * config.rabi_1 * (to_matrix({2, 1}, 2) + to_matrix({1, 2}, 2));
  std::vector<std::pair<double, TransitionOp>> decays{{config.gamma_1, {1, 2}}};
  auto live = all_slots(basis);
  return assemble(std::move(basis), h, decays, config, std::move(live), false);
}

LiouvilleSystem build_lambda(const ModelConfig& config) {
  if (config.model != Model::Lambda) {
    throw InvalidConfig("model must be lambda for build_lambda");
  }
  validate(config);
  BasisMap basis(3);
  ComplexMatrix h =
      -config.detuning_1 * to_matrix({3, 3}, 3) -
      (config.detuning_1 - config.detuning_2) * to_matrix({2, 2}, 3) +
      0.5 * config.rabi_1 * (to_matrix({3, 1}, 3) + to_matrix({1, 3}, 3)) +
      0.5 * config.rabi_2 * (to_matrix({3, 2}, 3) + to_matrix({2, 3}, 3));
  std::vector<std::pair<double, TransitionOp>> decays{
      {config.gamma_1, {1, 3}}, {config.gamma_2, {2, 3}}};
  // With the second arm switched off exactly, level 2 never exchanges
  // population or coherence with the rest of the system.
  const bool arm_off = config.rabi_2 == 0.0 && config.gamma_2 == 0.0;
  auto live = arm_off ? slots_avoiding_level(basis, 2) : all_slots(basis);
  const bool raman = config.rabi_1 > 0.0 && config.rabi_2 > 0.0 &&
                     config.detuning_1 == config.detuning_2;
  return assemble(std::move(basis), h, decays, config, std::move(live), raman);
}

LiouvilleSystem build_system(const ModelConfig& config) {
  return config.model == Model::TwoLevel ? build_two_level(config)
                                         : build_lambda(config);
}

}  // namespace rfspec
