#pragma once

// Shared fixtures for the unit and acceptance suites: the shipped example
// configurations, a seeded random-configuration generator, and small
// brute-force helpers that deliberately avoid the library's solver paths.

#include <random>
#include <vector>

#include "rfspec/correlation.hpp"
#include "rfspec/liouvillian.hpp"
#include "rfspec/spectrum.hpp"

namespace testsupport {

using namespace rfspec;

inline ModelConfig two_level(double rabi, double detuning = 0.0, double gamma = 1.0,
                             double u = 1.0) {
  ModelConfig config;
  config.model = Model::TwoLevel;
  config.rabi_1 = rabi;
  config.detuning_1 = detuning;
  config.gamma_1 = gamma;
  config.geometry_factor = u;
  return config;
}

inline ModelConfig lambda(double rabi_1, double rabi_2, double detuning_1,
                          double detuning_2, double gamma_2, double gamma_1 = 1.0) {
  ModelConfig config;
  config.model = Model::Lambda;
  config.rabi_1 = rabi_1;
  config.rabi_2 = rabi_2;
  config.detuning_1 = detuning_1;
  config.detuning_2 = detuning_2;
  config.gamma_1 = gamma_1;
  config.gamma_2 = gamma_2;
  return config;
}

// The example set exercised by the oracle-equivalence and sum-rule checks.
inline std::vector<ModelConfig> shipped_configs() {
  return {
      two_level(1.0),
      two_level(10.0),
      two_level(5.0, 3.0),
      two_level(0.5, -1.0),
      lambda(5.0, 5.0, 2.0, -1.0, 1.0),  // the canonical Lambda example
      lambda(3.0, 1.0, 0.0, 4.0, 0.5),
      lambda(8.0, 6.0, -2.0, 3.0, 2.0),
      lambda(1.0, 2.0, 1.0, -3.0, 0.3),
      lambda(12.0, 4.0, 5.0, -5.0, 1.5),
      [] {
        ModelConfig config = lambda(10.0, 0.0, 0.0, 0.0, 0.0);
        return config;  // arm switched off: reduces to the two-level atom
      }(),
  };
}

// Valid random Lambda configurations away from the Raman-resonance dark
// state: rabi in [0.1, 20], gamma_2 in [0.1, 5], detunings in [-10, 10]
// with |detuning_1 - detuning_2| >= 0.1 (all in units of gamma_1 = 1).
class RandomConfigs {
 public:
  explicit RandomConfigs(unsigned seed) : rng_(seed) {}

  ModelConfig next() {
    std::uniform_real_distribution<double> rabi(0.1, 20.0);
    std::uniform_real_distribution<double> det(-10.0, 10.0);
    std::uniform_real_distribution<double> gamma2(0.1, 5.0);
    ModelConfig config;
    config.model = Model::Lambda;
    config.rabi_1 = rabi(rng_);
    config.rabi_2 = rabi(rng_);
    config.gamma_1 = 1.0;
    config.gamma_2 = gamma2(rng_);
    config.detuning_1 = det(rng_);
    do {
      config.detuning_2 = det(rng_);
    } while (std::abs(config.detuning_1 - config.detuning_2) < 0.1);
    return config;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Random Hermitian, positive, unit-trace density matrix.
inline ComplexMatrix random_density_matrix(int dimension, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix a(dimension, dimension);
  for (int i = 0; i < dimension; ++i) {
    for (int j = 0; j < dimension; ++j) {
      a(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

// X vector of a density matrix in the system's basis (<s_ab> = <b|rho|a>).
inline ComplexVector state_vector(const LiouvilleSystem& sys,
                                  const ComplexMatrix& rho) {
  ComplexVector x(sys.size());
  for (int j = 0; j < sys.size(); ++j) {
    const TransitionOp op = sys.basis.op_of(j);
    x(j) = rho(op.bra - 1, op.ket - 1);
  }
  return x;
}

// Brute-force RK4 for the inhomogeneous one-time equations
// d/dt X = Q X + R; independent of the library's linear solvers.
inline ComplexVector rk4_affine(const ComplexMatrix& q, const ComplexVector& r,
                                ComplexVector x, double t_max, double dt) {
  const auto steps = static_cast<long>(t_max / dt);
  for (long s = 0; s < steps; ++s) {
    const ComplexVector k1 = q * x + r;
    const ComplexVector k2 = q * (x + 0.5 * dt * k1) + r;
    const ComplexVector k3 = q * (x + 0.5 * dt * k2) + r;
    const ComplexVector k4 = q * (x + dt * k3) + r;
    x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

inline double max_abs_diff(const SpectrumResult& a, const SpectrumResult& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    diff = std::max(diff, std::abs(a.values[i] - b.values[i]));
  }
  return diff;
}

}  // namespace testsupport
