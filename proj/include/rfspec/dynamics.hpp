#pragma once

#include <vector>

#include "rfspec/liouvillian.hpp"
#include "rfspec/numerics.hpp"

namespace rfspec {

// Stationary solution of d/dt X = Q X + R, i.e. X(inf) = -Q^-1 R, together
// with the density matrix rebuilt from the trace constraint. Pinned
// (non-live) slots are zero by construction.
struct SteadyState {
  ComplexVector x_inf;
  ComplexMatrix rho;
  double residual = 0.0;  // ||Q x_inf + R||_inf over the full system
};

// Throws SingularLiouvillian when the factorization detects rank
// deficiency (for example the dark state of the Lambda model at Raman
// resonance, detuning_1 == detuning_2).
SteadyState steady_state(const LiouvilleSystem& sys);

// Solves (s I - Q) y = v with a fresh pivoted factorization at this s.
// Throws ResolventFailure when s coincides with an eigenvalue of Q. Safe
// to call concurrently for different s.
ComplexVector resolvent_solve(const LiouvilleSystem& sys, Complex s,
                              const ComplexVector& v);

// Solves Q y = v. Throws SingularLiouvillian on rank deficiency.
ComplexVector q_solve(const LiouvilleSystem& sys, const ComplexVector& v);

struct EigenReport {
  std::vector<Complex> eigenvalues;  // sorted by real part, descending
  double max_real_part = 0.0;
  double max_magnitude = 0.0;
};

// Eigenvalues of the full Q from a dense nonsymmetric solver. Every valid
// generator must satisfy max_real_part <= tol::stability_max_real.
EigenReport eigen_report(const LiouvilleSystem& sys);

// Second, algebraically independent route to the resolvent: factor the
// eigensystem once, then evaluate y = V diag(1/(s - lambda)) V^-1 v at any
// s. Cross-checked against resolvent_solve; spectra use the pivoted
// factorization as the default path.
class EigenResolvent {
 public:
  explicit EigenResolvent(const LiouvilleSystem& sys);
  ComplexVector solve(Complex s, const ComplexVector& v) const;

 private:
  ComplexMatrix vectors_;
  ComplexMatrix vectors_inverse_;
  ComplexVector values_;
};

}  // namespace rfspec
