#pragma once

#include "rfspec/dynamics.hpp"
#include "rfspec/liouvillian.hpp"

namespace rfspec {

// Operator pair defining a two-time correlation function. `observed` is
// the later-time operator whose slot the spectrum reads; `fixed` is the
// earlier-time operator. `side` records where `fixed` sits inside the
// equal-time products that seed the lag dynamics:
//
//   FixedOnRight  Y_k(0) = <s_k fixed>,  Y_k(tau) = <s_k(t+tau) fixed(t)>
//   FixedOnLeft   Y_k(0) = <fixed s_k>,  Y_k(tau) = <fixed(t) s_k(t+tau)>
//
// The emission spectrum is the FixedOnRight case with observed = s_eg
// (raising) and fixed = s_ge (lowering). For such physical pairs both
// sides give the same spectrum; supporting both makes the ordering
// convention testable instead of silent.
enum class FixedSide { FixedOnRight, FixedOnLeft };

struct DetectionPair {
  TransitionOp observed;
  TransitionOp fixed;
  FixedSide side = FixedSide::FixedOnRight;
};

// The pair for the emitted line: |highest> -> |1>.
DetectionPair emission_pair(const LiouvilleSystem& sys);

// Initial data that the regression theorem needs to propagate two-time
// correlators with the one-time equations of motion:
//
//   Y_k(tau) = tr(s_k e^{L tau}[fixed rho_ss])          (FixedOnRight)
//
// obeys d/dtau Y = Q Y + tr(fixed rho_ss) R, because the one-time
// equations hold for any initial matrix and the inhomogeneity of the
// trace-eliminated system scales with the trace of that matrix. Hence
// inhomogeneous_scale = <fixed>_ss, and the fluctuation vector
// dy0 = y0 - <fixed>_ss x_inf evolves homogeneously, d/dtau dY = Q dY.
struct CorrelationIC {
  ComplexVector y0;
  ComplexVector dy0;
  Complex inhomogeneous_scale{0.0, 0.0};
  DetectionPair pair;
};

// Builds Y(0) componentwise from the operator product rule. Products that
// land on the eliminated population sigma_11 contribute the
// trace-constraint constant, which is exactly where term-dropping bugs
// hide; this path is exercised exhaustively by the tests.
CorrelationIC regression_initial(const LiouvilleSystem& sys, const SteadyState& ss,
                                 const DetectionPair& pair);

}  // namespace rfspec
