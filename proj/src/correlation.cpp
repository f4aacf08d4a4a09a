#include "rfspec/correlation.hpp"

namespace rfspec {

DetectionPair emission_pair(const LiouvilleSystem& sys) {
  const int d = sys.basis.dimension();
  return {TransitionOp{d, 1}, TransitionOp{1, d}, FixedSide::FixedOnRight};
}

CorrelationIC regression_initial(const LiouvilleSystem& sys, const SteadyState& ss,
                                 const DetectionPair& pair) {
  const int d = sys.basis.dimension();
  if (ss.x_inf.size() != sys.size()) {
    throw std::invalid_argument("steady state does not belong to this system");
  }
  if (pair.observed.ket > d || pair.observed.bra > d || pair.fixed.ket > d ||
      pair.fixed.bra > d) {
    throw std::invalid_argument("detection pair dimension does not match system");
  }

  CorrelationIC ic;
  ic.pair = pair;
  ic.y0 = ComplexVector::Zero(sys.size());
  for (int k = 0; k < sys.size(); ++k) {
    const TransitionOp slot_op = sys.basis.op_of(k);
    const auto prod = pair.side == FixedSide::FixedOnRight
                          ? product(slot_op, pair.fixed)
                          : product(pair.fixed, slot_op);
    if (prod) {
      ic.y0(k) = evaluate(expectation_form(*prod, sys.basis), ss.x_inf);
    }
  }
  ic.inhomogeneous_scale = evaluate(expectation_form(pair.fixed, sys.basis), ss.x_inf);
  ic.dy0 = ic.y0 - ic.inhomogeneous_scale * ss.x_inf;
  return ic;
}

}  // namespace rfspec
