#pragma once

#include <optional>
#include <vector>

#include "rfspec/numerics.hpp"

namespace rfspec {

// Elementary transition operator sigma_ab = |a><b| of a d-level emitter.
// Levels are 1-based; level 1 is the ground state.
struct TransitionOp {
  int ket = 1;  // a
  int bra = 1;  // b
  friend bool operator==(const TransitionOp&, const TransitionOp&) = default;
};

constexpr TransitionOp adjoint(TransitionOp op) noexcept { return {op.bra, op.ket}; }
constexpr bool is_population(TransitionOp op) noexcept { return op.ket == op.bra; }

// sigma_ab sigma_cd = delta_bc sigma_ad; empty when the inner labels differ.
constexpr std::optional<TransitionOp> product(TransitionOp left, TransitionOp right) noexcept {
  if (left.bra != right.ket) return std::nullopt;
  return TransitionOp{left.ket, right.bra};
}

// Dense |a><b| for constructing generators and test cross-checks.
ComplexMatrix to_matrix(TransitionOp op, int dimension);

// Indexing of the n = d^2 - 1 operator expectations that make up the state
// vector X. The ground population sigma_11 is eliminated through
// tr(rho) = 1 and recovered as 1 - sum of the retained populations. Slots
// hold the populations sigma_22..sigma_dd first, then the coherences
// sigma_ab (a != b) in lexicographic (a, b) order.
class BasisMap {
 public:
  explicit BasisMap(int dimension);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(slots_.size()); }
  TransitionOp eliminated() const { return {1, 1}; }

  TransitionOp op_of(int index) const;
  std::optional<int> index_of(TransitionOp op) const;
  // index_of for operators that must be retained slots.
  int require_index(TransitionOp op) const;
  // Slot holding the adjoint of the operator at `index`.
  int adjoint_slot(int index) const;

  const std::vector<TransitionOp>& slots() const { return slots_; }
  const std::vector<int>& population_slots() const { return population_slots_; }

 private:
  int dimension_;
  std::vector<TransitionOp> slots_;
  std::vector<int> population_slots_;
};

// <op> written as coeffs . X + constant, valid for any unit-trace rho.
// Retained operators give a coordinate vector; the eliminated population
// gives the trace-constraint form 1 - sum of retained populations.
struct LinearForm {
  ComplexVector coeffs;
  Complex constant{0.0, 0.0};
};

LinearForm expectation_form(TransitionOp op, const BasisMap& basis);

inline Complex evaluate(const LinearForm& form, const ComplexVector& x) {
  return (form.coeffs.array() * x.array()).sum() + form.constant;
}

}  // namespace rfspec
