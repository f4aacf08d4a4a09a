#include "rfspec/operator_algebra.hpp"

namespace rfspec {

ComplexMatrix to_matrix(TransitionOp op, int dimension) {
  if (op.ket < 1 || op.ket > dimension || op.bra < 1 || op.bra > dimension) {
    throw std::invalid_argument("transition operator level out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dimension, dimension);
  m(op.ket - 1, op.bra - 1) = 1.0;
  return m;
}

BasisMap::BasisMap(int dimension) : dimension_(dimension) {
  if (dimension < 2) {
    throw std::invalid_argument("basis dimension must be at least 2");
  }
  slots_.reserve(static_cast<std::size_t>(dimension * dimension - 1));
  for (int a = 2; a <= dimension; ++a) {
    population_slots_.push_back(static_cast<int>(slots_.size()));
    slots_.push_back({a, a});
  }
  for (int a = 1; a <= dimension; ++a) {
    for (int b = 1; b <= dimension; ++b) {
      if (a != b) slots_.push_back({a, b});
    }
  }
}

TransitionOp BasisMap::op_of(int index) const {
  if (index < 0 || index >= size()) {
    throw std::out_of_range("basis slot index out of range");
  }
  return slots_[static_cast<std::size_t>(index)];
}

std::optional<int> BasisMap::index_of(TransitionOp op) const {
  for (int j = 0; j < size(); ++j) {
    if (slots_[static_cast<std::size_t>(j)] == op) return j;
  }
  return std::nullopt;
}

int BasisMap::require_index(TransitionOp op) const {
  const auto j = index_of(op);
  if (!j) {
    throw std::invalid_argument("operator is not a retained basis slot");
  }
  return *j;
}

int BasisMap::adjoint_slot(int index) const {
  return require_index(adjoint(op_of(index)));
}

LinearForm expectation_form(TransitionOp op, const BasisMap& basis) {
  const int d = basis.dimension();
  if (op.ket < 1 || op.ket > d || op.bra < 1 || op.bra > d) {
    throw std::invalid_argument("operator dimension does not match basis");
  }
  LinearForm form;
  form.coeffs = ComplexVector::Zero(basis.size());
  if (const auto j = basis.index_of(op)) {
    form.coeffs(*j) = 1.0;
    return form;
  }
  // Eliminated population: <sigma_11> = 1 - sum of retained populations.
  form.constant = 1.0;
  for (int j : basis.population_slots()) form.coeffs(j) = -1.0;
  return form;
}

}  // namespace rfspec
