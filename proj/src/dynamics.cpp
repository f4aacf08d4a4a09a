#include "rfspec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rfspec {

namespace {

ComplexMatrix gather(const ComplexMatrix& m, const std::vector<int>& rows,
                     const std::vector<int>& cols) {
  ComplexMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(rows[i], cols[j]);
    }
  }
  return out;
}

ComplexVector gather(const ComplexVector& v, const std::vector<int>& rows) {
  ComplexVector out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v(rows[i]);
  }
  return out;
}

void scatter(const ComplexVector& sub, const std::vector<int>& rows,
             ComplexVector& out) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out(rows[i]) = sub(static_cast<Eigen::Index>(i));
  }
}

// Pivoted dense solve with a rank-deficiency check and one step of
// iterative refinement. Throws E carrying `what` when a pivot falls below
// the relative threshold.
template <typename E>
ComplexVector checked_solve(const ComplexMatrix& a, const ComplexVector& b,
                            const char* what) {
  const double scale = std::max(inf_norm(a), std::numeric_limits<double>::min());
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double pivot_min = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (pivot_min < tol::singular_pivot_rel * scale) throw E(what);
  ComplexVector x = lu.solve(b);
  x += lu.solve(b - a * x);
  return x;
}

std::vector<int> inert_slots(const LiouvilleSystem& sys) {
  std::vector<int> inert;
  for (int j = 0; j < sys.size(); ++j) {
    if (!sys.is_live(j)) inert.push_back(j);
  }
  return inert;
}

// Sweeps candidates around `guess` until candidate + addend rounds to
// exactly `target`. Rounded addition with the smaller-ulp operand swept
// takes every representable value near the target, so a few ulps suffice.
double match_rounded_sum(double guess, double addend, double target) {
  if (guess + addend == target) return guess;
  const double inf = std::numeric_limits<double>::infinity();
  double lo = guess;
  double hi = guess;
  for (int step = 0; step < 128; ++step) {
    hi = std::nextafter(hi, inf);
    if (hi + addend == target) return hi;
    lo = std::nextafter(lo, -inf);
    if (lo + addend == target) return lo;
  }
  return guess;
}

// Chooses the eliminated population so the diagonal folds to exactly one
// in index order: fix the required partial sums from the last addition
// backwards, then make each rounded addition hit its target. Sweeping the
// head alone can fail when its ulp equals the rounding cell (the sum's
// phase inside the cell is then frozen); a sub-ulp nudge of the first
// retained population shifts the phase and unfreezes the fold.
void pin_unit_trace(ComplexMatrix& rho) {
  const auto d = rho.rows();
  const double inf = std::numeric_limits<double>::infinity();
  const double base = rho(1, 1).real();
  double up = base;
  double down = base;
  for (int attempt = 0; attempt < 16; ++attempt) {
    double target = 1.0;
    for (Eigen::Index a = d - 1; a >= 1; --a) {
      const double population = rho(a, a).real();
      target = match_rounded_sum(target - population, population, target);
    }
    rho(0, 0) = target;
    double fold = 0.0;
    for (Eigen::Index a = 0; a < d; ++a) fold += rho(a, a).real();
    if (fold == 1.0) return;
    if (attempt % 2 == 0) {
      up = std::nextafter(up, inf);
      rho(1, 1) = up;
    } else {
      down = std::nextafter(down, -inf);
      rho(1, 1) = down;
    }
  }
}

// Solves (s I - Q) y = v. Inert rows of Q never couple back into live
// columns, so the system splits: the inert block is solved first (or y is
// pinned to zero there when v vanishes on it), then the live block with
// the inert contribution moved to the right-hand side.
ComplexVector shifted_solve(const LiouvilleSystem& sys, Complex s,
                            const ComplexVector& v, const char* what) {
  if (v.size() != sys.size()) {
    throw std::invalid_argument("vector length does not match system size");
  }
  const ComplexMatrix shifted =
      s * ComplexMatrix::Identity(sys.size(), sys.size()) - sys.Q;
  if (sys.all_live()) {
    return checked_solve<ResolventFailure>(shifted, v, what);
  }
  const auto inert = inert_slots(sys);
  ComplexVector y = ComplexVector::Zero(sys.size());
  ComplexVector y_inert = ComplexVector::Zero(static_cast<Eigen::Index>(inert.size()));
  if (inf_norm(gather(v, inert)) != 0.0) {
    y_inert = checked_solve<ResolventFailure>(gather(shifted, inert, inert),
                                              gather(v, inert), what);
  }
  const ComplexVector rhs =
      gather(v, sys.live_slots) - gather(shifted, sys.live_slots, inert) * y_inert;
  const ComplexVector y_live = checked_solve<ResolventFailure>(
      gather(shifted, sys.live_slots, sys.live_slots), rhs, what);
  scatter(y_inert, inert, y);
  scatter(y_live, sys.live_slots, y);
  return y;
}

}  // namespace

SteadyState steady_state(const LiouvilleSystem& sys) {
  const int n = sys.size();
  const int d = sys.basis.dimension();
  if (sys.raman_degenerate) {
    throw SingularLiouvillian(
        "singular Liouvillian: Raman resonance (detuning_1 == detuning_2) pumps "
        "the atom into a dark state; no emission problem to solve");
  }

  ComplexVector x = ComplexVector::Zero(n);
  const ComplexMatrix q_live = gather(sys.Q, sys.live_slots, sys.live_slots);
  const ComplexVector r_live = gather(sys.R, sys.live_slots);
  const ComplexVector x_live = checked_solve<SingularLiouvillian>(
      q_live, ComplexVector(-r_live),
      "singular Liouvillian: no unique steady state (dark or decoupled state)");
  scatter(x_live, sys.live_slots, x);

  SteadyState ss;
  ss.x_inf = x;
  ss.rho = ComplexMatrix::Zero(d, d);
  // Populations are real by Hermiticity; drop the solver's imaginary dust
  // so the diagonal is exactly real and the trace can be pinned to one.
  for (int j = 0; j < n; ++j) {
    const TransitionOp op = sys.basis.op_of(j);
    // <sigma_ab> = <b| rho |a>
    ss.rho(op.bra - 1, op.ket - 1) =
        is_population(op) ? Complex{x(j).real(), 0.0} : x(j);
  }
  pin_unit_trace(ss.rho);
  ss.residual = inf_norm(ComplexVector(sys.Q * x + sys.R));
  if (ss.residual > tol::steady_residual_rel * (1.0 + inf_norm(sys.R))) {
    throw SingularLiouvillian(
        "singular Liouvillian: steady-state residual above tolerance");
  }
  return ss;
}

ComplexVector resolvent_solve(const LiouvilleSystem& sys, Complex s,
                              const ComplexVector& v) {
  return shifted_solve(sys, s, v, "resonant s: sI - Q is rank deficient");
}

ComplexVector q_solve(const LiouvilleSystem& sys, const ComplexVector& v) {
  if (v.size() != sys.size()) {
    throw std::invalid_argument("vector length does not match system size");
  }
  if (!sys.all_live() && inf_norm(gather(v, inert_slots(sys))) != 0.0) {
    throw SingularLiouvillian(
        "singular Liouvillian: decoupled sector has no unique inverse");
  }
  ComplexVector y = ComplexVector::Zero(sys.size());
  const ComplexVector y_live = checked_solve<SingularLiouvillian>(
      gather(sys.Q, sys.live_slots, sys.live_slots), gather(v, sys.live_slots),
      "singular Liouvillian: Q is rank deficient");
  scatter(y_live, sys.live_slots, y);
  return y;
}

EigenReport eigen_report(const LiouvilleSystem& sys) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(sys.Q, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on the generator matrix");
  }
  EigenReport report;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + sys.size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](Complex a, Complex b) {
              if (a.real() != b.real()) return a.real() > b.real();
              return a.imag() < b.imag();
            });
  report.max_real_part = -std::numeric_limits<double>::infinity();
  report.max_magnitude = 0.0;
  for (const Complex& ev : report.eigenvalues) {
    report.max_real_part = std::max(report.max_real_part, ev.real());
    report.max_magnitude = std::max(report.max_magnitude, std::abs(ev));
  }
  return report;
}

EigenResolvent::EigenResolvent(const LiouvilleSystem& sys) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(sys.Q, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolver failed on the generator matrix");
  }
  vectors_ = solver.eigenvectors();
  values_ = solver.eigenvalues();
  const double scale =
      std::max(inf_norm(vectors_), std::numeric_limits<double>::min());
  Eigen::PartialPivLU<ComplexMatrix> lu(vectors_);
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() <
      tol::singular_pivot_rel * scale) {
    throw std::runtime_error(
        "generator matrix is defective; eigendecomposition path unavailable");
  }
  vectors_inverse_ = lu.inverse();
}

ComplexVector EigenResolvent::solve(Complex s, const ComplexVector& v) const {
  ComplexVector coefficients = vectors_inverse_ * v;
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    const Complex gap = s - values_(k);
    if (std::abs(gap) < tol::singular_pivot_rel) {
      throw ResolventFailure("resonant s: coincides with an eigenvalue");
    }
    coefficients(k) /= gap;
  }
  return vectors_ * coefficients;
}

}  // namespace rfspec
