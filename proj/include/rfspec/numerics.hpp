#pragma once

#include <atomic>
#include <complex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace rfspec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

// All tolerances used by the library and referenced by the test suites.
namespace tol {
inline constexpr double stability_max_real = 1e-12;   // upper bound on Re(eigenvalue) of a valid generator
inline constexpr double singular_pivot_rel = 1e-12;   // pivot threshold relative to the matrix inf-norm
inline constexpr double steady_residual_rel = 1e-10;  // ||Q x + R||_inf <= rel * (1 + ||R||_inf)
inline constexpr double hermiticity_abs = 1e-12;
inline constexpr double rho_eigenvalue_min = -1e-10;
inline constexpr double ic_identity_abs = 1e-14;      // dy0 = y0 - <fixed> x_inf, componentwise
inline constexpr double zero_lag_abs = 1e-12;         // observed slot of dy0 vs <s_ee> - |<s_eg>|^2
inline constexpr double equivalence_rel = 1e-10;      // limit vs variance, relative to the peak
inline constexpr double positivity_rel = 1e-10;       // admissible negative excursion, relative to the peak
inline constexpr double reduction_rel = 1e-12;        // lambda with one arm off vs two-level
inline constexpr double resolvent_paths_rel = 1e-8;   // LU path vs eigendecomposition path
inline constexpr double mollow_match_rel = 1e-8;      // analytic reference vs variance, relative to the peak
inline constexpr double oracle_match_rel = 1e-3;      // time-domain oracle vs variance, relative to the peak
inline constexpr double sum_rule_rel = 1e-2;
inline constexpr double truncation_tail_rel = 1e-8;   // |C(t_max)| <= rel * |C(0)|
inline constexpr double coherent_bound_abs = 1e-12;
inline constexpr double boundary_decay_rel = 1e-6;    // spectrum boundary vs peak when integrating
}  // namespace tol

// Configuration or input that violates a documented precondition. The
// message names the offending field.
struct InvalidConfig : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The generator matrix is rank deficient (dark state or equivalent
// degeneracy); there is no unique steady state to report.
struct SingularLiouvillian : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (sI - Q) could not be factored at the requested s.
struct ResolventFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A correlation series did not decay below the tail bound by t_max.
struct TruncationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double inf_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

inline double inf_norm(const ComplexVector& v) {
  if (v.size() == 0) return 0.0;
  return v.cwiseAbs().maxCoeff();
}

namespace detail {
int worker_count(int count);  // honors RFSPEC_THREADS
}

// Runs fn(i) for i in [0, count). Results must be written to per-index
// slots; the partitioning then has no effect on the output, so runs are
// reproducible for any thread count.
template <typename Fn>
void parallel_for_index(int count, Fn&& fn) {
  const int workers = detail::worker_count(count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int chunk = std::max(1, count / (workers * 8));
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const int begin = next.fetch_add(chunk);
          if (begin >= count) break;
          const int end = std::min(count, begin + chunk);
          for (int i = begin; i < end; ++i) fn(i);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace rfspec
