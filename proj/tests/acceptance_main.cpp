// Acceptance suite: drives the full pipeline through every headline
// guarantee at its pinned tolerance and prints one PASS/FAIL line per
// criterion, with the measured numbers. Exits nonzero if any criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rfspec/oracle.hpp"
#include "rfspec/spectrum.hpp"
#include "test_support.hpp"

using namespace rfspec;
using namespace testsupport;

namespace {

struct Pipeline {
  LiouvilleSystem sys;
  SteadyState ss;
  CorrelationIC ic;
};

Pipeline make_pipeline(const ModelConfig& config) {
  LiouvilleSystem sys = build_system(config);
  SteadyState ss = steady_state(sys);
  CorrelationIC ic = regression_initial(sys, ss, emission_pair(sys));
  return {std::move(sys), std::move(ss), std::move(ic)};
}

FrequencyGrid suite_grid(const ModelConfig& config) {
  const double span = std::max(config.rabi_1, config.rabi_2) + 10.0 * config.gamma_1;
  return {-span, span, 1001};
}

struct Outcome {
  bool pass = false;
  std::string note;
};

struct Check {
  std::string name;
  std::function<Outcome()> body;
};

int run_checks(const std::vector<Check>& checks) {
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    Outcome outcome;
    try {
      outcome = checks[i].body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += outcome.pass ? 0 : 1;
    std::printf("%s  %zu. %s (%s)\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                checks[i].name.c_str(), outcome.note.c_str());
    std::fflush(stdout);
  }
  return failures;
}

std::string num(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3g", value);
  return buffer;
}

// Shared state for criteria 1, 2, 3, 8: one pass over the randomized suite.
struct RandomizedSuite {
  double max_equivalence_rel = 0.0;
  double min_value_rel = 0.0;
  int sideband_configs = 0;
  int sideband_failures = 0;
  double coherent_slack = 1.0;  // min of (bound - weight)
  double herm_max = 0.0;
  bool trace_exact = true;
  double rho_eig_min = 1.0;
  double resid_ratio_max = 0.0;
  std::string detail;
  double seconds = 0.0;
};

// Local maxima away from the carrier, characterized by their prominence
// over the adjacent troughs. A Lorentzian-like sideband rises cleanly out
// of nonnegative troughs; a dispersive structure undershoots them.
struct SideMaximum {
  double nu = 0.0;
  double prominence_rel = 0.0;  // over the higher trough, relative to peak
  double trough_min = 0.0;
};

std::vector<SideMaximum> side_maxima(const SpectrumResult& s, double nu_floor) {
  std::vector<SideMaximum> found;
  const double peak = s.peak();
  for (int i = 1; i + 1 < s.grid.count; ++i) {
    const double v = s.values[static_cast<std::size_t>(i)];
    if (!(v > s.values[static_cast<std::size_t>(i - 1)] &&
          v >= s.values[static_cast<std::size_t>(i + 1)])) {
      continue;
    }
    if (std::abs(s.grid.nu(i)) < nu_floor) continue;
    int lo = i;
    while (lo > 0 && s.values[static_cast<std::size_t>(lo - 1)] <=
                         s.values[static_cast<std::size_t>(lo)]) {
      --lo;
    }
    int hi = i;
    while (hi + 1 < s.grid.count && s.values[static_cast<std::size_t>(hi + 1)] <=
                                        s.values[static_cast<std::size_t>(hi)]) {
      ++hi;
    }
    const double left = s.values[static_cast<std::size_t>(lo)];
    const double right = s.values[static_cast<std::size_t>(hi)];
    found.push_back({s.grid.nu(i), (v - std::max(left, right)) / peak,
                     std::min(left, right)});
  }
  return found;
}

RandomizedSuite run_randomized_suite() {
  RandomizedSuite suite;
  const auto start = std::chrono::steady_clock::now();
  RandomConfigs random(20260808);
  for (int trial = 0; trial < 200; ++trial) {
    const ModelConfig config = random.next();
    const Pipeline p = make_pipeline(config);
    const FrequencyGrid grid = suite_grid(config);
    const SpectrumResult variance = variance_spectrum(p.sys, p.ss, p.ic, grid);
    const SpectrumResult limit = limit_spectrum(p.sys, p.ss, p.ic, grid);
    const double peak = variance.peak();

    // 1. pointwise method equivalence
    suite.max_equivalence_rel =
        std::max(suite.max_equivalence_rel, max_abs_diff(limit, variance) / peak);

    // 2. positivity, and resolved Lorentzian sidebands under strong drive
    double min_value = 0.0;
    for (double v : variance.values) min_value = std::min(min_value, v);
    suite.min_value_rel = std::min(suite.min_value_rel, min_value / peak);

    // Strong drive on the observed transition guarantees resolved
    // sidebands on both flanks (a strong drive on the other arm alone
    // produces a one-sided Autler-Townes structure instead, so those
    // configs are judged on positivity only).
    const double width = config.gamma_1 + config.gamma_2;
    if (config.rabi_1 >= 5.0 * width) {
      suite.sideband_configs += 1;
      bool left = false;
      bool right = false;
      for (const SideMaximum& m : side_maxima(variance, 2.0 * width)) {
        const bool lorentzian = m.prominence_rel >= 1e-6 &&
                                m.trough_min >= -tol::positivity_rel * peak;
        if (!lorentzian) continue;
        left = left || m.nu < 0.0;
        right = right || m.nu > 0.0;
      }
      if (!(left && right)) {
        suite.sideband_failures += 1;
        if (suite.detail.empty()) {
          suite.detail = "no resolved sidebands at trial " + std::to_string(trial);
        }
      }
    }

    // 3. coherent weight never exceeds the population bound
    const double weight = coherent_weight(p.ss, p.ic.pair, p.sys.config);
    const double bound = config.gamma_1 * config.geometry_factor *
                         p.ss.rho(2, 2).real();
    suite.coherent_slack = std::min(suite.coherent_slack, bound - weight);

    // 8. steady-state physicality
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        0.5 * (p.ss.rho + p.ss.rho.adjoint()));
    suite.herm_max = std::max(
        suite.herm_max, inf_norm(ComplexMatrix(p.ss.rho - p.ss.rho.adjoint())));
    suite.trace_exact =
        suite.trace_exact && p.ss.rho.trace() == Complex{1.0, 0.0};
    suite.rho_eig_min = std::min(suite.rho_eig_min, es.eigenvalues().minCoeff());
    suite.resid_ratio_max = std::max(
        suite.resid_ratio_max, p.ss.residual / (1.0 + inf_norm(p.sys.R)));
  }
  suite.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return suite;
}

}  // namespace

int main() {
  const RandomizedSuite suite = run_randomized_suite();

  const std::vector<Check> checks = {
      {"method equivalence: limit vs variance within 1e-10 of peak over 200 "
       "randomized configs",
       [&]() -> Outcome {
         const bool pass = suite.max_equivalence_rel <= tol::equivalence_rel &&
                           suite.seconds <= 60.0;
         return {pass, "max rel diff " + num(suite.max_equivalence_rel) +
                           ", suite runtime " + num(suite.seconds) + " s"};
       }},

      {"positivity: min value >= -1e-10 peak, Lorentzian sidebands under "
       "strong drive",
       [&]() -> Outcome {
         const bool pass = suite.min_value_rel >= -tol::positivity_rel &&
                           suite.sideband_configs > 0 &&
                           suite.sideband_failures == 0;
         std::string note = "min rel value " + num(suite.min_value_rel) + ", " +
                            std::to_string(suite.sideband_configs) +
                            " strong-drive configs with two-sided sidebands";
         if (!suite.detail.empty()) note += "; " + suite.detail;
         return {pass, note};
       }},

      {"coherent weight <= gamma_1 u <s_ee> for every tested config",
       [&]() -> Outcome {
         return {suite.coherent_slack >= -tol::coherent_bound_abs,
                 "min(bound - weight) " + num(suite.coherent_slack)};
       }},

      {"Mollow benchmark: sideband centers at +/-10 within one grid spacing, "
       "3:1 ratio within 5%, analytic match within 1e-8",
       []() -> Outcome {
         const double rabi = 10.0;
         const Pipeline p = make_pipeline(two_level(rabi));
         const FrequencyGrid grid{-15.0, 15.0, 1201};
         const SpectrumResult variance = variance_spectrum(p.sys, p.ss, p.ic, grid);
         const SpectrumResult analytic = mollow_reference(rabi, 1.0, grid);

         // Sideband centers = the Lorentzian pole positions, i.e. the
         // imaginary parts of the complex eigenvalue pair of the
         // generator; the summed spectrum's maxima are additionally
         // dragged a little inward by the non-secular admixture.
         const double center =
             std::abs(oracles::resonant_sideband_eigenvalue(rabi, 1.0).imag());
         if (std::abs(center - rabi) > grid.spacing()) {
           return {false, "pole centers off by more than one grid spacing"};
         }
         const EigenReport report = eigen_report(p.sys);
         double measured_center = 0.0;
         for (const Complex& ev : report.eigenvalues) {
           measured_center = std::max(measured_center, std::abs(ev.imag()));
         }
         if (std::abs(measured_center - rabi) > grid.spacing()) {
           return {false, "computed pole centers off by more than one grid spacing"};
         }

         std::vector<double> maxima;
         for (const SideMaximum& m : side_maxima(variance, 5.0)) {
           if (m.prominence_rel >= 1e-2) maxima.push_back(m.nu);
         }
         if (maxima.size() != 2) return {false, "expected two sideband maxima"};
         if (std::abs(maxima[0] + rabi) > 0.12 || std::abs(maxima[1] - rabi) > 0.12) {
           return {false, "sideband maxima too far from +/- rabi"};
         }
         const auto side_index = static_cast<std::size_t>(
             std::llround((maxima[1] - grid.nu_min) / grid.spacing()));
         const double ratio = variance.values[600] / variance.values[side_index];
         const double mismatch =
             max_abs_diff(variance, analytic) / variance.peak();
         const bool pass =
             std::abs(ratio - 3.0) <= 0.05 * 3.0 && mismatch <= tol::mollow_match_rel;
         return {pass, "centers +/-" + num(measured_center) + ", ratio " +
                           num(ratio) + ", analytic mismatch " + num(mismatch)};
       }},

      {"time-domain oracle: RK4 + Fourier matches variance within 1e-3 of "
       "peak on the shipped configs",
       []() -> Outcome {
         const auto start = std::chrono::steady_clock::now();
         double worst = 0.0;
         for (const ModelConfig& config : shipped_configs()) {
           const Pipeline p = make_pipeline(config);
           const FrequencyGrid grid = suite_grid(config);
           const SpectrumResult variance =
               variance_spectrum(p.sys, p.ss, p.ic, grid);
           const CorrelationSeries series = integrate_correlation_auto(p.sys, p.ic);
           const SpectrumResult oracle = fourier_spectrum(
               series, grid, config.gamma_1, config.geometry_factor);
           worst = std::max(worst, max_abs_diff(variance, oracle) / variance.peak());
         }
         const double seconds =
             std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                 .count();
         const bool pass = worst <= tol::oracle_match_rel && seconds <= 30.0;
         return {pass, "worst rel mismatch " + num(worst) + " over 10 configs, " +
                           num(seconds) + " s"};
       }},

      {"sum rule: integrated spectrum equals pi u (<s_ee> - |<s_eg>|^2) "
       "within 1% on the shipped configs",
       []() -> Outcome {
         double worst = 0.0;
         for (const ModelConfig& config : shipped_configs()) {
           const Pipeline p = make_pipeline(config);
           // Widen until the boundary satisfies the decay precondition.
           double span = std::max({config.rabi_1, config.rabi_2, 1.0}) +
                         40.0 * (config.gamma_1 + config.gamma_2);
           IntegralResult integral;
           for (int attempt = 0; attempt < 6; ++attempt) {
             const int count = static_cast<int>(span * 200.0) | 1;  // ~0.01 spacing
             const SpectrumResult spectrum = variance_spectrum(
                 p.sys, p.ss, p.ic, FrequencyGrid{-span, span, count});
             integral = integrated_intensity(spectrum);
             if (integral.boundary_ok) break;
             span *= 2.0;
           }
           if (!integral.boundary_ok) {
             return {false, "no truncation-adequate grid found"};
           }
           const int d = p.sys.basis.dimension();
           const double variance_0 =
               p.ss.rho(d - 1, d - 1).real() - std::norm(p.ss.rho(0, d - 1));
           const double expected =
               std::numbers::pi * config.geometry_factor * variance_0;
           worst = std::max(worst,
                            std::abs(integral.value - expected) / std::abs(expected));
         }
         return {worst <= tol::sum_rule_rel,
                 "worst rel error " + num(worst) + " over 10 configs"};
       }},

      {"model reduction: lambda with the second arm off matches the "
       "two-level spectrum to 1e-12",
       []() -> Outcome {
         const Pipeline two = make_pipeline(two_level(10.0));
         const Pipeline arm_off = make_pipeline(lambda(10.0, 0.0, 0.0, 0.0, 0.0));
         const FrequencyGrid grid{-20.0, 20.0, 1001};
         const SpectrumResult s2 = variance_spectrum(two.sys, two.ss, two.ic, grid);
         const SpectrumResult s3 =
             variance_spectrum(arm_off.sys, arm_off.ss, arm_off.ic, grid);
         const SpectrumResult l2 = limit_spectrum(two.sys, two.ss, two.ic, grid);
         const SpectrumResult l3 =
             limit_spectrum(arm_off.sys, arm_off.ss, arm_off.ic, grid);
         const double mismatch =
             std::max(max_abs_diff(s2, s3), max_abs_diff(l2, l3)) / s2.peak();
         return {mismatch <= tol::reduction_rel, "rel mismatch " + num(mismatch)};
       }},

      {"steady-state physicality: Hermitian, unit trace, positive, residual "
       "within bound across the randomized suite",
       [&]() -> Outcome {
         const bool pass = suite.herm_max <= tol::hermiticity_abs &&
                           suite.trace_exact &&
                           suite.rho_eig_min >= tol::rho_eigenvalue_min &&
                           suite.resid_ratio_max <= tol::steady_residual_rel;
         return {pass, std::string("max hermiticity gap ") + num(suite.herm_max) +
                           ", trace " +
                           (suite.trace_exact ? "exact" : "NOT exact") +
                           ", min rho eigenvalue " + num(suite.rho_eig_min) +
                           ", max residual ratio " + num(suite.resid_ratio_max)};
       }},
  };

  const int failures = run_checks(checks);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures,
              checks.size());
  return failures == 0 ? 0 : 1;
}
