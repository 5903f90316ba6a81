#pragma once

#include <cstdint>

#include "exit_ibp/engine.hpp"
#include "exit_ibp/model.hpp"
#include "exit_ibp/quadrature.hpp"
#include "exit_ibp/statistics.hpp"
#include "exit_ibp/test_functions.hpp"

namespace exit_ibp {

/// First passage density of x0 + sigma W to L: c / (sqrt(2 pi) s^{3/2}) e^{-c^2/(2s)},
/// c = (x0 - L) / sigma. Throws std::invalid_argument unless the model is
/// Brownian (b = 0, constant a).
double levy_hitting_density(const DiffusionModel& model, double s);

/// First passage density of x0 + b t + sigma W to L < x0:
/// d / (sigma sqrt(2 pi s^3)) exp(-(d + b s)^2 / (2 sigma^2 s)), d = x0 - L.
/// Throws std::invalid_argument unless b and a are constant.
double drifted_hitting_density(const DiffusionModel& model, double s);

/// P(X_T in dy, tau > T) for the same constant-coefficient model.
double killed_transition_density(const DiffusionModel& model, double y);

enum class QuadratureTarget {
  HitOnly,              ///< int_0^T f(s, L) p(s) ds
  StoppedFunctional,    ///< E[f(tau ^ T, X_{tau ^ T})], includes the survival part
  Derivative,           ///< int_0^T f'(s) p(s) ds
  DerivativeWithAtom,   ///< Derivative + f'(T) P(tau > T)
};

/// Quadrature value of the requested functional for a constant-coefficient
/// model. Throws QuadratureError when the adaptive rule cannot converge and
/// std::invalid_argument for an unsupported model or f.
double functional_by_quadrature(const DiffusionModel& model, const TestFunction& f, QuadratureTarget target,
                                const QuadratureSpec& spec = {});

enum class EulerMode { Functional, Derivative };

struct EulerOptions {
  int n_steps = 10000;
  /// A second path with coarse_factor times fewer steps is driven by the
  /// summed fine increments; 1 disables it.
  int coarse_factor = 10;
};

struct EulerBridgeResult {
  McStatistics functional;
  McStatistics derivative;          ///< all zero when f has no derivative
  McStatistics coarse_functional;
  McStatistics coarse_derivative;
  McStatistics diff_functional;     ///< fine minus coarse, pathwise
  McStatistics diff_derivative;
  int n_steps = 0;
  int coarse_factor = 1;
  double seconds = 0.0;

  const McStatistics& fine(EulerMode mode) const;
  /// |mean(fine - coarse)|: the change in the estimate under refinement,
  /// which bounds the fine-grid bias of a first-order scheme from above.
  /// 0 when the coarse path is disabled.
  double bias_band(EulerMode mode) const;
};

/// Euler-Maruyama with a Brownian-bridge kill test on each step that stays
/// above L; the hit time of a killed or crossing step is its midpoint.
/// Functional values are f(tau ^ T, X) and derivative values f'(tau) 1{hit}.
/// Sampling goes through the chunked engine, so results depend only on the
/// seed and chunk size.
EulerBridgeResult euler_bridge_run(const DiffusionModel& model, const TestFunction& f, const EulerOptions& options,
                                   const EngineOptions& engine);

McStatistics euler_bridge_estimate(const DiffusionModel& model, const TestFunction& f, EulerMode mode,
                                   std::int64_t n_paths, int n_steps, std::uint64_t seed, int workers = 1);

}  // namespace exit_ibp
