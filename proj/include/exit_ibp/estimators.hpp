#pragma once

#include <stdexcept>

#include "exit_ibp/chain.hpp"
#include "exit_ibp/model.hpp"
#include "exit_ibp/rng.hpp"
#include "exit_ibp/test_functions.hpp"
#include "exit_ibp/weights.hpp"

namespace exit_ibp {

enum class EstimatorKind { Representation, TimeFunctional, Derivative };

const char* to_string(EstimatorKind kind);

/// Raised when a per-path value is NaN or infinite.
class EstimatorFault : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// e^{lambda T} [ 1{hit} f(zeta_n + tau_bar, L) (Gamma + Gamma_bar)
///              + 2 (2 rho' - 1) f(T, X_{n+1}) 1{X_{n+1} >= L} Gamma ]
/// X_{n+1} is one more reflected Gaussian step over (zeta_n, T] with a fresh
/// bit rho', drawn from `rng`. Unbiased for E[f(tau ^ T, X_{tau ^ T})].
double representation_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                                   const DiffusionModel& model, double lambda_poisson, RngStream& rng);

/// e^{lambda T} g(zeta_n + tau_bar) 1{hit} theta_hat Gamma + f(T), with
/// g = f - f(T). Unbiased for E[f(tau ^ T)]. Time-only f.
double time_functional_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                                    const DiffusionModel& model, double lambda_poisson);

/// e^{lambda T} M^{-1} sum_i Delta_i^2 g(zeta_n + tau_bar) 1{hit} theta^{I_i}.
/// Unbiased for E[f'(tau) 1{tau <= T}]; f need not be differentiable.
/// Throws EstimatorFault on a non-finite value.
double derivative_contribution(const ChainPath& path, const WeightSet& w, const TestFunction& f,
                               const DiffusionModel& model, double lambda_poisson);

}  // namespace exit_ibp
