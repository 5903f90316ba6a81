#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exit_ibp/model.hpp"
#include "exit_ibp/rng.hpp"

namespace exit_ibp {

enum class Scheme {
  /// Poisson jump times, Gaussian increments given the times.
  Gaussian,
  /// Symmetric-exponential increments first, then GIG inter-jump times given
  /// the increments. Same joint law as Gaussian.
  GigTime,
};

const char* to_string(Scheme scheme);

/// One trajectory of the reflected chain on [0, T].
///
/// Index conventions: states[0] = x0 and states[i] is the state after the
/// i-th jump (i = 1..n); rho[i-1], z_incr[i-1], tau[i-1] belong to jump i.
/// delta_sq has n + 1 entries, the last one being (L - states[n])^2.
struct ChainPath {
  Scheme scheme = Scheme::Gaussian;
  int n = 0;
  std::vector<double> zeta;
  std::vector<double> tau;
  std::vector<int> rho;
  std::vector<double> states;
  std::vector<double> z_incr;
  std::vector<double> delta_sq;
  double tau_bar = 0.0;
  bool hit_before_T = false;
  bool survived = true;

  void clear();
  double last_state() const { return states.back(); }
  double last_jump_time() const { return zeta.back(); }
};

/// Sample into `out`, reusing its storage. Returns false (path aborted) if
/// more than n_max jumps fall in [0, T]; `out` is then unspecified.
bool sample_chain_gaussian(RngStream& rng, const DiffusionModel& model, double lambda_poisson, int n_max,
                           ChainPath& out);
bool sample_chain_gig(RngStream& rng, const DiffusionModel& model, double lambda_poisson, int n_max,
                      ChainPath& out);

std::optional<ChainPath> sample_chain_gaussian(RngStream& rng, const DiffusionModel& model,
                                               double lambda_poisson, int n_max = 60);
std::optional<ChainPath> sample_chain_gig(RngStream& rng, const DiffusionModel& model, double lambda_poisson,
                                          int n_max = 60);

/// mu = |increment| / (sigma_prev sqrt(2 lambda)); the GIG time law of a jump
/// with that increment is GIG(2 lambda, 2 lambda mu^2, 1/2).
double gig_time_mu(double abs_increment, double sigma_prev, double lambda_poisson);

class DegeneratePathError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// M = sum of delta_sq. Throws DegeneratePathError if a term is exactly 0.
double malliavin_variance(const ChainPath& path);

/// sum_i |Delta_i| >= |x0 - L|, up to a relative rounding slack of 1e-12.
/// Only meaningful on surviving paths.
bool geometric_inequality_holds(const ChainPath& path, double x0, double L);

/// Header and row for the optional per-path dump. List-valued fields are
/// ';'-separated inside one CSV field.
std::string path_dump_header();
std::string path_dump_row(const ChainPath& path);

}  // namespace exit_ibp
