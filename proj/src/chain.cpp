#include "exit_ibp/chain.hpp"

#include <cmath>
#include <sstream>

#include "exit_ibp/distributions.hpp"

namespace exit_ibp {

const char* to_string(Scheme scheme) {
  return scheme == Scheme::Gaussian ? "gaussian" : "gig_time";
}

void ChainPath::clear() {
  n = 0;
  zeta.clear();
  tau.clear();
  rho.clear();
  states.clear();
  z_incr.clear();
  delta_sq.clear();
  tau_bar = 0.0;
  hit_before_T = false;
  survived = true;
}

namespace {

void start(ChainPath& out, Scheme scheme, double x0) {
  out.clear();
  out.scheme = scheme;
  out.zeta.push_back(0.0);
  out.states.push_back(x0);
}

void accept_jump(ChainPath& out, double L, double tau, int rho, double z, double increment, double anchor) {
  out.zeta.push_back(out.zeta.back() + tau);
  out.tau.push_back(tau);
  out.rho.push_back(rho);
  out.z_incr.push_back(z);
  out.delta_sq.push_back(increment * increment);
  const double next = anchor + increment;
  out.states.push_back(next);
  out.survived = out.survived && next > L;
  ++out.n;
}

void finish(RngStream& rng, const DiffusionModel& model, ChainPath& out) {
  const double L = model.L();
  const double x_n = out.states.back();
  const double gap = L - x_n;
  out.delta_sq.push_back(gap * gap);
  out.tau_bar = levy_sample(rng, std::abs(gap) / model.sigma(x_n));
  out.hit_before_T = out.tau_bar <= model.T() - out.zeta.back();
}

}  // namespace

double gig_time_mu(double abs_increment, double sigma_prev, double lambda_poisson) {
  return abs_increment / (sigma_prev * std::sqrt(2.0 * lambda_poisson));
}

bool sample_chain_gaussian(RngStream& rng, const DiffusionModel& model, double lambda_poisson, int n_max,
                           ChainPath& out) {
  const double L = model.L();
  const double T = model.T();
  start(out, Scheme::Gaussian, model.x0());
  for (;;) {
    const double dt = exponential_sample(rng, lambda_poisson);
    if (out.zeta.back() + dt > T) break;
    if (out.n == n_max) return false;
    const int rho = rng.bit();
    const double x = out.states.back();
    const double anchor = rho ? x : 2.0 * L - x;
    const double z = std::sqrt(dt) * standard_normal(rng);
    accept_jump(out, L, dt, rho, z, model.sigma(x) * z, anchor);
  }
  finish(rng, model, out);
  return true;
}

bool sample_chain_gig(RngStream& rng, const DiffusionModel& model, double lambda_poisson, int n_max,
                      ChainPath& out) {
  const double L = model.L();
  const double T = model.T();
  const double a_par = 2.0 * lambda_poisson;
  start(out, Scheme::GigTime, model.x0());
  for (;;) {
    const int rho = rng.bit();
    const double z = symmetric_exponential_sample(rng, lambda_poisson);
    const double x = out.states.back();
    const double sigma_prev = model.sigma(x);
    const double mu = gig_time_mu(std::abs(sigma_prev * z), sigma_prev, lambda_poisson);
    const double dt = gig_sample(rng, GigParams{a_par, a_par * mu * mu, 0.5});
    // The jump that lands beyond T only decides N_T; its state is discarded.
    if (out.zeta.back() + dt > T) break;
    if (out.n == n_max) return false;
    const double anchor = rho ? x : 2.0 * L - x;
    accept_jump(out, L, dt, rho, z, sigma_prev * z, anchor);
  }
  finish(rng, model, out);
  return true;
}

std::optional<ChainPath> sample_chain_gaussian(RngStream& rng, const DiffusionModel& model,
                                               double lambda_poisson, int n_max) {
  ChainPath path;
  if (!sample_chain_gaussian(rng, model, lambda_poisson, n_max, path)) return std::nullopt;
  return path;
}

std::optional<ChainPath> sample_chain_gig(RngStream& rng, const DiffusionModel& model, double lambda_poisson,
                                          int n_max) {
  ChainPath path;
  if (!sample_chain_gig(rng, model, lambda_poisson, n_max, path)) return std::nullopt;
  return path;
}

double malliavin_variance(const ChainPath& path) {
  double m = 0.0;
  for (const double d : path.delta_sq) {
    if (d == 0.0) throw DegeneratePathError("zero spatial increment in chain path");
    m += d;
  }
  return m;
}

bool geometric_inequality_holds(const ChainPath& path, double x0, double L) {
  double total = 0.0;
  for (const double d : path.delta_sq) total += std::sqrt(d);
  return total >= std::abs(x0 - L) * (1.0 - 1e-12);
}

std::string path_dump_header() { return "scheme,n,zeta,states,tau_bar,survived,hit"; }

std::string path_dump_row(const ChainPath& path) {
  std::ostringstream os;
  os.precision(17);
  auto join = [&](const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ";" : "") << v[i];
  };
  os << to_string(path.scheme) << ',' << path.n << ',';
  join(path.zeta);
  os << ',';
  join(path.states);
  os << ',' << path.tau_bar << ',' << (path.survived ? 1 : 0) << ',' << (path.hit_before_T ? 1 : 0);
  return os.str();
}

}  // namespace exit_ibp
