#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sfmap/map.hpp"

namespace sfmap {

// Mean of log|f'(x_n)| over n_sample iterates after discarding n_transient.
// Returns -infinity if a sampled derivative magnitude underflows to zero (or
// the orbit hits the origin exactly), +infinity if the orbit diverges.
// throws DomainError for x0 = 0
double lyapunov(const MapParams& p, double x0, std::size_t n_transient,
                std::size_t n_sample);

// Bisection root of step(x) - x on [lo, hi] (0 < lo < hi), refined to full
// precision (well below the 1e-13 contract); empty when no sign change.
std::optional<double> find_fixed_point(const MapParams& p, double lo, double hi);

inline constexpr double kDefaultPeriodTol = 1e-9;  // relative to orbit amplitude

// Smallest p <= max_period with |x_{n+p} - x_n| < tol * amplitude sustained
// over 3p consecutive checks after the transient; the ascending scan makes the
// result divisor-minimal. Empty for chaotic, diverged or zero-terminated
// orbits.
std::optional<std::size_t> detect_period(const MapParams& p, double x0,
                                         std::size_t n_transient,
                                         std::size_t max_period,
                                         double tol = kDefaultPeriodTol);

// Newton iteration on G(x) = F^p(x) - x with G' from the chain rule;
// converged when |G| < 1e-12. The returned point may have a minimal period
// dividing p. Empty on non-convergence or derivative blow-up.
std::optional<double> newton_periodic(const MapParams& p, double x_guess,
                                      std::size_t period,
                                      std::size_t max_steps = 64);

enum class SeedRule { FromMu, Continuation };

struct OrbitColumn {
  double rho = 0.0;
  std::vector<double> samples;  // empty when status != MaxIterations
  OrbitStatus status = OrbitStatus::MaxIterations;
};

// Attractor samples per rho lattice point: transient then the next n_keep
// points. rho_lo > rho_hi scans the lattice in descending order. FromMu seeds
// every column at x = mu (parallelizes over columns); Continuation carries the
// previous column's end state (sequential by nature, reseeds from mu after a
// dead column).
std::vector<OrbitColumn> orbit_diagram(const MapParams& base, double rho_lo,
                                       double rho_hi, std::size_t steps,
                                       SeedRule rule, std::size_t n_transient,
                                       std::size_t n_keep,
                                       std::size_t workers = 1,
                                       double zero_eps = kDefaultZeroEps);

struct Segment {
  double x0, y0, x1, y1;
};

// Staircase segments (x_k,x_k)->(x_k,x_{k+1})->(x_{k+1},x_{k+1}) for n steps,
// truncated where the trajectory terminates.
std::vector<Segment> cobweb(const MapParams& p, double x0, std::size_t n,
                            double zero_eps = kDefaultZeroEps);

const char* to_string(SeedRule r);
std::optional<SeedRule> parse_seed_rule(std::string_view s);

}
