#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace sfmap {

enum class Variant { OneSided, Symmetric };
enum class Branch { Positive, Negative };
enum class OrbitStatus { MaxIterations, ReachedZero, Diverged, LeftDomain };

inline constexpr double kDivergenceGuard = 1e12;
inline constexpr double kDefaultZeroEps = 1e-12;

struct MapParams {
  double rho = 1.0;    // saddle index, > 0
  double mu = 0.0;     // splitting parameter
  double omega = 1.0;  // focal frequency, > 0
  double phi = 0.0;    // phase, radians
  Variant variant = Variant::Symmetric;
};

// throws DomainError unless rho > 0, omega > 0 and all parameters are finite
void validate(const MapParams& p);

// One application of the map away from the origin.
// OneSided:  x > 0        ->  mu + x^rho cos(omega ln x + phi)
// Symmetric: any x != 0   ->  sign(x) [mu + |x|^rho cos(omega ln|x| + phi)]
// throws DomainError for x = 0 or a one-sided x < 0, NonFiniteError on overflow
double step(const MapParams& p, double x);

// The branch choice at the origin: 0 -> mu (Positive) or 0 -> -mu (Negative;
// symmetric variant only).
double step_from_origin(const MapParams& p, Branch branch);

// Jacobian of the map, valid on both branches of the symmetric variant:
// |x|^(rho-1) sqrt(rho^2+omega^2) cos(omega ln|x| + arctan(omega/rho) + phi).
// Even in x: the outer sign of the symmetric branch and the sign of d|x|/dx
// cancel. throws DomainError at x = 0
double derivative(const MapParams& p, double x);

struct Trajectory {
  MapParams params;
  std::vector<double> points;  // x0, x1, ...; never empty
  OrbitStatus status = OrbitStatus::MaxIterations;
  double zero_eps = kDefaultZeroEps;
};

// Applies step up to max_iter times. Stops with ReachedZero when |x| drops
// below zero_eps, Diverged past kDivergenceGuard (overflow counts as
// divergence), LeftDomain when a one-sided state goes negative.
Trajectory iterate(const MapParams& p, double x0, std::size_t max_iter,
                   double zero_eps = kDefaultZeroEps);

// A priori orbit bound beta:
//   rho < 1             -> (|mu|+1)^(1/(1-rho))
//   rho > 1, |mu| small -> smallest positive root of x^rho - x + |mu| = 0
//                          (exists iff |mu| <= rho^(1/(1-rho)) (1-1/rho));
//   rho = 1 or |mu| too large -> no bound
std::optional<double> invariant_bound(const MapParams& p);

const char* to_string(OrbitStatus s);
const char* to_string(Variant v);
const char* to_string(Branch b);
std::optional<Variant> parse_variant(std::string_view s);
std::optional<Branch> parse_branch(std::string_view s);

}
