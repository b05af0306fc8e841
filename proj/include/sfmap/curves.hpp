#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sfmap/map.hpp"
#include "sfmap/sweep.hpp"

namespace sfmap {

// Largest |mu| admitting an invariant interval for rho > 1:
// rho^(1/(1-rho)) (1 - 1/rho). throws DomainError for rho <= 1
double gamma_g(double rho);

// Largest |mu| guaranteeing contraction on the invariant interval (unique
// stable fixed point): (1 - 1/rho)(rho^2+omega^2)^(1/(2(1-rho))).
// throws DomainError for rho <= 1
double gamma_p(double rho, double omega);

struct TangencyPoint {
  double mu;   // parameter where the tangency occurs; sign is (-1)^k
  double x_c;  // critical point with f'(x_c) = 0 and f(x_c) = 0 at that mu
};

// Closed-form family of parameter values where a critical point of the map
// touches zero: mu = (-1)^k (omega/sqrt(rho^2+omega^2))
//                  exp((rho/omega)(pi(-k-1/2) - arctan(omega/rho) - phi)),
// x_c = exp((1/omega)(-pi(k+1/2) - arctan(omega/rho) - phi)).
TangencyPoint belyakov_explicit(double rho, double omega, std::size_t k,
                                double phi = 0.0);

// Second-image tangency family, solved implicitly for mu within [mu_lo, mu_hi]:
//   x2 = (-1)^k mu + E_k,   0 = mu + |x2|^rho cos(omega ln|x2| + phi),
// with E_k = |belyakov_explicit(k).mu|. The bracket is pre-scanned in 10^4
// uniform subintervals; the first sign change is bisected and polished with a
// secant step. Empty when no sign change exists.
std::optional<double> belyakov_implicit(double rho, double omega, std::size_t k,
                                        double mu_lo, double mu_hi,
                                        double phi = 0.0);

// Default bracket centered on the accumulation value -(-1)^k E_k.
std::pair<double, double> implicit_default_bracket(double rho, double omega,
                                                   std::size_t k,
                                                   double phi = 0.0);

struct TangencyVerification {
  double residual = 0.0;      // |defining system residual| at mu
  double two_step_min = 0.0;  // min over map critical points of |F^2(x_c)|
  bool two_step_ok = false;   // two_step_min < 1e-8
};

// Substitution residual plus an independent check through the full map: a
// genuine second-image tangency sends some critical point to zero in two
// steps. A failing two_step_ok flags the solution for inspection.
TangencyVerification verify_implicit_tangency(double rho, double omega,
                                              std::size_t k, double mu,
                                              double phi = 0.0);

// Roots of mu |-> F(mu) (the two-excursion return to zero) inside
// (mu_lo, mu_hi), 0 < mu_lo < mu_hi: 10^4-subinterval pre-scan, each sign
// change bisected to full precision. find_secondary returns the first root
// from the low end.
std::optional<double> find_secondary(double rho, double omega, double mu_lo,
                                     double mu_hi, double phi = 0.0);
std::vector<double> find_secondary_all(double rho, double omega, double mu_lo,
                                       double mu_hi, double phi = 0.0);

enum class CurveKind { GammaG, GammaP, BelyakovExplicit, BelyakovImplicit, HomoclinicOrderN };

struct Curve {
  CurveKind kind = CurveKind::GammaG;
  long k_or_n = 0;  // family index k, homoclinic order n, 0 for gamma curves
  std::vector<std::pair<double, double>> points;  // (rho, mu) for (rho, mu) grids
};

struct CurveSet {
  std::vector<Curve> curves;
};

inline constexpr double kDefaultContourTol = 1e-9;

// Zero contours of an IterateValue(n-1) grid, labeled homoclinic order
// n = iter_n + 1. Marching squares over cells; cells touching a sentinel
// value or the |mu| < 10 zero_eps band are skipped (the field is
// discontinuous there). Every emitted vertex is polished along its cell edge
// until the re-evaluated field magnitude is at most contour_tol; vertices
// that cannot be polished are dropped. Polylines come out canonically
// oriented (ascending first-to-last corner). Contouring runs per row band
// over workers threads with deterministic stitching.
// throws EmptyResult when the grid has no admissible sign change
CurveSet extract_zero_contours(const SweepGrid& grid,
                               double contour_tol = kDefaultContourTol,
                               std::size_t workers = 1);

const char* to_string(CurveKind k);
std::optional<CurveKind> parse_curve_kind(std::string_view s);

}
