#include "sfmap/map.hpp"

#include <cmath>

#include "sfmap/errors.hpp"

namespace sfmap {

void validate(const MapParams& p) {
  if (!(std::isfinite(p.rho) && std::isfinite(p.mu) && std::isfinite(p.omega) &&
        std::isfinite(p.phi)))
    throw DomainError("map parameters must be finite");
  if (!(p.rho > 0.0)) throw DomainError("rho must be positive");
  if (!(p.omega > 0.0)) throw DomainError("omega must be positive");
}

namespace {

// magnitude part mu + |x|^rho cos(omega ln|x| + phi); both branches share it,
// which makes the symmetric variant odd bit-for-bit
double magnitude(const MapParams& p, double ax) {
  const double lax = std::log(ax);
  return p.mu + std::exp(p.rho * lax) * std::cos(p.omega * lax + p.phi);
}

}  // namespace

double step(const MapParams& p, double x) {
  if (!std::isfinite(x)) throw DomainError("step: x must be finite");
  if (x == 0.0)
    throw DomainError("step: x = 0 is the branch point; use step_from_origin");
  if (p.variant == Variant::OneSided && x < 0.0)
    throw DomainError("step: one-sided map requires x > 0");
  const double m = magnitude(p, std::abs(x));
  const double r = x < 0.0 ? -m : m;
  if (!std::isfinite(r)) throw NonFiniteError("step: result overflowed");
  return r;
}

double step_from_origin(const MapParams& p, Branch branch) {
  if (branch == Branch::Negative && p.variant == Variant::OneSided)
    throw DomainError("step_from_origin: one-sided map has no negative branch");
  return branch == Branch::Positive ? p.mu : -p.mu;
}

double derivative(const MapParams& p, double x) {
  if (x == 0.0) throw DomainError("derivative: undefined at x = 0");
  if (!std::isfinite(x)) throw DomainError("derivative: x must be finite");
  const double lax = std::log(std::abs(x));
  return std::exp((p.rho - 1.0) * lax) * std::hypot(p.rho, p.omega) *
         std::cos(p.omega * lax + std::atan2(p.omega, p.rho) + p.phi);
}

Trajectory iterate(const MapParams& p, double x0, std::size_t max_iter,
                   double zero_eps) {
  validate(p);
  if (max_iter < 1) throw DomainError("iterate: max_iter must be >= 1");
  if (!(zero_eps > 0.0)) throw DomainError("iterate: zero_eps must be positive");
  if (!std::isfinite(x0)) throw DomainError("iterate: x0 must be finite");

  Trajectory t;
  t.params = p;
  t.zero_eps = zero_eps;
  t.points.push_back(x0);
  double x = x0;
  for (std::size_t i = 0; i < max_iter; ++i) {
    if (std::abs(x) < zero_eps) {
      t.status = OrbitStatus::ReachedZero;
      return t;
    }
    if (std::abs(x) > kDivergenceGuard) {
      t.status = OrbitStatus::Diverged;
      return t;
    }
    if (p.variant == Variant::OneSided && x < 0.0) {
      t.status = OrbitStatus::LeftDomain;
      return t;
    }
    try {
      x = step(p, x);
    } catch (const NonFiniteError&) {
      t.status = OrbitStatus::Diverged;
      return t;
    }
    t.points.push_back(x);
  }
  if (std::abs(x) < zero_eps)
    t.status = OrbitStatus::ReachedZero;
  else if (std::abs(x) > kDivergenceGuard)
    t.status = OrbitStatus::Diverged;
  else if (p.variant == Variant::OneSided && x < 0.0)
    t.status = OrbitStatus::LeftDomain;
  else
    t.status = OrbitStatus::MaxIterations;
  return t;
}

std::optional<double> invariant_bound(const MapParams& p) {
  validate(p);
  const double amu = std::abs(p.mu);
  if (p.rho < 1.0) return std::pow(amu + 1.0, 1.0 / (1.0 - p.rho));
  if (p.rho == 1.0) return std::nullopt;
  if (amu == 0.0) return 1.0;
  const double cap = std::pow(p.rho, 1.0 / (1.0 - p.rho));
  const double gmax = cap * (1.0 - 1.0 / p.rho);
  if (amu > gmax) return std::nullopt;
  // g(amu) = amu^rho > 0 and g(cap) = amu - gmax <= 0, so the bisection
  // invariant g(lo) > 0 >= g(hi) holds from the start (covers the double-root
  // case amu = gmax where the root sits at cap exactly)
  auto g = [&](double v) { return std::exp(p.rho * std::log(v)) - v + amu; };
  double lo = amu, hi = cap;
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::MaxIterations: return "max-iterations";
    case OrbitStatus::ReachedZero: return "reached-zero";
    case OrbitStatus::Diverged: return "diverged";
    case OrbitStatus::LeftDomain: return "left-domain";
  }
  return "?";
}

const char* to_string(Variant v) {
  return v == Variant::OneSided ? "one-sided" : "symmetric";
}

const char* to_string(Branch b) {
  return b == Branch::Positive ? "positive" : "negative";
}

std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "one-sided") return Variant::OneSided;
  if (s == "symmetric") return Variant::Symmetric;
  return std::nullopt;
}

std::optional<Branch> parse_branch(std::string_view s) {
  if (s == "positive") return Branch::Positive;
  if (s == "negative") return Branch::Negative;
  return std::nullopt;
}

}
