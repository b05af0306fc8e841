#include "sfmap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sfmap/errors.hpp"

namespace sfmap {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double lyapunov(const MapParams& p, double x0, std::size_t n_transient,
                std::size_t n_sample) {
  validate(p);
  if (n_sample < 1) throw DomainError("lyapunov: n_sample must be >= 1");
  if (!std::isfinite(x0)) throw DomainError("lyapunov: x0 must be finite");
  if (x0 == 0.0) throw DomainError("lyapunov: x0 = 0 is the branch point");
  if (p.variant == Variant::OneSided && x0 < 0.0)
    throw DomainError("lyapunov: one-sided map requires x0 > 0");

  // hoisted pieces of step/derivative; the phase is associated exactly as in
  // derivative() so both agree on the sampled multipliers
  const double amp = std::hypot(p.rho, p.omega);
  const double tilt = std::atan2(p.omega, p.rho);

  double x = x0;
  for (std::size_t i = 0; i < n_transient; ++i) {
    if (x == 0.0) return -kInf;
    if (!(std::abs(x) <= kDivergenceGuard)) return kInf;
    if (p.variant == Variant::OneSided && x < 0.0)
      throw DomainError("lyapunov: orbit left the one-sided domain");
    const double lax = std::log(std::abs(x));
    const double m =
        p.mu + std::exp(p.rho * lax) * std::cos(p.omega * lax + p.phi);
    x = x < 0.0 ? -m : m;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n_sample; ++i) {
    if (x == 0.0) return -kInf;
    if (!(std::abs(x) <= kDivergenceGuard)) return kInf;
    if (p.variant == Variant::OneSided && x < 0.0)
      throw DomainError("lyapunov: orbit left the one-sided domain");
    const double lax = std::log(std::abs(x));
    const double d = std::exp((p.rho - 1.0) * lax) * amp *
                     std::cos(p.omega * lax + tilt + p.phi);
    if (d == 0.0) return -kInf;
    sum += std::log(std::abs(d));
    const double m =
        p.mu + std::exp(p.rho * lax) * std::cos(p.omega * lax + p.phi);
    x = x < 0.0 ? -m : m;
  }
  return sum / static_cast<double>(n_sample);
}

std::optional<double> find_fixed_point(const MapParams& p, double lo,
                                       double hi) {
  validate(p);
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi))
    throw DomainError("find_fixed_point: need finite lo < hi");
  if (lo == 0.0 || hi == 0.0 || std::signbit(lo) != std::signbit(hi))
    throw DomainError("find_fixed_point: bracket must exclude x = 0");
  if (p.variant == Variant::OneSided && lo < 0.0)
    throw DomainError("find_fixed_point: one-sided map needs a positive bracket");

  auto g = [&](double x) { return step(p, x) - x; };
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<std::size_t> detect_period(const MapParams& p, double x0,
                                         std::size_t n_transient,
                                         std::size_t max_period, double tol) {
  validate(p);
  if (max_period < 1) throw DomainError("detect_period: max_period must be >= 1");
  if (!(tol > 0.0)) throw DomainError("detect_period: tol must be positive");
  if (!std::isfinite(x0)) throw DomainError("detect_period: x0 must be finite");

  auto dead = [&](double x) {
    return std::abs(x) < kDefaultZeroEps ||
           !(std::abs(x) <= kDivergenceGuard) ||
           (p.variant == Variant::OneSided && x < 0.0);
  };
  const std::size_t len = 4 * max_period + 8;
  std::vector<double> s;
  s.reserve(len);
  double x = x0;
  try {
    for (std::size_t i = 0; i < n_transient; ++i) {
      if (dead(x)) return std::nullopt;
      x = step(p, x);
    }
    for (std::size_t i = 0; i < len; ++i) {
      if (dead(x)) return std::nullopt;
      s.push_back(x);
      x = step(p, x);
    }
  } catch (const NonFiniteError&) {
    return std::nullopt;
  }
  double ampl = 0.0;
  for (double v : s) ampl = std::max(ampl, std::abs(v));
  const double thr = tol * std::max(ampl, 1e-300);
  for (std::size_t q = 1; q <= max_period; ++q) {
    bool ok = true;
    for (std::size_t j = 1; j <= 3 * q; ++j) {
      if (!(std::abs(s[len - j] - s[len - j - q]) < thr)) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  return std::nullopt;
}

std::optional<double> newton_periodic(const MapParams& p, double x_guess,
                                      std::size_t period,
                                      std::size_t max_steps) {
  validate(p);
  if (period < 1) throw DomainError("newton_periodic: period must be >= 1");
  if (!std::isfinite(x_guess) || x_guess == 0.0)
    throw DomainError("newton_periodic: x_guess must be finite and nonzero");

  auto eval = [&](double x, double& G, double& Gp) -> bool {
    double v = x;
    double prod = 1.0;
    for (std::size_t k = 0; k < period; ++k) {
      if (v == 0.0 || !(std::abs(v) <= kDivergenceGuard)) return false;
      if (p.variant == Variant::OneSided && v < 0.0) return false;
      prod *= derivative(p, v);
      try {
        v = step(p, v);
      } catch (const NonFiniteError&) {
        return false;
      }
    }
    G = v - x;
    Gp = prod - 1.0;
    return true;
  };

  double x = x_guess;
  for (std::size_t it = 0; it <= max_steps; ++it) {
    double G = 0.0, Gp = 0.0;
    if (!eval(x, G, Gp)) return std::nullopt;
    if (!std::isfinite(G)) return std::nullopt;
    if (std::abs(G) < 1e-12) return x;
    if (it == max_steps) break;
    if (Gp == 0.0 || !std::isfinite(Gp)) return std::nullopt;
    x -= G / Gp;
    if (!std::isfinite(x) || x == 0.0) return std::nullopt;
  }
  return std::nullopt;
}

namespace {

void run_column(const MapParams& base, double rho, double seed,
                std::size_t n_transient, std::size_t n_keep, double zero_eps,
                OrbitColumn& col, double& final_x) {
  col.rho = rho;
  col.samples.clear();
  col.status = OrbitStatus::MaxIterations;
  MapParams q = base;
  q.rho = rho;
  double x = seed;
  auto classify = [&](double v) -> std::optional<OrbitStatus> {
    if (std::abs(v) < zero_eps) return OrbitStatus::ReachedZero;
    if (!(std::abs(v) <= kDivergenceGuard)) return OrbitStatus::Diverged;
    if (q.variant == Variant::OneSided && v < 0.0)
      return OrbitStatus::LeftDomain;
    return std::nullopt;
  };
  try {
    for (std::size_t i = 0; i < n_transient; ++i) {
      if (auto st = classify(x)) {
        col.status = *st;
        final_x = x;
        return;
      }
      x = step(q, x);
    }
    for (std::size_t i = 0; i < n_keep; ++i) {
      if (auto st = classify(x)) {
        col.status = *st;
        col.samples.clear();
        final_x = x;
        return;
      }
      col.samples.push_back(x);
      x = step(q, x);
    }
  } catch (const NonFiniteError&) {
    col.status = OrbitStatus::Diverged;
    col.samples.clear();
    final_x = x;
    return;
  }
  final_x = x;
}

}  // namespace

std::vector<OrbitColumn> orbit_diagram(const MapParams& base, double rho_lo,
                                       double rho_hi, std::size_t steps,
                                       SeedRule rule, std::size_t n_transient,
                                       std::size_t n_keep, std::size_t workers,
                                       double zero_eps) {
  {
    MapParams q = base;
    q.rho = 1.0;
    validate(q);
  }
  if (steps < 1) throw DomainError("orbit_diagram: steps must be >= 1");
  if (n_keep < 1) throw DomainError("orbit_diagram: n_keep must be >= 1");
  if (workers < 1) throw DomainError("orbit_diagram: workers must be >= 1");
  if (!(zero_eps > 0.0))
    throw DomainError("orbit_diagram: zero_eps must be positive");
  if (!(std::isfinite(rho_lo) && std::isfinite(rho_hi)) || !(rho_lo > 0.0) ||
      !(rho_hi > 0.0))
    throw DomainError("orbit_diagram: rho endpoints must be finite and positive");

  std::vector<double> rhos(steps);
  if (steps == 1) {
    rhos[0] = rho_lo;
  } else {
    const double span = rho_hi - rho_lo;
    for (std::size_t i = 0; i < steps; ++i)
      rhos[i] =
          rho_lo + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    rhos.front() = rho_lo;
    rhos.back() = rho_hi;
  }

  std::vector<OrbitColumn> cols(steps);
  if (rule == SeedRule::Continuation) {
    double carry = 0.0;
    bool have_carry = false;
    for (std::size_t i = 0; i < steps; ++i) {
      double fx = 0.0;
      run_column(base, rhos[i], have_carry ? carry : base.mu, n_transient,
                 n_keep, zero_eps, cols[i], fx);
      have_carry = cols[i].status == OrbitStatus::MaxIterations;
      carry = fx;
    }
    return cols;
  }

  const std::size_t nw = std::min<std::size_t>(workers, steps);
  auto work = [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double fx = 0.0;
      run_column(base, rhos[i], base.mu, n_transient, n_keep, zero_eps,
                 cols[i], fx);
    }
  };
  if (nw <= 1) {
    work(0, steps);
  } else {
    const std::size_t band = (steps + nw - 1) / nw;
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t b = w * band;
      const std::size_t e = std::min(steps, b + band);
      if (b >= e) break;
      pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return cols;
}

std::vector<Segment> cobweb(const MapParams& p, double x0, std::size_t n,
                            double zero_eps) {
  const Trajectory t = iterate(p, x0, n, zero_eps);
  std::vector<Segment> segs;
  if (t.points.size() < 2) return segs;
  segs.reserve(2 * (t.points.size() - 1));
  for (std::size_t i = 0; i + 1 < t.points.size(); ++i) {
    const double a = t.points[i];
    const double b = t.points[i + 1];
    segs.push_back({a, a, a, b});
    segs.push_back({a, b, b, b});
  }
  return segs;
}

const char* to_string(SeedRule r) {
  return r == SeedRule::FromMu ? "from-mu" : "continuation";
}

std::optional<SeedRule> parse_seed_rule(std::string_view s) {
  if (s == "from-mu") return SeedRule::FromMu;
  if (s == "continuation") return SeedRule::Continuation;
  return std::nullopt;
}

}
