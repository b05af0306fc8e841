#include "sfmap/curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sfmap/errors.hpp"

namespace sfmap {

namespace {

constexpr double kPi = std::numbers::pi;

void require_focus(double rho, double omega, double phi) {
  if (!(std::isfinite(rho) && rho > 0.0))
    throw DomainError("rho must be finite and positive");
  if (!(std::isfinite(omega) && omega > 0.0))
    throw DomainError("omega must be finite and positive");
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
}

}  // namespace

double gamma_g(double rho) {
  if (!(std::isfinite(rho) && rho > 1.0))
    throw DomainError("gamma_g: needs rho > 1");
  return std::pow(rho, 1.0 / (1.0 - rho)) * (1.0 - 1.0 / rho);
}

double gamma_p(double rho, double omega) {
  if (!(std::isfinite(rho) && rho > 1.0))
    throw DomainError("gamma_p: needs rho > 1");
  if (!(std::isfinite(omega) && omega > 0.0))
    throw DomainError("gamma_p: omega must be finite and positive");
  return (1.0 - 1.0 / rho) *
         std::pow(rho * rho + omega * omega, 1.0 / (2.0 * (1.0 - rho)));
}

TangencyPoint belyakov_explicit(double rho, double omega, std::size_t k,
                                double phi) {
  require_focus(rho, omega, phi);
  const double t = std::atan2(omega, rho);
  const double theta = -kPi * (static_cast<double>(k) + 0.5) - t;
  TangencyPoint out;
  out.x_c = std::exp((theta - phi) / omega);
  const double env =
      omega / std::hypot(rho, omega) * std::exp(rho * (theta - phi) / omega);
  out.mu = (k % 2 == 0) ? env : -env;
  return out;
}

namespace {

// residual of the second-image tangency system reduced to the unknown mu:
// x2 = sgn mu + env, then mu + |x2|^rho cos(omega ln|x2| + phi)
struct ImplicitSystem {
  double rho, omega, phi, env, sgn;

  double operator()(double mu) const {
    const double v = sgn * mu + env;
    if (v == 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double lax = std::log(std::abs(v));
    return mu + std::exp(rho * lax) * std::cos(omega * lax + phi);
  }
};

ImplicitSystem make_implicit(double rho, double omega, std::size_t k,
                             double phi) {
  const double env = std::abs(belyakov_explicit(rho, omega, k, phi).mu);
  return ImplicitSystem{rho, omega, phi, env, k % 2 == 0 ? 1.0 : -1.0};
}

// first sign change of f on [lo, hi] scanned in n uniform subintervals,
// bisected and secant-polished; NaN samples break the scan chain
template <class F>
std::optional<double> first_root(const F& f, double lo, double hi, int n) {
  double a = lo;
  double fa = f(a);
  if (fa == 0.0) return a;
  for (int i = 1; i <= n; ++i) {
    const double b =
        i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
      a = b;
      fa = fb;
      continue;
    }
    double blo = a, bhi = b, flo = fa, fhi = fb;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (blo + bhi);
      if (mid <= blo || mid >= bhi) break;
      const double fm = f(mid);
      if (fm == 0.0) return mid;
      if (std::isnan(fm) || (fm > 0.0) != (flo > 0.0)) {
        bhi = mid;
        if (!std::isnan(fm)) fhi = fm;
      } else {
        blo = mid;
        flo = fm;
      }
    }
    double best = 0.5 * (blo + bhi);
    double fbest = std::abs(f(best));
    if (fhi != flo) {
      const double s =
          std::clamp(blo - flo * (bhi - blo) / (fhi - flo), blo, bhi);
      const double fs = std::abs(f(s));
      if (fs < fbest) {
        best = s;
        fbest = fs;
      }
    }
    return best;
  }
  return std::nullopt;
}

// all roots, every sign change bisected to full precision, ascending
template <class F>
std::vector<double> all_roots(const F& f, double lo, double hi, int n) {
  std::vector<double> roots;
  double a = lo;
  double fa = f(a);
  if (fa == 0.0) roots.push_back(a);
  for (int i = 1; i <= n; ++i) {
    const double b =
        i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / n;
    const double fb = f(b);
    if (fb == 0.0) {
      roots.push_back(b);
      a = b;
      fa = fb;
      continue;
    }
    if (std::isnan(fa) || std::isnan(fb) || (fa > 0.0) == (fb > 0.0)) {
      a = b;
      fa = fb;
      continue;
    }
    double blo = a, bhi = b, flo = fa;
    bool exact = false;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (blo + bhi);
      if (mid <= blo || mid >= bhi) break;
      const double fm = f(mid);
      if (fm == 0.0) {
        roots.push_back(mid);
        exact = true;
        break;
      }
      if (std::isnan(fm) || (fm > 0.0) != (flo > 0.0)) {
        bhi = mid;
      } else {
        blo = mid;
        flo = fm;
      }
    }
    if (!exact) roots.push_back(0.5 * (blo + bhi));
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

std::pair<double, double> implicit_default_bracket(double rho, double omega,
                                                   std::size_t k, double phi) {
  const ImplicitSystem sys = make_implicit(rho, omega, k, phi);
  const double acc = -sys.sgn * sys.env;
  const double w = 0.9 * std::abs(acc);
  return {acc - w, acc + w};
}

std::optional<double> belyakov_implicit(double rho, double omega, std::size_t k,
                                        double mu_lo, double mu_hi, double phi) {
  require_focus(rho, omega, phi);
  if (!(std::isfinite(mu_lo) && std::isfinite(mu_hi) && mu_lo < mu_hi))
    throw DomainError("belyakov_implicit: need finite mu_lo < mu_hi");
  const ImplicitSystem sys = make_implicit(rho, omega, k, phi);
  return first_root(sys, mu_lo, mu_hi, 10000);
}

TangencyVerification verify_implicit_tangency(double rho, double omega,
                                              std::size_t k, double mu,
                                              double phi) {
  require_focus(rho, omega, phi);
  if (!std::isfinite(mu)) throw DomainError("mu must be finite");
  const ImplicitSystem sys = make_implicit(rho, omega, k, phi);
  TangencyVerification out;
  const double r = sys(mu);
  out.residual = std::isnan(r) ? std::numeric_limits<double>::infinity()
                               : std::abs(r);

  // independent check: some critical point of the full map should reach zero
  // in exactly two steps
  MapParams p;
  p.rho = rho;
  p.omega = omega;
  p.phi = phi;
  p.mu = mu;
  p.variant = Variant::Symmetric;
  const double t = std::atan2(omega, rho);
  double best = std::numeric_limits<double>::infinity();
  for (int m = -8; m < 48; ++m) {
    const double xc =
        std::exp((-kPi * (static_cast<double>(m) + 0.5) - t - phi) / omega);
    for (const double c : {xc, -xc}) {
      try {
        const double x1 = step(p, c);
        if (x1 == 0.0) continue;  // first-image tangency, not second
        const double x2 = step(p, x1);
        best = std::min(best, std::abs(x2));
      } catch (const DomainError&) {
      } catch (const NonFiniteError&) {
      }
    }
  }
  out.two_step_min = best;
  out.two_step_ok = best < 1e-8;
  return out;
}

namespace {

// mu + mu^rho cos(omega ln mu + phi): the second excursion of the orbit of
// the origin, whose zeros are the two-excursion returns
struct SecondaryFn {
  double rho, omega, phi;

  double operator()(double mu) const {
    const double lm = std::log(mu);
    return mu + std::exp(rho * lm) * std::cos(omega * lm + phi);
  }
};

void check_secondary_bracket(double rho, double omega, double mu_lo,
                             double mu_hi, double phi) {
  require_focus(rho, omega, phi);
  if (!(std::isfinite(mu_lo) && std::isfinite(mu_hi) && 0.0 < mu_lo &&
        mu_lo < mu_hi))
    throw DomainError("find_secondary: need 0 < mu_lo < mu_hi, finite");
}

}  // namespace

std::optional<double> find_secondary(double rho, double omega, double mu_lo,
                                     double mu_hi, double phi) {
  check_secondary_bracket(rho, omega, mu_lo, mu_hi, phi);
  return first_root(SecondaryFn{rho, omega, phi}, mu_lo, mu_hi, 10000);
}

std::vector<double> find_secondary_all(double rho, double omega, double mu_lo,
                                       double mu_hi, double phi) {
  check_secondary_bracket(rho, omega, mu_lo, mu_hi, phi);
  return all_roots(SecondaryFn{rho, omega, phi}, mu_lo, mu_hi, 10000);
}

namespace {

struct EdgePoint {
  double x = 0.0;
  double y = 0.0;
  bool ok = false;
};

enum CellEdge : int { kBottom = 0, kRight = 1, kTop = 2, kLeft = 3 };

std::int64_t edge_id(const SweepGrid& g, std::size_t i, std::size_t j,
                     int which) {
  const auto xc = static_cast<std::int64_t>(g.x.count);
  const auto ii = static_cast<std::int64_t>(i);
  const auto jj = static_cast<std::int64_t>(j);
  switch (which) {
    case kBottom: return 2 * (jj * xc + ii);
    case kTop: return 2 * ((jj + 1) * xc + ii);
    case kLeft: return 2 * (jj * xc + ii) + 1;
    default: return 2 * (jj * xc + ii + 1) + 1;  // kRight
  }
}

double field_at(const SweepGrid& g, double xv, double yv) {
  MapParams p = g.field.fixed;
  apply_param(p, g.x.param, xv);
  apply_param(p, g.y.param, yv);
  return field_eval(g.field, p);
}

// locate the zero along one lattice edge by bisection on the continuum field,
// keeping the best |field| sample; succeeds only below tol
EdgePoint polish_edge(const SweepGrid& g, std::int64_t id, double tol) {
  const std::int64_t xc = static_cast<std::int64_t>(g.x.count);
  const bool vertical = (id & 1) != 0;
  const std::int64_t node = id / 2;
  const std::size_t i = static_cast<std::size_t>(node % xc);
  const std::size_t j = static_cast<std::size_t>(node / xc);

  const double xa = axis_value(g.x, i);
  const double ya = axis_value(g.y, j);
  const double xb = vertical ? xa : axis_value(g.x, i + 1);
  const double yb = vertical ? axis_value(g.y, j + 1) : ya;
  const double va = g.at(i, j);
  const double vb = vertical ? g.at(i, j + 1) : g.at(i + 1, j);

  EdgePoint out;
  double bs = 0.0, bf = std::abs(va);
  if (std::abs(vb) < bf) {
    bs = 1.0;
    bf = std::abs(vb);
  }
  if ((va > 0.0) != (vb > 0.0)) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = field_at(g, xa + mid * (xb - xa), ya + mid * (yb - ya));
      if (!is_sentinel(fm) && std::isfinite(fm) && std::abs(fm) < bf) {
        bs = mid;
        bf = std::abs(fm);
      }
      if (fm == 0.0) break;
      if (is_sentinel(fm) || !std::isfinite(fm) || (fm > 0.0) != (va > 0.0))
        hi = mid;
      else
        lo = mid;
    }
  }
  if (bf <= tol) {
    out.x = xa + bs * (xb - xa);
    out.y = ya + bs * (yb - ya);
    out.ok = true;
  }
  return out;
}

double corner_mu(const SweepGrid& g, std::size_t i, std::size_t j) {
  if (g.x.param == Param::Mu) return axis_value(g.x, i);
  if (g.y.param == Param::Mu) return axis_value(g.y, j);
  return g.field.fixed.mu;
}

}  // namespace

CurveSet extract_zero_contours(const SweepGrid& grid, double contour_tol,
                               std::size_t workers) {
  if (grid.field.kind != FieldKind::IterateValue)
    throw DomainError("extract_zero_contours: needs an iterate-value grid");
  if (!(contour_tol > 0.0))
    throw DomainError("extract_zero_contours: contour_tol must be positive");
  if (workers < 1)
    throw DomainError("extract_zero_contours: workers must be >= 1");
  if (grid.x.count < 2 || grid.y.count < 2 ||
      grid.values.size() != grid.x.count * grid.y.count)
    throw DomainError("extract_zero_contours: malformed grid");

  const double mu_band = 10.0 * grid.field.zero_eps;

  // pass 1: cell scan for admissible sign changes (cheap, sequential)
  struct RawSeg {
    std::int64_t ea, eb;
  };
  std::vector<RawSeg> segs;
  for (std::size_t j = 0; j + 1 < grid.y.count; ++j) {
    for (std::size_t i = 0; i + 1 < grid.x.count; ++i) {
      const double bl = grid.at(i, j);
      const double br = grid.at(i + 1, j);
      const double tr = grid.at(i + 1, j + 1);
      const double tl = grid.at(i, j + 1);
      if (is_sentinel(bl) || is_sentinel(br) || is_sentinel(tr) ||
          is_sentinel(tl))
        continue;
      if (std::abs(corner_mu(grid, i, j)) < mu_band ||
          std::abs(corner_mu(grid, i + 1, j)) < mu_band ||
          std::abs(corner_mu(grid, i + 1, j + 1)) < mu_band ||
          std::abs(corner_mu(grid, i, j + 1)) < mu_band)
        continue;
      const int mask = (bl > 0.0 ? 1 : 0) | (br > 0.0 ? 2 : 0) |
                       (tr > 0.0 ? 4 : 0) | (tl > 0.0 ? 8 : 0);
      if (mask == 0 || mask == 15) continue;

      auto emit = [&](int a, int b) {
        segs.push_back({edge_id(grid, i, j, a), edge_id(grid, i, j, b)});
      };
      switch (mask) {
        case 1: emit(kLeft, kBottom); break;
        case 2: emit(kBottom, kRight); break;
        case 3: emit(kLeft, kRight); break;
        case 4: emit(kRight, kTop); break;
        case 6: emit(kBottom, kTop); break;
        case 7: emit(kLeft, kTop); break;
        case 8: emit(kTop, kLeft); break;
        case 9: emit(kBottom, kTop); break;
        case 11: emit(kRight, kTop); break;
        case 12: emit(kLeft, kRight); break;
        case 13: emit(kBottom, kRight); break;
        case 14: emit(kLeft, kBottom); break;
        case 5:
          if (bl + br + tr + tl > 0.0) {
            emit(kBottom, kRight);
            emit(kTop, kLeft);
          } else {
            emit(kLeft, kBottom);
            emit(kRight, kTop);
          }
          break;
        case 10:
          if (bl + br + tr + tl > 0.0) {
            emit(kLeft, kBottom);
            emit(kRight, kTop);
          } else {
            emit(kBottom, kRight);
            emit(kTop, kLeft);
          }
          break;
        default: break;
      }
    }
  }
  if (segs.empty())
    throw EmptyResult("extract_zero_contours: no admissible sign change");

  // pass 2: polish each referenced edge once (parallel, order-independent)
  std::vector<std::int64_t> ids;
  {
    std::unordered_set<std::int64_t> seen;
    for (const RawSeg& s : segs) {
      if (seen.insert(s.ea).second) ids.push_back(s.ea);
      if (seen.insert(s.eb).second) ids.push_back(s.eb);
    }
  }
  std::vector<EdgePoint> pts(ids.size());
  {
    const std::size_t nw = std::min<std::size_t>(workers, ids.size());
    auto work = [&](std::size_t b, std::size_t e) {
      for (std::size_t u = b; u < e; ++u)
        pts[u] = polish_edge(grid, ids[u], contour_tol);
    };
    if (nw <= 1) {
      work(0, ids.size());
    } else {
      const std::size_t band = (ids.size() + nw - 1) / nw;
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < nw; ++w) {
        const std::size_t b = w * band;
        const std::size_t e = std::min(ids.size(), b + band);
        if (b >= e) break;
        pool.emplace_back(work, b, e);
      }
      for (auto& t : pool) t.join();
    }
  }
  std::unordered_map<std::int64_t, EdgePoint> vertex;
  vertex.reserve(ids.size());
  for (std::size_t u = 0; u < ids.size(); ++u) vertex[ids[u]] = pts[u];

  // pass 3: keep segments whose ends both polished, then chain-walk in
  // insertion order
  struct Seg {
    std::int64_t ea, eb;
    bool used = false;
  };
  std::vector<Seg> live;
  live.reserve(segs.size());
  for (const RawSeg& s : segs)
    if (vertex[s.ea].ok && vertex[s.eb].ok) live.push_back({s.ea, s.eb, false});
  if (live.empty())
    throw EmptyResult("extract_zero_contours: no vertex met the tolerance");

  std::unordered_map<std::int64_t, std::vector<std::size_t>> at_edge;
  for (std::size_t s = 0; s < live.size(); ++s) {
    at_edge[live[s].ea].push_back(s);
    at_edge[live[s].eb].push_back(s);
  }
  auto next_at = [&](std::int64_t e) -> std::optional<std::size_t> {
    for (std::size_t s : at_edge[e])
      if (!live[s].used) return s;
    return std::nullopt;
  };

  CurveSet out;
  const long order = static_cast<long>(grid.field.iter_n) + 1;
  for (std::size_t s0 = 0; s0 < live.size(); ++s0) {
    if (live[s0].used) continue;
    live[s0].used = true;
    std::vector<std::int64_t> chain{live[s0].ea, live[s0].eb};
    for (;;) {  // forward
      const auto nxt = next_at(chain.back());
      if (!nxt) break;
      Seg& t = live[*nxt];
      t.used = true;
      chain.push_back(t.ea == chain.back() ? t.eb : t.ea);
    }
    for (;;) {  // backward
      const auto nxt = next_at(chain.front());
      if (!nxt) break;
      Seg& t = live[*nxt];
      t.used = true;
      chain.insert(chain.begin(), t.ea == chain.front() ? t.eb : t.ea);
    }
    Curve c;
    c.kind = CurveKind::HomoclinicOrderN;
    c.k_or_n = order;
    c.points.reserve(chain.size());
    for (std::int64_t e : chain) {
      const EdgePoint& v = vertex[e];
      c.points.emplace_back(v.x, v.y);
    }
    std::vector<std::pair<double, double>> rev(c.points.rbegin(),
                                               c.points.rend());
    if (rev < c.points) c.points = std::move(rev);
    out.curves.push_back(std::move(c));
  }
  return out;
}

const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::GammaG: return "gamma-g";
    case CurveKind::GammaP: return "gamma-p";
    case CurveKind::BelyakovExplicit: return "belyakov-explicit";
    case CurveKind::BelyakovImplicit: return "belyakov-implicit";
    case CurveKind::HomoclinicOrderN: return "homoclinic";
  }
  return "?";
}

std::optional<CurveKind> parse_curve_kind(std::string_view s) {
  if (s == "gamma-g") return CurveKind::GammaG;
  if (s == "gamma-p") return CurveKind::GammaP;
  if (s == "belyakov-explicit") return CurveKind::BelyakovExplicit;
  if (s == "belyakov-implicit") return CurveKind::BelyakovImplicit;
  if (s == "homoclinic") return CurveKind::HomoclinicOrderN;
  return std::nullopt;
}

}
