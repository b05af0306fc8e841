#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sfmap/analysis.hpp"
#include "sfmap/curve_io.hpp"
#include "sfmap/curves.hpp"
#include "sfmap/errors.hpp"
#include "sfmap/grid_io.hpp"
#include "sfmap/map.hpp"
#include "sfmap/render.hpp"
#include "sfmap/sweep.hpp"
#include "sfmap/symbolic.hpp"
#include "sfmap/version.hpp"

namespace {

using namespace sfmap;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

double to_double(const std::string& s) {
  if (s.empty()) throw DomainError("empty numeric value");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw DomainError("bad numeric value '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s) {
  if (s.empty()) throw DomainError("empty integer value");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw DomainError("bad integer value '" + s + "'");
  return static_cast<std::size_t>(v);
}

AxisSpec parse_axis_flag(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 4)
    throw DomainError("axis must be PARAM:MIN:MAX:COUNT, got '" + s + "'");
  const auto p = parse_param(parts[0]);
  if (!p) throw DomainError("unknown axis parameter '" + parts[0] + "'");
  AxisSpec a;
  a.param = *p;
  a.min = to_double(parts[1]);
  a.max = to_double(parts[2]);
  a.count = to_count(parts[3]);
  validate_axis(a);
  return a;
}

struct RangeSpec {
  double lo = 0.0, hi = 0.0;
  std::size_t count = 0;
};

RangeSpec parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3)
    throw DomainError("range must be MIN:MAX:COUNT, got '" + s + "'");
  RangeSpec r;
  r.lo = to_double(parts[0]);
  r.hi = to_double(parts[1]);
  r.count = to_count(parts[2]);
  if (r.count < 1) throw DomainError("range count must be >= 1");
  return r;
}

std::pair<double, double> parse_pair(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2)
    throw DomainError("expected LO:HI, got '" + s + "'");
  return {to_double(parts[0]), to_double(parts[1])};
}

double range_value(const RangeSpec& r, std::size_t i) {
  if (r.count == 1 || i == 0) return r.lo;
  if (i + 1 == r.count) return r.hi;
  return r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                    static_cast<double>(r.count - 1);
}

// shorthand field names: iterate[:N], embedding, lyapunov, lz, period
// (canonical names from the grid header are accepted too)
void apply_field_flag(FieldSpec& f, const std::string& s) {
  std::string name = s;
  std::string arg;
  if (const auto colon = s.find(':'); colon != std::string::npos) {
    name = s.substr(0, colon);
    arg = s.substr(colon + 1);
  }
  if (name == "iterate" || name == "iterate-value") {
    f.kind = FieldKind::IterateValue;
    if (!arg.empty()) f.iter_n = to_count(arg);
    return;
  }
  if (!arg.empty()) throw DomainError("field '" + name + "' takes no :N suffix");
  if (name == "embedding" || name == "symbol-embedding") {
    f.kind = FieldKind::SymbolEmbedding;
  } else if (name == "lyapunov") {
    f.kind = FieldKind::Lyapunov;
  } else if (name == "lz" || name == "lz-complexity") {
    f.kind = FieldKind::LZComplexity;
  } else if (name == "period") {
    f.kind = FieldKind::Period;
  } else {
    throw DomainError("unknown field '" + name + "'");
  }
}

Variant variant_of(const std::string& s) {
  const auto v = parse_variant(s);
  if (!v) throw DomainError("unknown variant '" + s + "'");
  return *v;
}

Branch branch_of(const std::string& s) {
  const auto b = parse_branch(s);
  if (!b) throw DomainError("unknown branch '" + s + "'");
  return *b;
}

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ---------------------------------------------------------------- sweep ----

struct SweepOpts {
  std::string variant = "symmetric";
  std::string branch = "positive";
  std::string field;
  std::string x_axis;
  std::string y_axis;
  double rho = 1.0, mu = 0.0, omega = 1.0, phi = 0.0;
  bool rho_set = false, omega_set = false;
  std::size_t iter_n = 1;
  long long seq_len = -1;  // <0: per-field default (embedding 64, lz 5000)
  std::size_t le_samples = 5000;
  std::size_t le_transient = 500;
  std::size_t period_max = 64;
  std::size_t period_transient = 500;
  double zero_eps = kDefaultZeroEps;
  std::size_t workers = 1;
  std::string out;
};

int cmd_sweep(const SweepOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const AxisSpec x = parse_axis_flag(o.x_axis);
  const AxisSpec y = parse_axis_flag(o.y_axis);
  auto bound = [&](Param p) { return x.param == p || y.param == p; };

  FieldSpec f;
  apply_field_flag(f, o.field);
  f.fixed.variant = variant_of(o.variant);
  f.branch = branch_of(o.branch);
  f.zero_eps = o.zero_eps;
  f.iter_n = o.iter_n;
  f.le_samples = o.le_samples;
  f.le_transient = o.le_transient;
  f.period_max = o.period_max;
  f.period_transient = o.period_transient;
  if (o.seq_len >= 0) {
    f.max_len = static_cast<std::size_t>(o.seq_len);
    f.lz_len = static_cast<std::size_t>(o.seq_len);
  }
  if (!bound(Param::Rho) && !o.rho_set)
    throw DomainError("--rho is required when rho is not an axis");
  if (!bound(Param::Omega) && !o.omega_set)
    throw DomainError("--omega is required when omega is not an axis");
  f.fixed.rho = o.rho;
  f.fixed.mu = o.mu;
  f.fixed.omega = o.omega;
  f.fixed.phi = o.phi;

  const SweepGrid g = run_sweep(x, y, f, o.workers);
  write_grid(g, o.out);

  std::size_t dv = 0, rz = 0, ud = 0;
  for (double v : g.values) {
    if (v == kSentinelDiverged) ++dv;
    else if (v == kSentinelReachedZero) ++rz;
    else if (v == kSentinelUndefined) ++ud;
  }
  std::printf(
      "sweep %zux%zu %s -> %s | cells=%zu diverged=%zu reached-zero=%zu "
      "undefined=%zu | %.2f s\n",
      x.count, y.count, to_string(f.kind), o.out.c_str(), g.values.size(), dv,
      rz, ud, elapsed_s(t0));
  return 0;
}

// --------------------------------------------------------------- curves ----

struct CurvesOpts {
  std::string kind;
  double omega = 1.0, phi = 0.0;
  bool omega_set = false;
  std::size_t k_max = 0;
  std::string rho_range;
  std::string mu_bracket;
  std::string from_grid;
  double contour_tol = kDefaultContourTol;
  std::size_t workers = 1;
  std::string out;
};

int cmd_curves(const CurvesOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string name = o.kind;
  std::string arg;
  if (const auto colon = o.kind.find(':'); colon != std::string::npos) {
    name = o.kind.substr(0, colon);
    arg = o.kind.substr(colon + 1);
  }
  auto need_omega = [&]() {
    if (!o.omega_set) throw DomainError("--omega is required for " + name);
  };
  auto need_rho = [&]() {
    if (o.rho_range.empty())
      throw DomainError("--rho MIN:MAX:COUNT is required for " + name);
    return parse_range(o.rho_range);
  };

  CurveSet cs;
  if (name == "gamma-g" || name == "gamma-p") {
    const RangeSpec r = need_rho();
    if (name == "gamma-p") need_omega();
    Curve c;
    c.kind = name == "gamma-g" ? CurveKind::GammaG : CurveKind::GammaP;
    c.k_or_n = 0;
    for (std::size_t i = 0; i < r.count; ++i) {
      const double rho = range_value(r, i);
      c.points.emplace_back(rho, name == "gamma-g" ? gamma_g(rho)
                                                   : gamma_p(rho, o.omega));
    }
    cs.curves.push_back(std::move(c));
  } else if (name == "belyakov-explicit") {
    need_omega();
    const RangeSpec r = need_rho();
    for (std::size_t k = 0; k <= o.k_max; ++k) {
      Curve c;
      c.kind = CurveKind::BelyakovExplicit;
      c.k_or_n = static_cast<long>(k);
      for (std::size_t i = 0; i < r.count; ++i) {
        const double rho = range_value(r, i);
        c.points.emplace_back(rho, belyakov_explicit(rho, o.omega, k, o.phi).mu);
      }
      cs.curves.push_back(std::move(c));
    }
  } else if (name == "belyakov-implicit") {
    need_omega();
    const RangeSpec r = need_rho();
    std::optional<std::pair<double, double>> fixed_bracket;
    if (!o.mu_bracket.empty()) fixed_bracket = parse_pair(o.mu_bracket);
    std::size_t points = 0;
    for (std::size_t k = 0; k <= o.k_max; ++k) {
      Curve c;
      c.kind = CurveKind::BelyakovImplicit;
      c.k_or_n = static_cast<long>(k);
      for (std::size_t i = 0; i < r.count; ++i) {
        const double rho = range_value(r, i);
        const auto br = fixed_bracket
                            ? *fixed_bracket
                            : implicit_default_bracket(rho, o.omega, k, o.phi);
        if (const auto mu =
                belyakov_implicit(rho, o.omega, k, br.first, br.second, o.phi)) {
          c.points.emplace_back(rho, *mu);
          ++points;
        }
      }
      cs.curves.push_back(std::move(c));
    }
    if (points == 0)
      throw EmptyResult("no implicit tangency root found in the bracket");
  } else if (name == "homoclinic") {
    if (arg.empty())
      throw DomainError("--kind homoclinic needs an order suffix, e.g. homoclinic:2");
    const std::size_t order = to_count(arg);
    if (order < 2) throw DomainError("homoclinic order must be >= 2");
    if (o.from_grid.empty())
      throw DomainError("--from-grid is required for homoclinic:N");
    const SweepGrid g = read_grid(o.from_grid);
    if (g.field.kind != FieldKind::IterateValue)
      throw DomainError("--from-grid must hold an iterate-value field");
    if (g.field.iter_n + 1 != order)
      throw DomainError("grid holds iterate:" + std::to_string(g.field.iter_n) +
                        ", which contours order " +
                        std::to_string(g.field.iter_n + 1) + ", not order " +
                        arg);
    cs = extract_zero_contours(g, o.contour_tol, o.workers);
  } else {
    throw DomainError("unknown curve kind '" + o.kind + "'");
  }

  write_curves(cs, o.out);
  std::size_t pts = 0;
  for (const Curve& c : cs.curves) pts += c.points.size();
  std::printf("curves %s -> %s | polylines=%zu points=%zu | %.2f s\n",
              o.kind.c_str(), o.out.c_str(), cs.curves.size(), pts,
              elapsed_s(t0));
  return 0;
}

// --------------------------------------------------------------- render ----

struct RenderOpts {
  std::string grid;
  std::string out;
  std::string colormap = "diverging";
  std::string clip;
  std::vector<std::string> overlays;
};

int cmd_render(const RenderOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto cmap = parse_colormap(o.colormap);
  if (!cmap) throw DomainError("unknown colormap '" + o.colormap + "'");
  bool color;
  if (o.out.size() >= 4 && o.out.rfind(".ppm") == o.out.size() - 4) {
    color = true;
  } else if (o.out.size() >= 4 && o.out.rfind(".pgm") == o.out.size() - 4) {
    color = false;
  } else {
    throw DomainError("--out must end in .ppm or .pgm");
  }
  std::optional<std::pair<double, double>> clip;
  if (!o.clip.empty()) clip = parse_pair(o.clip);

  const SweepGrid g = read_grid(o.grid);
  CurveSet overlays;
  for (const std::string& path : o.overlays) {
    CurveSet cs = read_curves(path);
    for (Curve& c : cs.curves) overlays.curves.push_back(std::move(c));
  }
  const Image img = render_grid(g, *cmap, clip, overlays, color);
  if (color)
    write_ppm(img, o.out);
  else
    write_pgm(img, o.out);
  std::printf("render %s -> %s | %zux%zu %s | %.2f s\n", o.grid.c_str(),
              o.out.c_str(), img.width, img.height,
              color ? "ppm" : "pgm", elapsed_s(t0));
  return 0;
}

// ---------------------------------------------------------------- orbit ----

struct OrbitOpts {
  std::string rho_range;
  double mu = 0.0, omega = 1.0, phi = 0.0;
  std::string variant = "symmetric";
  std::string seed_rule = "from-mu";
  std::size_t transient = 500;
  std::size_t keep = 100;
  std::size_t workers = 1;
  double zero_eps = kDefaultZeroEps;
};

int cmd_orbit(const OrbitOpts& o) {
  const RangeSpec r = parse_range(o.rho_range);
  const auto rule = parse_seed_rule(o.seed_rule);
  if (!rule) throw DomainError("unknown seed rule '" + o.seed_rule + "'");
  MapParams base;
  base.mu = o.mu;
  base.omega = o.omega;
  base.phi = o.phi;
  base.variant = variant_of(o.variant);
  const auto cols = orbit_diagram(base, r.lo, r.hi, r.count, *rule, o.transient,
                                  o.keep, o.workers, o.zero_eps);
  std::string buf = "rho,sample\n";
  for (const OrbitColumn& c : cols)
    for (double v : c.samples)
      buf += fmt(c.rho) + ',' + fmt(v) + '\n';
  std::fwrite(buf.data(), 1, buf.size(), stdout);
  return 0;
}

// --------------------------------------------------------------- cobweb ----

struct CobwebOpts {
  double rho = 1.0, mu = 0.0, omega = 1.0, phi = 0.0;
  std::string variant = "symmetric";
  double x0 = 0.0;
  std::size_t steps = 50;
  double zero_eps = kDefaultZeroEps;
};

int cmd_cobweb(const CobwebOpts& o) {
  MapParams p{o.rho, o.mu, o.omega, o.phi, variant_of(o.variant)};
  const auto segs = cobweb(p, o.x0, o.steps, o.zero_eps);
  std::string buf = "x0,y0,x1,y1\n";
  for (const Segment& s : segs)
    buf += fmt(s.x0) + ',' + fmt(s.y0) + ',' + fmt(s.x1) + ',' + fmt(s.y1) +
           '\n';
  std::fwrite(buf.data(), 1, buf.size(), stdout);
  return 0;
}

// --------------------------------------------------------------- encode ----

struct EncodeOpts {
  double rho = 1.0, mu = 0.0, omega = 1.0, phi = 0.0;
  std::string variant = "symmetric";
  std::string branch = "positive";
  std::size_t max_len = 64;
  double zero_eps = kDefaultZeroEps;
};

int cmd_encode(const EncodeOpts& o) {
  MapParams p{o.rho, o.mu, o.omega, o.phi, variant_of(o.variant)};
  const SymbolSequence s = encode(p, branch_of(o.branch), o.max_len, o.zero_eps);
  std::string bits;
  for (auto b : s.bits) bits += b ? '1' : '0';
  std::printf("bits=%s\n", bits.c_str());
  std::printf("terminated=%s\n", s.terminated ? "true" : "false");
  std::printf("embedding=%s\n", fmt(embed(s)).c_str());
  if (s.bits.size() >= 2)
    std::printf("normalized-lz=%s\n", fmt(normalized_lz(s)).c_str());
  else
    std::printf("normalized-lz=undefined\n");
  return 0;
}

// ------------------------------------------------------------- lyapunov ----

struct LyapOpts {
  double rho = 1.0, mu = 0.0, omega = 1.0, phi = 0.0;
  std::string variant = "symmetric";
  std::string branch = "positive";
  double x0 = 0.0;
  bool x0_set = false;
  std::size_t transient = 500;
  std::size_t samples = 5000;
};

int cmd_lyapunov(const LyapOpts& o) {
  MapParams p{o.rho, o.mu, o.omega, o.phi, variant_of(o.variant)};
  const double x0 = o.x0_set ? o.x0 : step_from_origin(p, branch_of(o.branch));
  std::printf("%s\n", fmt(lyapunov(p, x0, o.transient, o.samples)).c_str());
  return 0;
}

// --------------------------------------------------------------- verify ----

struct VerifyOpts {
  std::string suite;
  double omega = 1.0, phi = 0.0;
  bool omega_set = false;
  std::size_t k_max = 6;
  std::size_t samples = 100;
  std::uint64_t seed = 12345;
};

struct VerifyReport {
  int failures = 0;

  void line(bool ok, const std::string& text) {
    std::printf("%s %s\n", ok ? "PASS" : "FAIL", text.c_str());
    if (!ok) ++failures;
  }
  void info(const std::string& text) { std::printf("INFO %s\n", text.c_str()); }
};

void verify_belyakov(const VerifyOpts& o, VerifyReport& rep) {
  const double rhos[] = {0.3, 0.7, 1.0, 1.5};
  double max_f = 0.0, max_df = 0.0;
  bool parity_ok = true;
  std::size_t n = 0;
  for (double rho : rhos) {
    for (std::size_t k = 0; k <= o.k_max; ++k) {
      const TangencyPoint tp = belyakov_explicit(rho, o.omega, k, o.phi);
      MapParams p;
      p.rho = rho;
      p.omega = o.omega;
      p.phi = o.phi;
      p.mu = tp.mu;
      max_f = std::max(max_f, std::abs(step(p, tp.x_c)));
      max_df = std::max(max_df, std::abs(derivative(p, tp.x_c)));
      if ((k % 2 == 0) != (tp.mu > 0.0)) parity_ok = false;
      ++n;
    }
  }
  rep.line(max_f < 1e-9 && max_df < 1e-9,
           "first-image tangency residuals: max|f(x_c)|=" + fmt(max_f) +
               " max|f'(x_c)|=" + fmt(max_df) + " (tol 1e-09, n=" +
               std::to_string(n) + ")");
  rep.line(parity_ok,
           "first-image tangency parity: mu > 0 exactly for even k (n=" +
               std::to_string(n) + ")");

  double max_res = 0.0;
  double min_two = std::numeric_limits<double>::infinity();
  bool ipar_ok = true;
  std::size_t roots = 0;
  for (double rho : rhos) {
    for (std::size_t k = 0; k <= o.k_max; ++k) {
      const auto br = implicit_default_bracket(rho, o.omega, k, o.phi);
      const auto mu = belyakov_implicit(rho, o.omega, k, br.first, br.second,
                                        o.phi);
      if (!mu) continue;
      ++roots;
      const TangencyVerification v =
          verify_implicit_tangency(rho, o.omega, k, *mu, o.phi);
      max_res = std::max(max_res, v.residual);
      min_two = std::min(min_two, v.two_step_min);
      if ((k % 2 == 0) != (*mu < 0.0)) ipar_ok = false;
    }
  }
  rep.line(roots > 0 && max_res < 1e-9,
           "second-image tangency residuals: max=" + fmt(max_res) +
               " (tol 1e-09, roots=" + std::to_string(roots) + ")");
  rep.line(ipar_ok,
           "second-image tangency parity: mu < 0 exactly for even k (roots=" +
               std::to_string(roots) + ")");
  rep.info(
      "second-image two-step check: min|F^2(x_c)|=" + fmt(min_two) +
      " stays above 1e-08 for every root - the family is solved as specified "
      "but flagged: its solutions do not close a two-step homoclinic");
}

void verify_gamma(const VerifyOpts& o, VerifyReport& rep) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  auto draw_region = [&](double& rho, double& omega, double& gp, double& gg) {
    for (;;) {
      rho = 1.0 + 2.0 * (0.05 + 0.95 * u01(rng));
      omega = 1.0 + 11.0 * u01(rng);
      gp = gamma_p(rho, omega);
      gg = gamma_g(rho);
      if (gp > 1e-7) return;
    }
  };

  std::size_t ok_fixed = 0;
  for (std::size_t s = 0; s < o.samples; ++s) {
    double rho, omega, gp, gg;
    draw_region(rho, omega, gp, gg);
    const double mu = (0.05 + 0.949 * u01(rng)) * gp * (1.0 - 1e-3);
    MapParams p;
    p.rho = rho;
    p.omega = omega;
    p.mu = mu;
    const auto per = detect_period(p, mu, 500, 64);
    if (!per || *per != 1) continue;
    const Trajectory t = iterate(p, mu, 600);
    if (t.status != OrbitStatus::MaxIterations) continue;
    const auto xs = newton_periodic(p, t.points.back(), 1);
    if (!xs) continue;
    if (std::abs(derivative(p, *xs)) < 1.0) ++ok_fixed;
  }
  rep.line(ok_fixed == o.samples,
           "contraction region: " + std::to_string(ok_fixed) + "/" +
               std::to_string(o.samples) +
               " samples converge to a period-1 point with |f'(x*)| < 1");

  std::size_t ok_bound = 0;
  for (std::size_t s = 0; s < o.samples; ++s) {
    double rho, omega, gp, gg;
    draw_region(rho, omega, gp, gg);
    const double mu = gp + (0.001 + 0.998 * u01(rng)) * (gg - gp);
    MapParams p;
    p.rho = rho;
    p.omega = omega;
    p.mu = mu;
    const auto beta = invariant_bound(p);
    if (!beta) continue;
    double cap = *beta;
    for (int i = 0; i < 4; ++i)
      cap = std::nextafter(cap, std::numeric_limits<double>::infinity());
    const Trajectory t = iterate(p, mu, 5000);
    if (t.status == OrbitStatus::Diverged || t.status == OrbitStatus::LeftDomain)
      continue;
    bool inside = true;
    for (double v : t.points)
      if (std::abs(v) > cap) inside = false;
    if (inside) ++ok_bound;
  }
  rep.line(ok_bound == o.samples,
           "invariant region: " + std::to_string(ok_bound) + "/" +
               std::to_string(o.samples) +
               " samples between gamma_p and gamma_g stay within beta");
}

int cmd_verify(const VerifyOpts& o) {
  VerifyReport rep;
  if (o.suite == "belyakov" || o.suite == "all") {
    if (!o.omega_set && o.suite == "belyakov")
      throw DomainError("--omega is required for the belyakov suite");
    VerifyOpts b = o;
    if (!o.omega_set) b.omega = 10.0;
    verify_belyakov(b, rep);
  }
  if (o.suite == "gamma" || o.suite == "all") {
    verify_gamma(o, rep);
  }
  if (o.suite != "belyakov" && o.suite != "gamma" && o.suite != "all")
    throw DomainError("unknown suite '" + o.suite +
                      "' (expected belyakov, gamma or all)");
  std::printf("%s: %d failure(s)\n", rep.failures == 0 ? "OK" : "FAILED",
              rep.failures);
  return rep.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      std::string("sfmap ") + sfmap::kVersion +
      " - saddle-focus return map toolkit: sweeps, curves, renders and "
      "symbolic diagnostics for x -> sign(x)[mu + |x|^rho cos(omega ln|x| + "
      "phi)]"};
  app.require_subcommand(1);

  SweepOpts so;
  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate a field over a 2-parameter lattice into an HSFG1 grid");
  sweep->add_option("--variant", so.variant, "Map variant: symmetric|one-sided")
      ->capture_default_str();
  sweep->add_option("--branch", so.branch, "Seed branch: positive|negative")
      ->capture_default_str();
  sweep
      ->add_option("--field", so.field,
                   "Field: iterate[:N]|embedding|lyapunov|lz|period")
      ->required();
  sweep->add_option("--x", so.x_axis, "X axis as PARAM:MIN:MAX:COUNT")
      ->required();
  sweep->add_option("--y", so.y_axis, "Y axis as PARAM:MIN:MAX:COUNT")
      ->required();
  auto* so_rho = sweep->add_option("--rho", so.rho, "Fixed rho (when not an axis)");
  sweep->add_option("--mu", so.mu, "Fixed mu (when not an axis)")
      ->capture_default_str();
  auto* so_omega =
      sweep->add_option("--omega", so.omega, "Fixed omega (when not an axis)");
  sweep->add_option("--phi", so.phi, "Fixed phase phi")->capture_default_str();
  sweep->add_option("--iter-n", so.iter_n, "iterate field: which iterate of x1")
      ->capture_default_str();
  sweep
      ->add_option("--seq-len", so.seq_len,
                   "Symbol budget for embedding/lz fields (default: 64 for "
                   "embedding, 5000 for lz)")
      ->capture_default_str();
  sweep->add_option("--le-samples", so.le_samples, "lyapunov field: sample count")
      ->capture_default_str();
  sweep
      ->add_option("--le-transient", so.le_transient,
                   "lyapunov/period fields: transient length")
      ->capture_default_str();
  sweep->add_option("--period-max", so.period_max, "period field: largest period")
      ->capture_default_str();
  sweep->add_option("--zero-eps", so.zero_eps, "Termination threshold at zero")
      ->capture_default_str();
  sweep->add_option("--workers", so.workers, "Worker threads (row bands)")
      ->capture_default_str();
  sweep->add_option("--out", so.out, "Output grid path")->required();

  CurvesOpts co;
  auto* curves = app.add_subcommand(
      "curves", "Emit bifurcation-structure polylines as a curve CSV");
  curves
      ->add_option("--kind", co.kind,
                   "gamma-g|gamma-p|belyakov-explicit|belyakov-implicit|"
                   "homoclinic:N")
      ->required();
  auto* co_omega = curves->add_option("--omega", co.omega, "Focal frequency");
  curves->add_option("--phi", co.phi, "Phase")->capture_default_str();
  curves->add_option("--k-max", co.k_max, "Largest family index k")
      ->capture_default_str();
  curves->add_option("--rho", co.rho_range, "Rho lattice as MIN:MAX:COUNT");
  curves->add_option("--mu-bracket", co.mu_bracket,
                     "Root bracket LO:HI (belyakov-implicit; default: "
                     "auto per rho and k)");
  curves->add_option("--from-grid", co.from_grid,
                     "Iterate-value grid to contour (homoclinic:N)");
  curves->add_option("--contour-tol", co.contour_tol,
                     "Field magnitude accepted on a contour")
      ->capture_default_str();
  curves->add_option("--workers", co.workers, "Worker threads")
      ->capture_default_str();
  curves->add_option("--out", co.out, "Output CSV path")->required();

  RenderOpts ro;
  auto* render = app.add_subcommand(
      "render", "Rasterize a grid to PPM (color) or PGM (grayscale)");
  render->add_option("--grid", ro.grid, "Input HSFG1 grid")->required();
  render->add_option("--out", ro.out, "Output image (.ppm or .pgm)")->required();
  render
      ->add_option("--colormap", ro.colormap,
                   "diverging|linear|grayscale (fixed 256-entry tables; "
                   "sentinels: diverged=black, reached-zero=white, "
                   "undefined=magenta/mid-gray)")
      ->capture_default_str();
  render->add_option("--clip", ro.clip,
                     "Value clip LO:HI (default: data range; diverging is "
                     "symmetric about 0)");
  render->add_option("--overlay", ro.overlays,
                     "Curve CSV drawn on top (repeatable; needs x=rho, y=mu "
                     "axes; out-of-range segments are skipped)");

  OrbitOpts oo;
  auto* orbit = app.add_subcommand(
      "orbit", "Orbit diagram over a rho lattice as (rho,sample) CSV on stdout");
  orbit->add_option("--rho", oo.rho_range, "Rho lattice as MIN:MAX:COUNT")
      ->required();
  orbit->add_option("--mu", oo.mu, "Splitting parameter")->required();
  orbit->add_option("--omega", oo.omega, "Focal frequency")->required();
  orbit->add_option("--phi", oo.phi, "Phase")->capture_default_str();
  orbit->add_option("--variant", oo.variant, "symmetric|one-sided")
      ->capture_default_str();
  orbit
      ->add_option("--seed-rule", oo.seed_rule,
                   "from-mu|continuation (continuation carries state between "
                   "columns)")
      ->capture_default_str();
  orbit->add_option("--transient", oo.transient, "Discarded iterates per column")
      ->capture_default_str();
  orbit->add_option("--keep", oo.keep, "Samples kept per column")
      ->capture_default_str();
  orbit->add_option("--workers", oo.workers, "Worker threads (from-mu only)")
      ->capture_default_str();
  orbit->add_option("--zero-eps", oo.zero_eps, "Termination threshold at zero")
      ->capture_default_str();

  CobwebOpts cw;
  auto* cob = app.add_subcommand(
      "cobweb", "Cobweb staircase segments as x0,y0,x1,y1 CSV on stdout");
  cob->add_option("--rho", cw.rho, "Saddle index")->required();
  cob->add_option("--mu", cw.mu, "Splitting parameter")->required();
  cob->add_option("--omega", cw.omega, "Focal frequency")->required();
  cob->add_option("--phi", cw.phi, "Phase")->capture_default_str();
  cob->add_option("--variant", cw.variant, "symmetric|one-sided")
      ->capture_default_str();
  cob->add_option("--x0", cw.x0, "Starting point")->required();
  cob->add_option("--steps", cw.steps, "Iterations")->capture_default_str();
  cob->add_option("--zero-eps", cw.zero_eps, "Termination threshold at zero")
      ->capture_default_str();

  EncodeOpts eo;
  auto* enc = app.add_subcommand(
      "encode", "Binary itinerary of the orbit seeded at x1 = +/-mu");
  enc->add_option("--rho", eo.rho, "Saddle index")->required();
  enc->add_option("--mu", eo.mu, "Splitting parameter")->required();
  enc->add_option("--omega", eo.omega, "Focal frequency")->required();
  enc->add_option("--phi", eo.phi, "Phase")->capture_default_str();
  enc->add_option("--variant", eo.variant, "symmetric|one-sided")
      ->capture_default_str();
  enc->add_option("--branch", eo.branch, "positive|negative")
      ->capture_default_str();
  enc->add_option("--max-len", eo.max_len, "Largest bit count")
      ->capture_default_str();
  enc->add_option("--zero-eps", eo.zero_eps, "Termination threshold at zero")
      ->capture_default_str();

  LyapOpts lo;
  auto* lyap = app.add_subcommand(
      "lyapunov", "Lyapunov exponent of one orbit (prints one number)");
  lyap->add_option("--rho", lo.rho, "Saddle index")->required();
  lyap->add_option("--mu", lo.mu, "Splitting parameter")->required();
  lyap->add_option("--omega", lo.omega, "Focal frequency")->required();
  lyap->add_option("--phi", lo.phi, "Phase")->capture_default_str();
  lyap->add_option("--variant", lo.variant, "symmetric|one-sided")
      ->capture_default_str();
  lyap->add_option("--branch", lo.branch,
                   "Seed branch when --x0 is omitted (x0 = +/-mu)")
      ->capture_default_str();
  auto* lo_x0 = lyap->add_option("--x0", lo.x0, "Starting point");
  lyap->add_option("--transient", lo.transient, "Discarded iterates")
      ->capture_default_str();
  lyap->add_option("--samples", lo.samples, "Sampled iterates")
      ->capture_default_str();

  VerifyOpts vo;
  auto* ver = app.add_subcommand(
      "verify",
      "Self-check oracles; prints PASS/FAIL lines, exits 1 on any FAIL");
  ver->add_option("--suite", vo.suite, "belyakov|gamma|all")->required();
  auto* vo_omega = ver->add_option("--omega", vo.omega,
                                   "Focal frequency (belyakov suite)");
  ver->add_option("--phi", vo.phi, "Phase")->capture_default_str();
  ver->add_option("--k-max", vo.k_max, "Largest family index k")
      ->capture_default_str();
  ver->add_option("--samples", vo.samples, "Samples per gamma-region check")
      ->capture_default_str();
  ver->add_option("--seed", vo.seed, "RNG seed for region sampling")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    so.rho_set = so_rho->count() > 0;
    so.omega_set = so_omega->count() > 0;
    co.omega_set = co_omega->count() > 0;
    lo.x0_set = lo_x0->count() > 0;
    vo.omega_set = vo_omega->count() > 0;
    if (sweep->parsed()) return cmd_sweep(so);
    if (curves->parsed()) return cmd_curves(co);
    if (render->parsed()) return cmd_render(ro);
    if (orbit->parsed()) return cmd_orbit(oo);
    if (cob->parsed()) return cmd_cobweb(cw);
    if (enc->parsed()) return cmd_encode(eo);
    if (lyap->parsed()) return cmd_lyapunov(lo);
    if (ver->parsed()) return cmd_verify(vo);
  } catch (const sfmap::OverlayAxisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const sfmap::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const sfmap::EmptyResult& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const sfmap::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
