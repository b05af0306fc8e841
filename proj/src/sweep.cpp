#include "sfmap/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sfmap/analysis.hpp"
#include "sfmap/errors.hpp"
#include "sfmap/symbolic.hpp"

namespace sfmap {

bool is_sentinel(double v) {
  return v == kSentinelDiverged || v == kSentinelReachedZero ||
         v == kSentinelUndefined;
}

void validate_axis(const AxisSpec& a) {
  if (!(std::isfinite(a.min) && std::isfinite(a.max)))
    throw DomainError("axis: bounds must be finite");
  if (!(a.min < a.max)) throw DomainError("axis: min must be < max");
  if (a.count < 2) throw DomainError("axis: count must be >= 2");
}

double axis_value(const AxisSpec& a, std::size_t i) {
  if (i == 0) return a.min;
  if (i + 1 == a.count) return a.max;
  return a.min + (a.max - a.min) * static_cast<double>(i) /
                     static_cast<double>(a.count - 1);
}

void apply_param(MapParams& p, Param which, double value) {
  switch (which) {
    case Param::Rho: p.rho = value; return;
    case Param::Mu: p.mu = value; return;
    case Param::Omega: p.omega = value; return;
    case Param::Phi: p.phi = value; return;
  }
}

void validate_field_spec(const FieldSpec& f) {
  if (!(f.zero_eps > 0.0)) throw DomainError("field: zero_eps must be positive");
  switch (f.kind) {
    case FieldKind::IterateValue:
      if (f.iter_n < 1) throw DomainError("field: iterate n must be >= 1");
      return;
    case FieldKind::SymbolEmbedding:
      if (f.max_len < 1) throw DomainError("field: max_len must be >= 1");
      return;
    case FieldKind::Lyapunov:
      if (f.le_samples < 1) throw DomainError("field: le_samples must be >= 1");
      return;
    case FieldKind::LZComplexity:
      if (f.lz_len < 2) throw DomainError("field: lz_len must be >= 2");
      return;
    case FieldKind::Period:
      if (f.period_max < 1) throw DomainError("field: period_max must be >= 1");
      return;
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval_iterate_value(const FieldSpec& f, const MapParams& p) {
  double x = step_from_origin(p, f.branch);
  for (std::size_t k = 0; k < f.iter_n; ++k) {
    if (x == 0.0) return kSentinelUndefined;
    if (std::abs(x) < f.zero_eps) return kSentinelReachedZero;
    if (!(std::abs(x) <= kDivergenceGuard)) return kSentinelDiverged;
    if (p.variant == Variant::OneSided && x < 0.0) return kSentinelUndefined;
    x = step(p, x);
  }
  return x;
}

double eval_lyapunov(const FieldSpec& f, const MapParams& p) {
  const double x0 = step_from_origin(p, f.branch);
  const double le = lyapunov(p, x0, f.le_transient, f.le_samples);
  if (le == kInf) return kSentinelDiverged;
  if (le == -kInf) return kSentinelReachedZero;
  return le;
}

double eval_period(const FieldSpec& f, const MapParams& p) {
  const double x0 = step_from_origin(p, f.branch);
  if (x0 == 0.0) return kSentinelUndefined;
  const auto q = detect_period(p, x0, f.period_transient, f.period_max);
  return q ? static_cast<double>(*q) : 0.0;
}

}  // namespace

double field_eval(const FieldSpec& f, const MapParams& point) {
  validate_field_spec(f);
  try {
    validate(point);
    switch (f.kind) {
      case FieldKind::IterateValue:
        return eval_iterate_value(f, point);
      case FieldKind::SymbolEmbedding:
        return embed(encode(point, f.branch, f.max_len, f.zero_eps));
      case FieldKind::Lyapunov:
        return eval_lyapunov(f, point);
      case FieldKind::LZComplexity:
        return normalized_lz(encode(point, f.branch, f.lz_len, f.zero_eps));
      case FieldKind::Period:
        return eval_period(f, point);
    }
  } catch (const DomainError&) {
    return kSentinelUndefined;
  } catch (const NonFiniteError&) {
    return kSentinelDiverged;
  }
  return kSentinelUndefined;
}

SweepGrid run_sweep(const AxisSpec& x, const AxisSpec& y, const FieldSpec& field,
                    std::size_t workers) {
  validate_axis(x);
  validate_axis(y);
  if (x.param == y.param)
    throw DomainError("run_sweep: axes must vary different parameters");
  if (workers < 1) throw DomainError("run_sweep: workers must be >= 1");
  validate_field_spec(field);

  SweepGrid g;
  g.x = x;
  g.y = y;
  g.field = field;
  g.values.assign(x.count * y.count, kSentinelUndefined);

  auto rows = [&](std::size_t jb, std::size_t je) {
    for (std::size_t j = jb; j < je; ++j) {
      const double yv = axis_value(y, j);
      for (std::size_t i = 0; i < x.count; ++i) {
        MapParams p = field.fixed;
        apply_param(p, x.param, axis_value(x, i));
        apply_param(p, y.param, yv);
        g.values[j * x.count + i] = field_eval(field, p);
      }
    }
  };

  const std::size_t nw = std::min<std::size_t>(workers, y.count);
  if (nw <= 1) {
    rows(0, y.count);
  } else {
    const std::size_t band = (y.count + nw - 1) / nw;
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
      const std::size_t b = w * band;
      const std::size_t e = std::min(y.count, b + band);
      if (b >= e) break;
      pool.emplace_back(rows, b, e);
    }
    for (auto& t : pool) t.join();
  }
  return g;
}

const char* to_string(Param p) {
  switch (p) {
    case Param::Rho: return "rho";
    case Param::Mu: return "mu";
    case Param::Omega: return "omega";
    case Param::Phi: return "phi";
  }
  return "?";
}

const char* to_string(FieldKind k) {
  switch (k) {
    case FieldKind::IterateValue: return "iterate-value";
    case FieldKind::SymbolEmbedding: return "symbol-embedding";
    case FieldKind::Lyapunov: return "lyapunov";
    case FieldKind::LZComplexity: return "lz-complexity";
    case FieldKind::Period: return "period";
  }
  return "?";
}

std::optional<Param> parse_param(std::string_view s) {
  if (s == "rho") return Param::Rho;
  if (s == "mu") return Param::Mu;
  if (s == "omega") return Param::Omega;
  if (s == "phi") return Param::Phi;
  return std::nullopt;
}

std::optional<FieldKind> parse_field_kind(std::string_view s) {
  if (s == "iterate-value") return FieldKind::IterateValue;
  if (s == "symbol-embedding") return FieldKind::SymbolEmbedding;
  if (s == "lyapunov") return FieldKind::Lyapunov;
  if (s == "lz-complexity") return FieldKind::LZComplexity;
  if (s == "period") return FieldKind::Period;
  return std::nullopt;
}

}
