#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sfmap/map.hpp"

namespace sfmap {

enum class Param { Rho, Mu, Omega, Phi };

struct AxisSpec {
  Param param = Param::Rho;
  double min = 0.0;
  double max = 1.0;
  std::size_t count = 2;  // >= 2; linear scale
};

// Endpoint-inclusive linspace: index 0 is min exactly, index count-1 is max
// exactly.
double axis_value(const AxisSpec& a, std::size_t i);

// throws DomainError unless bounds are finite, min < max and count >= 2
void validate_axis(const AxisSpec& a);

void apply_param(MapParams& p, Param which, double value);

enum class FieldKind { IterateValue, SymbolEmbedding, Lyapunov, LZComplexity, Period };

struct FieldSpec {
  FieldKind kind = FieldKind::IterateValue;
  MapParams fixed;  // axis-bound entries are overwritten per lattice point
  Branch branch = Branch::Positive;
  double zero_eps = kDefaultZeroEps;
  std::size_t iter_n = 1;              // IterateValue: F^n(x1)
  std::size_t max_len = 64;            // SymbolEmbedding
  std::size_t le_transient = 500;      // Lyapunov
  std::size_t le_samples = 5000;       // Lyapunov
  std::size_t lz_len = 5000;           // LZComplexity
  std::size_t period_max = 64;         // Period
  std::size_t period_transient = 500;  // Period
};

// Reserved cell codes; ordinary field values cannot reach them (orbits are
// capped by the divergence guard long before 1e308).
inline constexpr double kSentinelDiverged = 1e308;
inline constexpr double kSentinelReachedZero = -1e308;
inline constexpr double kSentinelUndefined = 1.5e308;

bool is_sentinel(double v);

struct SweepGrid {
  AxisSpec x;
  AxisSpec y;
  FieldSpec field;
  std::vector<double> values;  // row-major: index j * x.count + i

  double at(std::size_t i, std::size_t j) const { return values[j * x.count + i]; }
};

// One field evaluation; never throws for numeric trouble, returns sentinels
// instead (Undefined covers domain issues such as mu = 0 itineraries and
// one-sided orbits leaving their branch).
double field_eval(const FieldSpec& field, const MapParams& point);

// Evaluates the field over the full lattice. Row bands go to workers threads;
// output is bit-identical for any worker count.
SweepGrid run_sweep(const AxisSpec& x, const AxisSpec& y, const FieldSpec& field,
                    std::size_t workers = 1);

const char* to_string(Param p);
const char* to_string(FieldKind k);
std::optional<Param> parse_param(std::string_view s);
std::optional<FieldKind> parse_field_kind(std::string_view s);

}
