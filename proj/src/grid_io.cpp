#include "sfmap/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <vector>

#include "sfmap/errors.hpp"
#include "sfmap/version.hpp"

namespace sfmap {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(std::size_t v) { return std::to_string(v); }

void axis_lines(std::string& h, const char* prefix, const AxisSpec& a) {
  h += prefix;
  h += "param=";
  h += to_string(a.param);
  h += '\n';
  h += prefix;
  h += "min=";
  h += fmt(a.min);
  h += '\n';
  h += prefix;
  h += "max=";
  h += fmt(a.max);
  h += '\n';
  h += prefix;
  h += "count=";
  h += fmt(a.count);
  h += '\n';
}

double parse_double(const std::string& s) {
  if (s.empty()) throw IoError("grid header: empty numeric value");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw IoError("grid header: bad numeric value '" + s + "'");
  return v;
}

std::size_t parse_count(const std::string& s) {
  if (s.empty()) throw IoError("grid header: empty integer value");
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw IoError("grid header: bad integer value '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::uint64_t byteswap64(std::uint64_t v) {
  return ((v & 0x00000000000000ffULL) << 56) |
         ((v & 0x000000000000ff00ULL) << 40) |
         ((v & 0x0000000000ff0000ULL) << 24) |
         ((v & 0x00000000ff000000ULL) << 8) |
         ((v & 0x000000ff00000000ULL) >> 8) |
         ((v & 0x0000ff0000000000ULL) >> 24) |
         ((v & 0x00ff000000000000ULL) >> 40) |
         ((v & 0xff00000000000000ULL) >> 56);
}

}  // namespace

std::string grid_header(const SweepGrid& g) {
  std::string h;
  h += "format=HSFG1\n";
  h += "version=";
  h += kVersion;
  h += '\n';
  h += "field=";
  h += to_string(g.field.kind);
  h += '\n';
  switch (g.field.kind) {
    case FieldKind::IterateValue:
      h += "iter-n=" + fmt(g.field.iter_n) + '\n';
      break;
    case FieldKind::SymbolEmbedding:
      h += "max-len=" + fmt(g.field.max_len) + '\n';
      break;
    case FieldKind::Lyapunov:
      h += "le-transient=" + fmt(g.field.le_transient) + '\n';
      h += "le-samples=" + fmt(g.field.le_samples) + '\n';
      break;
    case FieldKind::LZComplexity:
      h += "lz-len=" + fmt(g.field.lz_len) + '\n';
      break;
    case FieldKind::Period:
      h += "period-max=" + fmt(g.field.period_max) + '\n';
      h += "period-transient=" + fmt(g.field.period_transient) + '\n';
      break;
  }
  h += "variant=";
  h += to_string(g.field.fixed.variant);
  h += '\n';
  h += "branch=";
  h += to_string(g.field.branch);
  h += '\n';
  axis_lines(h, "x", g.x);
  axis_lines(h, "y", g.y);
  const Param bound[2] = {g.x.param, g.y.param};
  auto unbound = [&](Param q) { return q != bound[0] && q != bound[1]; };
  if (unbound(Param::Rho)) h += "rho=" + fmt(g.field.fixed.rho) + '\n';
  if (unbound(Param::Mu)) h += "mu=" + fmt(g.field.fixed.mu) + '\n';
  if (unbound(Param::Omega)) h += "omega=" + fmt(g.field.fixed.omega) + '\n';
  if (unbound(Param::Phi)) h += "phi=" + fmt(g.field.fixed.phi) + '\n';
  h += "zero-eps=" + fmt(g.field.zero_eps) + '\n';
  h += "sentinel-diverged=" + fmt(kSentinelDiverged) + '\n';
  h += "sentinel-reached-zero=" + fmt(kSentinelReachedZero) + '\n';
  h += "sentinel-undefined=" + fmt(kSentinelUndefined) + '\n';
  h += '\n';
  return h;
}

void write_grid(const SweepGrid& g, const std::filesystem::path& path) {
  if (g.values.size() != g.x.count * g.y.count)
    throw DomainError("write_grid: value count does not match the axes");
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_grid: cannot open " + path.string());
  const std::string h = grid_header(g);
  f.write(h.data(), static_cast<std::streamsize>(h.size()));
  if constexpr (std::endian::native == std::endian::little) {
    f.write(reinterpret_cast<const char*>(g.values.data()),
            static_cast<std::streamsize>(g.values.size() * sizeof(double)));
  } else {
    for (double v : g.values) {
      const std::uint64_t u = byteswap64(std::bit_cast<std::uint64_t>(v));
      f.write(reinterpret_cast<const char*>(&u), sizeof u);
    }
  }
  f.flush();
  if (!f) throw IoError("write_grid: write failed for " + path.string());
}

SweepGrid read_grid(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_grid: cannot open " + path.string());

  std::map<std::string, std::string> kv;
  std::string line;
  bool blank = false;
  while (std::getline(f, line)) {
    if (line.empty()) {
      blank = true;
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError("read_grid: malformed header line '" + line + "'");
    const std::string key = line.substr(0, eq);
    if (!kv.emplace(key, line.substr(eq + 1)).second)
      throw IoError("read_grid: duplicate header key '" + key + "'");
  }
  if (!blank) throw IoError("read_grid: header not terminated by a blank line");

  auto take = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw IoError(std::string("read_grid: missing header key '") + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };

  if (take("format") != "HSFG1") throw IoError("read_grid: not an HSFG1 file");
  if (take("version").empty()) throw IoError("read_grid: empty version");

  SweepGrid g;
  {
    const std::string v = take("field");
    const auto k = parse_field_kind(v);
    if (!k) throw IoError("read_grid: unknown field '" + v + "'");
    g.field.kind = *k;
  }
  switch (g.field.kind) {
    case FieldKind::IterateValue:
      g.field.iter_n = parse_count(take("iter-n"));
      break;
    case FieldKind::SymbolEmbedding:
      g.field.max_len = parse_count(take("max-len"));
      break;
    case FieldKind::Lyapunov:
      g.field.le_transient = parse_count(take("le-transient"));
      g.field.le_samples = parse_count(take("le-samples"));
      break;
    case FieldKind::LZComplexity:
      g.field.lz_len = parse_count(take("lz-len"));
      break;
    case FieldKind::Period:
      g.field.period_max = parse_count(take("period-max"));
      g.field.period_transient = parse_count(take("period-transient"));
      break;
  }
  {
    const std::string v = take("variant");
    const auto x = parse_variant(v);
    if (!x) throw IoError("read_grid: unknown variant '" + v + "'");
    g.field.fixed.variant = *x;
  }
  {
    const std::string v = take("branch");
    const auto x = parse_branch(v);
    if (!x) throw IoError("read_grid: unknown branch '" + v + "'");
    g.field.branch = *x;
  }
  auto read_axis = [&](const char* prefix) {
    AxisSpec a;
    const std::string pv = take((std::string(prefix) + "param").c_str());
    const auto q = parse_param(pv);
    if (!q) throw IoError("read_grid: unknown axis parameter '" + pv + "'");
    a.param = *q;
    a.min = parse_double(take((std::string(prefix) + "min").c_str()));
    a.max = parse_double(take((std::string(prefix) + "max").c_str()));
    a.count = parse_count(take((std::string(prefix) + "count").c_str()));
    try {
      validate_axis(a);
    } catch (const DomainError& e) {
      throw IoError(std::string("read_grid: ") + e.what());
    }
    return a;
  };
  g.x = read_axis("x");
  g.y = read_axis("y");
  if (g.x.param == g.y.param)
    throw IoError("read_grid: both axes vary the same parameter");

  const Param bound[2] = {g.x.param, g.y.param};
  auto unbound = [&](Param q) { return q != bound[0] && q != bound[1]; };
  if (unbound(Param::Rho)) g.field.fixed.rho = parse_double(take("rho"));
  if (unbound(Param::Mu)) g.field.fixed.mu = parse_double(take("mu"));
  if (unbound(Param::Omega)) g.field.fixed.omega = parse_double(take("omega"));
  if (unbound(Param::Phi)) g.field.fixed.phi = parse_double(take("phi"));
  g.field.zero_eps = parse_double(take("zero-eps"));
  if (!(g.field.zero_eps > 0.0))
    throw IoError("read_grid: zero-eps must be positive");
  if (parse_double(take("sentinel-diverged")) != kSentinelDiverged ||
      parse_double(take("sentinel-reached-zero")) != kSentinelReachedZero ||
      parse_double(take("sentinel-undefined")) != kSentinelUndefined)
    throw IoError("read_grid: sentinel codes do not match this build");
  if (!kv.empty())
    throw IoError("read_grid: unexpected header key '" + kv.begin()->first +
                  "'");

  const std::size_t n = g.x.count * g.y.count;
  g.values.resize(n);
  f.read(reinterpret_cast<char*>(g.values.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  if (static_cast<std::size_t>(f.gcount()) != n * sizeof(double))
    throw IoError("read_grid: truncated payload");
  if constexpr (std::endian::native != std::endian::little) {
    for (double& v : g.values)
      v = std::bit_cast<double>(byteswap64(std::bit_cast<std::uint64_t>(v)));
  }
  char extra;
  if (f.read(&extra, 1); f.gcount() != 0)
    throw IoError("read_grid: trailing bytes after payload");
  return g;
}

}
