#include "sfmap/curve_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "sfmap/errors.hpp"

namespace sfmap {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  if (s.empty()) throw IoError("curve file: empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw IoError("curve file: bad numeric field '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  if (s.empty()) throw IoError("curve file: empty index field");
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size())
    throw IoError("curve file: bad index field '" + s + "'");
  return v;
}

}  // namespace

void write_curves(const CurveSet& cs, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("write_curves: cannot open " + path.string());
  f << "kind,k_or_n,rho,mu\n";
  bool first = true;
  for (const Curve& c : cs.curves) {
    if (c.points.empty()) continue;
    if (!first) f << '\n';
    first = false;
    for (const auto& [r, m] : c.points)
      f << to_string(c.kind) << ',' << c.k_or_n << ',' << fmt(r) << ','
        << fmt(m) << '\n';
  }
  f.flush();
  if (!f) throw IoError("write_curves: write failed for " + path.string());
}

CurveSet read_curves(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_curves: cannot open " + path.string());
  std::string line;
  if (!std::getline(f, line) || line != "kind,k_or_n,rho,mu")
    throw IoError("read_curves: missing kind,k_or_n,rho,mu header");

  CurveSet out;
  bool open_block = false;
  while (std::getline(f, line)) {
    if (line.empty()) {
      if (!open_block) throw IoError("read_curves: stray blank line");
      open_block = false;
      continue;
    }
    std::string field[4];
    std::size_t pos = 0;
    for (int c = 0; c < 4; ++c) {
      const auto comma = line.find(',', pos);
      if (c < 3) {
        if (comma == std::string::npos)
          throw IoError("read_curves: expected 4 fields in '" + line + "'");
        field[c] = line.substr(pos, comma - pos);
        pos = comma + 1;
      } else {
        if (comma != std::string::npos)
          throw IoError("read_curves: too many fields in '" + line + "'");
        field[c] = line.substr(pos);
      }
    }
    const auto kind = parse_curve_kind(field[0]);
    if (!kind) throw IoError("read_curves: unknown kind '" + field[0] + "'");
    const long k_or_n = parse_long(field[1]);
    const double r = parse_double(field[2]);
    const double m = parse_double(field[3]);
    if (!open_block) {
      Curve c;
      c.kind = *kind;
      c.k_or_n = k_or_n;
      out.curves.push_back(std::move(c));
      open_block = true;
    }
    Curve& cur = out.curves.back();
    if (cur.kind != *kind || cur.k_or_n != k_or_n)
      throw IoError("read_curves: kind change inside a polyline block");
    cur.points.emplace_back(r, m);
  }
  return out;
}

}
