#include "sfmap/symbolic.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "sfmap/errors.hpp"

namespace sfmap {

SymbolSequence encode(const MapParams& p, Branch branch, std::size_t max_len,
                      double zero_eps) {
  validate(p);
  if (p.mu == 0.0)
    throw DegenerateParameter("encode: mu = 0 has no reference sign");
  if (max_len < 1) throw DomainError("encode: max_len must be >= 1");
  if (!(zero_eps > 0.0)) throw DomainError("encode: zero_eps must be positive");

  SymbolSequence seq;
  double x = step_from_origin(p, branch);
  for (;;) {
    if (std::abs(x) < zero_eps) {
      seq.bits.push_back(1);
      seq.terminated = true;
      seq.source_status = OrbitStatus::ReachedZero;
      break;
    }
    seq.bits.push_back(std::signbit(x) == std::signbit(p.mu) ? 1 : 0);
    if (seq.bits.size() >= max_len) {
      seq.source_status = OrbitStatus::MaxIterations;
      break;
    }
    if (p.variant == Variant::OneSided && x < 0.0) {
      seq.source_status = OrbitStatus::LeftDomain;
      break;
    }
    if (std::abs(x) > kDivergenceGuard) {
      seq.source_status = OrbitStatus::Diverged;
      break;
    }
    try {
      x = step(p, x);
    } catch (const NonFiniteError&) {
      seq.source_status = OrbitStatus::Diverged;
      break;
    }
  }
  return seq;
}

SymbolSequence truncate_one_sided(const SymbolSequence& seq) {
  SymbolSequence out;
  out.bits = seq.bits;
  out.terminated = seq.terminated;
  out.source_status = seq.source_status;
  std::size_t keep = 0;
  while (keep < seq.bits.size() && seq.bits[keep] == 1) ++keep;
  if (keep < seq.bits.size()) {
    out.bits.resize(keep);
    out.terminated = false;
    out.source_status = OrbitStatus::MaxIterations;
  }
  return out;
}

double embed_bits(const std::vector<std::uint8_t>& bits) {
  // sum of S_i 2^{-i}: accumulate the leading min(N, 53) bits as an integer
  // numerator so the result is the correctly rounded binary value
  const std::size_t n = bits.size() < 53 ? bits.size() : 53;
  double num = 0.0;
  for (std::size_t i = 0; i < n; ++i) num = 2.0 * num + (bits[i] ? 1.0 : 0.0);
  return std::ldexp(num, -static_cast<int>(n));
}

double embed(const SymbolSequence& seq) { return embed_bits(seq.bits); }

std::size_t lempel_ziv_bits(const std::vector<std::uint8_t>& bits) {
  if (bits.empty())
    throw EmptySequenceError("lempel_ziv: sequence must be non-empty");
  // phrase dictionary as a binary trie; a phrase ends at the first symbol
  // that exits the known set, and an incomplete tail adds no phrase
  std::vector<std::array<std::int32_t, 2>> trie(1, {-1, -1});
  std::size_t phrases = 0;
  std::int32_t node = 0;
  for (std::uint8_t bit : bits) {
    const int b = bit ? 1 : 0;
    std::int32_t next = trie[static_cast<std::size_t>(node)][b];
    if (next < 0) {
      trie[static_cast<std::size_t>(node)][b] =
          static_cast<std::int32_t>(trie.size());
      trie.push_back({-1, -1});
      ++phrases;
      node = 0;
    } else {
      node = next;
    }
  }
  // a trailing fragment that never exited the dictionary is not a phrase
  return phrases;
}

std::size_t lempel_ziv(const SymbolSequence& seq) {
  return lempel_ziv_bits(seq.bits);
}

double normalized_lz_bits(const std::vector<std::uint8_t>& bits) {
  if (bits.size() < 2)
    throw EmptySequenceError("normalized_lz: need at least 2 symbols");
  const double n = static_cast<double>(bits.size());
  return static_cast<double>(lempel_ziv_bits(bits)) * std::log(n) / n;
}

double normalized_lz(const SymbolSequence& seq) {
  return normalized_lz_bits(seq.bits);
}

}
