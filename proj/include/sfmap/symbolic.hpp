#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sfmap/map.hpp"

namespace sfmap {

struct SymbolSequence {
  std::vector<std::uint8_t> bits;
  bool terminated = false;  // the generating orbit reached zero
  OrbitStatus source_status = OrbitStatus::MaxIterations;
};

// Binary itinerary of the orbit seeded at x1 = +/-mu: bit n is 1 when
// sign(x_n) = sign(mu). A terminal iterate with |x| < zero_eps counts as a
// sign(mu) excursion (final bit 1, terminated = true). Stops at termination,
// divergence, a negative one-sided iterate, or max_len bits.
// throws DegenerateParameter when mu = 0
SymbolSequence encode(const MapParams& p, Branch branch, std::size_t max_len,
                      double zero_eps = kDefaultZeroEps);

// Maximal all-ones prefix; flags survive only if nothing was removed.
SymbolSequence truncate_one_sided(const SymbolSequence& s);

// Sum of bit_i / 2^i as an exact binary64: integer numerator of the first
// min(N, 53) bits over 2^min(N,53); deeper bits are below binary64 resolution
// and are truncated toward zero. Always in [0, 1); strictly monotone in
// lexicographic order for N <= 53.
double embed_bits(const std::vector<std::uint8_t>& bits);
double embed(const SymbolSequence& s);

// Phrase count of the greedy parse into shortest-substrings-not-yet-a-phrase;
// an incomplete or duplicate final phrase is not counted.
// throws EmptySequenceError on empty input
std::size_t lempel_ziv_bits(const std::vector<std::uint8_t>& bits);
std::size_t lempel_ziv(const SymbolSequence& s);

// ln(N)/N times the phrase count; needs N >= 2.
double normalized_lz_bits(const std::vector<std::uint8_t>& bits);
double normalized_lz(const SymbolSequence& s);

}
