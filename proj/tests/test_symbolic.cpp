#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "sfmap/curves.hpp"
#include "sfmap/errors.hpp"
#include "sfmap/symbolic.hpp"

using namespace sfmap;

namespace {

using Bits = std::vector<std::uint8_t>;

// Quadratic reference for the greedy parse: grow the current phrase until it
// differs from every completed phrase; an unfinished tail is not a phrase.
std::size_t lz_reference(const Bits& b) {
  std::set<Bits> dict;
  Bits cur;
  std::size_t phrases = 0;
  for (std::uint8_t bit : b) {
    cur.push_back(bit);
    if (!dict.count(cur)) {
      dict.insert(cur);
      ++phrases;
      cur.clear();
    }
  }
  return phrases;
}

Bits ones(std::size_t n) { return Bits(n, 1); }

MapParams chaos() { return {0.5, 0.05, 10.0, 0.0, Variant::Symmetric}; }

}  // namespace

TEST_CASE("lempel_ziv worked examples") {
  CHECK(lempel_ziv_bits({0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1}) == 6);
  CHECK(lempel_ziv_bits({1, 1, 1, 1}) == 2);
  CHECK(lempel_ziv_bits({0}) == 1);
  CHECK(lempel_ziv_bits({0, 0}) == 1);
  CHECK_THROWS_AS(lempel_ziv_bits({}), EmptySequenceError);
}

TEST_CASE("lempel_ziv all-ones anchors") {
  CHECK(lempel_ziv_bits(ones(4)) == 2);
  CHECK(lempel_ziv_bits(ones(8)) == 3);
  CHECK(lempel_ziv_bits(ones(16)) == 5);
  CHECK(lempel_ziv_bits(ones(32)) == 7);
  CHECK(lempel_ziv_bits(ones(64)) == 10);
  CHECK(lempel_ziv_bits(ones(5000)) == 99);
  CHECK(lempel_ziv_bits(ones(10000)) == 140);
}

TEST_CASE("lempel_ziv matches the quadratic reference on random input") {
  std::mt19937_64 rng(0x5eed1001);
  std::uniform_int_distribution<int> ulen(1, 128);
  std::uniform_real_distribution<double> ubias(0.1, 0.9);
  for (int trial = 0; trial < 2000; ++trial) {
    const double bias = ubias(rng);
    std::bernoulli_distribution bit(bias);
    Bits b(static_cast<std::size_t>(ulen(rng)));
    for (auto& v : b) v = bit(rng) ? 1 : 0;
    REQUIRE(lempel_ziv_bits(b) == lz_reference(b));
  }
}

TEST_CASE("lempel_ziv invariants: periodic growth and doubling") {
  std::mt19937_64 rng(0x5eed1002);
  for (std::size_t p : {1u, 2u, 3u}) {
    for (std::size_t n : {64u, 1000u, 10000u}) {
      Bits pat(p);
      for (auto& v : pat) v = static_cast<std::uint8_t>(rng() & 1);
      pat[0] = 1;
      Bits b(n);
      for (std::size_t i = 0; i < n; ++i) b[i] = pat[i % p];
      const double cap = std::ceil(std::sqrt(2.0 * static_cast<double>(n * p))) +
                         static_cast<double>(p) + 2.0;
      REQUIRE(static_cast<double>(lempel_ziv_bits(b)) <= cap);
    }
  }
  std::uniform_int_distribution<int> ulen(1, 200);
  for (int trial = 0; trial < 300; ++trial) {
    Bits s(static_cast<std::size_t>(ulen(rng)));
    for (auto& v : s) v = static_cast<std::uint8_t>(rng() & 1);
    Bits ss(s);
    ss.insert(ss.end(), s.begin(), s.end());
    const std::size_t c1 = lempel_ziv_bits(s);
    const std::size_t c2 = lempel_ziv_bits(ss);
    REQUIRE(c1 <= c2);
    REQUIRE(c2 <= 2 * c1 + 4);
  }
}

TEST_CASE("normalized_lz") {
  const Bits ex{0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1};
  CHECK(normalized_lz_bits(ex) ==
        doctest::Approx(6.0 * std::log(12.0) / 12.0).epsilon(1e-15));
  CHECK_THROWS_AS(normalized_lz_bits({1}), EmptySequenceError);
  CHECK_THROWS_AS(normalized_lz_bits({}), EmptySequenceError);
}

TEST_CASE("embed_bits exact dyadic values") {
  CHECK(embed_bits({}) == 0.0);
  CHECK(embed_bits({1}) == 0.5);
  CHECK(embed_bits({0}) == 0.0);
  CHECK(embed_bits({1, 1}) == 0.75);
  CHECK(embed_bits({1, 0, 1}) == 0.625);
  CHECK(embed_bits(ones(53)) == 1.0 - std::ldexp(1.0, -53));
  // Bits beyond 53 are below binary64 resolution and truncate away.
  CHECK(embed_bits(ones(64)) == embed_bits(ones(53)));
  CHECK(embed_bits(ones(64)) < 1.0);
}

TEST_CASE("embed_bits order and prefix properties") {
  std::mt19937_64 rng(0x5eed1003);
  std::uniform_int_distribution<int> ulen(1, 53);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(ulen(rng));
    Bits a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<std::uint8_t>(rng() & 1);
      b[i] = static_cast<std::uint8_t>(rng() & 1);
    }
    const double ea = embed_bits(a), eb = embed_bits(b);
    if (a < b) REQUIRE(ea < eb);
    if (a == b) REQUIRE(ea == eb);
    if (a > b) REQUIRE(ea > eb);
    REQUIRE(ea >= 0.0);
    REQUIRE(ea < 1.0);

    // Complement pairs tile the unit interval: e(s) + e(~s) = 1 - 2^-n.
    Bits ac(a);
    for (auto& v : ac) v ^= 1;
    REQUIRE(ea + embed_bits(ac) == 1.0 - std::ldexp(1.0, -static_cast<int>(n)));

    // Extending a sequence can only push the value up by less than 2^-n.
    Bits ext(a);
    for (int k = 0; k < 8 && ext.size() < 53; ++k)
      ext.push_back(static_cast<std::uint8_t>(rng() & 1));
    const double ee = embed_bits(ext);
    REQUIRE(ee >= ea);
    REQUIRE(ee < ea + std::ldexp(1.0, -static_cast<int>(n)));
  }
}

TEST_CASE("encode requires a nonzero splitting parameter") {
  MapParams p = chaos();
  p.mu = 0.0;
  CHECK_THROWS_AS(encode(p, Branch::Positive, 16), DegenerateParameter);
}

TEST_CASE("encode on a chaotic orbit") {
  SymbolSequence s = encode(chaos(), Branch::Positive, 40);
  REQUIRE(s.bits.size() == 40);
  CHECK(s.bits.front() == 1);  // x1 = mu shares the sign of mu
  CHECK(!s.terminated);
  CHECK(s.source_status == OrbitStatus::MaxIterations);

  // Deterministic.
  SymbolSequence again = encode(chaos(), Branch::Positive, 40);
  CHECK(s.bits == again.bits);

  // The mirrored branch produces the complementary itinerary.
  SymbolSequence neg = encode(chaos(), Branch::Negative, 40);
  REQUIRE(neg.bits.size() == 40);
  for (std::size_t i = 0; i < 40; ++i) REQUIRE(neg.bits[i] + s.bits[i] == 1);
}

TEST_CASE("encode terminates at a two-excursion homoclinic parameter") {
  const auto root = find_secondary(0.5, 3.6, 1e-4, 0.3);
  REQUIRE(root.has_value());
  MapParams p{0.5, *root, 3.6, 0.0, Variant::Symmetric};
  SymbolSequence s = encode(p, Branch::Positive, 64);
  CHECK(s.terminated);
  CHECK(s.source_status == OrbitStatus::ReachedZero);
  REQUIRE(s.bits == Bits{1, 1});
  CHECK(embed(s) == 0.75);
}

TEST_CASE("truncate_one_sided keeps the maximal all-ones prefix") {
  SymbolSequence s;
  s.bits = {1, 1, 0, 1};
  s.terminated = true;
  s.source_status = OrbitStatus::ReachedZero;
  SymbolSequence t = truncate_one_sided(s);
  CHECK(t.bits == Bits{1, 1});
  CHECK(!t.terminated);  // flags survive only if nothing was removed
  CHECK(t.source_status == OrbitStatus::MaxIterations);

  SymbolSequence all;
  all.bits = {1, 1, 1};
  all.terminated = true;
  all.source_status = OrbitStatus::ReachedZero;
  SymbolSequence kept = truncate_one_sided(all);
  CHECK(kept.bits == all.bits);
  CHECK(kept.terminated);
  CHECK(kept.source_status == OrbitStatus::ReachedZero);

  SymbolSequence zero;
  zero.bits = {0, 1, 1};
  zero.terminated = false;
  CHECK(truncate_one_sided(zero).bits.empty());
}

TEST_CASE("sequence-level wrappers match the bit-level functions") {
  SymbolSequence s = encode(chaos(), Branch::Positive, 64);
  CHECK(lempel_ziv(s) == lempel_ziv_bits(s.bits));
  CHECK(embed(s) == embed_bits(s.bits));
  CHECK(normalized_lz(s) == normalized_lz_bits(s.bits));
}
