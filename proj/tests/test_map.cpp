#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "sfmap/errors.hpp"
#include "sfmap/map.hpp"

using namespace sfmap;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
const double kNan = std::numeric_limits<double>::quiet_NaN();

MapParams chaos() { return {0.5, 0.05, 10.0, 0.0, Variant::Symmetric}; }

}  // namespace

TEST_CASE("validate rejects bad parameters") {
  CHECK_NOTHROW(validate(chaos()));
  CHECK_THROWS_AS(validate({0.0, 0.1, 1.0, 0.0, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({-0.5, 0.1, 1.0, 0.0, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({1.0, 0.1, 0.0, 0.0, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({1.0, 0.1, -2.0, 0.0, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({1.0, kNan, 1.0, 0.0, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({1.0, 0.1, 1.0, kInf, Variant::Symmetric}), DomainError);
  CHECK_THROWS_AS(validate({kInf, 0.1, 1.0, 0.0, Variant::Symmetric}), DomainError);
}

TEST_CASE("step spot values") {
  // x = 1: ln|x| = 0, so f(1) = mu + cos(phi).
  CHECK(step(chaos(), 1.0) == 1.05);
  CHECK(step(chaos(), -1.0) == -1.05);

  // One-sided, rho = 1: at x = exp(pi/omega) the cosine sits at -1,
  // so f(x) = mu - x.
  MapParams p{1.0, 0.2, 10.0, 0.0, Variant::OneSided};
  const double x = std::exp(M_PI / 10.0);
  const double expected = 0.2 - x;
  CHECK(step(p, x) == doctest::Approx(expected).epsilon(1e-14));

  // Phase shifts the cosine argument.
  MapParams q{0.5, 0.05, 10.0, M_PI / 3.0, Variant::Symmetric};
  CHECK(step(q, 1.0) == doctest::Approx(0.05 + std::cos(M_PI / 3.0)).epsilon(1e-15));
}

TEST_CASE("step domain errors") {
  CHECK_THROWS_AS(step(chaos(), 0.0), DomainError);
  MapParams p{1.0, 0.2, 10.0, 0.0, Variant::OneSided};
  CHECK_THROWS_AS(step(p, -1.0), DomainError);
  CHECK_THROWS_AS(step(p, 0.0), DomainError);
}

TEST_CASE("step overflow raises NonFiniteError") {
  MapParams p{3.0, 0.0, 2.0, 0.0, Variant::Symmetric};
  CHECK_THROWS_AS(step(p, 1e200), NonFiniteError);
}

TEST_CASE("step_from_origin branches") {
  CHECK(step_from_origin(chaos(), Branch::Positive) == 0.05);
  CHECK(step_from_origin(chaos(), Branch::Negative) == -0.05);
  MapParams p{1.0, 0.2, 10.0, 0.0, Variant::OneSided};
  CHECK(step_from_origin(p, Branch::Positive) == 0.2);
  CHECK_THROWS_AS(step_from_origin(p, Branch::Negative), DomainError);
}

TEST_CASE("odd symmetry and even derivative are bit-exact") {
  std::mt19937_64 rng(0x5eed0001);
  std::uniform_real_distribution<double> urho(0.2, 3.0);
  std::uniform_real_distribution<double> uom(1.0, 12.0);
  std::uniform_real_distribution<double> umu(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(-M_PI, M_PI);
  std::uniform_real_distribution<double> ulog(std::log(1e-8), std::log(1e3));
  for (int i = 0; i < 10000; ++i) {
    MapParams p{urho(rng), umu(rng), uom(rng), uphi(rng), Variant::Symmetric};
    const double x = std::exp(ulog(rng));
    REQUIRE(step(p, -x) == -step(p, x));
    REQUIRE(derivative(p, -x) == derivative(p, x));
  }
}

TEST_CASE("envelope bound |f(x) - sign(x) mu| <= |x|^rho") {
  std::mt19937_64 rng(0x5eed0002);
  std::uniform_real_distribution<double> urho(0.2, 3.0);
  std::uniform_real_distribution<double> uom(1.0, 12.0);
  std::uniform_real_distribution<double> umu(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(-M_PI, M_PI);
  std::uniform_real_distribution<double> ulog(std::log(1e-8), std::log(1e3));
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 10000; ++i) {
    MapParams p{urho(rng), umu(rng), uom(rng), uphi(rng), Variant::Symmetric};
    double x = std::exp(ulog(rng));
    if (coin(rng)) x = -x;
    const double amp = std::exp(p.rho * std::log(std::abs(x)));
    const double slack = 4e-16 * (amp + std::abs(p.mu));
    const double shift = (x < 0.0) ? -p.mu : p.mu;  // sign(x) * mu
    REQUIRE(std::abs(step(p, x) - shift) <= amp + slack);
  }
}

TEST_CASE("derivative agrees with central finite differences") {
  std::mt19937_64 rng(0x5eed0003);
  std::uniform_real_distribution<double> urho(0.2, 3.0);
  std::uniform_real_distribution<double> uom(1.0, 12.0);
  std::uniform_real_distribution<double> umu(-1.0, 1.0);
  std::uniform_real_distribution<double> uphi(-M_PI, M_PI);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const double h = 2e-6;
  int tested = 0;
  for (int i = 0; i < 10000; ++i) {
    MapParams p{urho(rng), umu(rng), uom(rng), uphi(rng), Variant::Symmetric};
    // Keep |x|^rho above ~1e-3 |mu| so the additive term cannot drown the
    // oscillation in the difference quotient.
    double lo = 1e-6;
    if (p.mu != 0.0)
      lo = std::max(lo, std::pow(1e-3 * std::abs(p.mu), 1.0 / p.rho));
    double x = std::exp(std::log(lo) + u01(rng) * (std::log(1e3) - std::log(lo)));
    if (coin(rng)) x = -x;

    const double d = derivative(p, x);
    const double scale = std::exp((p.rho - 1.0) * std::log(std::abs(x))) *
                         std::hypot(p.rho, p.omega);
    if (std::abs(d) < 0.1 * scale) continue;  // too close to a critical point

    const double x1 = x * (1.0 - h), x2 = x * (1.0 + h);
    const double fd = (step(p, x2) - step(p, x1)) / (x2 - x1);
    REQUIRE(std::abs(fd - d) <= 1e-5 * std::abs(d));
    ++tested;
  }
  CHECK(tested > 7000);
}

TEST_CASE("derivative throws at the origin") {
  CHECK_THROWS_AS(derivative(chaos(), 0.0), DomainError);
}

TEST_CASE("iterate status classification") {
  SUBCASE("max iterations") {
    Trajectory t = iterate(chaos(), 0.05, 100);
    CHECK(t.status == OrbitStatus::MaxIterations);
    CHECK(t.points.size() == 101);
    CHECK(t.points.front() == 0.05);
  }
  SUBCASE("reached zero (superstable)") {
    MapParams p{3.0, 0.0, 2.0, 0.0, Variant::Symmetric};
    Trajectory t = iterate(p, 0.5, 500);
    CHECK(t.status == OrbitStatus::ReachedZero);
    CHECK(std::abs(t.points.back()) < kDefaultZeroEps);
  }
  SUBCASE("diverged") {
    MapParams p{2.0, 3.0, 0.1, 0.0, Variant::Symmetric};
    Trajectory t = iterate(p, 3.0, 200);
    CHECK(t.status == OrbitStatus::Diverged);
  }
  SUBCASE("left domain (one-sided)") {
    MapParams p{1.0, 1.0, 3.6, 0.0, Variant::OneSided};
    Trajectory t = iterate(p, 1.0, 50);
    CHECK(t.status == OrbitStatus::LeftDomain);
    CHECK(t.points.size() == 3);
    CHECK(t.points.back() < 0.0);
  }
  SUBCASE("seed already below zero_eps") {
    Trajectory t = iterate(chaos(), 1e-15, 50);
    CHECK(t.status == OrbitStatus::ReachedZero);
    CHECK(t.points.size() == 1);
  }
  SUBCASE("zero steps rejected") {
    CHECK_THROWS_AS(iterate(chaos(), 0.3, 0), DomainError);
  }
}

TEST_CASE("invariant_bound closed forms") {
  CHECK(*invariant_bound(chaos()) == doctest::Approx(1.1025).epsilon(1e-15));
  CHECK(!invariant_bound({1.0, 0.05, 10.0, 0.0, Variant::Symmetric}).has_value());
  CHECK(*invariant_bound({3.0, 0.0, 2.0, 0.0, Variant::Symmetric}) == 1.0);
  // rho > 1 admits a bound only while |mu| <= rho^(1/(1-rho)) (1 - 1/rho).
  CHECK(!invariant_bound({3.0, 0.5, 2.0, 0.0, Variant::Symmetric}).has_value());
  auto b = invariant_bound({3.0, 0.05, 2.0, 0.0, Variant::Symmetric});
  REQUIRE(b.has_value());
  CHECK(*b == doctest::Approx(0.050125946983772554).epsilon(1e-12));
  // The bound is the smallest positive root of x^rho - x + |mu|.
  CHECK(std::abs(std::pow(*b, 3.0) - *b + 0.05) < 1e-12);
}

TEST_CASE("invariant_bound really bounds orbits") {
  std::mt19937_64 rng(0x5eed0004);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> uom(1.0, 12.0);
  std::uniform_real_distribution<double> uphi(-M_PI, M_PI);
  for (int trial = 0; trial < 50; ++trial) {
    MapParams p;
    p.omega = uom(rng);
    p.phi = uphi(rng);
    if (trial % 2 == 0) {
      p.rho = 0.2 + 0.79 * u01(rng);  // rho < 1 branch
      p.mu = -1.0 + 2.0 * u01(rng);
    } else {
      p.rho = 1.1 + 2.9 * u01(rng);  // rho > 1 branch
      const double gmax = std::pow(p.rho, 1.0 / (1.0 - p.rho)) * (1.0 - 1.0 / p.rho);
      p.mu = (0.1 + 0.8 * u01(rng)) * gmax;
    }
    auto b = invariant_bound(p);
    REQUIRE(b.has_value());
    const double cap = *b * (1.0 + 1e-12);
    double x = p.mu;
    if (x == 0.0) continue;
    Trajectory t = iterate(p, x, 2000);
    for (double v : t.points) REQUIRE(std::abs(v) <= cap);
  }
}

TEST_CASE("enum string round trips") {
  CHECK(std::string(to_string(OrbitStatus::MaxIterations)) == "max-iterations");
  CHECK(std::string(to_string(OrbitStatus::ReachedZero)) == "reached-zero");
  CHECK(std::string(to_string(OrbitStatus::Diverged)) == "diverged");
  CHECK(std::string(to_string(OrbitStatus::LeftDomain)) == "left-domain");
  CHECK(parse_variant("one-sided") == Variant::OneSided);
  CHECK(parse_variant("symmetric") == Variant::Symmetric);
  CHECK(!parse_variant("bogus").has_value());
  CHECK(parse_branch("positive") == Branch::Positive);
  CHECK(parse_branch("negative") == Branch::Negative);
  CHECK(!parse_branch("").has_value());
  CHECK(std::string(to_string(Variant::OneSided)) == "one-sided");
  CHECK(std::string(to_string(Branch::Negative)) == "negative");
}
