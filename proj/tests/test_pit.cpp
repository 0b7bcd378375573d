#include <doctest.h>

#include "invar/pit.hpp"
#include "invar/torus.hpp"
#include "support.hpp"

using namespace invar;
using namespace invar::circ;
using invar::pit::PitConfig;

namespace {

Circuit binomial_zero_circuit() {
  // (y1+y2)^2 - y1^2 - 2*y1*y2 - y2^2
  CircuitBuilder b(0, 2);
  auto y1 = b.yvar(0);
  auto y2 = b.yvar(1);
  auto s = b.add(y1, y2);
  auto lhs = b.mul(s, s);
  auto rhs = b.add(b.add(b.mul(y1, y1), b.mul(b.constant(2L), b.mul(y1, y2))), b.mul(y2, y2));
  b.output(b.add(lhs, b.mul(b.constant(-1L), rhs)));
  return b.build();
}

}  // namespace

TEST_CASE("trial count follows the error budget") {
  PitConfig cfg;
  cfg.epsilon = Rat(1, 8);
  CHECK(cfg.trials() == 3);
  cfg.epsilon = Rat(1, 128);
  CHECK(cfg.trials() == 7);
  cfg.epsilon = Rat(1, 3);
  CHECK(cfg.trials() == 2);
  cfg.epsilon = Rat(1, 2);
  CHECK(cfg.trials() == 1);
  cfg.epsilon = Rat(0);
  CHECK_THROWS_AS(cfg.trials(), std::invalid_argument);
  cfg.epsilon = Rat(1, 8);
  cfg.prime_bits = 16;
  CHECK_THROWS_AS(cfg.check(), std::invalid_argument);
}

TEST_CASE("the binomial identity is always identically zero") {
  Circuit c = binomial_zero_circuit();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PitConfig cfg;
    cfg.seed = seed;
    auto res = pit::pit(c, cfg);
    CHECK(res.identically_zero);
    CHECK_FALSE(res.witness.has_value());
  }
}

TEST_CASE("y1*y2 is detected nonzero with a verifiable witness") {
  CircuitBuilder b(0, 2);
  b.output(b.mul(b.yvar(0), b.yvar(1)));
  Circuit c = b.build();
  PitConfig cfg;
  cfg.seed = 42;
  auto res = pit::pit(c, cfg);
  REQUIRE_FALSE(res.identically_zero);
  REQUIRE(res.witness.has_value());

  PrimeField field(res.witness->prime);
  Assignment<std::uint64_t> a;
  a.aux = res.witness->point;
  auto values = evaluate(c, field, a);
  CHECK(values == res.witness->values);
  bool nonzero = false;
  for (auto v : values) nonzero |= (v != 0);
  CHECK(nonzero);
}

TEST_CASE("a matching-free instance silences the degree-n slice") {
  // all 9 triples with i = 1 at n = 3: every matching monomial vanishes
  torus::MatchingInstance u;
  u.n = 3;
  for (std::uint16_t j = 1; j <= 3; ++j)
    for (std::uint16_t k = 1; k <= 3; ++k) u.edges.insert({1, j, k});
  CHECK_FALSE(torus::brute_force_matching(u));

  PitConfig cfg;
  cfg.seed = 9;
  CHECK(torus::decide_matching_via_encoding(u, torus::reference_encoding(3), cfg) ==
        torus::MatchAnswer::No);
}

TEST_CASE("main-variable gates are rejected") {
  CircuitBuilder b(1, 0);
  b.output(b.xvar(0));
  CHECK_THROWS_AS(pit::pit(b.build(), pit::PitConfig{}), std::invalid_argument);
}

TEST_CASE("identical configurations give identical transcripts") {
  SplitMix64 rng(7);
  Circuit c = testsupport::random_nonzero_aux_circuit(rng);
  PitConfig cfg;
  cfg.seed = 1234;
  auto r1 = pit::pit(c, cfg);
  auto r2 = pit::pit(c, cfg);
  CHECK(r1.identically_zero == r2.identically_zero);
  REQUIRE(r1.transcript.size() == r2.transcript.size());
  for (std::size_t t = 0; t < r1.transcript.size(); ++t) {
    CHECK(r1.transcript[t].prime == r2.transcript[t].prime);
    CHECK(r1.transcript[t].nonzero == r2.transcript[t].nonzero);
  }
  if (r1.witness) {
    CHECK(r1.witness->prime == r2.witness->prime);
    CHECK(r1.witness->point == r2.witness->point);
    CHECK(r1.witness->values == r2.witness->values);
  }
}

TEST_CASE("disguised zero circuits never produce a witness") {
  SplitMix64 rng(31337);
  for (int q = 0; q < 50; ++q) {
    Circuit c = testsupport::disguised_zero_circuit(rng);
    PitConfig cfg;
    cfg.seed = 1000 + q;
    cfg.epsilon = Rat(1, 8);
    auto res = pit::pit(c, cfg);
    CHECK(res.identically_zero);
  }
}

TEST_CASE("nonzero circuits are missed well within the error budget") {
  SplitMix64 rng(4242);
  const int runs = 60;
  int failures = 0;
  for (int q = 0; q < runs; ++q) {
    Circuit c = testsupport::random_nonzero_aux_circuit(rng);
    PitConfig cfg;
    cfg.seed = 5000 + q;
    cfg.epsilon = Rat(1, 8);
    auto res = pit::pit(c, cfg);
    if (res.identically_zero) ++failures;
  }
  // 60 * 1/8 + 3 * sqrt(60 * 1/8 * 7/8) = 15.1...
  CHECK(failures <= 15);
}
