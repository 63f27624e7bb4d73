// Copyright 2026 The qmonty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "qmonty/match.hpp"
#include "test_support.hpp"

using namespace qmonty;
using Catch::Approx;

namespace {
const auto kEntangled = InitialState::entangled();
const auto kUnentangled = InitialState::unentangled();
}  // namespace

TEST_CASE("sampled outcomes follow the Born rule", "[match]") {
  SECTION("unentangled identity, switching wins about 2/3") {
    Rng rng(5);
    int wins = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i)
      wins += sample_outcome(kUnentangled, Op3::identity(), Op3::identity(), 0.0,
                             PayoffMode::Incoherent, rng)
                  .bob_wins;
    CHECK(std::abs(wins / double(n) - 2.0 / 3.0) <= 0.01);
  }
  SECTION("entangled identity, staying always wins") {
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
      const auto o = sample_outcome(kEntangled, Op3::identity(), Op3::identity(), kHalfPi,
                                    PayoffMode::Incoherent, rng);
      CHECK(o.bob_wins);
      CHECK(o.branch == Branch::Stay);
      CHECK(o.expected_bob == Approx(1.0).margin(1e-12));
    }
  }
  SECTION("the opened box is never Alice's box when she cannot hide") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
      const auto o = sample_outcome(kUnentangled, Op3::identity(), Op3::identity(), kHalfPi,
                                    PayoffMode::Incoherent, rng);
      CHECK(o.triple.o != o.triple.a);
      CHECK(o.triple.o != o.triple.b);
    }
  }
}

TEST_CASE("interior gamma draws each branch with its weight", "[match][property]") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const double gamma = testing::random_gamma(900 + s);
    const double p = std::cos(gamma) * std::cos(gamma);
    Rng rng(s);
    const int n = 4000;
    int switches = 0;
    for (int i = 0; i < n; ++i)
      switches += sample_outcome(kEntangled, random_su3(s), random_su3(s + 50), gamma,
                                 PayoffMode::Incoherent, rng)
                      .branch == Branch::Switch;
    const double sigma = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(switches / double(n) - p) <= 4 * sigma + 1e-12);
  }
}

TEST_CASE("coherent sampling has no branch tag", "[match]") {
  Rng rng(8);
  const auto o = sample_outcome(kUnentangled, Op3::identity(), Op3::identity(), kHalfPi / 2,
                                PayoffMode::CoherentNormalized, rng);
  CHECK_FALSE(o.branch.has_value());
  CHECK(o.expected_bob == Approx(0.5).margin(1e-12));
}

TEST_CASE("matches between shuffle mixtures average 2/3", "[match]") {
  const auto mix = Policy::mixture(MixedStrategy::uniform_shuffles());
  const int n = 300;
  const auto t = run_match({kEntangled, PayoffMode::Incoherent}, n, mix, mix, 11);
  REQUIRE(t.rounds.size() == static_cast<std::size_t>(n));
  CHECK(t.bob_points + t.alice_points == n);
  const double sigma = std::sqrt((2.0 / 3.0) * (1.0 / 3.0) / n);
  CHECK(std::abs(t.bob_points / double(n) - 2.0 / 3.0) <= 3 * sigma);
}

TEST_CASE("matches are deterministic for a seed", "[match]") {
  const auto alice = Policy::mixture(MixedStrategy::uniform_shuffles());
  const auto bob = Policy::fixed(NamedStrategy::fair_h(), 0.4);
  const auto a = run_match({kEntangled, PayoffMode::Incoherent}, 50, alice, bob, 99);
  const auto b = run_match({kEntangled, PayoffMode::Incoherent}, 50, alice, bob, 99);
  const auto c = run_match({kEntangled, PayoffMode::Incoherent}, 50, alice, bob, 100);
  bool differs = false;
  for (std::size_t i = 0; i < a.rounds.size(); ++i) {
    CHECK(a.rounds[i].outcome.triple.o == b.rounds[i].outcome.triple.o);
    CHECK(a.rounds[i].outcome.triple.b == b.rounds[i].outcome.triple.b);
    CHECK(a.rounds[i].outcome.triple.a == b.rounds[i].outcome.triple.a);
    CHECK(a.rounds[i].alice.label() == b.rounds[i].alice.label());
    CHECK(a.rounds[i].outcome.rng_seed == Rng::stream(99, i + 1).seed());
    differs = differs || a.rounds[i].outcome.rng_seed != c.rounds[i].outcome.rng_seed;
  }
  CHECK(differs);
  CHECK_THROWS_AS(run_match({}, 0, alice, bob, 1), Error);
}

TEST_CASE("Alice's choice does not depend on Bob's current move", "[match]") {
  const auto alice = Policy::mixture(MixedStrategy::uniform_shuffles());
  Match m1({kEntangled, PayoffMode::Incoherent}, alice, 42);
  Match m2({kEntangled, PayoffMode::Incoherent}, alice, 42);
  for (int r = 0; r < 20; ++r) {
    const auto& x = m1.play(NamedStrategy::identity(), 0.0);
    const auto& y = m2.play(NamedStrategy::fair_h(), kHalfPi);
    CHECK(x.alice.label() == y.alice.label());
  }
}

TEST_CASE("an adaptive Alice shuts out a fixed Bob", "[match]") {
  for (double gamma : {0.0, kHalfPi}) {
    const auto bob = Policy::fixed(NamedStrategy::matrix(random_su3(17)), gamma);
    const auto t = run_match({kEntangled, PayoffMode::Incoherent}, 40, Policy::adaptive_counter(),
                             bob, 3);
    for (std::size_t i = 1; i < t.rounds.size(); ++i) {
      CHECK(t.rounds[i].outcome.expected_bob <= 1e-12);
      CHECK_FALSE(t.rounds[i].outcome.bob_wins);
    }
  }
}

TEST_CASE("an adaptive Bob beats a fixed Alice", "[match]") {
  const auto alice = Policy::fixed(NamedStrategy::fair_h());
  const auto t = run_match({kEntangled, PayoffMode::Incoherent}, 30, alice,
                           Policy::adaptive_counter(), 4);
  for (std::size_t i = 1; i < t.rounds.size(); ++i) CHECK(t.rounds[i].outcome.bob_wins);
}

TEST_CASE("invalid moves are rejected without consuming a round", "[match]") {
  Match m({kEntangled, PayoffMode::Incoherent}, Policy::fixed(NamedStrategy::identity()), 1);
  CHECK_THROWS_AS(m.play(NamedStrategy::identity(), 2.0), Error);
  Op3 bad = Op3::identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(m.play(NamedStrategy::matrix(bad), 0.0), Error);
  CHECK(m.next_round() == 1);
  CHECK_FALSE(m.last().has_value());
}
