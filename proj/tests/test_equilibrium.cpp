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

#include "qmonty/equilibrium.hpp"
#include "test_support.hpp"

using namespace qmonty;
using Catch::Approx;

namespace {
const auto kEntangled = InitialState::entangled();
const auto kUnentangled = InitialState::unentangled();

MixedStrategy pure(const Op3& m) { return MixedStrategy::pure(NamedStrategy::matrix(m)); }
MixedStrategy identity() { return MixedStrategy::pure(NamedStrategy::identity()); }

SearchOptions seeded(std::uint64_t seed, int starts = 32) {
  SearchOptions o;
  o.seed = seed;
  o.starts = starts;
  return o;
}
}  // namespace

TEST_CASE("Nelder-Mead finds a quadratic minimum", "[equilibrium]") {
  Su3Params target;
  for (std::size_t i = 0; i < 8; ++i) target[i] = 0.1 * static_cast<double>(i) - 0.3;
  auto f = [&](const Su3Params& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < 8; ++i) s += (i + 1.0) * (x[i] - target[i]) * (x[i] - target[i]);
    return s;
  };
  SearchOptions o;
  o.max_evals_per_start = 20000;
  o.ftol = 0.0;
  const LocalSearchResult r = nelder_mead(f, {}, o);
  CHECK(r.f <= 1e-12);
  for (std::size_t i = 0; i < 8; ++i) CHECK(r.x[i] == Approx(target[i]).margin(1e-5));

  o.max_evals_per_start = 50;
  CHECK(nelder_mead(f, {}, o).evaluations <= 50 + 9);
}

TEST_CASE("Bob's best responses", "[equilibrium]") {
  SECTION("unentangled against identity: switch for 2/3") {
    const auto r = best_response_bob(kUnentangled, identity(), PayoffMode::Incoherent, seeded(1));
    CHECK(r.value == Approx(2.0 / 3.0).margin(2e-3));
    CHECK(r.value <= 2.0 / 3.0 + 1e-12);
    CHECK(r.branch == Branch::Switch);
    CHECK(r.starts == 32);
  }
  SECTION("entangled against a random operator: the conjugate counter wins") {
    const auto r = best_response_bob(kEntangled, pure(random_su3(77)), PayoffMode::Incoherent, seeded(2));
    CHECK(r.value == Approx(1.0).margin(2e-3));
  }
  SECTION("entangled against the shuffle mixture: nothing beats 2/3") {
    const auto r = best_response_bob(kEntangled, MixedStrategy::uniform_shuffles(),
                                     PayoffMode::Incoherent, seeded(3));
    CHECK(r.value == Approx(2.0 / 3.0).margin(2e-3));
  }
}

TEST_CASE("Alice's best responses", "[equilibrium]") {
  const Op3 u = random_su3(78);
  CHECK(best_response_alice(kEntangled, pure(u), 0.0, PayoffMode::Incoherent, seeded(4)).bob_payoff <=
        2e-3);
  CHECK(best_response_alice(kEntangled, pure(u), kHalfPi, PayoffMode::Incoherent, seeded(5))
            .bob_payoff <= 2e-3);

  // Flat objective: every A gives Bob 2/3.
  const auto r = best_response_alice(kUnentangled, identity(), 0.0, PayoffMode::Incoherent, seeded(6));
  CHECK(std::abs(r.bob_payoff - 2.0 / 3.0) <= 1e-9);
  CHECK(r.value == Approx(1.0 / 3.0).margin(1e-9));
}

TEST_CASE("returned values are reproducible", "[equilibrium][property]") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const Op3 a = random_su3(300 + s);
    const auto rb = best_response_bob(kEntangled, pure(a), PayoffMode::Incoherent, seeded(s, 4));
    CHECK(std::abs(rb.value -
                   expected_payoff(kEntangled, a, su3_from_params(rb.strategy), rb.gamma).bob) <= 1e-12);
    const auto ra = best_response_alice(kEntangled, pure(a), 0.0, PayoffMode::Incoherent, seeded(s, 4));
    CHECK(std::abs(ra.bob_payoff -
                   expected_payoff(kEntangled, su3_from_params(ra.strategy), a, 0.0).bob) <= 1e-12);
  }
}

TEST_CASE("more starts never lower the value", "[equilibrium][property]") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const auto a = pure(random_su3(400 + s));
    SearchOptions few = seeded(s, 2), many = seeded(s, 4);
    few.max_evals_per_start = many.max_evals_per_start = 150;
    const double v_few = best_response_bob(kUnentangled, a, PayoffMode::Incoherent, few).value;
    const double v_many = best_response_bob(kUnentangled, a, PayoffMode::Incoherent, many).value;
    CHECK(v_many >= v_few);
  }
}

TEST_CASE("epsilon-Nash verification", "[equilibrium]") {
  SECTION("unentangled identity profile is an equilibrium") {
    const auto r = verify_epsilon_nash(kUnentangled, {identity(), identity(), 0.0}, 5e-3,
                                       PayoffMode::Incoherent, seeded(7));
    CHECK(r.epsilon_nash);
    CHECK_FALSE(r.witness_player.has_value());
    CHECK(r.bob_payoff == Approx(2.0 / 3.0).margin(1e-15));
  }
  SECTION("entangled identity profile, staying, is refuted by Alice") {
    const auto r = verify_epsilon_nash(kEntangled, {identity(), identity(), kHalfPi}, 5e-3,
                                       PayoffMode::Incoherent, seeded(8));
    CHECK_FALSE(r.epsilon_nash);
    CHECK(r.alice_gain == Approx(1.0).margin(2e-3));
    REQUIRE(r.witness_player.has_value());
    // Bob is already at his maximum; Alice's gain is the larger one.
    CHECK(r.bob_gain <= 1e-9);
    CHECK(*r.witness_player == Player::Alice);
    // The witness behaves like a shuffle: it leaves Bob nothing.
    CHECK(expected_payoff(kEntangled, su3_from_params(r.alice_response.strategy), Op3::identity(),
                          kHalfPi).bob <= 2e-3);
  }
  SECTION("uniform shuffle mixtures are an equilibrium") {
    const auto mix = MixedStrategy::uniform_shuffles();
    const auto r = verify_epsilon_nash(kEntangled, {mix, mix, 0.0}, 5e-3, PayoffMode::Incoherent,
                                       seeded(9));
    CHECK(r.epsilon_nash);
    const auto m = component_payoff_matrix(kEntangled, mix, mix, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(m[i][j] == Approx(i == j ? 0.0 : 1.0).margin(1e-15));
  }
}

TEST_CASE("no pure equilibrium in the entangled game", "[equilibrium]") {
  const CertificateReport rep = no_pure_nash_certificate(500, 31);
  CHECK(rep.pass);
  CHECK(rep.refuted == 500);
  CHECK(rep.worst_counter_payoff >= 1.0 - 1e-9);

  const Refutation h = refute_pure_profile(fair_h_matrix(), Op3::identity(), Branch::Switch);
  CHECK(h.player == Player::Bob);
  CHECK(h.counter_branch == Branch::Stay);
  CHECK(resolve(h.counter) == conjugate(fair_h_matrix()));
  CHECK(h.counter_payoff == Approx(1.0).margin(1e-12));
  CHECK(h.refuted);

  const Refutation s = refute_pure_profile(Op3::identity(), Op3::identity(), Branch::Stay);
  CHECK(s.player == Player::Alice);
  CHECK(resolve(s.counter) == shuffle_matrix(Shuffle::M1));
  CHECK(s.counter_payoff == Approx(1.0).margin(1e-12));
  CHECK(s.refuted);
}
