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

#include <array>
#include <cmath>

#include "qmonty/game.hpp"
#include "qmonty/strategy.hpp"
#include "test_support.hpp"

using namespace qmonty;
using Catch::Approx;

namespace {
const auto kEntangled = InitialState::entangled();
const auto kUnentangled = InitialState::unentangled();

template <typename F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a qmonty::Error");
  return ErrorCode::InvalidSpec;
}
}  // namespace

TEST_CASE("named strategies resolve to the published matrices", "[strategy]") {
  CHECK(resolve(NamedStrategy::identity()) == Op3::identity());

  const Op3 m1 = resolve(NamedStrategy::shuffle1());
  CHECK(m1 == (Op3{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  CHECK(m1(2, 0) == Complex(1.0));  // M1|0> = |2>
  CHECK(resolve(NamedStrategy::shuffle2()) == (Op3{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));

  const Op3 h = resolve(NamedStrategy::fair_h());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(h(i, j)) == Approx(i == j ? 1.0 / std::sqrt(2.0) : 0.5).margin(1e-15));
  CHECK(unitarity_defect(h) <= 1e-9);
  CHECK(std::abs(det(h) - 1.0) <= 1e-9);
  CHECK(std::abs(h(1, 1) - Complex(3.0, -std::sqrt(7.0)) / (4.0 * std::sqrt(2.0))) <= 1e-16);

  CHECK(resolve(NamedStrategy::conjugate(NamedStrategy::identity())) == Op3::identity());
  const Op3 r = random_su3(5);
  CHECK(resolve(NamedStrategy::conjugate(NamedStrategy::matrix(r))) == conjugate(r));
  CHECK(resolve(NamedStrategy::matrix(r)) == resolve(NamedStrategy::matrix(resolve(NamedStrategy::matrix(r)))));
  const Su3Params p = testing::random_params(3);
  CHECK(resolve(NamedStrategy::params(p)) == su3_from_params(p));

  CHECK(NamedStrategy::conjugate_shuffled(NamedStrategy::fair_h(), Shuffle::M2).label() ==
        "conjugate-shuffle2(fair-h)");

  const Op3 bad{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(error_of([&] { resolve(NamedStrategy::matrix(bad)); }) == ErrorCode::NonUnitaryResolution);
}

TEST_CASE("shuffled conjugate acts conjugate first", "[strategy]") {
  const Op3 b = random_su3(11);
  const Op3 c = resolve(NamedStrategy::conjugate_shuffled(NamedStrategy::matrix(b), Shuffle::M1));
  CHECK(max_abs_diff(c, shuffle_matrix(Shuffle::M1) * conjugate(b)) == 0.0);
  // The other order does not defeat a staying Bob in general.
  const Op3 other = conjugate(b) * shuffle_matrix(Shuffle::M1);
  CHECK(expected_payoff(kEntangled, c, b, kHalfPi).bob <= 1e-12);
  CHECK(expected_payoff(kEntangled, other, b, kHalfPi).bob > 1e-3);
}

TEST_CASE("classical strategies", "[strategy]") {
  const std::array<Op3, 3> c{classical_strategy(0), classical_strategy(1), classical_strategy(2)};
  CHECK(c[0] == Op3::identity());
  CHECK_FALSE(c[0] == c[1]);
  CHECK_FALSE(c[1] == c[2]);
  CHECK_FALSE(c[0] == c[2]);
  for (const auto& m : c) CHECK(is_special_unitary(m, 1e-15));

  // From the basis ket |0 0 0>, Alice's qutrit ends on her chosen box.
  const auto ket = InitialState::custom(StateVector27::basis(0, 0, 0));
  for (int choice = 0; choice < 3; ++choice) {
    const FinalState f = final_state(ket, classical_strategy(choice), Op3::identity(), 0.0,
                                     PayoffMode::Incoherent);
    double on_choice = 0.0;
    for (std::size_t i = 0; i < 27; ++i)
      if (decode_index(i).a == choice) on_choice += std::norm(f.state[i]);
    CHECK(on_choice == Approx(1.0).margin(1e-15));
  }
  CHECK_THROWS_AS(classical_strategy(3), Error);
}

TEST_CASE("odd permutations are sign-fixed into SU(3)", "[strategy]") {
  const Op3 swap = permutation_strategy({1, 0, 2});
  CHECK(is_special_unitary(swap, 1e-15));
  CHECK(swap(1, 0) == Complex(-1.0));

  // Column signs of a permutation never change a payoff.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Op3 other = random_su3(s);
    for (std::size_t col = 0; col < 3; ++col) {
      Op3 flipped = swap;
      for (std::size_t r = 0; r < 3; ++r) flipped(r, col) = -flipped(r, col);
      for (const auto& regime : {kEntangled, kUnentangled})
        for (Branch br : {Branch::Switch, Branch::Stay}) {
          CHECK(std::abs(winning_probability(branch_state(regime, other, swap, br)) -
                         winning_probability(branch_state(regime, other, flipped, br))) <= 1e-14);
          CHECK(std::abs(winning_probability(branch_state(regime, swap, other, br)) -
                         winning_probability(branch_state(regime, flipped, other, br))) <= 1e-14);
        }
    }
  }
}

TEST_CASE("mixed strategies", "[strategy]") {
  CHECK(error_of([] { MixedStrategy(std::vector<MixedStrategy::Component>{}); }) == ErrorCode::InvalidMixture);
  CHECK(error_of([] { MixedStrategy({{NamedStrategy::identity(), -0.5}, {NamedStrategy::fair_h(), 1.5}}); }) ==
        ErrorCode::InvalidMixture);
  CHECK(error_of([] { MixedStrategy({{NamedStrategy::identity(), 0.5}}); }) ==
        ErrorCode::InvalidMixture);
  CHECK(MixedStrategy::normalized({{NamedStrategy::identity(), 2.0}, {NamedStrategy::shuffle1(), 2.0}})
            .components()[1].weight == 0.5);

  const auto mix = MixedStrategy::uniform_shuffles();
  CHECK(mixed_payoff(kEntangled, mix, mix, 0.0).bob == Approx(2.0 / 3.0).margin(1e-15));
  CHECK(mixed_payoff(kEntangled, mix, mix, kHalfPi).bob == Approx(1.0 / 3.0).margin(1e-15));

  const Op3 a = random_su3(1), b = random_su3(2);
  const auto pa = MixedStrategy::pure(NamedStrategy::matrix(a));
  const auto pb = MixedStrategy::pure(NamedStrategy::matrix(b));
  CHECK(mixed_payoff(kUnentangled, pa, pb, 0.3).bob == expected_payoff(kUnentangled, a, b, 0.3).bob);

  // Linear in each player's weights.
  const Op3 a2 = random_su3(3);
  const double p1 = expected_payoff(kEntangled, a, b, 0.4).bob;
  const double p2 = expected_payoff(kEntangled, a2, b, 0.4).bob;
  for (double w : {0.0, 0.1, 0.37, 0.9, 1.0}) {
    const MixedStrategy m({{NamedStrategy::matrix(a), w}, {NamedStrategy::matrix(a2), 1.0 - w}});
    CHECK(mixed_payoff(kEntangled, m, pb, 0.4).bob == Approx(w * p1 + (1 - w) * p2).margin(1e-14));
  }
}

TEST_CASE("entangled counterstrategies", "[strategy][property]") {
  double bob_counter = 0.0, alice_switch = 0.0, alice_stay = 0.0, fair = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Op3 x = random_su3(9000 + s);
    const auto spec = NamedStrategy::matrix(x);
    bob_counter = std::max(
        bob_counter,
        std::abs(1.0 - expected_payoff(kEntangled, x, resolve(NamedStrategy::conjugate(spec)), kHalfPi).bob));
    alice_switch = std::max(
        alice_switch, expected_payoff(kEntangled, resolve(NamedStrategy::conjugate(spec)), x, 0.0).bob);
    alice_stay = std::max(
        alice_stay,
        expected_payoff(kEntangled, resolve(NamedStrategy::conjugate_shuffled(spec, Shuffle::M1)), x,
                        kHalfPi).bob);
    for (double g : {0.0, kHalfPi})
      fair = std::max(fair, std::abs(expected_payoff(kEntangled, fair_counter(x), x, g).bob - 0.5));
  }
  CHECK(bob_counter <= 1e-9);
  CHECK(alice_switch <= 1e-9);
  CHECK(alice_stay <= 1e-9);
  CHECK(fair <= 1e-9);
}
