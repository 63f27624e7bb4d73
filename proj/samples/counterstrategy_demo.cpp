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

// Walks through the entangled game: Alice picks a random SU(3) strategy,
// Bob answers with its conjugate and stays, and Alice answers that with the
// shuffled conjugate.

#include <cstdio>

#include "qmonty/game.hpp"
#include "qmonty/strategy.hpp"

int main() {
  using namespace qmonty;
  const auto entangled = InitialState::entangled();

  const Op3 alice = random_su3(7);
  const Op3 bob = resolve(NamedStrategy::conjugate(NamedStrategy::matrix(alice)));
  std::printf("Bob counters a random Alice:      bob = %.6f\n",
              expected_payoff(entangled, alice, bob, kHalfPi).bob);

  const Op3 reply =
      resolve(NamedStrategy::conjugate_shuffled(NamedStrategy::matrix(bob), Shuffle::M1));
  std::printf("Alice counters Bob's counter:     bob = %.6f\n",
              expected_payoff(entangled, reply, bob, kHalfPi).bob);

  std::printf("Alice plays fair against him:     bob = %.6f\n",
              expected_payoff(entangled, fair_counter(bob), bob, kHalfPi).bob);

  const auto shuffles = MixedStrategy::uniform_shuffles();
  std::printf("Both mix I, M1, M2 and Bob swaps: bob = %.6f\n",
              mixed_payoff(entangled, shuffles, shuffles, 0.0).bob);
  return 0;
}
