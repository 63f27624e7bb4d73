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

#pragma once

#include <cmath>

#include "qmonty/closed_form.hpp"
#include "qmonty/game.hpp"

namespace qmonty {

struct OracleReport {
  double closed_form = 0.0;
  double engine = 0.0;
  double difference = 0.0;
  bool pass = false;
};

/// Compares the closed-form expansion with the engine's payoff for one
/// profile. PASS iff the two agree within 1e-9.
inline OracleReport oracle_match(const ClosedFormInput& in,
                                 PayoffMode mode = PayoffMode::Incoherent) {
  const InitialState regime = in.regime == ClosedFormRegime::Unentangled
                                  ? InitialState::unentangled()
                                  : InitialState::entangled();
  OracleReport r;
  r.closed_form = payoff_closed(in);
  r.engine = expected_payoff(regime, in.alice, in.bob, in.gamma, mode).bob;
  r.difference = std::abs(r.closed_form - r.engine);
  r.pass = r.difference <= 1e-9;
  return r;
}

}  // namespace qmonty
