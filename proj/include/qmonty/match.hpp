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

// Born-rule sampling of final states and seeded iterated matches.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/rng.hpp"
#include "qmonty/strategy.hpp"

namespace qmonty {

struct GameConfig {
  InitialState regime = InitialState::entangled();
  PayoffMode mode = PayoffMode::Incoherent;
};

struct GameOutcome {
  BasisTriple triple;
  bool bob_wins = false;            // triple.b == triple.a
  double expected_bob = 0.0;        // pre-measurement expectation
  std::optional<Branch> branch;     // incoherent mode only
  std::uint64_t rng_seed = 0;       // seed of the stream that drew it
};

namespace detail {
inline BasisTriple measure(const StateVector27& s, Rng& rng) {
  std::array<double, 27> p;
  for (std::size_t i = 0; i < 27; ++i) p[i] = std::norm(s[i]);
  return decode_index(rng.pick(p));
}
}  // namespace detail

/// One projective measurement of the full |o b a> triple.
///
/// Incoherent mode first draws the branch (switch with probability
/// cos^2 gamma) and then measures that branch's state; CoherentNormalized
/// measures the normalized combined state.
inline GameOutcome sample_outcome(const InitialState& regime, const Op3& alice,
                                  const Op3& bob, double gamma, PayoffMode mode,
                                  Rng& rng) {
  GameOutcome out;
  out.rng_seed = rng.seed();
  out.expected_bob = expected_payoff(regime, alice, bob, gamma, mode).bob;
  StateVector27 psi;
  if (mode == PayoffMode::Incoherent) {
    Branch branch{};
    const double u = rng.uniform();
    if (!detail::is_endpoint(gamma, branch)) {
      const double c = std::cos(gamma);
      branch = u < c * c ? Branch::Switch : Branch::Stay;
    }
    out.branch = branch;
    psi = branch_state(regime, alice, bob, branch);
  } else {
    psi = final_state(regime, alice, bob, gamma, mode).state;
  }
  out.triple = detail::measure(psi, rng);
  out.bob_wins = out.triple.b == out.triple.a;
  return out;
}

/// How a player picks a strategy each round.
class Policy {
 public:
  enum class Kind {
    Fixed,
    Mixture,          // redrawn every round
    AdaptiveCounter,  // counters the opponent's last revealed strategy
  };

  static Policy fixed(NamedStrategy s, double gamma = 0.0) {
    return Policy(Kind::Fixed, MixedStrategy::pure(std::move(s)), gamma);
  }
  static Policy mixture(MixedStrategy m, double gamma = 0.0) {
    return Policy(Kind::Mixture, std::move(m), gamma);
  }
  /// `gamma` is used in round 1, before anything is revealed.
  static Policy adaptive_counter(double gamma = 0.0) {
    return Policy(Kind::AdaptiveCounter, MixedStrategy::pure(NamedStrategy::identity()),
                  gamma);
  }

  Kind kind() const { return kind_; }
  const MixedStrategy& strategies() const { return mixture_; }
  double gamma() const { return gamma_; }

  std::string label() const {
    switch (kind_) {
      case Kind::Fixed: return mixture_.components().front().strategy.label();
      case Kind::Mixture: {
        std::string s = "mixture[";
        for (std::size_t i = 0; i < mixture_.size(); ++i) {
          if (i) s += ",";
          s += mixture_.components()[i].strategy.label();
        }
        return s + "]";
      }
      case Kind::AdaptiveCounter: return "adaptive-counter";
    }
    return "unknown";
  }

 private:
  Policy(Kind k, MixedStrategy m, double gamma)
      : kind_(k), mixture_(std::move(m)), gamma_(gamma) {}

  Kind kind_;
  MixedStrategy mixture_;
  double gamma_;
};

struct RoundRecord {
  int round = 0;  // 1-based
  NamedStrategy alice = NamedStrategy::identity();
  Op3 alice_op;
  NamedStrategy bob = NamedStrategy::identity();
  Op3 bob_op;
  double gamma = 0.0;
  GameOutcome outcome;
};

struct MatchTranscript {
  GameConfig config;
  std::uint64_t seed = 0;
  std::string alice_policy;
  std::string bob_policy;
  std::vector<RoundRecord> rounds;
  int bob_points = 0;
  int alice_points = 0;
};

/// A match in progress. Round r draws from Rng::stream(seed, r); Alice's
/// choice is made before Bob's move is looked at, and adaptive policies see
/// only earlier rounds.
class Match {
 public:
  Match(GameConfig config, Policy alice, std::uint64_t seed, std::string bob_label = "human")
      : alice_(std::move(alice)) {
    t_.config = std::move(config);
    t_.seed = seed;
    t_.alice_policy = alice_.label();
    t_.bob_policy = std::move(bob_label);
  }

  int next_round() const { return static_cast<int>(t_.rounds.size()) + 1; }
  const MatchTranscript& transcript() const { return t_; }
  std::optional<RoundRecord> last() const {
    if (t_.rounds.empty()) return std::nullopt;
    return t_.rounds.back();
  }

  /// Bob's move for the coming round under `policy`.
  std::pair<NamedStrategy, double> bob_choice(const Policy& policy) const {
    Rng rng = Rng::stream(Rng::mix(t_.seed) + 1, static_cast<std::uint64_t>(next_round()));
    if (policy.kind() == Policy::Kind::AdaptiveCounter) {
      if (t_.rounds.empty()) return {NamedStrategy::identity(), policy.gamma()};
      return {NamedStrategy::conjugate(NamedStrategy::matrix(t_.rounds.back().alice_op)),
              kHalfPi};
    }
    return {draw(policy.strategies(), rng), policy.gamma()};
  }

  /// Plays one round against Bob's (already chosen) move.
  const RoundRecord& play(const NamedStrategy& bob, double gamma) {
    const Op3 bob_op = resolve(bob);
    detail::check_gamma(gamma);
    detail::check_strategy(bob_op, "Bob's");

    const int round = next_round();
    Rng rng = Rng::stream(t_.seed, static_cast<std::uint64_t>(round));
    RoundRecord rec;
    rec.round = round;
    rec.alice = alice_choice(rng);
    rec.alice_op = resolve(rec.alice);
    rec.bob = bob;
    rec.bob_op = bob_op;
    rec.gamma = gamma;
    rec.outcome = sample_outcome(t_.config.regime, rec.alice_op, rec.bob_op, gamma,
                                 t_.config.mode, rng);
    (rec.outcome.bob_wins ? t_.bob_points : t_.alice_points) += 1;
    t_.rounds.push_back(std::move(rec));
    return t_.rounds.back();
  }

 private:
  static NamedStrategy draw(const MixedStrategy& m, Rng& rng) {
    std::vector<double> w;
    for (const auto& c : m.components()) w.push_back(c.weight);
    return m.components()[rng.pick(w)].strategy;
  }

  NamedStrategy alice_choice(Rng& rng) const {
    if (alice_.kind() != Policy::Kind::AdaptiveCounter) return draw(alice_.strategies(), rng);
    rng.uniform();  // keep the stream layout of the other policies
    if (t_.rounds.empty()) return NamedStrategy::identity();
    const RoundRecord& prev = t_.rounds.back();
    const auto bob = NamedStrategy::matrix(prev.bob_op);
    if (prev.gamma < kHalfPi / 2) return NamedStrategy::conjugate(bob);
    return NamedStrategy::conjugate_shuffled(bob, Shuffle::M1);
  }

  Policy alice_;
  MatchTranscript t_;
};

/// Seeded match between two policies; deterministic for a fixed seed.
inline MatchTranscript run_match(const GameConfig& config, int rounds,
                                 const Policy& alice, const Policy& bob,
                                 std::uint64_t seed) {
  if (rounds < 1) throw Error(ErrorCode::InvalidSpec, "rounds must be >= 1");
  Match m(config, alice, seed, bob.label());
  for (int r = 0; r < rounds; ++r) {
    const auto [strategy, gamma] = m.bob_choice(bob);
    m.play(strategy, gamma);
  }
  return m.transcript();
}

}  // namespace qmonty
