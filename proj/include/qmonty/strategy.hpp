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

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmonty/error.hpp"
#include "qmonty/game.hpp"
#include "qmonty/linalg.hpp"

namespace qmonty {

enum class Shuffle { M1, M2 };

/// Cyclic shuffles of a player's choice. M1|0> = |2>, M2|0> = |1>.
inline Op3 shuffle_matrix(Shuffle which) {
  if (which == Shuffle::M1) return Op3{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  return Op3{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
}

/// SU(3) operator with |diagonal| = 1/sqrt(2) and |off-diagonal| = 1/2.
/// Against Bob's identity in the entangled game it makes every branch
/// worth exactly 1/2 to each player.
inline const Op3& fair_h_matrix() {
  static const Op3 h = [] {
    const double s2 = std::sqrt(2.0);
    const double s7 = std::sqrt(7.0);
    return Op3{
        {1.0 / s2, 0.5, 0.5},
        {-0.5, Complex(3.0, -s7) / (4.0 * s2), Complex(1.0, s7) / (4.0 * s2)},
        {Complex(-1.0, -s7) / (4.0 * s2), Complex(-3.0, s7) / 8.0,
         Complex(5.0, s7) / 8.0},
    };
  }();
  return h;
}

/// A pure strategy by name or by construction. Conjugate forms hold the
/// strategy they counter.
class NamedStrategy {
 public:
  enum class Kind {
    Identity,
    Shuffle1,
    Shuffle2,
    FairH,
    Conjugate,
    ConjugateShuffled,
    Params,
    Matrix,
  };

  static NamedStrategy identity() { return NamedStrategy(Kind::Identity); }
  static NamedStrategy shuffle1() { return NamedStrategy(Kind::Shuffle1); }
  static NamedStrategy shuffle2() { return NamedStrategy(Kind::Shuffle2); }
  static NamedStrategy fair_h() { return NamedStrategy(Kind::FairH); }
  static NamedStrategy conjugate(NamedStrategy of) {
    NamedStrategy s(Kind::Conjugate);
    s.of_ = std::make_shared<const NamedStrategy>(std::move(of));
    return s;
  }
  static NamedStrategy conjugate_shuffled(NamedStrategy of, Shuffle which) {
    NamedStrategy s(Kind::ConjugateShuffled);
    s.of_ = std::make_shared<const NamedStrategy>(std::move(of));
    s.which_ = which;
    return s;
  }
  static NamedStrategy params(const Su3Params& p) {
    NamedStrategy s(Kind::Params);
    s.params_ = p;
    return s;
  }
  static NamedStrategy matrix(const Op3& m) {
    NamedStrategy s(Kind::Matrix);
    s.matrix_ = m;
    return s;
  }

  Kind kind() const { return kind_; }
  const NamedStrategy& of() const { return *of_; }
  Shuffle which() const { return which_; }
  const Su3Params& params() const { return params_; }
  const Op3& matrix() const { return matrix_; }

  /// Short human-readable name, e.g. "conjugate-shuffle1(identity)".
  std::string label() const {
    switch (kind_) {
      case Kind::Identity: return "identity";
      case Kind::Shuffle1: return "shuffle1";
      case Kind::Shuffle2: return "shuffle2";
      case Kind::FairH: return "fair-h";
      case Kind::Conjugate: return "conjugate(" + of_->label() + ")";
      case Kind::ConjugateShuffled:
        return std::string(which_ == Shuffle::M1 ? "conjugate-shuffle1("
                                                 : "conjugate-shuffle2(") +
               of_->label() + ")";
      case Kind::Params: return "params";
      case Kind::Matrix: return "matrix";
    }
    return "unknown";
  }

 private:
  explicit NamedStrategy(Kind k) : kind_(k) {}

  Kind kind_;
  std::shared_ptr<const NamedStrategy> of_;
  Shuffle which_ = Shuffle::M1;
  Su3Params params_{};
  Op3 matrix_;
};

/// The operator a strategy stands for.
///
/// ConjugateShuffled(X, M) applies X* first and then the shuffle, so its
/// matrix is M * conj(X). Against Bob's X in the entangled game this leaves
/// the two choices perfectly anti-correlated.
inline Op3 resolve(const NamedStrategy& s) {
  using Kind = NamedStrategy::Kind;
  switch (s.kind()) {
    case Kind::Identity: return Op3::identity();
    case Kind::Shuffle1: return shuffle_matrix(Shuffle::M1);
    case Kind::Shuffle2: return shuffle_matrix(Shuffle::M2);
    case Kind::FairH: return fair_h_matrix();
    case Kind::Conjugate: return conjugate(resolve(s.of()));
    case Kind::ConjugateShuffled:
      return shuffle_matrix(s.which()) * conjugate(resolve(s.of()));
    case Kind::Params: return su3_from_params(s.params());
    case Kind::Matrix:
      if (!is_special_unitary(s.matrix(), kUnitaryTol))
        throw Error(ErrorCode::NonUnitaryResolution, "matrix strategy is not in SU(3)");
      return s.matrix();
  }
  throw Error(ErrorCode::InvalidSpec, "unknown strategy kind");
}

/// Alice's fair reply to Bob's `bob` in the entangled game: conj(bob)
/// followed by H. Bob's payoff is 1/2 on both branches.
inline Op3 fair_counter(const Op3& bob) { return fair_h_matrix() * conjugate(bob); }

/// Permutation strategy |j> -> |perm[j]>. Odd permutations have column 0
/// negated so the result has determinant 1.
inline Op3 permutation_strategy(const std::array<int, 3>& perm) {
  Op3 m;
  for (std::size_t j = 0; j < 3; ++j) m(static_cast<std::size_t>(perm[j]), j) = 1.0;
  if (det(m).real() < 0.0)
    for (std::size_t i = 0; i < 3; ++i) m(i, 0) = -m(i, 0);
  return m;
}

/// Deterministic box choice: the cyclic shift |j> -> |j + choice mod 3>.
/// Only meaningful when the player's qutrit starts in a basis ket |0>, where
/// it puts the player on box `choice`.
inline Op3 classical_strategy(int choice) {
  if (choice < 0 || choice > 2)
    throw Error(ErrorCode::InvalidSpec, "box index must be 0, 1 or 2");
  return permutation_strategy({choice, (1 + choice) % 3, (2 + choice) % 3});
}

/// Classical randomization over pure quantum strategies.
class MixedStrategy {
 public:
  struct Component {
    NamedStrategy strategy;
    double weight;
  };

  /// Weights must be non-negative and sum to 1 within 1e-12.
  explicit MixedStrategy(std::vector<Component> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw Error(ErrorCode::InvalidMixture, "mixture has no components");
    double total = 0.0;
    for (const auto& c : components_) {
      if (!std::isfinite(c.weight) || c.weight < 0.0)
        throw Error(ErrorCode::InvalidMixture, "mixture weight must be finite and >= 0");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw Error(ErrorCode::InvalidMixture, "mixture weights must sum to 1");
  }

  /// Rescales the weights to sum to 1 first.
  static MixedStrategy normalized(std::vector<Component> components) {
    double total = 0.0;
    for (const auto& c : components) total += c.weight;
    if (!(total > 0.0) || !std::isfinite(total))
      throw Error(ErrorCode::InvalidMixture, "mixture weights must have positive sum");
    for (auto& c : components) c.weight /= total;
    return MixedStrategy(std::move(components));
  }

  static MixedStrategy pure(NamedStrategy s) {
    return MixedStrategy({{std::move(s), 1.0}});
  }

  /// Equal weights over I, M1, M2.
  static MixedStrategy uniform_shuffles() {
    return MixedStrategy({{NamedStrategy::identity(), 1.0 / 3.0},
                          {NamedStrategy::shuffle1(), 1.0 / 3.0},
                          {NamedStrategy::shuffle2(), 1.0 / 3.0}});
  }

  const std::vector<Component>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

 private:
  std::vector<Component> components_;
};

/// Resolved operators and weights of a mixture.
struct ResolvedMixture {
  std::vector<Op3> ops;
  std::vector<double> weights;
};

inline ResolvedMixture resolve(const MixedStrategy& m) {
  ResolvedMixture r;
  for (const auto& c : m.components()) {
    r.ops.push_back(resolve(c.strategy));
    r.weights.push_back(c.weight);
  }
  return r;
}

inline PayoffResult mixed_payoff(const InitialState& regime, const ResolvedMixture& alice,
                                 const ResolvedMixture& bob, double gamma,
                                 PayoffMode mode = PayoffMode::Incoherent) {
  PayoffResult total;
  for (std::size_t i = 0; i < alice.ops.size(); ++i)
    for (std::size_t j = 0; j < bob.ops.size(); ++j) {
      const double w = alice.weights[i] * bob.weights[j];
      if (w == 0.0) continue;
      const PayoffResult p = expected_payoff(regime, alice.ops[i], bob.ops[j], gamma, mode);
      total.bob += w * p.bob;
      total.final_norm2 += w * p.final_norm2;
    }
  total.alice = 1.0 - total.bob;
  return total;
}

/// Payoff-wise average of expected_payoff over all component pairs.
inline PayoffResult mixed_payoff(const InitialState& regime, const MixedStrategy& alice,
                                 const MixedStrategy& bob, double gamma,
                                 PayoffMode mode = PayoffMode::Incoherent) {
  return mixed_payoff(regime, resolve(alice), resolve(bob), gamma, mode);
}

}  // namespace qmonty
