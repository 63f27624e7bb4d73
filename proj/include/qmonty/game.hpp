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

// The game's fixed operators, initial states, final-state pipeline and
// payoff measurement.

#include <cmath>
#include <numbers>
#include <string>

#include "qmonty/error.hpp"
#include "qmonty/linalg.hpp"

namespace qmonty {

enum class PayoffMode {
  /// Classical cos^2/sin^2 mixture of the switch and stay branches.
  Incoherent,
  /// The operator sum cos(g) S + sin(g) N applied coherently, with the final
  /// state renormalized. Exploratory; shows interference terms.
  CoherentNormalized,
};

/// The two pure branches of Bob's final move.
enum class Branch { Switch, Stay };

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

inline double branch_gamma(Branch b) { return b == Branch::Switch ? 0.0 : kHalfPi; }

class InitialState {
 public:
  enum class Kind { Unentangled, Entangled, Custom };

  static InitialState unentangled() { return InitialState(Kind::Unentangled); }
  static InitialState entangled() { return InitialState(Kind::Entangled); }
  static InitialState custom(const StateVector27& s) {
    InitialState r(Kind::Custom);
    r.custom_ = s;
    return r;
  }

  Kind kind() const { return kind_; }
  const StateVector27& custom_state() const { return custom_; }

 private:
  explicit InitialState(Kind k) : kind_(k) {}
  Kind kind_;
  StateVector27 custom_;
};

struct PayoffResult {
  double bob = 0.0;
  double alice = 0.0;
  double final_norm2 = 0.0;
};

struct FinalState {
  StateVector27 state;     // unit norm
  double pre_norm2 = 0.0;  // norm^2 before renormalization
};

/// Marks the opened box. For |l j k> with j != k the output is |n j k>,
/// n = (i + l) mod 3 with i the box distinct from j and k; for |l j j> the
/// output is |m j j>, m = (j + l + 1) mod 3.
inline Op27 build_open_operator() {
  Op27 op;
  for (int l = 0; l < 3; ++l)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int out = (j == k) ? (j + l + 1) % 3 : ((3 - j - k) + l) % 3;
        op.add(basis_index(l, j, k), basis_index(out, j, k), 1.0);
      }
  return op;
}

/// Moves Bob to the box that is neither his choice nor the opened one:
/// |i j k> -> |i l k> for j != i with l distinct from i and j. Kets with
/// b == o are left alone.
inline Op27 build_switch_operator() {
  Op27 op;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const int to = (i == j) ? j : 3 - i - j;
        op.add(basis_index(i, j, k), basis_index(i, to, k), 1.0);
      }
  return op;
}

inline const Op27& open_operator() {
  static const Op27 op = build_open_operator();
  return op;
}

inline const Op27& switch_operator() {
  static const Op27 op = build_switch_operator();
  return op;
}

inline StateVector27 initial_state(const InitialState& regime) {
  StateVector27 s;
  switch (regime.kind()) {
    case InitialState::Kind::Unentangled:
      for (int b = 0; b < 3; ++b)
        for (int a = 0; a < 3; ++a) s[basis_index(0, b, a)] = 1.0 / 3.0;
      return s;
    case InitialState::Kind::Entangled:
      for (int j = 0; j < 3; ++j) s[basis_index(0, j, j)] = 1.0 / std::sqrt(3.0);
      return s;
    case InitialState::Kind::Custom:
      break;
  }
  s = regime.custom_state();
  for (std::size_t i = 0; i < 27; ++i) {
    if (!std::isfinite(s[i].real()) || !std::isfinite(s[i].imag()))
      throw Error(ErrorCode::BadCustomState, "custom state has non-finite amplitude");
    if (decode_index(i).o != 0 && std::abs(s[i]) > kUnitaryTol)
      throw Error(ErrorCode::BadCustomState,
                  "custom state has support outside the opened-box |0> subspace");
  }
  if (std::abs(s.norm2() - 1.0) > kUnitaryTol)
    throw Error(ErrorCode::BadCustomState, "custom state is not normalized");
  return s;
}

/// Sum over o, j of |<o j j|psi>|^2: probability that Bob holds Alice's box.
inline double winning_probability(const StateVector27& s) {
  double p = 0.0;
  for (int o = 0; o < 3; ++o)
    for (int j = 0; j < 3; ++j) p += std::norm(s[basis_index(o, j, j)]);
  return p;
}

namespace detail {

inline void check_gamma(double gamma) {
  if (!(gamma >= -kInternalTol && gamma <= kHalfPi + kInternalTol))
    throw Error(ErrorCode::GammaOutOfRange,
                "gamma must lie in [0, pi/2], got " + std::to_string(gamma));
}

inline void check_strategy(const Op3& u, const char* who) {
  if (!is_special_unitary(u, kUnitaryTol))
    throw Error(ErrorCode::NonUnitaryStrategy,
                std::string(who) + " strategy is not in SU(3)");
}

inline bool is_endpoint(double gamma, Branch& branch) {
  if (std::abs(gamma) <= kInternalTol) {
    branch = Branch::Switch;
    return true;
  }
  if (std::abs(gamma - kHalfPi) <= kInternalTol) {
    branch = Branch::Stay;
    return true;
  }
  return false;
}

// O (I x B x A) |psi_i>
inline StateVector27 opened_state(const InitialState& regime, const Op3& alice,
                                  const Op3& bob) {
  const StateVector27 s0 = initial_state(regime);
  const StateVector27 s1 = apply(embed_alice(alice), apply(embed_bob(bob), s0));
  return apply(open_operator(), s1);
}

}  // namespace detail

/// Unnormalized final state of one pure branch, without input validation.
inline StateVector27 branch_state(const InitialState& regime, const Op3& alice,
                                  const Op3& bob, Branch branch) {
  StateVector27 s = detail::opened_state(regime, alice, bob);
  return branch == Branch::Switch ? apply(switch_operator(), s) : s;
}

/// Final state for one strategy profile.
///
/// CoherentNormalized: (S cos g + N sin g) O (I x B x A)|psi_i>, normalized.
/// Incoherent: only the pure branches g = 0 and g = pi/2 are states; interior
/// g is a classical mixture and raises IncoherentBranchOnly.
inline FinalState final_state(const InitialState& regime, const Op3& alice,
                              const Op3& bob, double gamma, PayoffMode mode) {
  detail::check_gamma(gamma);
  detail::check_strategy(alice, "Alice's");
  detail::check_strategy(bob, "Bob's");

  StateVector27 psi;
  Branch branch{};
  if (detail::is_endpoint(gamma, branch)) {
    psi = branch_state(regime, alice, bob, branch);
  } else if (mode == PayoffMode::Incoherent) {
    throw Error(ErrorCode::IncoherentBranchOnly,
                "incoherent mode has no single final state at interior gamma");
  } else {
    const StateVector27 opened = detail::opened_state(regime, alice, bob);
    psi = Complex(std::cos(gamma), 0.0) * apply(switch_operator(), opened) +
          Complex(std::sin(gamma), 0.0) * opened;
  }
  const double n2 = psi.norm2();
  if (!(n2 > 1e-300))
    throw Error(ErrorCode::DegenerateFinalState, "final state has zero norm");
  return {Complex(1.0 / std::sqrt(n2), 0.0) * psi, n2};
}

/// Expected payoffs. Alice's payoff is always 1 - Bob's.
inline PayoffResult expected_payoff(const InitialState& regime, const Op3& alice,
                                    const Op3& bob, double gamma,
                                    PayoffMode mode = PayoffMode::Incoherent) {
  detail::check_gamma(gamma);
  detail::check_strategy(alice, "Alice's");
  detail::check_strategy(bob, "Bob's");

  PayoffResult r;
  Branch branch{};
  if (mode == PayoffMode::CoherentNormalized || detail::is_endpoint(gamma, branch)) {
    const FinalState f = final_state(regime, alice, bob, gamma, mode);
    r.bob = winning_probability(f.state);
    r.final_norm2 = f.pre_norm2;
  } else {
    const StateVector27 opened = detail::opened_state(regime, alice, bob);
    const StateVector27 switched = apply(switch_operator(), opened);
    const double c2 = std::cos(gamma) * std::cos(gamma);
    const double s2 = std::sin(gamma) * std::sin(gamma);
    r.bob = c2 * winning_probability(switched) / switched.norm2() +
            s2 * winning_probability(opened) / opened.norm2();
    r.final_norm2 = c2 * switched.norm2() + s2 * opened.norm2();
  }
  r.alice = 1.0 - r.bob;
  return r;
}

}  // namespace qmonty
