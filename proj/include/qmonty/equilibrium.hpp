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

// Best responses over SU(3) x {switch, stay}, epsilon-Nash checks and the
// constructive no-pure-equilibrium certificate for the entangled game.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "qmonty/game.hpp"
#include "qmonty/linalg.hpp"
#include "qmonty/rng.hpp"
#include "qmonty/strategy.hpp"

namespace qmonty {

struct SearchOptions {
  int starts = 32;                // random starts per gamma branch
  int max_evals_per_start = 2000;
  double xtol = 1e-10;            // simplex size (max-norm) at convergence
  double ftol = 1e-15;            // value spread at convergence
  double initial_step = 0.6;
  std::uint64_t seed = 0;
  unsigned threads = 0;           // 0: hardware concurrency
};

struct LocalSearchResult {
  Su3Params x{};
  double f = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

/// Nelder-Mead minimization in the 8 generator coordinates.
inline LocalSearchResult nelder_mead(const std::function<double(const Su3Params&)>& f,
                                     const Su3Params& x0, const SearchOptions& opt) {
  constexpr std::size_t n = 8;
  std::array<Su3Params, n + 1> pts;
  std::array<double, n + 1> val;
  int evals = 0;
  auto eval = [&](const Su3Params& x) {
    ++evals;
    return f(x);
  };

  pts[0] = x0;
  val[0] = eval(x0);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1] = x0;
    pts[i + 1][i] += opt.initial_step;
    val[i + 1] = eval(pts[i + 1]);
  }

  std::array<std::size_t, n + 1> order;
  for (;;) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
    if (size <= opt.xtol || val[worst] - val[best] <= opt.ftol ||
        evals >= opt.max_evals_per_start)
      break;

    Su3Params centroid{};
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / n;
    }
    auto along = [&](double t) {
      Su3Params p;
      for (std::size_t k = 0; k < n; ++k)
        p[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return p;
    };

    const Su3Params reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < val[best]) {
      const Su3Params expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = reflected;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const Su3Params contracted = along(outside ? -0.5 : 0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, val[worst])) {
      pts[worst] = contracted;
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      val[i] = eval(pts[i]);
    }
  }

  const auto it = std::min_element(val.begin(), val.end());
  const auto idx = static_cast<std::size_t>(it - val.begin());
  return {pts[idx], val[idx], evals};
}

/// Uniform start point in [-pi, pi]^8 for restart `index`.
inline Su3Params random_start(std::uint64_t seed, std::uint64_t index) {
  Rng rng = Rng::stream(seed, index);
  Su3Params p;
  for (auto& v : p) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return p;
}

/// Runs `starts` independent local searches, possibly in parallel, and
/// returns the per-start results in start order.
inline std::vector<LocalSearchResult> multistart(
    const std::function<double(const Su3Params&)>& f, const SearchOptions& opt) {
  const auto count = static_cast<std::size_t>(std::max(opt.starts, 0));
  std::vector<LocalSearchResult> results(count);
  unsigned workers = opt.threads ? opt.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++)
      results[i] = nelder_mead(f, random_start(opt.seed, i), opt);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return results;
}

struct BestResponseResult {
  Su3Params strategy{};
  Branch branch = Branch::Switch;  // Bob's branch; the fixed gamma for Alice
  double gamma = 0.0;
  double value = 0.0;       // the responder's own payoff
  double bob_payoff = 0.0;  // Bob's payoff at the returned profile
  int starts = 0;
  long evaluations = 0;
  bool exploratory = false;  // true outside Incoherent mode
};

/// Bob's best response to Alice's mixture: maximizes his payoff over
/// B = su3_from_params(theta) and the two pure branches. Incoherent payoff is
/// affine in cos^2(gamma), so restricting gamma to the endpoints is exact.
inline BestResponseResult best_response_bob(const InitialState& regime,
                                            const MixedStrategy& alice,
                                            PayoffMode mode = PayoffMode::Incoherent,
                                            const SearchOptions& opt = {}) {
  const ResolvedMixture alice_ops = resolve(alice);
  BestResponseResult best;
  best.value = -1.0;
  best.starts = opt.starts;
  best.exploratory = mode != PayoffMode::Incoherent;
  for (Branch branch : {Branch::Switch, Branch::Stay}) {
    const double gamma = branch_gamma(branch);
    auto objective = [&](const Su3Params& p) {
      const ResolvedMixture bob{{su3_from_params(p)}, {1.0}};
      return -mixed_payoff(regime, alice_ops, bob, gamma, mode).bob;
    };
    for (const auto& r : multistart(objective, opt)) {
      best.evaluations += r.evaluations;
      if (-r.f > best.value) {
        best.value = -r.f;
        best.strategy = r.x;
        best.branch = branch;
        best.gamma = gamma;
      }
    }
  }
  const ResolvedMixture bob{{su3_from_params(best.strategy)}, {1.0}};
  best.value = mixed_payoff(regime, alice_ops, bob, best.gamma, mode).bob;
  best.bob_payoff = best.value;
  return best;
}

/// Alice's best response to Bob's mixture at a fixed gamma: minimizes Bob's
/// payoff over A = su3_from_params(theta).
inline BestResponseResult best_response_alice(const InitialState& regime,
                                              const MixedStrategy& bob, double gamma,
                                              PayoffMode mode = PayoffMode::Incoherent,
                                              const SearchOptions& opt = {}) {
  detail::check_gamma(gamma);
  const ResolvedMixture bob_ops = resolve(bob);
  auto objective = [&](const Su3Params& p) {
    const ResolvedMixture alice{{su3_from_params(p)}, {1.0}};
    return mixed_payoff(regime, alice, bob_ops, gamma, mode).bob;
  };
  BestResponseResult best;
  best.starts = opt.starts;
  best.gamma = gamma;
  best.branch = gamma < kHalfPi / 2 ? Branch::Switch : Branch::Stay;
  best.exploratory = mode != PayoffMode::Incoherent;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& r : multistart(objective, opt)) {
    best.evaluations += r.evaluations;
    if (r.f < lowest) {
      lowest = r.f;
      best.strategy = r.x;
    }
  }
  const ResolvedMixture alice{{su3_from_params(best.strategy)}, {1.0}};
  best.bob_payoff = mixed_payoff(regime, alice, bob_ops, gamma, mode).bob;
  best.value = 1.0 - best.bob_payoff;
  return best;
}

struct StrategyProfile {
  MixedStrategy alice;
  MixedStrategy bob;
  double gamma = 0.0;
};

enum class Player { Alice, Bob };

struct NashReport {
  double bob_payoff = 0.0;  // at the profile under test
  double bob_gain = 0.0;
  double alice_gain = 0.0;
  double epsilon = 0.0;
  bool epsilon_nash = false;
  BestResponseResult bob_response;
  BestResponseResult alice_response;
  std::optional<Player> witness_player;  // set when refuted
  bool exploratory = false;
};

/// Runs both best-response searches from the profile. A gain is the best
/// response value minus the player's current payoff, floored at zero.
inline NashReport verify_epsilon_nash(const InitialState& regime,
                                      const StrategyProfile& profile,
                                      double epsilon = 5e-3,
                                      PayoffMode mode = PayoffMode::Incoherent,
                                      const SearchOptions& opt = {}) {
  NashReport r;
  r.epsilon = epsilon;
  r.exploratory = mode != PayoffMode::Incoherent;
  r.bob_payoff = mixed_payoff(regime, profile.alice, profile.bob, profile.gamma, mode).bob;
  r.bob_response = best_response_bob(regime, profile.alice, mode, opt);
  r.alice_response = best_response_alice(regime, profile.bob, profile.gamma, mode, opt);
  r.bob_gain = std::max(0.0, r.bob_response.value - r.bob_payoff);
  r.alice_gain = std::max(0.0, r.alice_response.value - (1.0 - r.bob_payoff));
  r.epsilon_nash = std::max(r.bob_gain, r.alice_gain) <= epsilon;
  if (!r.epsilon_nash)
    r.witness_player = r.bob_gain >= r.alice_gain ? Player::Bob : Player::Alice;
  return r;
}

/// Bob's payoff for every pair of mixture components (rows: Alice).
inline std::vector<std::vector<double>> component_payoff_matrix(
    const InitialState& regime, const MixedStrategy& alice, const MixedStrategy& bob,
    double gamma, PayoffMode mode = PayoffMode::Incoherent) {
  const ResolvedMixture a = resolve(alice), b = resolve(bob);
  std::vector<std::vector<double>> m(a.ops.size(), std::vector<double>(b.ops.size()));
  for (std::size_t i = 0; i < a.ops.size(); ++i)
    for (std::size_t j = 0; j < b.ops.size(); ++j)
      m[i][j] = expected_payoff(regime, a.ops[i], b.ops[j], gamma, mode).bob;
  return m;
}

struct Refutation {
  Player player = Player::Bob;  // who deviates
  NamedStrategy counter = NamedStrategy::identity();
  Branch counter_branch = Branch::Stay;
  double current_payoff = 0.0;  // deviating player's payoff before
  double counter_payoff = 0.0;  // and after
  bool refuted = false;
};

/// Closed-form deviation for the player who is not ahead in the entangled
/// game: Bob answers A with conj(A) and stays; Alice answers a switching Bob
/// with conj(B) and a staying Bob with conj(B) followed by M1.
inline Refutation refute_pure_profile(const Op3& alice, const Op3& bob, Branch branch) {
  const InitialState regime = InitialState::entangled();
  const double gamma = branch_gamma(branch);
  const double bob_now = expected_payoff(regime, alice, bob, gamma).bob;
  Refutation r;
  if (bob_now <= 0.5 + kInternalTol) {  // ties go to Bob
    r.player = Player::Bob;
    r.counter = NamedStrategy::conjugate(NamedStrategy::matrix(alice));
    r.counter_branch = Branch::Stay;
    r.current_payoff = bob_now;
    r.counter_payoff =
        expected_payoff(regime, alice, resolve(r.counter), kHalfPi).bob;
  } else {
    r.player = Player::Alice;
    r.counter = branch == Branch::Switch
                    ? NamedStrategy::conjugate(NamedStrategy::matrix(bob))
                    : NamedStrategy::conjugate_shuffled(NamedStrategy::matrix(bob),
                                                        Shuffle::M1);
    r.counter_branch = branch;
    r.current_payoff = 1.0 - bob_now;
    r.counter_payoff = 1.0 - expected_payoff(regime, resolve(r.counter), bob, gamma).bob;
  }
  r.refuted = r.counter_payoff >= 1.0 - 1e-9 && r.counter_payoff > r.current_payoff + 1e-9;
  return r;
}

struct CertificateReport {
  int samples = 0;
  int refuted = 0;
  double worst_counter_payoff = 1.0;
  bool pass = false;
};

/// Refutes `samples` random pure profiles of the entangled game with
/// closed-form counters. No optimizer is involved.
inline CertificateReport no_pure_nash_certificate(int samples, std::uint64_t seed) {
  CertificateReport rep;
  rep.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const auto id = static_cast<std::uint64_t>(s);
    const Op3 alice = random_su3(Rng::mix(seed) ^ (3 * id));
    const Op3 bob = random_su3(Rng::mix(seed) ^ (3 * id + 1));
    Rng coin = Rng::stream(seed, 3 * id + 2);
    const Branch branch = coin.uniform() < 0.5 ? Branch::Switch : Branch::Stay;
    const Refutation r = refute_pure_profile(alice, bob, branch);
    rep.worst_counter_payoff = std::min(rep.worst_counter_payoff, r.counter_payoff);
    if (r.refuted) ++rep.refuted;
  }
  rep.pass = rep.refuted == samples;
  return rep;
}

}  // namespace qmonty
