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

// The reproduction suite: every published payoff and equilibrium claim,
// checked at its pinned tolerance. Used by `qmonty verify` and by the
// acceptance test binary.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qmonty/closed_form.hpp"
#include "qmonty/equilibrium.hpp"
#include "qmonty/game.hpp"
#include "qmonty/match.hpp"
#include "qmonty/oracle.hpp"
#include "qmonty/strategy.hpp"

namespace qmonty {

struct SuiteOptions {
  std::uint64_t seed = 2002;
  bool quick = false;
  /// Replaces the fair operator in the fair-game claim (negative controls).
  std::optional<Op3> fair_h_override;
};

struct ClaimResult {
  int number = 0;
  std::string id;
  std::string description;
  std::string expected;
  std::string computed;
  double tolerance = 0.0;
  bool pass = false;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Op3 sample_su3(std::uint64_t seed, std::uint64_t stream, std::uint64_t i) {
  return random_su3(Rng::mix(seed + 0x51ed27ULL * (stream + 1)) ^ Rng::mix(i));
}

inline ClaimResult classical_baseline() {
  ClaimResult c{1, "classical-baseline",
                "unentangled, A = B = I: bob = (2/3)cos^2 g + (1/3)sin^2 g", "", "", 1e-12};
  const auto u = InitialState::unentangled();
  const Op3 id = Op3::identity();
  const double b0 = expected_payoff(u, id, id, 0.0).bob;
  const double b1 = expected_payoff(u, id, id, kHalfPi).bob;
  double worst = std::max(std::abs(b0 - 2.0 / 3.0), std::abs(b1 - 1.0 / 3.0));
  for (int k = 0; k < 20; ++k) {
    const double g = kHalfPi * k / 19.0;
    const double want = (2.0 / 3.0) * std::cos(g) * std::cos(g) +
                        (1.0 / 3.0) * std::sin(g) * std::sin(g);
    worst = std::max(worst, std::abs(expected_payoff(u, id, id, g).bob - want));
  }
  c.expected = "bob(0) = 2/3, bob(pi/2) = 1/3, 20-point grid";
  c.computed = "bob(0) = " + fmt(b0) + ", bob(pi/2) = " + fmt(b1) +
               ", max dev " + fmt(worst);
  c.pass = worst <= c.tolerance;
  return c;
}

inline ClaimResult strategy_independence(const SuiteOptions& opt) {
  ClaimResult c{2, "strategy-independence",
                "unentangled: random A with B = I, random B with A = I", "", "", 1e-9};
  const int n = opt.quick ? 50 : 200;
  const auto u = InitialState::unentangled();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Op3 r = sample_su3(opt.seed, 2, static_cast<std::uint64_t>(i));
    const double g = kHalfPi * (i % 20) / 19.0;
    const double want = (2.0 / 3.0) * std::cos(g) * std::cos(g) +
                        (1.0 / 3.0) * std::sin(g) * std::sin(g);
    worst = std::max(worst, std::abs(expected_payoff(u, r, Op3::identity(), g).bob - want));
    worst = std::max(worst, std::abs(expected_payoff(u, Op3::identity(), r, g).bob - want));
  }
  c.expected = "baseline value for " + std::to_string(2 * n) + " profiles";
  c.computed = "max dev " + fmt(worst);
  c.pass = worst <= c.tolerance;
  return c;
}

inline ClaimResult fair_game(const SuiteOptions& opt) {
  ClaimResult c{3, "fair-game", "entangled, A = H, B = I: bob = 1/2 for every gamma", "1/2",
                "", 1e-9};
  const Op3 h = opt.fair_h_override.value_or(fair_h_matrix());
  const auto e = InitialState::entangled();
  double worst = 0.0;
  std::string vals;
  for (double g : {0.0, kHalfPi / 2, kHalfPi}) {
    const double b = expected_payoff(e, h, Op3::identity(), g).bob;
    worst = std::max(worst, std::abs(b - 0.5));
    vals += (vals.empty() ? "" : ", ") + fmt(b);
  }
  c.computed = vals;
  c.pass = worst <= c.tolerance;
  return c;
}

inline ClaimResult quantum_bob(const SuiteOptions&) {
  ClaimResult c{4, "quantum-bob-wins",
                "entangled, A = I: B = I staying, B = M1/M2 switching win surely", "1", "",
                1e-12};
  const auto e = InitialState::entangled();
  const Op3 id = Op3::identity();
  const double stay = expected_payoff(e, id, id, kHalfPi).bob;
  const double m1 = expected_payoff(e, id, shuffle_matrix(Shuffle::M1), 0.0).bob;
  const double m2 = expected_payoff(e, id, shuffle_matrix(Shuffle::M2), 0.0).bob;
  c.computed = fmt(stay) + ", " + fmt(m1) + ", " + fmt(m2);
  c.pass = std::max({std::abs(stay - 1), std::abs(m1 - 1), std::abs(m2 - 1)}) <= c.tolerance;
  return c;
}

inline ClaimResult counterstrategies(const SuiteOptions& opt) {
  ClaimResult c{5, "counterstrategies",
                "entangled: conj(A) staying wins for Bob; conj(B) / M conj(B) win for Alice",
                "", "", 1e-9};
  const int n = opt.quick ? 50 : 200;
  const auto e = InitialState::entangled();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    const Op3 a = sample_su3(opt.seed, 5, k);
    const Op3 b = sample_su3(opt.seed, 6, k);
    const auto bob_spec = NamedStrategy::matrix(b);
    const double bob_counter =
        expected_payoff(e, a, resolve(NamedStrategy::conjugate(NamedStrategy::matrix(a))),
                        kHalfPi).bob;
    const double vs_switch =
        expected_payoff(e, resolve(NamedStrategy::conjugate(bob_spec)), b, 0.0).bob;
    const double vs_stay1 = expected_payoff(
        e, resolve(NamedStrategy::conjugate_shuffled(bob_spec, Shuffle::M1)), b, kHalfPi).bob;
    const double vs_stay2 = expected_payoff(
        e, resolve(NamedStrategy::conjugate_shuffled(bob_spec, Shuffle::M2)), b, kHalfPi).bob;
    worst = std::max({worst, std::abs(bob_counter - 1.0), vs_switch, vs_stay1, vs_stay2});
  }
  c.expected = "Bob 1 / Bob 0 over " + std::to_string(n) + " opponents per direction";
  c.computed = "max dev " + fmt(worst);
  c.pass = worst <= c.tolerance;
  return c;
}

inline ClaimResult no_pure_nash(const SuiteOptions& opt) {
  ClaimResult c{6, "no-pure-nash", "entangled: every sampled pure profile is refuted", "", "",
                1e-9};
  const int n = opt.quick ? 100 : 500;
  const CertificateReport r = no_pure_nash_certificate(n, opt.seed);
  c.expected = std::to_string(n) + " / " + std::to_string(n) + " refuted";
  c.computed = std::to_string(r.refuted) + " / " + std::to_string(r.samples) +
               " refuted, worst counter payoff " + fmt(r.worst_counter_payoff);
  c.pass = r.pass;
  return c;
}

inline SearchOptions search_options(const SuiteOptions& opt, std::uint64_t salt) {
  SearchOptions s;
  s.starts = opt.quick ? 8 : 32;
  s.seed = Rng::mix(opt.seed + salt);
  return s;
}

inline ClaimResult mixed_equilibrium(const SuiteOptions& opt) {
  ClaimResult c{7, "mixed-equilibrium",
                "entangled, both uniform over {I, M1, M2}: 2/3 switching, 1/3 staying, "
                "no profitable deviation",
                "2/3, 1/3, gains <= 5e-3", "", 1e-12};
  const auto e = InitialState::entangled();
  const auto mix = MixedStrategy::uniform_shuffles();
  auto enumerate = [&](double g) {
    const auto m = component_payoff_matrix(e, mix, mix, g);
    double v = 0.0;
    for (const auto& row : m)
      for (double x : row) v += x / 9.0;
    return v;
  };
  const double sw = enumerate(0.0), st = enumerate(kHalfPi);
  const NashReport r = verify_epsilon_nash(e, {mix, mix, 0.0}, 5e-3, PayoffMode::Incoherent,
                                           search_options(opt, 7));
  c.computed = fmt(sw) + ", " + fmt(st) + ", gains bob " + fmt(r.bob_gain) + " alice " +
               fmt(r.alice_gain);
  c.pass = std::abs(sw - 2.0 / 3.0) <= c.tolerance && std::abs(st - 1.0 / 3.0) <= c.tolerance &&
           r.bob_gain <= 5e-3 && r.alice_gain <= 5e-3;
  return c;
}

inline ClaimResult unentangled_nash(const SuiteOptions& opt) {
  ClaimResult c{8, "unentangled-nash",
                "unentangled (A = I, B = I, switch) is an epsilon-Nash profile",
                "epsilon-Nash at 5e-3; Bob's best response <= 2/3 + 2e-3", "", 5e-3};
  const auto u = InitialState::unentangled();
  const auto id = MixedStrategy::pure(NamedStrategy::identity());
  const NashReport r = verify_epsilon_nash(u, {id, id, 0.0}, 5e-3, PayoffMode::Incoherent,
                                           search_options(opt, 8));
  SearchOptions s = search_options(opt, 9);
  s.starts = 32;
  const BestResponseResult br = best_response_bob(u, id, PayoffMode::Incoherent, s);
  c.computed = std::string(r.epsilon_nash ? "epsilon-Nash" : "refuted") + " (gains bob " +
               fmt(r.bob_gain) + ", alice " + fmt(r.alice_gain) + "), best response " +
               fmt(br.value);
  c.pass = r.epsilon_nash && br.value <= 2.0 / 3.0 + 2e-3;
  return c;
}

inline ClaimResult oracle_equivalence(const SuiteOptions& opt) {
  ClaimResult c{9, "oracle-equivalence",
                "closed-form expansions agree with the state-vector engine", "", "", 1e-9};
  const int n = opt.quick ? 100 : 500;
  double worst = 0.0;
  int failures = 0;
  for (auto regime : {ClosedFormRegime::Unentangled, ClosedFormRegime::Entangled}) {
    const std::uint64_t stream = regime == ClosedFormRegime::Unentangled ? 90 : 92;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::uint64_t>(i);
      Rng rng = Rng::stream(opt.seed + stream, k);
      ClosedFormInput in{sample_su3(opt.seed, stream, k), sample_su3(opt.seed, stream + 1, k),
                         rng.uniform(0.0, kHalfPi), regime};
      const OracleReport r = oracle_match(in);
      worst = std::max(worst, r.difference);
      if (!r.pass) ++failures;
    }
  }
  c.expected = std::to_string(n) + " profiles per regime agree";
  c.computed = std::to_string(failures) + " mismatches, max diff " + fmt(worst);
  c.pass = failures == 0;
  return c;
}

inline ClaimResult operator_structure(const SuiteOptions& opt) {
  ClaimResult c{10, "operator-structure",
                "open-box and switch operators are basis permutations; S^2 = I; norms kept",
                "", "", 1e-12};
  const Op27& o = open_operator();
  const Op27& s = switch_operator();
  const bool perms = o.is_permutation() && s.is_permutation();
  const double involution = max_abs_diff(compose(s, s), Op27::identity());
  double norm_dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    Rng rng = Rng::stream(opt.seed + 10, static_cast<std::uint64_t>(i));
    StateVector27 v;
    for (std::size_t k = 0; k < 27; ++k) v[k] = Complex(rng.normal(), rng.normal());
    v = Complex(1.0 / std::sqrt(v.norm2()), 0.0) * v;
    norm_dev = std::max({norm_dev, std::abs(apply(o, v).norm2() - 1.0),
                         std::abs(apply(s, v).norm2() - 1.0)});
  }
  c.expected = "bijective unit weights, S^2 = I, norm preserved";
  c.computed = std::string(perms ? "permutations" : "NOT permutations") + ", |S^2 - I| " +
               fmt(involution) + ", norm dev " + fmt(norm_dev);
  c.pass = perms && involution == 0.0 && norm_dev <= c.tolerance;
  return c;
}

inline ClaimResult sampling_consistency(const SuiteOptions& opt) {
  ClaimResult c{11, "sampling-consistency",
                "match win frequencies within 4 binomial sigma of expected payoffs", "", "",
                4.0};
  const int rounds = opt.quick ? 2000 : 10000;
  struct Case {
    InitialState regime;
    Policy alice;
    Policy bob;
  };
  const auto id = NamedStrategy::identity();
  const std::vector<Case> cases = {
      {InitialState::unentangled(), Policy::fixed(id), Policy::fixed(id, 0.0)},
      {InitialState::unentangled(), Policy::fixed(id), Policy::fixed(id, kHalfPi)},
      {InitialState::entangled(), Policy::fixed(NamedStrategy::fair_h()),
       Policy::fixed(id, kHalfPi / 2)},
      {InitialState::entangled(), Policy::mixture(MixedStrategy::uniform_shuffles()),
       Policy::mixture(MixedStrategy::uniform_shuffles(), 0.0)},
      {InitialState::entangled(), Policy::fixed(id), Policy::fixed(id, kHalfPi)},
  };
  double worst_sigma = 0.0;
  bool ok = true;
  std::string freqs;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Case& k = cases[i];
    const double p = mixed_payoff(k.regime, k.alice.strategies(), k.bob.strategies(),
                                  k.bob.gamma()).bob;
    const MatchTranscript t =
        run_match({k.regime, PayoffMode::Incoherent}, rounds, k.alice, k.bob, opt.seed + 11 + i);
    const double f = static_cast<double>(t.bob_points) / rounds;
    const double sigma = std::sqrt(p * (1.0 - p) / rounds);
    const double dev = std::abs(f - p);
    if (sigma > 0.0)
      worst_sigma = std::max(worst_sigma, dev / sigma);
    if (dev > 4.0 * sigma + 1e-12) ok = false;
    freqs += (freqs.empty() ? "" : ", ") + fmt(f) + "~" + fmt(p);
  }
  c.expected = "5 profiles x " + std::to_string(rounds) + " rounds";
  c.computed = freqs + " (worst " + fmt(worst_sigma) + " sigma)";
  c.pass = ok;
  return c;
}

// Runs one claim, turning an engine error into a FAIL with the message.
inline ClaimResult guarded(const std::function<ClaimResult()>& f, int number,
                           const std::string& id) {
  try {
    return f();
  } catch (const std::exception& ex) {
    ClaimResult c;
    c.number = number;
    c.id = id;
    c.description = "error while evaluating";
    c.computed = ex.what();
    return c;
  }
}

}  // namespace detail

inline std::vector<ClaimResult> run_reproduction_suite(const SuiteOptions& opt = {}) {
  using namespace detail;
  std::vector<ClaimResult> out;
  out.push_back(guarded([&] { return classical_baseline(); }, 1, "classical-baseline"));
  out.push_back(guarded([&] { return strategy_independence(opt); }, 2, "strategy-independence"));
  out.push_back(guarded([&] { return fair_game(opt); }, 3, "fair-game"));
  out.push_back(guarded([&] { return quantum_bob(opt); }, 4, "quantum-bob-wins"));
  out.push_back(guarded([&] { return counterstrategies(opt); }, 5, "counterstrategies"));
  out.push_back(guarded([&] { return no_pure_nash(opt); }, 6, "no-pure-nash"));
  out.push_back(guarded([&] { return mixed_equilibrium(opt); }, 7, "mixed-equilibrium"));
  out.push_back(guarded([&] { return unentangled_nash(opt); }, 8, "unentangled-nash"));
  out.push_back(guarded([&] { return oracle_equivalence(opt); }, 9, "oracle-equivalence"));
  out.push_back(guarded([&] { return operator_structure(opt); }, 10, "operator-structure"));
  out.push_back(guarded([&] { return sampling_consistency(opt); }, 11, "sampling-consistency"));
  return out;
}

inline bool all_pass(const std::vector<ClaimResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& c) { return c.pass; });
}

inline std::string format_report(const std::vector<ClaimResult>& results) {
  std::ostringstream os;
  for (const auto& c : results) {
    os << (c.pass ? "PASS " : "FAIL ") << "[" << c.number << "] " << c.id << "\n"
       << "     claim:     " << c.description << "\n"
       << "     expected:  " << c.expected << "\n"
       << "     computed:  " << c.computed << "\n"
       << "     tolerance: " << detail::fmt(c.tolerance) << "\n";
  }
  return os.str();
}

}  // namespace qmonty
