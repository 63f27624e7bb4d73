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

// JSON wire formats. Complex numbers are [re, im] pairs, matrices are
// row-major 3x3 arrays of such pairs and gamma is a raw float in radians.
// Schemas live in schemas/*.schema.json.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qmonty/equilibrium.hpp"
#include "qmonty/error.hpp"
#include "qmonty/game.hpp"
#include "qmonty/match.hpp"
#include "qmonty/strategy.hpp"

namespace qmonty::wire {

using nlohmann::json;

inline constexpr const char* kTranscriptSchema = "qmonty.transcript/v1";

[[noreturn]] inline void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidSpec, what);
}

inline json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    invalid("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Op3& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < 3; ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline Op3 op3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) invalid("matrix must have 3 rows");
  Op3 m;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) invalid("matrix rows must have 3 entries");
    for (std::size_t k = 0; k < 3; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline json to_json(const Su3Params& p) {
  json a = json::array();
  for (double v : p) a.push_back(v);
  return a;
}

inline Su3Params params_from_json(const json& j) {
  if (!j.is_array() || j.size() != 8) invalid("params must be an array of 8 numbers");
  Su3Params p;
  for (std::size_t i = 0; i < 8; ++i) {
    if (!j[i].is_number()) invalid("params must be numbers");
    p[i] = j[i].get<double>();
    if (!std::isfinite(p[i])) invalid("params must be finite");
  }
  return p;
}

/// StrategySpecWire -> NamedStrategy. Matrix forms must be in SU(3) within
/// 1e-9.
inline NamedStrategy strategy_from_json(const json& j) {
  if (j.is_string()) return strategy_from_json(json{{"preset", j}});
  if (!j.is_object()) invalid("strategy spec must be an object or preset name");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) invalid("preset must be a string");
    const auto name = j["preset"].get<std::string>();
    if (name == "identity") return NamedStrategy::identity();
    if (name == "shuffle1") return NamedStrategy::shuffle1();
    if (name == "shuffle2") return NamedStrategy::shuffle2();
    if (name == "fair-h") return NamedStrategy::fair_h();
    if (name == "params" || name == "matrix") {
      json inner = j;
      inner.erase("preset");
      return strategy_from_json(inner);
    }
    if (name == "conjugate" || name == "conjugate-shuffle1" || name == "conjugate-shuffle2") {
      if (!j.contains("of")) invalid("preset '" + name + "' needs an \"of\" spec");
      NamedStrategy of = strategy_from_json(j["of"]);
      if (name == "conjugate") return NamedStrategy::conjugate(std::move(of));
      return NamedStrategy::conjugate_shuffled(
          std::move(of), name == "conjugate-shuffle1" ? Shuffle::M1 : Shuffle::M2);
    }
    invalid("unknown preset '" + name + "'");
  }
  if (j.contains("params")) return NamedStrategy::params(params_from_json(j["params"]));
  if (j.contains("matrix")) {
    const Op3 m = op3_from_json(j["matrix"]);
    if (!is_special_unitary(m, kUnitaryTol))
      throw Error(ErrorCode::NonUnitaryStrategy, "matrix strategy is not in SU(3)");
    return NamedStrategy::matrix(m);
  }
  invalid("strategy spec needs one of preset, params, matrix");
}

inline json to_json(const NamedStrategy& s) {
  using Kind = NamedStrategy::Kind;
  switch (s.kind()) {
    case Kind::Identity: return {{"preset", "identity"}};
    case Kind::Shuffle1: return {{"preset", "shuffle1"}};
    case Kind::Shuffle2: return {{"preset", "shuffle2"}};
    case Kind::FairH: return {{"preset", "fair-h"}};
    case Kind::Conjugate: return {{"preset", "conjugate"}, {"of", to_json(s.of())}};
    case Kind::ConjugateShuffled:
      return {{"preset", s.which() == Shuffle::M1 ? "conjugate-shuffle1" : "conjugate-shuffle2"},
              {"of", to_json(s.of())}};
    case Kind::Params: return {{"params", to_json(s.params())}};
    case Kind::Matrix: return {{"matrix", to_json(s.matrix())}};
  }
  return nullptr;
}

/// A single spec (pure strategy), the name "uniform-shuffles", or
/// {"mixture": [{"weight": w, "strategy": spec}, ...]}. Weights are
/// rescaled to sum to 1.
inline MixedStrategy mixture_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "uniform-shuffles")
    return MixedStrategy::uniform_shuffles();
  if (j.is_object() && j.contains("mixture")) {
    const json& comps = j["mixture"];
    if (!comps.is_array() || comps.empty()) invalid("mixture must be a non-empty array");
    std::vector<MixedStrategy::Component> out;
    for (const auto& c : comps) {
      if (!c.is_object() || !c.contains("strategy") || !c.contains("weight") ||
          !c["weight"].is_number())
        invalid("mixture components are {weight, strategy}");
      out.push_back({strategy_from_json(c["strategy"]), c["weight"].get<double>()});
    }
    return MixedStrategy::normalized(std::move(out));
  }
  return MixedStrategy::pure(strategy_from_json(j));
}

inline json to_json(const MixedStrategy& m) {
  json comps = json::array();
  for (const auto& c : m.components())
    comps.push_back({{"weight", c.weight}, {"strategy", to_json(c.strategy)}});
  return {{"mixture", comps}};
}

inline std::string regime_name(const InitialState& r) {
  switch (r.kind()) {
    case InitialState::Kind::Unentangled: return "unentangled";
    case InitialState::Kind::Entangled: return "entangled";
    case InitialState::Kind::Custom: return "custom";
  }
  return "custom";
}

/// "unentangled", "entangled", or {"custom": [27 [re, im] pairs]}.
inline InitialState regime_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "unentangled") return InitialState::unentangled();
    if (s == "entangled") return InitialState::entangled();
    invalid("regime must be unentangled, entangled or {\"custom\": [...]}");
  }
  if (j.is_object() && j.contains("custom")) {
    const json& amps = j["custom"];
    if (!amps.is_array() || amps.size() != 27) invalid("custom state needs 27 amplitudes");
    StateVector27 s;
    for (std::size_t i = 0; i < 27; ++i) s[i] = complex_from_json(amps[i]);
    const InitialState r = InitialState::custom(s);
    initial_state(r);  // validates
    return r;
  }
  invalid("regime must be unentangled, entangled or {\"custom\": [...]}");
}

inline json regime_to_json(const InitialState& r) {
  if (r.kind() != InitialState::Kind::Custom) return regime_name(r);
  json amps = json::array();
  for (const auto& a : r.custom_state().amplitudes()) amps.push_back(to_json(a));
  return {{"custom", amps}};
}

inline std::string mode_name(PayoffMode m) {
  return m == PayoffMode::Incoherent ? "incoherent" : "coherent";
}

inline PayoffMode mode_from_string(const std::string& s) {
  if (s == "incoherent") return PayoffMode::Incoherent;
  if (s == "coherent") return PayoffMode::CoherentNormalized;
  invalid("mode must be incoherent or coherent");
}

inline std::string branch_name(Branch b) { return b == Branch::Switch ? "switch" : "stay"; }

inline json to_json(const PayoffResult& p, const InitialState& regime, PayoffMode mode) {
  return {{"bob", p.bob},
          {"alice", p.alice},
          {"final_norm2", p.final_norm2},
          {"mode", mode_name(mode)},
          {"regime", regime_name(regime)}};
}

inline json to_json(const BestResponseResult& r, Player responder) {
  json j = {{"respond_as", responder == Player::Bob ? "bob" : "alice"},
            {"strategy", {{"params", to_json(r.strategy)}}},
            {"matrix", to_json(su3_from_params(r.strategy))},
            {"gamma", r.gamma},
            {"value", r.value},
            {"bob_payoff", r.bob_payoff},
            {"starts", r.starts},
            {"evaluations", r.evaluations},
            {"exploratory", r.exploratory}};
  if (responder == Player::Bob) j["gamma_branch"] = branch_name(r.branch);
  return j;
}

inline json to_json(const GameOutcome& o) {
  json j = {{"o", o.triple.o},
            {"b", o.triple.b},
            {"a", o.triple.a},
            {"bob_wins", o.bob_wins},
            {"expected_bob", o.expected_bob},
            {"rng_seed", o.rng_seed}};
  if (o.branch) j["branch"] = branch_name(*o.branch);
  return j;
}

inline json to_json(const RoundRecord& r, bool reveal_alice = true) {
  json j = {{"round", r.round},
            {"bob", {{"strategy", to_json(r.bob)}, {"label", r.bob.label()},
                     {"matrix", to_json(r.bob_op)}}},
            {"gamma", r.gamma},
            {"outcome", to_json(r.outcome)}};
  if (reveal_alice)
    j["alice"] = {{"strategy", to_json(r.alice)}, {"label", r.alice.label()},
                  {"matrix", to_json(r.alice_op)}};
  else
    j["alice"] = nullptr;
  return j;
}

inline json to_json(const MatchTranscript& t) {
  json rounds = json::array();
  for (const auto& r : t.rounds) rounds.push_back(to_json(r));
  return {{"schema", kTranscriptSchema},
          {"seed", t.seed},
          {"regime", regime_to_json(t.config.regime)},
          {"mode", mode_name(t.config.mode)},
          {"alice_policy", t.alice_policy},
          {"bob_policy", t.bob_policy},
          {"rounds", rounds},
          {"bob_points", t.bob_points},
          {"alice_points", t.alice_points}};
}

/// Alice policies by name: "identity", "fair-h", "uniform-shuffles",
/// "adaptive-counter"; or {"strategy": spec} / {"mixture": [...]}.
inline Policy policy_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "adaptive-counter") return Policy::adaptive_counter();
    if (s == "uniform-shuffles") return Policy::mixture(MixedStrategy::uniform_shuffles());
    return Policy::fixed(strategy_from_json(j));
  }
  if (j.is_object() && j.contains("mixture")) return Policy::mixture(mixture_from_json(j));
  if (j.is_object() && j.contains("strategy")) return Policy::fixed(strategy_from_json(j["strategy"]));
  invalid("unknown policy");
}

inline json error_json(ErrorCode code, const std::string& message) {
  return {{"error", {{"code", std::string(code_name(code))}, {"message", message}}}};
}

}  // namespace qmonty::wire
