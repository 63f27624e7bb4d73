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

// JSON request handlers shared by the command-line tool and the HTTP
// service. Each takes a parsed request body and returns the response body;
// failures surface as qmonty::Error.

#include <algorithm>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "qmonty/equilibrium.hpp"
#include "qmonty/wire.hpp"

namespace qmonty::api {

using nlohmann::json;

inline constexpr int kMaxStarts = 512;

namespace detail {
inline const json& require(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key))
    wire::invalid(std::string("missing field \"") + key + "\"");
  return body[key];
}

inline double number(const json& j, const char* key) {
  if (!j.is_number()) wire::invalid(std::string("\"") + key + "\" must be a number");
  return j.get<double>();
}

inline PayoffMode mode_of(const json& body) {
  if (!body.contains("mode")) return PayoffMode::Incoherent;
  if (!body["mode"].is_string()) wire::invalid("\"mode\" must be a string");
  return wire::mode_from_string(body["mode"].get<std::string>());
}
}  // namespace detail

/// {regime, alice, bob, gamma, mode?} -> PayoffResult. alice and bob may be
/// single specs or mixtures.
inline json payoff(const json& body) {
  const InitialState regime = wire::regime_from_json(detail::require(body, "regime"));
  const MixedStrategy alice = wire::mixture_from_json(detail::require(body, "alice"));
  const MixedStrategy bob = wire::mixture_from_json(detail::require(body, "bob"));
  const double gamma = detail::number(detail::require(body, "gamma"), "gamma");
  const PayoffMode mode = detail::mode_of(body);
  const PayoffResult r = mixed_payoff(regime, alice, bob, gamma, mode);
  return wire::to_json(r, regime, mode);
}

/// {respond_as: "bob"|"alice", regime, opponent, gamma?, mode?, starts?,
/// seed?} -> BestResponseResult. The opponent may also be given under the
/// opponent's own name ("alice" when responding as Bob, and vice versa).
inline json best_response(const json& body) {
  const std::string who = detail::require(body, "respond_as").is_string()
                              ? body["respond_as"].get<std::string>()
                              : "";
  if (who != "bob" && who != "alice") wire::invalid("respond_as must be bob or alice");
  const InitialState regime = wire::regime_from_json(detail::require(body, "regime"));
  const char* opponent_key = body.contains("opponent") ? "opponent"
                             : who == "bob"            ? "alice"
                                                       : "bob";
  const MixedStrategy opponent = wire::mixture_from_json(detail::require(body, opponent_key));
  const PayoffMode mode = detail::mode_of(body);

  SearchOptions opt;
  if (body.contains("starts")) {
    const double s = detail::number(body["starts"], "starts");
    if (s < 1 || s > kMaxStarts || s != static_cast<int>(s))
      wire::invalid("starts must be an integer in [1, " + std::to_string(kMaxStarts) + "]");
    opt.starts = static_cast<int>(s);
  }
  if (body.contains("seed")) {
    if (!body["seed"].is_number_integer()) wire::invalid("seed must be an integer");
    opt.seed = body["seed"].get<std::uint64_t>();
  }
  if (who == "bob")
    return wire::to_json(best_response_bob(regime, opponent, mode, opt), Player::Bob);
  const double gamma =
      body.contains("gamma") ? detail::number(body["gamma"], "gamma") : 0.0;
  return wire::to_json(best_response_alice(regime, opponent, gamma, mode, opt), Player::Alice);
}

/// Named strategies and Alice policies, with short descriptions for clients.
inline json presets() {
  return {
      {"strategies",
       json::array({
           {{"name", "identity"}, {"description", "leave the choice qutrit unchanged"}},
           {{"name", "shuffle1"}, {"description", "cyclic shuffle M1: |0> -> |2> -> |1> -> |0>"}},
           {{"name", "shuffle2"}, {"description", "cyclic shuffle M2: |0> -> |1> -> |2> -> |0>"}},
           {{"name", "fair-h"},
            {"description", "SU(3) operator with |diagonal| 1/sqrt(2), |off-diagonal| 1/2"}},
           {{"name", "conjugate"},
            {"description", "entrywise conjugate of the nested \"of\" strategy"},
            {"needs", "of"}},
           {{"name", "conjugate-shuffle1"},
            {"description", "conjugate of \"of\", then shuffle M1"}, {"needs", "of"}},
           {{"name", "conjugate-shuffle2"},
            {"description", "conjugate of \"of\", then shuffle M2"}, {"needs", "of"}},
           {{"name", "params"}, {"description", "exp(i sum theta_a lambda_a), 8 angles"},
            {"needs", "params"}},
           {{"name", "matrix"}, {"description", "explicit SU(3) matrix of [re, im] pairs"},
            {"needs", "matrix"}},
       })},
      {"policies",
       json::array({
           {{"name", "identity"},
            {"description", "always plays the identity"},
            {"hint", {{"entangled", "opponent is exploitable: identity then stay wins every round"},
                      {"unentangled", "switching wins 2/3 of the time"}}}},
           {{"name", "fair-h"},
            {"description", "always plays the fair operator H"},
            {"hint", {{"entangled", "every strategy of yours against H with identity is worth 1/2"},
                      {"unentangled", "switching wins 2/3 of the time"}}}},
           {{"name", "uniform-shuffles"},
            {"description", "I, M1 or M2 with equal probability each round"},
            {"hint", {{"entangled", "equilibrium mixture: nothing beats 2/3"},
                      {"unentangled", "switching wins 2/3 of the time"}}}},
           {{"name", "adaptive-counter"},
            {"description", "counters your previous round's strategy"},
            {"hint", {{"entangled", "repeating a strategy loses; vary it"},
                      {"unentangled", "switching wins 2/3 of the time"}}}},
       })},
      {"regimes", json::array({"unentangled", "entangled"})},
      {"modes", json::array({"incoherent", "coherent"})},
  };
}

}  // namespace qmonty::api
