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

// HTTP session API for interactive play.
//
//   GET    /api/presets
//   POST   /api/payoff
//   POST   /api/best-response
//   POST   /api/session              {regime, alice_policy, seed?, reveal?, mode?}
//   POST   /api/session/{id}/round   {bob, gamma, round?}
//   GET    /api/session/{id}
//   DELETE /api/session/{id}
//
// Errors are {"error": {"code", "message"}} with 400 for bad input, 404 for
// an unknown session and 409 for a round number that was already played.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "qmonty/api.hpp"
#include "qmonty/match.hpp"
#include "qmonty/wire.hpp"

namespace qmonty::service {

using nlohmann::json;

struct Session {
  Session(std::string session_id, GameConfig config, Policy alice, std::uint64_t seed, bool reveal)
      : id(std::move(session_id)), match(std::move(config), std::move(alice), seed), reveal(reveal) {}

  std::string id;
  Match match;
  bool reveal;
  std::filesystem::path transcript;  // empty: not persisted
  std::mutex mu;                     // serializes rounds
};

inline json session_state(const Session& s) {
  const MatchTranscript& t = s.match.transcript();
  json history = json::array();
  for (const auto& r : t.rounds) history.push_back(wire::to_json(r, s.reveal));
  return {{"session_id", s.id},
          {"regime", wire::regime_to_json(t.config.regime)},
          {"mode", wire::mode_name(t.config.mode)},
          {"alice_policy", t.alice_policy},
          {"reveal", s.reveal},
          {"rounds_played", t.rounds.size()},
          {"next_round", s.match.next_round()},
          {"scores", {{"bob", t.bob_points}, {"alice", t.alice_points}}},
          {"rng", {{"master_seed", t.seed}, {"next_stream", s.match.next_round()}}},
          {"history", history}};
}

/// In-memory session table. Distinct sessions proceed in parallel; rounds of
/// one session are serialized by its own mutex.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path transcript_dir = {})
      : transcript_dir_(std::move(transcript_dir)) {}

  std::shared_ptr<Session> create(const json& body) {
    const InitialState regime = wire::regime_from_json(api::detail::require(body, "regime"));
    const Policy alice = wire::policy_from_json(
        body.contains("alice_policy") ? body["alice_policy"] : json("identity"));
    const PayoffMode mode = api::detail::mode_of(body);
    std::uint64_t seed;
    if (body.contains("seed")) {
      if (!body["seed"].is_number_integer()) wire::invalid("seed must be an integer");
      seed = body["seed"].get<std::uint64_t>();
    } else {
      std::random_device rd;
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    bool reveal = true;
    if (body.contains("reveal")) {
      if (!body["reveal"].is_boolean()) wire::invalid("reveal must be a boolean");
      reveal = body["reveal"].get<bool>();
    }

    std::lock_guard lock(mu_);
    auto s = std::make_shared<Session>(new_id(), GameConfig{regime, mode}, alice, seed, reveal);
    if (!transcript_dir_.empty()) {
      std::filesystem::create_directories(transcript_dir_);
      s->transcript = transcript_dir_ / (s->id + ".jsonl");
    }
    sessions_[s->id] = s;
    return s;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::lock_guard lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "no session " + id);
    return it->second;
  }

  void erase(const std::string& id) {
    std::lock_guard lock(mu_);
    if (sessions_.erase(id) == 0) throw Error(ErrorCode::UnknownSession, "no session " + id);
  }

  /// Plays Bob's move; `body` is {bob, gamma, round?}.
  json play_round(const std::string& id, const json& body) {
    auto s = find(id);
    const NamedStrategy bob = wire::strategy_from_json(api::detail::require(body, "bob"));
    const double gamma = api::detail::number(api::detail::require(body, "gamma"), "gamma");

    std::lock_guard lock(s->mu);
    if (body.contains("round")) {
      if (!body["round"].is_number_integer()) wire::invalid("round must be an integer");
      if (body["round"].get<int>() != s->match.next_round())
        throw Error(ErrorCode::RoundConflict,
                    "round " + std::to_string(body["round"].get<int>()) +
                        " already played or out of order; next is " +
                        std::to_string(s->match.next_round()));
    }
    const RoundRecord& rec = s->match.play(bob, gamma);
    const MatchTranscript& t = s->match.transcript();
    if (!s->transcript.empty()) {
      std::ofstream out(s->transcript, std::ios::app);
      out << wire::to_json(rec).dump() << "\n";
    }
    return {{"round", rec.round},
            {"outcome", wire::to_json(rec.outcome)},
            {"expected_payoff", rec.outcome.expected_bob},
            {"scores", {{"bob", t.bob_points}, {"alice", t.alice_points}}},
            {"alice_revealed", s->reveal ? json{{"strategy", wire::to_json(rec.alice)},
                                                {"label", rec.alice.label()},
                                                {"matrix", wire::to_json(rec.alice_op)}}
                                         : json(nullptr)}};
  }

 private:
  std::string new_id() {
    std::random_device rd;
    std::ostringstream os;
    os << std::hex << rd() << rd() << "-" << ++counter_;
    return os.str();
  }

  std::filesystem::path transcript_dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

struct ServiceOptions {
  std::string static_dir;
  std::vector<std::string> cors_origins;  // "*" allows any origin
  std::filesystem::path transcript_dir;
};

inline int http_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::RoundConflict: return 409;
    case ErrorCode::ExpNotConverged:
    case ErrorCode::DegenerateSample: return 500;
    default: return 400;
  }
}

/// Wires the API onto `server`. `store` must outlive it.
inline void install_routes(httplib::Server& server, SessionStore& store,
                           const ServiceOptions& opt = {}) {
  auto send = [](httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  };
  // Runs `f`, mapping qmonty and JSON errors onto status codes.
  auto guard = [send](httplib::Response& res, auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      send(res, http_status(e.code()), wire::error_json(e.code(), e.what()));
    } catch (const json::exception& e) {
      send(res, 400, wire::error_json(ErrorCode::InvalidSpec, e.what()));
    }
  };
  auto parse = [](const httplib::Request& req) {
    return req.body.empty() ? json::object() : json::parse(req.body);
  };

  const std::set<std::string> origins(opt.cors_origins.begin(), opt.cors_origins.end());
  if (!origins.empty()) {
    server.set_post_routing_handler([origins](const httplib::Request& req, httplib::Response& res) {
      const std::string origin = req.get_header_value("Origin");
      if (origins.count("*"))
        res.set_header("Access-Control-Allow-Origin", "*");
      else if (!origin.empty() && origins.count(origin))
        res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
  }

  server.Get("/api/presets", [send](const httplib::Request&, httplib::Response& res) {
    send(res, 200, api::presets());
  });
  server.Post("/api/payoff", [=](const httplib::Request& req, httplib::Response& res) {
    guard(res, [&] { send(res, 200, api::payoff(parse(req))); });
  });
  server.Post("/api/best-response", [=](const httplib::Request& req, httplib::Response& res) {
    guard(res, [&] { send(res, 200, api::best_response(parse(req))); });
  });
  server.Post("/api/session", [=, &store](const httplib::Request& req, httplib::Response& res) {
    guard(res, [&] {
      auto s = store.create(parse(req));
      send(res, 201, {{"session_id", s->id}});
    });
  });
  server.Post(R"(/api/session/([^/]+)/round)",
              [=, &store](const httplib::Request& req, httplib::Response& res) {
                guard(res, [&] { send(res, 200, store.play_round(req.matches[1], parse(req))); });
              });
  server.Get(R"(/api/session/([^/]+))",
             [=, &store](const httplib::Request& req, httplib::Response& res) {
               guard(res, [&] {
                 auto s = store.find(req.matches[1]);
                 std::lock_guard lock(s->mu);
                 send(res, 200, session_state(*s));
               });
             });
  server.Delete(R"(/api/session/([^/]+))",
                [=, &store](const httplib::Request& req, httplib::Response& res) {
                  guard(res, [&] {
                    store.erase(req.matches[1]);
                    send(res, 200, {{"deleted", std::string(req.matches[1])}});
                  });
                });

  if (!opt.static_dir.empty()) server.set_mount_point("/", opt.static_dir);
}

}  // namespace qmonty::service
