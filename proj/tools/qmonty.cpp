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

// qmonty: command-line front end.
//
//   qmonty payoff         expected payoffs of a profile
//   qmonty best-response  multi-start search for a best reply
//   qmonty verify         reproduction suite (exit 1 on any failure)
//   qmonty play           text-mode match against an Alice policy
//   qmonty serve          HTTP session API
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <csignal>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmonty/api.hpp"
#include "qmonty/service.hpp"
#include "qmonty/verify.hpp"
#include "qmonty/wire.hpp"

namespace {

using nlohmann::json;
using namespace qmonty;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

// Command-line strategy shorthand -> wire JSON.
//   identity | shuffle1 | shuffle2 | fair-h | uniform-shuffles
//   random:SEED                    seeded random SU(3) matrix
//   conjugate:SPEC, conjugate-shuffle1:SPEC, conjugate-shuffle2:SPEC
//   params:t1,...,t8
//   any JSON spec or mixture
json cli_spec(const std::string& text) {
  if (text.empty()) wire::invalid("empty strategy spec");
  if (text.front() == '{' || text.front() == '[' || text.front() == '"') return json::parse(text);
  const auto colon = text.find(':');
  if (colon == std::string::npos) return text;
  const std::string head = text.substr(0, colon), rest = text.substr(colon + 1);
  if (head == "random") {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(rest);
    } catch (const std::exception&) {
      wire::invalid("random:SEED needs an unsigned integer seed");
    }
    return {{"matrix", wire::to_json(random_su3(seed))}};
  }
  if (head == "conjugate" || head == "conjugate-shuffle1" || head == "conjugate-shuffle2")
    return {{"preset", head}, {"of", cli_spec(rest)}};
  if (head == "params") {
    json p = json::array();
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        p.push_back(std::stod(item));
      } catch (const std::exception&) {
        wire::invalid("params:t1,...,t8 needs 8 numbers");
      }
    }
    return {{"params", p}};
  }
  wire::invalid("unknown strategy shorthand '" + text + "'");
}

json cli_regime(const std::string& text) {
  if (!text.empty() && text.front() == '{') return json::parse(text);
  return text;
}

// Runs a command body and maps failures to the documented exit codes.
template <typename F>
int run_guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    std::cout << wire::error_json(e.code(), e.what()).dump() << std::endl;
  } catch (const json::exception& e) {
    std::cout << wire::error_json(ErrorCode::InvalidSpec, e.what()).dump() << std::endl;
  }
  return kExitUsage;
}

struct PayoffArgs {
  std::string regime = "unentangled", alice = "identity", bob = "identity";
  double gamma = 0.0;
  std::string mode = "incoherent", output = "json";
};

int cmd_payoff(const PayoffArgs& a) {
  return run_guarded([&] {
    const json body = {{"regime", cli_regime(a.regime)}, {"alice", cli_spec(a.alice)},
                       {"bob", cli_spec(a.bob)},         {"gamma", a.gamma},
                       {"mode", a.mode}};
    const json r = api::payoff(body);
    if (a.output == "csv") {
      std::cout << "bob,alice,final_norm2,mode,regime\n"
                << std::setprecision(17) << r["bob"].get<double>() << ","
                << r["alice"].get<double>() << "," << r["final_norm2"].get<double>() << ","
                << r["mode"].get<std::string>() << "," << r["regime"].get<std::string>() << "\n";
    } else {
      std::cout << r.dump(2) << std::endl;
    }
    return kExitOk;
  });
}

struct BestResponseArgs {
  std::string respond_as = "bob", regime = "unentangled";
  std::string alice, bob;
  double gamma = 0.0;
  std::string mode = "incoherent";
  int starts = 32;
  std::uint64_t seed = 0;
};

int cmd_best_response(const BestResponseArgs& a) {
  return run_guarded([&] {
    const std::string& opponent = a.respond_as == "bob" ? a.alice : a.bob;
    if (opponent.empty())
      wire::invalid(a.respond_as == "bob" ? "--alice is required when responding as bob"
                                          : "--bob is required when responding as alice");
    const json body = {{"respond_as", a.respond_as}, {"regime", cli_regime(a.regime)},
                       {"opponent", cli_spec(opponent)}, {"gamma", a.gamma},
                       {"mode", a.mode}, {"starts", a.starts}, {"seed", a.seed}};
    std::cout << api::best_response(body).dump(2) << std::endl;
    return kExitOk;
  });
}

int cmd_verify(std::uint64_t seed, bool quick) {
  SuiteOptions opt;
  opt.seed = seed;
  opt.quick = quick;
  const auto results = run_reproduction_suite(opt);
  std::cout << format_report(results);
  int passed = 0;
  for (const auto& c : results) passed += c.pass ? 1 : 0;
  std::cout << passed << "/" << results.size() << " claims pass";
  if (quick) std::cout << " (quick: reduced sample counts, lower statistical confidence)";
  std::cout << std::endl;
  return all_pass(results) ? kExitOk : kExitVerifyFailed;
}

struct PlayArgs {
  std::string regime = "entangled", alice_policy = "identity", mode = "incoherent";
  int rounds = 10;
  std::uint64_t seed = 1;
  std::string transcript = "qmonty_play.jsonl";
};

void print_play_help(std::ostream& out) {
  out << "Enter Bob's move as: STRATEGY MOVE\n"
         "  STRATEGY  identity, shuffle1, shuffle2, fair-h, conjugate:SPEC,\n"
         "            conjugate-shuffle1:SPEC, params:t1,...,t8, random:SEED or JSON\n"
         "  MOVE      switch, stay, or a gamma in radians (0 = switch, pi/2 = stay)\n"
         "Commands: help, quit\n";
}

int cmd_play(const PlayArgs& a) {
  return run_guarded([&] {
    if (a.rounds < 1) wire::invalid("--rounds must be >= 1");
    const InitialState regime = wire::regime_from_json(cli_regime(a.regime));
    const Policy alice = wire::policy_from_json(cli_spec(a.alice_policy));
    Match match({regime, wire::mode_from_string(a.mode)}, alice, a.seed);
    std::ofstream log(a.transcript, std::ios::app);
    if (!log) wire::invalid("cannot open transcript file " + a.transcript);

    std::cout << "Quantum Monty Hall: you are Bob. Regime " << wire::regime_name(regime)
              << ", Alice plays " << alice.label() << ", " << a.rounds << " rounds.\n";
    print_play_help(std::cout);
    std::string line;
    while (match.next_round() <= a.rounds) {
      std::cout << "round " << match.next_round() << "> " << std::flush;
      if (!std::getline(std::cin, line)) break;
      std::istringstream in(line);
      std::string spec, move;
      in >> spec >> move;
      if (spec.empty()) continue;
      if (spec == "quit" || spec == "q") break;
      if (spec == "help") {
        print_play_help(std::cout);
        continue;
      }
      try {
        double gamma;
        if (move == "switch")
          gamma = 0.0;
        else if (move == "stay")
          gamma = kHalfPi;
        else if (!move.empty())
          gamma = std::stod(move);
        else
          throw Error(ErrorCode::InvalidSpec, "missing move (switch, stay or gamma)");
        const NamedStrategy bob = wire::strategy_from_json(cli_spec(spec));
        const RoundRecord& rec = match.play(bob, gamma);
        log << wire::to_json(rec).dump() << "\n" << std::flush;
        const auto& t = match.transcript();
        std::cout << "  Alice played " << rec.alice.label() << "; measured |o b a> = |"
                  << rec.outcome.triple.o << " " << rec.outcome.triple.b << " "
                  << rec.outcome.triple.a << ">  " << (rec.outcome.bob_wins ? "WIN" : "lose")
                  << "  (expected " << std::setprecision(4) << rec.outcome.expected_bob
                  << ")  score " << t.bob_points << "-" << t.alice_points << "\n";
      } catch (const Error& e) {
        std::cout << "  invalid move (" << code_name(e.code()) << "): " << e.what()
                  << "; round not played\n";
      } catch (const std::exception& e) {
        std::cout << "  invalid move: " << e.what() << "; round not played\n";
      }
    }
    const auto& t = match.transcript();
    std::cout << "final score: Bob " << t.bob_points << ", Alice " << t.alice_points << " after "
              << t.rounds.size() << " rounds; transcript in " << a.transcript << std::endl;
    return kExitOk;
  });
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::vector<std::string> cors;
  std::string transcript_dir;
};

httplib::Server* g_server = nullptr;

int cmd_serve(const ServeArgs& a) {
  service::ServiceOptions opt{a.static_dir, a.cors, a.transcript_dir};
  service::SessionStore store(a.transcript_dir);
  httplib::Server server;
  service::install_routes(server, store, opt);
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::cerr << "qmonty serving on http://" << a.host << ":" << a.port << std::endl;
  if (!server.listen(a.host, a.port)) {
    std::cerr << "cannot listen on " << a.host << ":" << a.port << std::endl;
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qutrit quantum Monty Hall engine"};
  app.require_subcommand(1);

  PayoffArgs pay;
  auto* payoff = app.add_subcommand("payoff", "Expected payoffs of a strategy profile");
  payoff->add_option("--regime", pay.regime, "unentangled | entangled | {\"custom\": [...]}");
  payoff->add_option("--alice", pay.alice, "Alice's strategy or mixture");
  payoff->add_option("--bob", pay.bob, "Bob's strategy or mixture");
  payoff->add_option("--gamma", pay.gamma, "switch parameter in radians, [0, pi/2]");
  payoff->add_option("--mode", pay.mode)->check(CLI::IsMember({"incoherent", "coherent"}));
  payoff->add_option("--output", pay.output)->check(CLI::IsMember({"json", "csv"}));

  BestResponseArgs br;
  auto* best = app.add_subcommand("best-response", "Search for a best reply over SU(3)");
  best->add_option("--respond-as", br.respond_as)->check(CLI::IsMember({"alice", "bob"}));
  best->add_option("--regime", br.regime);
  best->add_option("--alice", br.alice, "Alice's strategy or mixture (when responding as bob)");
  best->add_option("--bob", br.bob, "Bob's strategy or mixture (when responding as alice)");
  best->add_option("--gamma", br.gamma, "Bob's switch parameter (when responding as alice)");
  best->add_option("--mode", br.mode)->check(CLI::IsMember({"incoherent", "coherent"}));
  best->add_option("--starts", br.starts, "random starts per branch")
      ->check(CLI::Range(1, api::kMaxStarts));
  best->add_option("--seed", br.seed);

  std::uint64_t verify_seed = 2002;
  bool quick = false;
  auto* verify = app.add_subcommand("verify", "Run the reproduction suite");
  verify->alias("verify-paper");
  verify->add_option("--seed", verify_seed);
  verify->add_flag("--quick", quick, "reduced sample counts");

  PlayArgs play;
  auto* playc = app.add_subcommand("play", "Play iterated rounds as Bob");
  playc->add_option("--regime", play.regime);
  playc->add_option("--alice-policy", play.alice_policy,
                    "identity | fair-h | uniform-shuffles | adaptive-counter | spec");
  playc->add_option("--rounds", play.rounds);
  playc->add_option("--seed", play.seed);
  playc->add_option("--mode", play.mode)->check(CLI::IsMember({"incoherent", "coherent"}));
  playc->add_option("--transcript", play.transcript, "JSON-lines file, appended");

  ServeArgs srv;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session API");
  serve->add_option("--host", srv.host);
  serve->add_option("--port", srv.port);
  serve->add_option("--static-dir", srv.static_dir, "directory of built web UI assets");
  serve->add_option("--cors", srv.cors, "allowed origins ('*' for any)");
  serve->add_option("--transcript-dir", srv.transcript_dir, "persist session transcripts here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*payoff) return cmd_payoff(pay);
  if (*best) return cmd_best_response(br);
  if (*verify) return cmd_verify(verify_seed, quick);
  if (*playc) return cmd_play(play);
  if (*serve) return cmd_serve(srv);
  return kExitUsage;
}
