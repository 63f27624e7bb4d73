# Copyright 2026 The qmonty Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Validates CLI output against the JSON schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def run(cli, *args, stdin=None):
    out = subprocess.run([cli, *args], input=stdin, capture_output=True, text=True, check=True)
    return out.stdout


def main():
    cli, schema_dir, work = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    schemas = {p.name.split(".")[0]: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
    for s in schemas.values():
        jsonschema.Draft202012Validator.check_schema(s)

    payoff = json.loads(run(cli, "payoff", "--regime", "entangled", "--alice", "fair-h",
                            "--bob", "conjugate:fair-h", "--gamma", "0.3"))
    jsonschema.validate(payoff, schemas["payoff_result"])

    for spec in ["identity", {"preset": "conjugate-shuffle1", "of": "fair-h"},
                 {"params": [0.1] * 8}]:
        jsonschema.validate(spec, schemas["strategy_spec"])

    log = work / "schema_play.jsonl"
    log.unlink(missing_ok=True)
    run(cli, "play", "--alice-policy", "uniform-shuffles", "--rounds", "4", "--seed", "8",
        "--transcript", str(log), stdin="fair-h 0.4\nshuffle1 switch\nidentity stay\nrandom:2 1\n")
    rounds = [json.loads(line) for line in log.read_text().splitlines()]
    assert len(rounds) == 4, rounds
    transcript = {"schema": "qmonty.transcript/v1", "seed": 8, "regime": "entangled",
                  "mode": "incoherent", "alice_policy": "mixture", "bob_policy": "human",
                  "rounds": rounds, "bob_points": 0, "alice_points": 0}
    jsonschema.validate(transcript, schemas["match_transcript"])
    log.unlink()
    print("schemas ok")


if __name__ == "__main__":
    main()
