#!/usr/bin/env python3
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

"""Independent dense 27x27 evaluation of the three-qutrit Monty Hall game.

Used to produce the frozen expected values in tests/test_game.cpp and
tests/test_closed_form.cpp. Shares no code with the C++ engine: operators are
built as dense matrices straight from the sum-over-basis definitions.
"""
import itertools
import numpy as np


def idx(o, b, a):
    return 9 * o + 3 * b + a


def eps(i, j, k):
    return 1 if len({i, j, k}) == 3 else 0


def open_op():
    m = np.zeros((27, 27))
    for i, j, k, l in itertools.product(range(3), repeat=4):
        if eps(i, j, k):
            m[idx((i + l) % 3, j, k), idx(l, j, k)] += 1
    for j, l in itertools.product(range(3), repeat=2):
        m[idx((j + l + 1) % 3, j, j), idx(l, j, j)] += 1
    return m


def switch_op():
    m = np.zeros((27, 27))
    for i, j, k, l in itertools.product(range(3), repeat=4):
        if eps(i, j, l):
            m[idx(i, l, k), idx(i, j, k)] += 1
    for i, j in itertools.product(range(3), repeat=2):
        m[idx(i, i, j), idx(i, i, j)] += 1
    return m


def initial(regime):
    s = np.zeros(27, complex)
    for b, a in itertools.product(range(3), repeat=2):
        if regime == "unentangled":
            s[idx(0, b, a)] = 1 / 3
        elif b == a:
            s[idx(0, b, a)] = 1 / np.sqrt(3)
    return s


def coherent_bob(regime, A, B, gamma):
    U = np.kron(np.eye(3), np.kron(B, A))
    phi = open_op() @ U @ initial(regime)
    psi = np.cos(gamma) * (switch_op() @ phi) + np.sin(gamma) * phi
    n2 = np.vdot(psi, psi).real
    win = sum(abs(psi[idx(o, j, j)]) ** 2 for o in range(3) for j in range(3))
    return win / n2, n2


if __name__ == "__main__":
    O, S = open_op(), switch_op()
    assert np.allclose(O.T @ O, np.eye(27))
    assert np.allclose(S @ S, np.eye(27))
    I = np.eye(3)
    for regime in ("unentangled", "entangled"):
        for g in (np.pi / 4, np.pi / 8, np.pi / 3):
            bob, n2 = coherent_bob(regime, I, I, g)
            print(f"{regime} A=B=I coherent gamma={g!r}: bob={bob!r} norm2={n2!r}")
    print("O|000> ->", np.nonzero(O[:, idx(0, 0, 0)])[0])
    print("O|012> ->", np.nonzero(O[:, idx(0, 1, 2)])[0])
    print("O|211> ->", np.nonzero(O[:, idx(2, 1, 1)])[0])
    print("S|201> ->", np.nonzero(S[:, idx(2, 0, 1)])[0])
