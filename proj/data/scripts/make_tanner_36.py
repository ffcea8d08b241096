"""Writes data/codes/tanner_36_8_3.json.

Quantum Tanner code on the dihedral group D4 (elements (r, s) with index
4*s + r, product (r1, s1)(r2, s2) = (r1 + (-1)^s1 r2, s1 + s2)). Generator
sets A = {4, 5, 6} and B = {1, 2, 3} are closed under inversion and satisfy
ag != gb for all g. Qubits are the squares {g, ag, gb, agb}; X checks sit on
V0 = {g} with local code rep3 (x) parity3, Z checks on V1 = {ag} with the
dual local code parity3 (x) rep3. Result: [[36, 8, 3]].
"""
import itertools
import json
import os

N = 8


def mul(x, y):
    r1, s1 = x % 4, x // 4
    r2, s2 = y % 4, y // 4
    r = (r1 + (r2 if s1 == 0 else -r2)) % 4
    return ((s1 + s2) % 2) * 4 + r


A = (4, 5, 6)
B = (1, 2, 3)
REP = [[1, 1, 1]]
PAR = [[1, 1, 0], [0, 1, 1]]

squares = {}
q0 = {g: {} for g in range(N)}
q1 = {g: {} for g in range(N)}
for g in range(N):
    for ia, a in enumerate(A):
        for ib, b in enumerate(B):
            ag, gb = mul(a, g), mul(g, b)
            agb = mul(ag, b)
            key = (frozenset([g, agb]), frozenset([ag, gb]))
            squares.setdefault(key, len(squares))
            q0[g][(ia, ib)] = squares[key]
            q1[ag][(ia, ib)] = squares[key]


def local_checks(ca, cb):
    return [[[u[i] * v[j] for j in range(3)] for i in range(3)] for u in ca for v in cb]


hx, hz = [], []
rx = rz = 0
for g in range(N):
    for m in local_checks(REP, PAR):
        hx += [[rx, q0[g][(i, j)]] for i in range(3) for j in range(3) if m[i][j]]
        rx += 1
    for m in local_checks(PAR, REP):
        hz += [[rz, q1[g][(i, j)]] for i in range(3) for j in range(3) if m[i][j]]
        rz += 1

doc = {
    "schema": "qpr.css_code",
    "version": 1,
    "family": "tanner",
    "description": "quantum Tanner code, group D4, A={4,5,6}, B={1,2,3}, local codes rep3 x parity3",
    "n": len(squares),
    "rows_x": rx,
    "rows_z": rz,
    "distance": 3,
    "hx": sorted(hx),
    "hz": sorted(hz),
}
out = os.path.join(os.path.dirname(__file__), "..", "codes", "tanner_36_8_3.json")
with open(out, "w") as f:
    json.dump(doc, f, separators=(",", ":"))
    f.write("\n")
