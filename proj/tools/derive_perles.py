#!/usr/bin/env python3
"""Derive exact Q(sqrt 5) coordinates for the 9 point / 9 line Perles configuration.

The incidences are read from the zero set of the 9x9 pattern A0 (rows are
points, columns are lines). Coordinates are fixed by a projective frame
chosen to look like the usual drawing:

  * line l1 is the x-axis and carries p1 = (-1, 0), p2 = (1, 0), p5, p6;
  * p9 = (0, 1); the drawing is symmetric under x -> -x;
  * p7 = (-c, 1 + c) with the free projective parameter c fixed to 3/8.

The remaining collinearities (l3, l6, l7) reduce to a quadratic in the
position b of p6 = (b, 0) with discriminant 5; the root with b > 0 matches
the drawing. The result is printed as a configuration file
(`signrank` JSON syntax) and checked against A0.

Usage: python3 tools/derive_perles.py > fixtures/perles.json

Requires sympy. The library never runs this script; the coordinates it
prints are stored in src/fixtures.cpp and re-verified by `signrank selfcheck`.
"""
import json
import sys

import sympy as sp

A0 = [
    "000----++",
    "0--00++--",
    "++++000++",
    "++0++++00",
    "0----0-+0",
    "0----+00-",
    "++00-0-++",
    "+0-+0++0-",
    "+0-0-+0+0",
]


def collinear(p, q, r):
    return sp.Matrix([[1, p[0], p[1]], [1, q[0], q[1]], [1, r[0], r[1]]]).det()


def solve_frame():
    b, g, h = sp.symbols("b g h")
    c = sp.Rational(3, 8)
    p = {
        1: (-1, 0), 2: (1, 0), 9: (0, 1),
        7: (-c, 1 + c), 8: (c, 1 + c),
        5: (-b, 0), 6: (b, 0),
        3: (-g, h), 4: (g, h),
    }
    eqs = [collinear(p[1], p[4], p[7]),   # l3
           collinear(p[3], p[5], p[7]),   # l6
           collinear(p[3], p[6], p[9])]   # l7
    sols = sp.solve(eqs, [b, g, h], dict=True)
    # discard the degenerate branches and keep the root drawn in the figure
    good = [s for s in sols if s[b].is_real and not s[b].is_rational and float(s[b]) > 0]
    if len(good) != 1:
        sys.exit("unexpected solution set: %r" % sols)
    s = good[0]
    return {k: tuple(sp.radsimp(sp.expand(sp.sympify(x).subs(s))) for x in v)
            for k, v in p.items()}


def line_through(p, q):
    # c0 + c1 x + c2 y = 0, scaled so c2 = 1 when the line is not vertical
    c1 = p[1] - q[1]
    c2 = q[0] - p[0]
    c0 = p[0] * q[1] - q[0] * p[1]
    if c2 != 0:
        c0, c1, c2 = c0 / c2, c1 / c2, sp.Integer(1)
    return tuple(sp.radsimp(sp.expand(x)) for x in (c0, c1, c2))


def split(x):
    """Return (r, s) with x = r + s*sqrt(5), both rational."""
    x = sp.expand(sp.radsimp(x))
    s = x.coeff(sp.sqrt(5))
    r = sp.expand(x - s * sp.sqrt(5))
    assert r.is_rational and s.is_rational, x
    return r, s


def scalar(x):
    r, s = split(x)
    if s == 0:
        return str(r)
    return {"r": str(r), "s": str(s)}


def sign(x):
    x = sp.radsimp(sp.expand(x))
    if x == 0:
        return "0"
    return "+" if x > 0 else "-"


def main():
    pts = solve_frame()
    lines = []
    for col in range(9):
        on = [i + 1 for i in range(9) if A0[i][col] == "0"]
        ln = line_through(pts[on[0]], pts[on[1]])
        for i in on:
            v = ln[0] + ln[1] * pts[i][0] + ln[2] * pts[i][1]
            assert sp.simplify(v) == 0, ("incidence", i, col + 1)
        lines.append(ln)

    pattern = []
    for i in range(1, 10):
        row = ""
        for ln in lines:
            row += sign(ln[0] + ln[1] * pts[i][0] + ln[2] * pts[i][1])
        pattern.append(row)

    zeros_ok = all((pattern[i][j] == "0") == (A0[i][j] == "0")
                   for i in range(9) for j in range(9))
    sys.stderr.write("encoded pattern:\n  " + "\n  ".join(pattern) + "\n")
    sys.stderr.write("zero set matches A0: %s\n" % zeros_ok)
    sys.stderr.write("equal to A0: %s\n" % (pattern == A0))
    if not zeros_ok:
        sys.exit(1)

    cfg = {
        "dim": 2,
        "sqrt": 5,
        "points": [[scalar(pts[i][0]), scalar(pts[i][1])] for i in range(1, 10)],
        "hyperplanes": [[scalar(x) for x in ln] for ln in lines],
    }
    json.dump(cfg, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
