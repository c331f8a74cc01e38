"""Exact rank and right nullspace via fraction-free (Bareiss) elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = Sequence[Sequence]


def integer_rows(m: Matrix) -> list[list[int]]:
    """Clear denominators row by row; the row space is unchanged."""
    out = []
    for row in m:
        fr = [x if isinstance(x, int) else Fraction(x) for x in row]
        den = 1
        for x in fr:
            if isinstance(x, Fraction):
                den = lcm(den, x.denominator)
        out.append([int(x * den) for x in fr])
    return out


def echelon(m: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the nonzero echelon rows and their pivot columns.  Every division
    performed is exact; a nonzero remainder would indicate a bug and raises.
    """
    rows = integer_rows(m)
    if not rows:
        return [], []
    ncols = len(rows[0])
    nrows = len(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            v = rows[i][col]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[col]
        for i in range(r + 1, nrows):
            row = rows[i]
            a = row[col]
            if a:
                for j in range(col + 1, ncols):
                    q, rem = divmod(p * row[j] - a * prow[j], prev)
                    if rem:
                        raise ArithmeticError("inexact division in Bareiss step")
                    row[j] = q
            elif prev != 1 or p != 1:
                for j in range(col + 1, ncols):
                    q, rem = divmod(p * row[j], prev)
                    if rem:
                        raise ArithmeticError("inexact division in Bareiss step")
                    row[j] = q
            row[col] = 0
        pivots.append(col)
        prev = p
        r += 1
    return rows[:r], pivots


def rank(m: Matrix) -> int:
    return len(echelon(m)[1])


def kernel(m: Matrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right nullspace {v : m v = 0}; empty list for a trivial kernel.

    One basis vector per free column, with a 1 in that column and 0 in the
    other free columns.
    """
    if ncols is None:
        if not m:
            raise ValueError("column count unknown for an empty matrix")
        ncols = len(m[0])
    if not m:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    rows, pivots = echelon(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = rows[i]
            s = sum(row[j] * x[j] for j in range(pc + 1, ncols) if row[j] and x[j])
            x[pc] = Fraction(-s) / row[pc] if s else Fraction(0)
        basis.append(x)
    return basis


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers (sign untouched)."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [x // g for x in ints]
