"""Raw exact-matrix helpers.

Matrices are tuples of tuples of ExactComplex.  This module has no
notion of Lie algebras; it is shared plumbing for base_lie, the loop
modules, and the group-word evaluator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .scalars import EC, ONE, ZERO, ExactComplex

Mat = tuple


def coerce_entry(x) -> ExactComplex:
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, (int, Fraction)):
        return EC(x)
    if isinstance(x, complex):
        raise TypeError("floating complex not allowed in exact matrices")
    raise TypeError(f"cannot coerce {type(x).__name__} to ExactComplex")


def from_rows(rows: Sequence[Sequence]) -> Mat:
    return tuple(tuple(coerce_entry(x) for x in r) for r in rows)


def zero(n: int, m: int = None) -> Mat:
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def unit(n: int, i: int, j: int) -> Mat:
    """Elementary matrix E_ij (single 1 at row i, column j)."""
    return tuple(
        tuple(ONE if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)
    )


def add(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Mat, b: Mat) -> Mat:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def neg(a: Mat) -> Mat:
    return tuple(tuple(-x for x in r) for r in a)


def scale(a: Mat, s: ExactComplex) -> Mat:
    return tuple(tuple(x * s for x in r) for r in a)


def mul(a: Mat, b: Mat) -> Mat:
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    bt = tuple(zip(*b))
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for x, y in zip(a[i], bt[j]):
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def trace(a: Mat) -> ExactComplex:
    t = ZERO
    for i in range(len(a)):
        t = t + a[i][i]
    return t


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def conjugate(a: Mat) -> Mat:
    return tuple(tuple(x.conj() for x in r) for r in a)


def conj_transpose(a: Mat) -> Mat:
    return transpose(conjugate(a))


def is_zero(a: Mat) -> bool:
    return all(x.is_zero() for r in a for x in r)


def eq(a: Mat, b: Mat) -> bool:
    return len(a) == len(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def inverse(a: Mat) -> Mat:
    """Exact inverse via Gauss-Jordan; ValueError if singular."""
    n = len(a)
    m = [list(r) + list(identity(n)[i]) for i, r in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if p is None:
            raise ValueError("matrix is singular")
        m[c], m[p] = m[p], m[c]
        inv = m[c][c]
        m[c] = [x / inv for x in m[c]]
        for r in range(n):
            if r != c and not m[r][c].is_zero():
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)
