"""Seeded random samplers over the exact types.

Everything takes an explicit `random.Random` so suite runs are
reproducible; no global RNG state is touched.  Values are kept small
(numerators/denominators of a few) so iterated brackets stay cheap.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from . import _matrix as mx
from .base_lie import FiniteLieElement
from .kac_moody import KacMoodyElement, km_element
from .loop_algebra import LaurentLoop, laurent_loop, zero_loop
from .scalars import EC, ExactComplex


def rand_fraction(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_ec(rng: random.Random, num: int = 3, den: int = 3) -> ExactComplex:
    return EC(rand_fraction(rng, num, den), rand_fraction(rng, num, den))


def rand_sl(rng: random.Random, n: int, num: int = 2) -> FiniteLieElement:
    """Random traceless matrix with small Gaussian-rational entries."""
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                rows[i][j] = rand_ec(rng, num, 2)
    diag = [rand_ec(rng, num, 2) for _ in range(n - 1)]
    last = EC(0)
    for x in diag:
        last = last - x
    diag.append(last)
    for i in range(n):
        rows[i][i] = diag[i]
    return FiniteLieElement(mx.from_rows(rows), "sl")


def rand_ab(rng: random.Random, n: int, num: int = 2) -> FiniteLieElement:
    rows = [
        [rand_ec(rng, num, 2) if i == j else EC(0) for j in range(n)]
        for i in range(n)
    ]
    return FiniteLieElement(mx.from_rows(rows), "ab")


def rand_element(rng: random.Random, n: int, tag: str = "sl") -> FiniteLieElement:
    return rand_sl(rng, n) if tag == "sl" else rand_ab(rng, n)


def rand_loop(
    rng: random.Random,
    n: int = 2,
    degmax: int = 2,
    tag: str = "sl",
    nterms: Optional[int] = None,
) -> LaurentLoop:
    degs = list(range(-degmax, degmax + 1))
    rng.shuffle(degs)
    k = nterms if nterms is not None else rng.randint(1, min(3, len(degs)))
    return laurent_loop(
        {d: rand_element(rng, n, tag) for d in degs[:k]}, tag=tag, n=n
    )


def rand_km(
    rng: random.Random, n: int = 2, degmax: int = 2, tag: str = "sl"
) -> KacMoodyElement:
    return km_element(
        rand_loop(rng, n, degmax, tag), rand_ec(rng, 2, 2), rand_ec(rng, 2, 2)
    )


# ---------------------------------------------------------------------------
# compact real form
# ---------------------------------------------------------------------------


def rand_antihermitian(rng: random.Random, n: int, num: int = 2) -> FiniteLieElement:
    """Random element of su(n): anti-Hermitian, traceless."""
    rows = [[EC(0)] * n for _ in range(n)]
    imag = [rand_fraction(rng, num, 2) for _ in range(n - 1)]
    imag.append(-sum(imag, Fraction(0)))
    for i in range(n):
        rows[i][i] = EC(0, imag[i])
    for i in range(n):
        for j in range(i + 1, n):
            p, q = rand_fraction(rng, num, 2), rand_fraction(rng, num, 2)
            rows[i][j] = EC(p, q)
            rows[j][i] = EC(-p, q)
    return FiniteLieElement(tuple(tuple(r) for r in rows), "sl")


def rand_compact_loop(
    rng: random.Random, n: int = 2, degmax: int = 2, tag: str = "sl"
) -> LaurentLoop:
    """Loop satisfying the reality condition f_{-m} = -conj(f_m)^T."""
    terms = {}
    if rng.random() < 0.8:
        terms[0] = (
            rand_antihermitian(rng, n)
            if tag == "sl"
            else _imag_diag(rng, n)
        )
    for d in range(1, degmax + 1):
        if rng.random() < 0.7:
            x = rand_element(rng, n, tag)
            terms[d] = x
            terms[-d] = FiniteLieElement(
                mx.neg(mx.conj_transpose(x.entries)), tag
            )
    if not terms:
        terms[0] = (
            rand_antihermitian(rng, n) if tag == "sl" else _imag_diag(rng, n)
        )
    return laurent_loop(terms, tag=tag, n=n)


def _imag_diag(rng: random.Random, n: int) -> FiniteLieElement:
    rows = [
        [EC(0, rand_fraction(rng, 2, 2)) if i == j else EC(0) for j in range(n)]
        for i in range(n)
    ]
    return FiniteLieElement(tuple(tuple(r) for r in rows), "ab")


def rand_compact_km(
    rng: random.Random, n: int = 2, degmax: int = 2, tag: str = "sl"
) -> KacMoodyElement:
    """Element of the compact real form of the double extension.

    The loop part satisfies the reality condition; the c and d
    coordinates are purely imaginary rationals (the rotation derivation
    itself maps the compact loops out of themselves, i d preserves
    them, and the cocycle is iR-valued there).
    """
    return km_element(
        rand_compact_loop(rng, n, degmax, tag),
        EC(0, rand_fraction(rng, 2, 2)),
        EC(0, rand_fraction(rng, 2, 2)),
    )


def rand_nilpotent_loop(rng: random.Random, n: int = 2, degmax: int = 1) -> LaurentLoop:
    """Strictly triangular loop; its total matrix is nilpotent by shape."""
    upper = rng.random() < 0.5
    terms = {}
    for d in range(-degmax, degmax + 1):
        if rng.random() < 0.6:
            rows = [[EC(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(n):
                    if (j > i) if upper else (j < i):
                        rows[i][j] = rand_ec(rng, 2, 2)
            x = FiniteLieElement(mx.from_rows(rows), "sl")
            if not x.is_zero():
                terms[d] = x
    return laurent_loop(terms, tag="sl", n=n)


def rand_word(
    rng: random.Random,
    n: int = 2,
    max_len: int = 3,
    rotations: bool = False,
):
    """Random loop-group word mixing all three generator kinds."""
    from .group_action import (
        ROTATIONS,
        ExpNilpotent,
        TorusCocharacter,
        constant_factor,
        word,
    )

    factors = []
    for _ in range(rng.randint(1, max_len)):
        kind = rng.randint(0, 2)
        if kind == 0:
            payload = rand_nilpotent_loop(rng, n)
            if payload.is_zero():
                continue
            factors.append(ExpNilpotent(payload))
        elif kind == 1:
            ks = [rng.randint(-2, 2) for _ in range(n - 1)]
            ks.append(-sum(ks))
            factors.append(TorusCocharacter(tuple(ks)))
        else:
            rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            a, b = rng.randint(0, n - 1), rng.randint(0, n - 1)
            if a != b:
                rows[a][b] = rng.randint(-2, 2)
            factors.append(constant_factor(rows))
    rot = rng.choice(ROTATIONS) if rotations else EC(1)
    return word(factors, rotation=rot, n=n)
