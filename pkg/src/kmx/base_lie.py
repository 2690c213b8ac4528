"""Finite-dimensional base algebras: sl_n plus an abelian diagonal tag.

Elements are exact complex matrices carrying an algebra tag:

* ``"sl"``  -- traceless n x n matrices, bracket [X,Y] = XY - YX, and
  the invariant pairing tr(XY) (proportional to the Killing form);
* ``"ab"``  -- diagonal matrices with the zero bracket.  The Killing
  form of an abelian algebra vanishes, so the invariant pairing is
  identically zero even though tr(XY) is not.

The distinction matters downstream: the loop cocycle and the averaged
pairing are built from the invariant pairing, not from the raw trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import _matrix as mx
from .errors import SizeMismatch, TagMismatch, UnsupportedAlgebra, UnsupportedOrder
from .scalars import EC, ZERO, ExactComplex

TAGS = ("sl", "ab")


@dataclass(frozen=True)
class FiniteLieElement:
    """Square exact matrix in a tagged base algebra."""

    entries: tuple
    tag: str = "sl"

    @property
    def n(self) -> int:
        return len(self.entries)

    def __add__(self, other: "FiniteLieElement") -> "FiniteLieElement":
        _check_pair(self, other)
        return FiniteLieElement(mx.add(self.entries, other.entries), self.tag)

    def __sub__(self, other: "FiniteLieElement") -> "FiniteLieElement":
        _check_pair(self, other)
        return FiniteLieElement(mx.sub(self.entries, other.entries), self.tag)

    def __neg__(self) -> "FiniteLieElement":
        return FiniteLieElement(mx.neg(self.entries), self.tag)

    def scale(self, s) -> "FiniteLieElement":
        return FiniteLieElement(mx.scale(self.entries, mx.coerce_entry(s)), self.tag)

    def is_zero(self) -> bool:
        return mx.is_zero(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteLieElement):
            return NotImplemented
        return self.tag == other.tag and mx.eq(self.entries, other.entries)

    def __hash__(self):
        return hash((self.entries, self.tag))


def finite_element(rows, tag: str = "sl") -> FiniteLieElement:
    """Validate and build an element: sl needs trace 0, ab needs diagonal."""
    entries = mx.from_rows(rows)
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise SizeMismatch("matrix must be square")
    if tag == "sl":
        if not mx.trace(entries).is_zero():
            raise ValueError("sl elements must be traceless")
    elif tag == "ab":
        for i in range(n):
            for j in range(n):
                if i != j and not entries[i][j].is_zero():
                    raise ValueError("ab elements must be diagonal")
    else:
        raise UnsupportedAlgebra(f"unknown tag {tag!r}")
    return FiniteLieElement(entries, tag)


def zero_element(n: int, tag: str = "sl") -> FiniteLieElement:
    return FiniteLieElement(mx.zero(n), tag)


def _check_pair(x: FiniteLieElement, y: FiniteLieElement) -> None:
    if x.tag != y.tag:
        raise TagMismatch(f"{x.tag!r} vs {y.tag!r}")
    if x.n != y.n:
        raise SizeMismatch(f"{x.n} vs {y.n}")


# ---------------------------------------------------------------------------
# bracket and forms
# ---------------------------------------------------------------------------


def bracket(x: FiniteLieElement, y: FiniteLieElement) -> FiniteLieElement:
    """[x, y] = xy - yx."""
    _check_pair(x, y)
    m = mx.sub(mx.mul(x.entries, y.entries), mx.mul(y.entries, x.entries))
    return FiniteLieElement(m, x.tag)


def trace_form(x: FiniteLieElement, y: FiniteLieElement) -> ExactComplex:
    """tr(xy); symmetric and ad-invariant."""
    _check_pair(x, y)
    t = ZERO
    for i in range(x.n):
        for k in range(x.n):
            a, b = x.entries[i][k], y.entries[k][i]
            if not (a.is_zero() or b.is_zero()):
                t = t + a * b
    return t


def invariant_form(x: FiniteLieElement, y: FiniteLieElement) -> ExactComplex:
    """The invariant pairing used by loop constructions.

    For sl this is tr(xy).  For the abelian tag the Killing form is
    identically zero, and every central extension or averaged pairing
    built from it must vanish as well.
    """
    _check_pair(x, y)
    if x.tag == "ab":
        return ZERO
    return trace_form(x, y)


def compact_reality_check(x: FiniteLieElement) -> bool:
    """x belongs to the compact real form: x + conj(x)^T = 0."""
    return mx.is_zero(mx.add(x.entries, mx.conj_transpose(x.entries)))


# ---------------------------------------------------------------------------
# Chevalley generators of sl_{n+1}
# ---------------------------------------------------------------------------


class ChevalleyTriple(NamedTuple):
    e: FiniteLieElement
    f: FiniteLieElement
    h: FiniteLieElement


def chevalley_generators(n: int) -> list:
    """Simple-root triples (e_i, f_i, h_i), i = 1..n, of sl_{n+1}."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    size = n + 1
    out = []
    for i in range(n):
        e = FiniteLieElement(mx.unit(size, i, i + 1), "sl")
        f = FiniteLieElement(mx.unit(size, i + 1, i), "sl")
        h = FiniteLieElement(
            mx.sub(mx.unit(size, i, i), mx.unit(size, i + 1, i + 1)), "sl"
        )
        out.append(ChevalleyTriple(e, f, h))
    return out


# ---------------------------------------------------------------------------
# diagram automorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiagramAutomorphism:
    """Order-1 or order-2 outer automorphism data for sl_n."""

    order: int
    j_matrix: tuple


def diagram_automorphism(order: int, n: int) -> DiagramAutomorphism:
    """The standard diagram automorphism of sl_n of the given order.

    Order 1 is the identity; order 2 is X -> -J X^T J^{-1} with J the
    antidiagonal unit matrix.  sl_n has no order-3 diagram symmetry.
    """
    if order == 1:
        return DiagramAutomorphism(1, mx.identity(n))
    if order == 2:
        j = tuple(
            tuple(EC(1) if i + j == n - 1 else ZERO for j in range(n))
            for i in range(n)
        )
        return DiagramAutomorphism(2, j)
    if order == 3:
        raise UnsupportedOrder("order-3 diagram symmetry requires type D4")
    raise UnsupportedOrder(f"order must be 1, 2, or 3, got {order}")


def apply_diagram_automorphism(
    sigma: DiagramAutomorphism, x: FiniteLieElement
) -> FiniteLieElement:
    if x.tag != "sl":
        raise UnsupportedAlgebra("diagram automorphisms act on sl only")
    if len(sigma.j_matrix) != x.n:
        raise SizeMismatch("automorphism built for a different size")
    if sigma.order == 1:
        return x
    j = sigma.j_matrix
    m = mx.neg(mx.mul(mx.mul(j, mx.transpose(x.entries)), mx.inverse(j)))
    return FiniteLieElement(m, "sl")
