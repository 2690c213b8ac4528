"""Laurent-polynomial loops with values in a tagged base algebra.

A loop is a finite formal sum f(z) = sum_n f_n z^n with matrix
coefficients.  The module provides the pointwise bracket, the rotation
derivative (delta f)_n = n f_n, the averaged invariant pairing

    A(f, g) = sum_n <f_n, g_{-n}>,

and the central 2-cocycle

    omega(f, g) = sum_n n <f_n, g_{-n}> = A(delta f, g),

where <.,.> is the base algebra's invariant pairing.  On the compact
real form (coefficients satisfying f_{-n} = -conj(f_n)^T) the averaged
pairing is negative definite and omega takes purely imaginary values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from . import _matrix as mx
from .base_lie import (
    DiagramAutomorphism,
    FiniteLieElement,
    apply_diagram_automorphism,
    bracket,
    invariant_form,
    zero_element,
)
from .errors import SizeMismatch, TagMismatch, UnsupportedOrder
from .scalars import EC, ZERO, ExactComplex


@dataclass(frozen=True)
class LaurentLoop:
    """Finitely-supported Laurent series with FiniteLieElement coefficients.

    ``terms`` is sorted by degree and contains no zero coefficients;
    ``tag``/``n`` identify the base algebra even for the zero loop.
    """

    terms: tuple
    tag: str
    n: int

    @property
    def support(self) -> tuple:
        return tuple(d for d, _ in self.terms)

    def coeff(self, deg: int) -> FiniteLieElement:
        for d, x in self.terms:
            if d == deg:
                return x
        return zero_element(self.n, self.tag)

    def coeffs(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LaurentLoop") -> "LaurentLoop":
        _check_loops(self, other)
        acc = dict(self.terms)
        for d, x in other.terms:
            acc[d] = acc[d] + x if d in acc else x
        return laurent_loop(acc, tag=self.tag, n=self.n)

    def __sub__(self, other: "LaurentLoop") -> "LaurentLoop":
        return self + (-other)

    def __neg__(self) -> "LaurentLoop":
        return LaurentLoop(tuple((d, -x) for d, x in self.terms), self.tag, self.n)

    def scale(self, s) -> "LaurentLoop":
        s = mx.coerce_entry(s)
        if s.is_zero():
            return zero_loop(self.n, self.tag)
        return LaurentLoop(
            tuple((d, x.scale(s)) for d, x in self.terms), self.tag, self.n
        )


def laurent_loop(
    coeffs: Union[Mapping, Iterable],
    tag: Optional[str] = None,
    n: Optional[int] = None,
) -> LaurentLoop:
    """Build a loop from {degree: element} (zero coefficients dropped)."""
    if isinstance(coeffs, Mapping):
        items = list(coeffs.items())
    else:
        items = list(coeffs)
    kept = []
    for d, x in items:
        if tag is None:
            tag, n = x.tag, x.n
        elif x.tag != tag:
            raise TagMismatch(f"{x.tag!r} vs {tag!r}")
        elif x.n != n:
            raise SizeMismatch(f"{x.n} vs {n}")
        if not x.is_zero():
            kept.append((int(d), x))
    if tag is None:
        raise ValueError("empty loop needs explicit tag and size")
    kept.sort(key=lambda t: t[0])
    if len({d for d, _ in kept}) != len(kept):
        raise ValueError("duplicate degrees")
    return LaurentLoop(tuple(kept), tag, n)


def monomial(x: FiniteLieElement, deg: int) -> LaurentLoop:
    return laurent_loop({deg: x}, tag=x.tag, n=x.n)


def zero_loop(n: int, tag: str = "sl") -> LaurentLoop:
    return LaurentLoop((), tag, n)


def _check_loops(f: LaurentLoop, g: LaurentLoop) -> None:
    if f.tag != g.tag:
        raise TagMismatch(f"{f.tag!r} vs {g.tag!r}")
    if f.n != g.n:
        raise SizeMismatch(f"{f.n} vs {g.n}")


# ---------------------------------------------------------------------------
# bracket, derivative, pairings
# ---------------------------------------------------------------------------


def loop_bracket(f: LaurentLoop, g: LaurentLoop) -> LaurentLoop:
    """Pointwise bracket: [f, g](z) = [f(z), g(z)], degreewise convolution."""
    _check_loops(f, g)
    acc = {}
    for d1, x in f.terms:
        for d2, y in g.terms:
            b = bracket(x, y)
            if b.is_zero():
                continue
            d = d1 + d2
            acc[d] = acc[d] + b if d in acc else b
    return laurent_loop(acc, tag=f.tag, n=f.n)


def loop_derivative(f: LaurentLoop) -> LaurentLoop:
    """Rotation derivative delta = z d/dz: scales degree-n term by n."""
    return laurent_loop(
        {d: x.scale(d) for d, x in f.terms}, tag=f.tag, n=f.n
    )


def averaged_killing(f: LaurentLoop, g: LaurentLoop) -> ExactComplex:
    """A(f, g) = sum_n <f_n, g_{-n}>; negative definite on the compact form."""
    _check_loops(f, g)
    gc = g.coeffs()
    t = ZERO
    for d, x in f.terms:
        y = gc.get(-d)
        if y is not None:
            t = t + invariant_form(x, y)
    return t


def cocycle(f: LaurentLoop, g: LaurentLoop) -> ExactComplex:
    """Central 2-cocycle omega(f, g) = sum_n n <f_n, g_{-n}>.

    Equals A(delta f, g); the orientation is fixed so that the affine
    generator bracket [e_0, f_0] produces +1 on the central line.
    """
    _check_loops(f, g)
    gc = g.coeffs()
    t = ZERO
    for d, x in f.terms:
        y = gc.get(-d)
        if y is not None and d != 0:
            t = t + invariant_form(x, y).scale(d)
    return t


# ---------------------------------------------------------------------------
# reality and twist conditions
# ---------------------------------------------------------------------------


def reality_check(f: LaurentLoop) -> bool:
    """Compact reality condition f_{-n} = -conj(f_n)^T for all n.

    Equivalent to f(z) lying in the compact real form (anti-Hermitian
    matrices) for every |z| = 1.
    """
    cs = f.coeffs()
    for d, x in f.terms:
        other = cs.get(-d)
        rhs = mx.neg(mx.conj_transpose(x.entries))
        if other is None:
            if not mx.is_zero(rhs):
                return False
        elif not mx.eq(other.entries, rhs):
            return False
    return True


def twist_check(f: LaurentLoop, sigma: DiagramAutomorphism) -> bool:
    """Twisted-loop condition sigma(f_n) = omega^n f_n, omega = (-1) for order 2."""
    if sigma.order == 1:
        return True
    if sigma.order != 2:
        raise UnsupportedOrder("only twist orders 1 and 2 are implemented")
    for d, x in f.terms:
        expect = x if d % 2 == 0 else -x
        if apply_diagram_automorphism(sigma, x) != expect:
            return False
    return True
