"""The double extension: loops + central line + rotation derivation.

Elements are triples x = (f, r_c, r_d) written f + r_c c + r_d d.  The
bracket extends the loop bracket by the central cocycle and the action
of d as the rotation derivative delta:

    [x, y] = ([f, g] + x_d delta(g) - y_d delta(f))
             + omega(f, g) c + 0 d.

The invariant Lorentz form pairs c against d with <c, d> = -1, both
null, and restricts to minus the averaged pairing on loops, which makes
it positive definite on the compact loop directions (index 1 overall).

Second-kind involutions invert the loop argument and flip the signs of
both c and d; first-kind involutions fix the argument and fix c, d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional

from . import _matrix as mx
from .base_lie import (
    DiagramAutomorphism,
    FiniteLieElement,
    apply_diagram_automorphism,
    diagram_automorphism,
)
from .cartan import GeneralizedCartanMatrix, NamedType, match_named, parse_name
from .errors import IllegalSpec, NotInvolutive, UnsupportedType
from .loop_algebra import (
    LaurentLoop,
    averaged_killing,
    cocycle,
    laurent_loop,
    loop_bracket,
    loop_derivative,
    monomial,
    zero_loop,
)
from .scalars import EC, ONE, ZERO, ExactComplex

HALF = EC(Fraction(1, 2))


@dataclass(frozen=True)
class KacMoodyElement:
    """f + r_c c + r_d d with exact scalar coordinates."""

    loop: LaurentLoop
    r_c: ExactComplex
    r_d: ExactComplex

    def __add__(self, other: "KacMoodyElement") -> "KacMoodyElement":
        return KacMoodyElement(
            self.loop + other.loop, self.r_c + other.r_c, self.r_d + other.r_d
        )

    def __sub__(self, other: "KacMoodyElement") -> "KacMoodyElement":
        return KacMoodyElement(
            self.loop - other.loop, self.r_c - other.r_c, self.r_d - other.r_d
        )

    def __neg__(self) -> "KacMoodyElement":
        return KacMoodyElement(-self.loop, -self.r_c, -self.r_d)

    def scale(self, s) -> "KacMoodyElement":
        s = mx.coerce_entry(s)
        return KacMoodyElement(self.loop.scale(s), self.r_c * s, self.r_d * s)

    def is_zero(self) -> bool:
        return self.loop.is_zero() and self.r_c.is_zero() and self.r_d.is_zero()


def km_element(loop: LaurentLoop, r_c=0, r_d=0) -> KacMoodyElement:
    return KacMoodyElement(loop, mx.coerce_entry(r_c), mx.coerce_entry(r_d))


def from_loop(loop: LaurentLoop) -> KacMoodyElement:
    return km_element(loop)


def c_element(n: int = 2, tag: str = "sl") -> KacMoodyElement:
    return km_element(zero_loop(n, tag), r_c=1)


def d_element(n: int = 2, tag: str = "sl") -> KacMoodyElement:
    return km_element(zero_loop(n, tag), r_d=1)


# ---------------------------------------------------------------------------
# bracket and invariant form
# ---------------------------------------------------------------------------


def km_bracket(x: KacMoodyElement, y: KacMoodyElement) -> KacMoodyElement:
    """Bracket of the double extension; the d-coordinate of any bracket is 0."""
    lp = loop_bracket(x.loop, y.loop)
    if not x.r_d.is_zero():
        lp = lp + loop_derivative(y.loop).scale(x.r_d)
    if not y.r_d.is_zero():
        lp = lp - loop_derivative(x.loop).scale(y.r_d)
    return KacMoodyElement(lp, cocycle(x.loop, y.loop), ZERO)


def lorentz_form(x: KacMoodyElement, y: KacMoodyElement) -> ExactComplex:
    """Ad-invariant scalar product of signature index 1.

    <x, y> = -A(f, g) - x_c y_d - x_d y_c.  The loop term is minus the
    averaged pairing, hence positive definite on compact loops; c and d
    are null with <c, d> = -1.
    """
    t = -averaged_killing(x.loop, y.loop)
    t = t - x.r_c * y.r_d - x.r_d * y.r_c
    return t


# ---------------------------------------------------------------------------
# affine generators and Serre-type relations
# ---------------------------------------------------------------------------


class KMTriple(NamedTuple):
    e: KacMoodyElement
    f: KacMoodyElement
    h: KacMoodyElement


def _resolve_untwisted_a(spec) -> int:
    if isinstance(spec, str):
        spec = parse_name(spec)
    if isinstance(spec, GeneralizedCartanMatrix):
        named = match_named(spec)
        if named is None:
            raise UnsupportedType("matrix is not a named untwisted A-type table")
        spec = named
    if isinstance(spec, NamedType):
        if spec.family != "A~" or spec.twist_order != 1:
            raise UnsupportedType(
                "generator construction is implemented for untwisted A~n only"
            )
        return spec.rank
    raise UnsupportedType(f"cannot interpret {spec!r}")


def affine_generators(spec) -> List[KMTriple]:
    """Loop-realization Chevalley generators for untwisted type A~n.

    Index 0 is the affine triple: e_0 carries the lowest-root matrix at
    degree +1, f_0 the highest-root matrix at degree -1, and
    h_0 = c - H_theta.  Indices 1..n are the finite triples at degree 0.
    """
    n = _resolve_untwisted_a(spec)
    size = n + 1
    out = []
    e0 = km_element(monomial(FiniteLieElement(mx.unit(size, size - 1, 0), "sl"), 1))
    f0 = km_element(monomial(FiniteLieElement(mx.unit(size, 0, size - 1), "sl"), -1))
    h_theta = mx.sub(mx.unit(size, 0, 0), mx.unit(size, size - 1, size - 1))
    h0 = km_element(
        monomial(FiniteLieElement(mx.neg(h_theta), "sl"), 0), r_c=1
    )
    out.append(KMTriple(e0, f0, h0))
    for i in range(n):
        e = km_element(monomial(FiniteLieElement(mx.unit(size, i, i + 1), "sl"), 0))
        f = km_element(monomial(FiniteLieElement(mx.unit(size, i + 1, i), "sl"), 0))
        h = km_element(
            monomial(
                FiniteLieElement(
                    mx.sub(mx.unit(size, i, i), mx.unit(size, i + 1, i + 1)), "sl"
                ),
                0,
            )
        )
        out.append(KMTriple(e, f, h))
    return out


def serre_check(generators: List[KMTriple], A: GeneralizedCartanMatrix) -> list:
    """Evaluate (ad e_i)^{1-a_ji}(e_j) and the f-counterparts for i != j.

    Returns one report entry per pair and side; ``is_zero`` records
    whether the iterated bracket vanished (it must, for a realization).
    """
    report = []
    n = len(generators)
    if A.n != n:
        raise UnsupportedType("generator count does not match matrix size")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            power = 1 - A[j, i]
            for rel, pick in (("e", lambda t: t.e), ("f", lambda t: t.f)):
                acc = pick(generators[j])
                for _ in range(power):
                    acc = km_bracket(pick(generators[i]), acc)
                report.append(
                    {
                        "relation": rel,
                        "i": i,
                        "j": j,
                        "power": power,
                        "is_zero": acc.is_zero(),
                    }
                )
    return report


# ---------------------------------------------------------------------------
# involutions of the first and second kind
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionSpec:
    """Standard-form involution data.

    ``kind`` is "first" (argument fixed, c and d fixed) or "second"
    (argument inverted, c and d flipped).  ``phi0`` acts on matrix
    coefficients; ``conjugate`` marks a conjugate-linear map.  The sign
    on c and d is forced by the kind, and the kind is forced by whether
    the argument is inverted -- anything else fails to respect the
    cocycle and is rejected as IllegalSpec.
    """

    kind: str
    phi0: DiagramAutomorphism
    conjugate: bool
    invert: bool

    @property
    def eps_c(self) -> int:
        return -1 if self.kind == "second" else 1

    @property
    def eps_d(self) -> int:
        return -1 if self.kind == "second" else 1


def involution_spec(
    kind: str,
    n: int,
    phi0_order: int = 1,
    conjugate: bool = False,
    invert: Optional[bool] = None,
) -> InvolutionSpec:
    if kind not in ("first", "second"):
        raise IllegalSpec(f"kind must be 'first' or 'second', got {kind!r}")
    if invert is None:
        invert = kind == "second"
    if invert != (kind == "second"):
        # argument inversion negates the cocycle and the derivative,
        # so it must come with eps_c = eps_d = -1 and vice versa
        raise IllegalSpec("second kind <=> inverted loop argument")
    return InvolutionSpec(
        kind=kind,
        phi0=diagram_automorphism(phi0_order, n),
        conjugate=conjugate,
        invert=invert,
    )


def _conj_element(x: FiniteLieElement) -> FiniteLieElement:
    return FiniteLieElement(mx.conjugate(x.entries), x.tag)


def apply_involution(spec: InvolutionSpec, x: KacMoodyElement) -> KacMoodyElement:
    """Apply the involution; conjugate-linear when spec.conjugate is set."""
    s = -1 if spec.invert else 1
    terms = {}
    for d, coeff in x.loop.terms:
        if spec.conjugate:
            coeff = _conj_element(coeff)
        if spec.phi0.order != 1 and coeff.tag == "sl":
            coeff = apply_diagram_automorphism(spec.phi0, coeff)
        terms[s * d] = coeff
    lp = laurent_loop(terms, tag=x.loop.tag, n=x.loop.n)
    rc, rd = x.r_c, x.r_d
    if spec.conjugate:
        rc, rd = rc.conj(), rd.conj()
    return KacMoodyElement(lp, rc.scale(spec.eps_c), rd.scale(spec.eps_d))


def eigenspace_split(spec: InvolutionSpec, basis: List[KacMoodyElement]):
    """Split a basis into (+1, -1) eigen-lists via the projectors (1 +- rho)/2.

    Raises NotInvolutive if rho fails to square to the identity on any
    basis vector.
    """
    fixed, flipped = [], []
    for b in basis:
        rb = apply_involution(spec, b)
        if not (apply_involution(spec, rb) - b).is_zero():
            raise NotInvolutive("rho^2 != id on the given span")
        k = (b + rb).scale(HALF)
        p = (b - rb).scale(HALF)
        if not k.is_zero():
            fixed.append(k)
        if not p.is_zero():
            flipped.append(p)
    return fixed, flipped
