"""Curvature, duality, sign-type classification, and the rank-one slice.

Everything here is exact except nothing: these are algebraic identities
evaluated over Gaussian rationals.  The classification routines work on
finite sampled bases, so "definite" always means definite on the sampled
Gram matrix; that is a desk-scale check, not a proof about the completed
algebra.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .base_lie import finite_element
from .errors import BothNull, Dependent, EmptySlice, NotInSpan, Unclassifiable
from .kac_moody import (
    KacMoodyElement,
    c_element,
    d_element,
    km_bracket,
    km_element,
    lorentz_form,
)
from .loop_algebra import LaurentLoop, averaged_killing, monomial, zero_loop
from .scalars import EC, ExactComplex, rational_sqrt

QUARTER = EC(Fraction(1, 4))


def curvature(
    g: KacMoodyElement, h: KacMoodyElement, k: KacMoodyElement
) -> KacMoodyElement:
    """R{g,h,k} = (1/4)[[g,h],k]."""
    return km_bracket(km_bracket(g, h), k).scale(QUARTER)


# ---------------------------------------------------------------------------
# sectional curvature, including degenerate planes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionalResult:
    value: ExactComplex
    kind: str  # "Definite" or "Degenerate"


def _coordinates(x: KacMoodyElement, degrees: Sequence[int]) -> list:
    out = []
    for deg in degrees:
        for row in x.loop.coeff(deg).entries:
            out.extend(row)
    out.append(x.r_c)
    out.append(x.r_d)
    return out


def _proportional(g: KacMoodyElement, h: KacMoodyElement) -> bool:
    if g.is_zero() or h.is_zero():
        return True
    degrees = sorted(set(g.loop.support) | set(h.loop.support))
    cg, ch = _coordinates(g, degrees), _coordinates(h, degrees)
    ratio = None
    for a, b in zip(cg, ch):
        if a.is_zero() and b.is_zero():
            continue
        if a.is_zero() or b.is_zero():
            return False
        r = b / a
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


def sectional(g: KacMoodyElement, h: KacMoodyElement) -> SectionalResult:
    """Sectional curvature of the plane spanned by g, h.

    Non-degenerate planes divide by the Gram determinant.  On a degenerate
    plane the value is taken against a null basis vector paired with the
    non-null one; if neither spanning vector is null, the plane is re-based
    so that the first vector becomes null (possible exactly because the
    Gram determinant vanishes).
    """
    if _proportional(g, h):
        raise Dependent("plane needs linearly independent vectors")
    gg, hh, gh = lorentz_form(g, g), lorentz_form(h, h), lorentz_form(g, h)
    area = gg * hh - gh * gh
    if not area.is_zero():
        numer = lorentz_form(curvature(g, h, g), h)
        return SectionalResult(numer / area, "Definite")
    g_null, h_null = gg.is_zero(), hh.is_zero()
    if g_null and h_null:
        raise BothNull("degenerate plane spanned by two null vectors")
    if not g_null and not h_null:
        g = g - h.scale(gh / hh)  # in-plane null vector; norm is area/hh = 0
    elif not g_null:
        g, h = h, g
        hh = lorentz_form(h, h)
    numer = lorentz_form(curvature(g, h, g), h)
    return SectionalResult(numer / hh, "Degenerate")


# ---------------------------------------------------------------------------
# curvature identity report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurvatureReport:
    bianchi_ok: bool
    symmetry_ok: tuple
    sign_samples: tuple
    estimate_ok: bool


def _classify_sign(v: ExactComplex) -> str:
    if not v.is_real():
        return "nonreal"
    if v.is_zero():
        return "zero"
    return "positive" if v.re > 0 else "negative"


def curvature_report(samples: Sequence[Tuple]) -> CurvatureReport:
    """Check the first Bianchi identity and pairing symmetries on samples.

    Each sample is a triple (g, h, k); the pairing symmetries are evaluated
    against g as the fourth slot.  sign_samples records the unnormalized
    plane curvature <R{g,h,g}, h> together with its sign, and estimate_ok
    asserts the invariance identity <R{g,h,g},h> = (1/4)<[g,h],[g,h]> that
    turns the sign into the compact/non-compact estimate.
    """
    bianchi = True
    sym = [True, True, True]
    signs = []
    estimate = True
    for g, h, k in samples:
        cyc = curvature(g, h, k) + curvature(h, k, g) + curvature(k, g, h)
        bianchi = bianchi and cyc.is_zero()
        sym[0] = sym[0] and (curvature(g, h, k) + curvature(h, g, k)).is_zero()
        lhs = lorentz_form(curvature(g, h, k), g)
        sym[1] = sym[1] and (lhs + lorentz_form(curvature(g, h, g), k)).is_zero()
        sym[2] = sym[2] and lhs == lorentz_form(curvature(k, g, g), h)
        plane = lorentz_form(curvature(g, h, g), h)
        bracket = km_bracket(g, h)
        estimate = estimate and plane == lorentz_form(bracket, bracket) * QUARTER
        signs.append((plane, _classify_sign(plane)))
    return CurvatureReport(bianchi, tuple(sym), tuple(signs), estimate)


# ---------------------------------------------------------------------------
# duality between compact and non-compact forms
# ---------------------------------------------------------------------------

def _real_coordinates(x: KacMoodyElement, degrees: Sequence[int]) -> list:
    out = []
    for c in _coordinates(x, degrees):
        out.append(c.re)
        out.append(c.im)
    return out


def _solve_rational(columns: List[list], target: list) -> Optional[list]:
    """Solve sum_j x_j col_j = target over the rationals, or None."""
    rows = len(target)
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(rows)]
    pivots = []
    r = 0
    for col in range(k):
        pivot = next((i for i in range(r, rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = Fraction(1) / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][k] != 0:
            return None
    out = [Fraction(0)] * k
    for row_idx, col in enumerate(pivots):
        out[col] = aug[row_idx][k]
    return out


def _split_coefficients(
    x: KacMoodyElement, split: Tuple[Sequence, Sequence]
) -> Tuple[list, list]:
    k_basis, p_basis = split
    everything = list(k_basis) + list(p_basis) + [x]
    degrees = sorted({d for v in everything for d in v.loop.support})
    cols = [_real_coordinates(v, degrees) for v in list(k_basis) + list(p_basis)]
    coeffs = _solve_rational(cols, _real_coordinates(x, degrees))
    if coeffs is None:
        raise NotInSpan("element is not a rational combination of the split basis")
    return coeffs[: len(k_basis)], coeffs[len(k_basis):]


def dualize(
    x: KacMoodyElement, split: Tuple[Sequence, Sequence]
) -> KacMoodyElement:
    """Fix the K components of x and multiply the P components by i.

    Coefficients are solved for over the rationals: the split bases span
    real forms, so complex coefficients would make the decomposition
    ambiguous.
    """
    k_basis, p_basis = split
    k_coeffs, p_coeffs = _split_coefficients(x, split)
    if not k_basis and not p_basis:
        raise NotInSpan("empty split")
    n, tag = x.loop.n, x.loop.tag
    out = km_element(zero_loop(n, tag))
    for coeff, vec in zip(k_coeffs, k_basis):
        out = out + vec.scale(coeff)
    i1 = EC(0, 1)
    for coeff, vec in zip(p_coeffs, p_basis):
        out = out + vec.scale(i1 * EC(coeff))
    return out


# ---------------------------------------------------------------------------
# OSAKA sign types
# ---------------------------------------------------------------------------

class OsakaType(str, Enum):
    COMPACT = "CompactType"
    NONCOMPACT = "NonCompactType"
    EUCLIDEAN = "EuclideanType"


def _loop_gram(vectors: Sequence[KacMoodyElement]) -> list:
    return [
        [averaged_killing(a.loop, b.loop) for b in vectors] for a in vectors
    ]


def _real_gram(gram: list) -> Optional[list]:
    out = []
    for row in gram:
        if any(not e.is_real() for e in row):
            return None
        out.append([e.re for e in row])
    return out


def _inertia(gram: list) -> Tuple[int, int, int]:
    """Signature (positive, negative, zero) of a rational symmetric matrix."""
    m = [row[:] for row in gram]
    n = len(m)
    live = list(range(n))
    pos = neg = zero = 0
    while live:
        pivot = next((i for i in live if m[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in live for j in live if i != j and m[i][j] != 0),
                None,
            )
            if pair is None:
                zero += len(live)
                break
            i, j = pair
            # both diagonals vanish here, so e_i + e_j has square 2 m[i][j]
            for t in range(n):
                m[i][t] += m[j][t]
            for t in range(n):
                m[t][i] += m[t][j]
            pivot = i
        d = m[pivot][pivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(pivot)
        for i in live:
            if m[i][pivot] != 0:
                f = m[i][pivot] / d
                for t in range(n):
                    m[i][t] -= f * m[pivot][t]
                for t in range(n):
                    m[t][i] -= f * m[t][pivot]
    return pos, neg, zero


def osaka_classify(split: Tuple[Sequence, Sequence]) -> OsakaType:
    """Sign type of a split basis under the averaged invariant pairing.

    Euclidean: the pairing vanishes identically on the loop span.
    Compact: negative semidefinite, kernel exactly the central directions.
    Non-compact: negative semidefinite on K, positive semidefinite and
    nontrivial on P.  Anything else raises Unclassifiable.
    """
    k_basis, p_basis = [list(b) for b in split]
    everything = k_basis + p_basis
    if not everything:
        raise Unclassifiable("empty split")
    full = _loop_gram(everything)
    if all(e.is_zero() for row in full for e in row):
        return OsakaType.EUCLIDEAN
    central = sum(1 for v in everything if v.loop.is_zero())
    real_full = _real_gram(full)
    if real_full is not None:
        p_count, n_count, z_count = _inertia(real_full)
        if p_count == 0 and n_count > 0 and z_count == central:
            return OsakaType.COMPACT
    real_k = _real_gram(_loop_gram(k_basis)) if k_basis else []
    real_p = _real_gram(_loop_gram(p_basis)) if p_basis else []
    if real_k is not None and real_p is not None:
        kp, _, _ = _inertia(real_k) if real_k else (0, 0, 0)
        pp, pn, _ = _inertia(real_p) if real_p else (0, 0, 0)
        if kp == 0 and pn == 0 and pp > 0:
            return OsakaType.NONCOMPACT
    raise Unclassifiable("Gram matrix fits no sign pattern")


def hermitian_obstruction(n: int = 2, tag: str = "sl") -> ExactComplex:
    """Squared length of c + d: timelike, which rules out a compatible
    complex structure rotating it into anything spacelike."""
    x = c_element(n, tag) + d_element(n, tag)
    return lorentz_form(x, x)


# ---------------------------------------------------------------------------
# the extended Cartan slice of the rank-one compact form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CartanSlice:
    level: Fraction
    r_d: Fraction
    points: tuple  # (a, r_c, r_d) coordinate triples


def _ih_element():
    return finite_element([[EC(0, 1), 0], [0, EC(0, -1)]])


def slice_element(point: Tuple) -> KacMoodyElement:
    """Realize an (a, r_c, r_d) coordinate triple in the sl2 model."""
    a, r_c, r_d = (Fraction(t) for t in point)
    loop = monomial(_ih_element(), 0).scale(a) if a else zero_loop(2)
    return km_element(loop, EC(r_c), EC(r_d))


def cartan_slice(level, r_d, samples: int) -> CartanSlice:
    """Points x = a iH + r_c c + r_d d with <x, x> = level.

    With <iH, iH> = 2 the constraint reads 2a^2 - 2 r_c r_d = level; for
    r_d != 0 it is solved for r_c, one point per sampled a.  At r_d = 0 the
    slice degenerates into horizontal lines, which exist only when level/2
    is a rational square.
    """
    level, r_d = Fraction(level), Fraction(r_d)
    points = []
    if r_d != 0:
        for k in range(samples):
            a = Fraction(k - samples // 2, 2)
            r_c = (2 * a * a - level) / (2 * r_d)
            points.append((a, r_c, r_d))
    else:
        a = rational_sqrt(level / 2)
        if a is None:
            raise EmptySlice(f"no rational solution at level {level} with r_d = 0")
        for k in range(samples):
            points.append((a, Fraction(k - samples // 2, 2), Fraction(0)))
    return CartanSlice(level, r_d, tuple(points))


def reflect_slice_point(i: int, point: Tuple) -> Tuple:
    """Apply a simple reflection to the a-coordinate, staying on the slice."""
    from .group_action import weyl_reflect

    a, _, r_d = point
    if r_d == 0:
        raise EmptySlice("reflection parametrization needs r_d != 0")
    b = weyl_reflect(i, a)
    level = 2 * Fraction(a) ** 2 - 2 * Fraction(point[1]) * Fraction(r_d)
    r_c = (2 * b * b - level) / (2 * Fraction(r_d))
    return (b, r_c, Fraction(r_d))
