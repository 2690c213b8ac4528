"""Loop-group elements as generator words, with exact Adjoint and gauge actions.

Group elements are kept as words in three generator kinds (exponentials of
nilpotent loops, cocharacters of the diagonal torus, constant matrices)
together with a rotation of the loop parameter.  Words multiply and invert
symbolically, so logarithmic derivatives and the Adjoint action on the
double extension stay in exact arithmetic.  The only floating-point code
here is ``flat_solver``, which integrates a periodic Lax system.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

import numpy as np

from . import _matrix as mx
from .base_lie import FiniteLieElement, bracket, finite_element
from .errors import NonUnitaryDrift, NotNilpotent, SizeMismatch
from .kac_moody import HALF, KacMoodyElement, km_bracket, km_element
from .loop_algebra import (
    LaurentLoop,
    averaged_killing,
    laurent_loop,
    reality_check,
    zero_loop,
)
from .scalars import EC, ONE, ExactComplex

# rotations are restricted to the exactly representable fourth roots of unity
ROTATIONS = (EC(1), EC(-1), EC(0, 1), EC(0, -1))


# ---------------------------------------------------------------------------
# matrices over Laurent polynomials, represented degree-by-degree
# ---------------------------------------------------------------------------

def _lm_clean(a: dict) -> dict:
    return {d: m for d, m in a.items() if not mx.is_zero(m)}


def _lm_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for d, m in b.items():
        out[d] = mx.add(out[d], m) if d in out else m
    return _lm_clean(out)


def _lm_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for da, ma in a.items():
        for db, mb in b.items():
            d = da + db
            p = mx.mul(ma, mb)
            out[d] = mx.add(out[d], p) if d in out else p
    return _lm_clean(out)


def _lm_scale(a: dict, s: ExactComplex) -> dict:
    return _lm_clean({d: mx.scale(m, s) for d, m in a.items()})


def _lm_delta(a: dict) -> dict:
    """z d/dz applied entrywise."""
    return _lm_clean({d: mx.scale(m, EC(d)) for d, m in a.items()})


def _lm_identity(n: int) -> dict:
    return {0: mx.identity(n)}


def _lm_eq(a: dict, b: dict) -> bool:
    ka, kb = _lm_clean(a), _lm_clean(b)
    return set(ka) == set(kb) and all(mx.eq(ka[d], kb[d]) for d in ka)


def _loop_to_lm(f: LaurentLoop) -> dict:
    return {d: x.entries for d, x in f.terms}


def _lm_to_loop(a: dict, tag: str, n: int) -> LaurentLoop:
    return laurent_loop(
        {d: finite_element(m, tag) for d, m in a.items()}, tag=tag, n=n
    )


def _rot_power(w: ExactComplex, d: int) -> ExactComplex:
    out = ONE
    for _ in range(d % 4):
        out = out * w
    return out


def rotate_loop(w: ExactComplex, f: LaurentLoop) -> LaurentLoop:
    """(w . f)_n = w^n f_n, i.e. substitute z -> w z."""
    if w == ONE:
        return f
    return laurent_loop(
        {d: x.scale(_rot_power(w, d)) for d, x in f.terms}, tag=f.tag, n=f.n
    )


# ---------------------------------------------------------------------------
# generator factors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpNilpotent:
    """exp(N) for a loop N whose total matrix is nilpotent."""

    payload: LaurentLoop

    @property
    def n(self) -> int:
        return self.payload.n


@dataclass(frozen=True)
class TorusCocharacter:
    """diag(z^{k_1}, ..., z^{k_n}) with sum(k) = 0."""

    exponents: tuple

    def __post_init__(self):
        ks = tuple(int(k) for k in self.exponents)
        object.__setattr__(self, "exponents", ks)
        if sum(ks) != 0:
            raise ValueError("cocharacter exponents must sum to zero")

    @property
    def n(self) -> int:
        return len(self.exponents)


@dataclass(frozen=True)
class ConstantMatrix:
    """A constant invertible matrix."""

    entries: tuple

    @property
    def n(self) -> int:
        return len(self.entries)


Factor = Union[ExpNilpotent, TorusCocharacter, ConstantMatrix]


def constant_factor(rows) -> ConstantMatrix:
    g0 = mx.from_rows(rows)
    mx.inverse(g0)  # fail fast on singular input
    return ConstantMatrix(g0)


@dataclass(frozen=True)
class LoopGroupWord:
    factors: tuple
    rotation: ExactComplex
    n: int
    tag: str = "sl"


def word(
    factors: Sequence[Factor],
    rotation=1,
    n: Optional[int] = None,
    tag: str = "sl",
) -> LoopGroupWord:
    factors = tuple(factors)
    w = mx.coerce_entry(rotation)
    if w not in ROTATIONS:
        raise ValueError("rotation must be one of 1, -1, i, -i")
    for f in factors:
        if n is None:
            n = f.n
        elif f.n != n:
            raise SizeMismatch(f"{f.n} vs {n}")
    if n is None:
        raise ValueError("empty word needs an explicit size")
    return LoopGroupWord(factors, w, n, tag)


def identity_word(n: int, tag: str = "sl") -> LoopGroupWord:
    return word((), n=n, tag=tag)


def _factor_value(f: Factor) -> dict:
    if isinstance(f, ExpNilpotent):
        n = f.n
        m = _loop_to_lm(f.payload)
        power = _lm_identity(n)
        total = _lm_identity(n)
        fact = 1
        for j in range(1, n):
            power = _lm_mul(power, m)
            fact *= j
            total = _lm_add(total, _lm_scale(power, EC(Fraction(1, fact))))
        if _lm_mul(power, m):
            raise NotNilpotent(f"matrix power {n} is nonzero")
        return total
    if isinstance(f, TorusCocharacter):
        out: dict = {}
        for i, k in enumerate(f.exponents):
            u = mx.unit(f.n, i, i)
            out[k] = mx.add(out[k], u) if k in out else u
        return out
    return {0: f.entries}


def _factor_inverse(f: Factor) -> Factor:
    if isinstance(f, ExpNilpotent):
        return ExpNilpotent(-f.payload)
    if isinstance(f, TorusCocharacter):
        return TorusCocharacter(tuple(-k for k in f.exponents))
    return ConstantMatrix(mx.inverse(f.entries))


def _rotate_factor(w: ExactComplex, f: Factor) -> List[Factor]:
    """Substitute z -> w z inside a single generator."""
    if w == ONE:
        return [f]
    if isinstance(f, ExpNilpotent):
        return [ExpNilpotent(rotate_loop(w, f.payload))]
    if isinstance(f, TorusCocharacter):
        rows = [
            [
                _rot_power(w, f.exponents[i]) if i == j else EC(0)
                for j in range(f.n)
            ]
            for i in range(f.n)
        ]
        return [ConstantMatrix(mx.from_rows(rows)), f]
    return [f]


def evaluate(g: LoopGroupWord) -> dict:
    """The word's matrix, as {degree: coefficient matrix}.

    The rotation is not part of the matrix; it acts on algebra elements
    separately inside ``adjoint``.
    """
    total = _lm_identity(g.n)
    for f in g.factors:
        total = _lm_mul(total, _factor_value(f))
    return total


def _evaluate_inverse(g: LoopGroupWord) -> dict:
    total = _lm_identity(g.n)
    for f in reversed(g.factors):
        total = _lm_mul(total, _factor_value(_factor_inverse(f)))
    return total


def word_mul(a: LoopGroupWord, b: LoopGroupWord) -> LoopGroupWord:
    if a.n != b.n:
        raise SizeMismatch(f"{a.n} vs {b.n}")
    rotated: List[Factor] = []
    for f in b.factors:
        rotated.extend(_rotate_factor(a.rotation, f))
    return LoopGroupWord(
        a.factors + tuple(rotated), a.rotation * b.rotation, a.n, a.tag
    )


def word_inverse(a: LoopGroupWord) -> LoopGroupWord:
    winv = a.rotation.conj()  # fourth roots of unity: conjugate = inverse
    out: List[Factor] = []
    for f in reversed(a.factors):
        out.extend(_rotate_factor(winv, _factor_inverse(f)))
    return LoopGroupWord(tuple(out), winv, a.n, a.tag)


# ---------------------------------------------------------------------------
# logarithmic derivative and the two actions
# ---------------------------------------------------------------------------

def log_derivative(g: LoopGroupWord) -> LaurentLoop:
    """The left logarithmic derivative (delta g) g^{-1}."""
    val = evaluate(g)
    q = _lm_mul(_lm_delta(val), _evaluate_inverse(g))
    return _lm_to_loop(q, g.tag, g.n)


def adjoint(g: LoopGroupWord, x: KacMoodyElement) -> KacMoodyElement:
    """Adjoint action of a word on the double extension.

    The central coordinate picks up the pairing of the conjugated loop with
    the logarithmic derivative; the coefficients are the unique ones making
    this a group action by isometries of the invariant metric.
    """
    ru = rotate_loop(g.rotation, x.loop)
    val = evaluate(g)
    inv = _evaluate_inverse(g)
    v = _lm_to_loop(_lm_mul(_lm_mul(val, _loop_to_lm(ru)), inv), x.loop.tag, g.n)
    q = _lm_to_loop(_lm_mul(_lm_delta(val), inv), x.loop.tag, g.n)
    new_loop = v - q.scale(x.r_d)
    new_c = x.r_c + averaged_killing(v, q) - x.r_d * HALF * averaged_killing(q, q)
    return KacMoodyElement(new_loop, new_c, x.r_d)


def gauge_action(g: LoopGroupWord, u: LaurentLoop) -> LaurentLoop:
    """g u g^{-1} - (delta g) g^{-1}, the action on connection coefficients."""
    if g.rotation != ONE:
        raise ValueError("gauge action is defined for rotation 1 only")
    val = evaluate(g)
    inv = _evaluate_inverse(g)
    conj = _lm_mul(_lm_mul(val, _loop_to_lm(u)), inv)
    q = _lm_mul(_lm_delta(val), inv)
    out = _lm_add(conj, _lm_scale(q, EC(-1)))
    return _lm_to_loop(out, u.tag, u.n)


def ad_exp_check(n_loop: LaurentLoop, x: KacMoodyElement) -> bool:
    """Does Ad(exp N) agree with the exponential of ad(N)?

    Both sides terminate: the word side because N is nilpotent, the series
    side because ad(N) eventually lands in the center and then dies.
    """
    g = word((ExpNilpotent(n_loop),))
    lhs = adjoint(g, x)
    nhat = km_element(n_loop)
    rhs = x
    term = x
    fact = 1
    for k in range(1, 4 * n_loop.n + 4):
        term = km_bracket(nhat, term)
        if term.is_zero():
            break
        fact *= k
        rhs = rhs + term.scale(Fraction(1, fact))
    else:
        raise NotNilpotent("ad-series did not terminate")
    return (lhs - rhs).is_zero()


# ---------------------------------------------------------------------------
# numeric flats: monodromy kernel of a periodic Lax system
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonodromyResult:
    kernel_dim: int
    kernel_basis: tuple
    residual: float
    commutator_defect: float


def _su_basis_exact(n: int) -> List:
    """Orthogonal basis of su(n); every vector has squared norm 2."""
    i1 = EC(0, 1)
    out = []
    for j in range(n - 1):
        m = mx.sub(mx.unit(n, j, j), mx.unit(n, j + 1, j + 1))
        out.append(mx.scale(m, i1))
    for j in range(n):
        for k in range(j + 1, n):
            out.append(mx.sub(mx.unit(n, j, k), mx.unit(n, k, j)))
            out.append(mx.scale(mx.add(mx.unit(n, j, k), mx.unit(n, k, j)), i1))
    return out


def _mat_to_numpy(m) -> np.ndarray:
    return np.array([[complex(e) for e in row] for row in m], dtype=complex)


def flat_solver(
    u: LaurentLoop, steps: int = 4096, tol: float = 1e-8
) -> MonodromyResult:
    """Kernel of (Ad(monodromy) - 1) for the system phi' = u(e^{it}) phi.

    Fixed-step fourth-order integration over one period; the monodromy is
    expressed as a real-linear operator on the compact form and its near-
    fixed space extracted by singular-value thresholding.  Kernel vectors
    are the candidate flat directions; their pairwise commutator defect is
    reported rather than enforced because the kernel of a non-generic
    coefficient (u = 0 being the extreme case) need not be abelian.
    """
    if not reality_check(u):
        raise ValueError("flat_solver expects a loop satisfying the reality condition")
    n = u.n
    coeffs = [(d, _mat_to_numpy(x.entries)) for d, x in u.terms]

    h = 2 * np.pi / steps
    grid = np.arange(2 * steps + 1) * (h / 2)
    uvals = np.zeros((len(grid), n, n), dtype=complex)
    for d, m in coeffs:
        uvals += np.exp(1j * d * grid)[:, None, None] * m

    phi = np.eye(n, dtype=complex)
    for j in range(steps):
        u0, um, u1 = uvals[2 * j], uvals[2 * j + 1], uvals[2 * j + 2]
        k1 = u0 @ phi
        k2 = um @ (phi + 0.5 * h * k1)
        k3 = um @ (phi + 0.5 * h * k2)
        k4 = u1 @ (phi + h * k3)
        phi = phi + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)

    drift = np.linalg.norm(phi.conj().T @ phi - np.eye(n))
    if drift > 100 * tol:
        raise NonUnitaryDrift(f"monodromy unitarity defect {drift:.3e}")

    basis_exact = _su_basis_exact(n)
    basis = [_mat_to_numpy(b) for b in basis_exact]
    dim = len(basis)
    phih = phi.conj().T
    # the neighbouring diagonal directions are not orthogonal, so convert
    # trace pairings to coordinates through the (integer) Gram matrix
    gram = np.zeros((dim, dim))
    pairings = np.zeros((dim, dim))
    for b_idx, vb in enumerate(basis):
        image = phi @ vb @ phih
        for a_idx, va in enumerate(basis):
            gram[a_idx, b_idx] = -np.trace(va @ vb).real
            pairings[a_idx, b_idx] = -np.trace(va @ image).real
    op = np.linalg.solve(gram, pairings)

    _, svals, vh = np.linalg.svd(op - np.eye(dim))
    kernel_rows = [i for i, s in enumerate(svals) if s < tol]
    residual = float(max((svals[i] for i in kernel_rows), default=0.0))

    kernel_np = [
        sum(float(c) * basis[a] for a, c in enumerate(vh[i])) for i in kernel_rows
    ]
    defect = 0.0
    for a in range(len(kernel_np)):
        for b in range(a + 1, len(kernel_np)):
            va, vb = kernel_np[a], kernel_np[b]
            defect = max(defect, float(np.linalg.norm(va @ vb - vb @ va)))

    kernel_basis = []
    for i in kernel_rows:
        acc = mx.zero(n)
        for a, c in enumerate(vh[i]):
            acc = mx.add(acc, mx.scale(basis_exact[a], EC(Fraction(float(c)))))
        kernel_basis.append(finite_element(acc, u.tag))

    return MonodromyResult(len(kernel_rows), tuple(kernel_basis), residual, defect)


def flat_span(u: LaurentLoop, result: MonodromyResult) -> list:
    """Basis of the flat through u: the center, the rotation direction
    d + u, and one direction per monodromy kernel vector.

    For constant coefficients the kernel is the centralizer of u and these
    are honest commuting directions.  For nonconstant u the kernel vectors
    are initial values standing in for the conjugated solution loops, which
    leave exact arithmetic; the dimension count is still rank + 2.
    """
    from .kac_moody import c_element
    from .loop_algebra import monomial

    span = [c_element(u.n, u.tag), km_element(u, 0, 1)]
    span.extend(km_element(monomial(v, 0)) for v in result.kernel_basis)
    return span


# ---------------------------------------------------------------------------
# affine Weyl group in the rank-one slice model
# ---------------------------------------------------------------------------

def weyl_reflect(i: int, x) -> Fraction:
    """Simple reflections on the slice coordinate: s0(x) = -x, s1(x) = 2 - x."""
    x = Fraction(x)
    if i == 0:
        return -x
    if i == 1:
        return 2 - x
    raise ValueError("reflection index must be 0 or 1")


def _weyl_maps(radius: int) -> set:
    """All maps y -> a y + b realized by words of length <= radius."""
    maps = {(1, Fraction(0))}
    frontier = set(maps)
    for _ in range(radius):
        nxt = set()
        for a, b in frontier:
            for s_a, s_b in ((-1, Fraction(0)), (-1, Fraction(2))):
                composed = (s_a * a, s_a * b + s_b)
                if composed not in maps:
                    nxt.add(composed)
        if not nxt:
            break
        maps |= nxt
        frontier = nxt
    return maps


def weyl_orbit(x, radius: int) -> set:
    x = Fraction(x)
    return {a * x + b for a, b in _weyl_maps(radius)}


def weyl_singular(x, radius: int = 8) -> bool:
    """Is x fixed by some nonidentity word of length <= radius?

    In this model the fixed points of reflections are exactly the integers.
    """
    x = Fraction(x)
    return any(
        a * x + b == x for a, b in _weyl_maps(radius) if (a, b) != (1, Fraction(0))
    )
