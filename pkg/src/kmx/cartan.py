"""Generalized Cartan matrices: validation, named tables, classification.

A generalized Cartan matrix (GCM) is an integer matrix with 2 on the
diagonal, nonpositive entries off the diagonal, and a symmetric zero
pattern.  Indecomposable GCMs fall into exactly three classes --
finite, affine, indefinite -- and the classifier here decides the class
through principal minors:

* finite      : every principal minor is positive;
* affine      : every proper principal minor is positive, det = 0;
* indefinite  : anything else.

The equivalent definition in terms of positive vectors (``Av > 0``
componentwise, resp. ``Av = 0``) is kept as a test-side oracle; the two
are checked against each other exhaustively in the test suite.

Named types are embedded literal tables: finite families A..G, the
untwisted affine families (written ``A~1``, ``B~3``, ...), and the
twisted affine types which carry two conventional names each (e.g.
``B~3t`` is the same matrix as the order-2 folding name ``2A~5``).
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import AxisViolation, UnknownType


class Kind(str, Enum):
    FINITE = "finite"
    AFFINE = "affine"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Validated GCM; construct through :func:`validate_gcm`."""

    rows: tuple

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]

    def submatrix(self, indices: Sequence[int]) -> "GeneralizedCartanMatrix":
        idx = tuple(indices)
        rows = tuple(tuple(self.rows[i][j] for j in idx) for i in idx)
        return GeneralizedCartanMatrix(rows)


@dataclass(frozen=True)
class ComponentClass:
    indices: tuple
    kind: Kind


@dataclass(frozen=True)
class CartanClass:
    kind: Kind
    components: tuple


@dataclass(frozen=True)
class NamedType:
    """A named Cartan type.

    ``family`` is the decorated family token: one of A..G for finite
    types, A~..G~ for untwisted affine, and A~', C~', B~t, C~t, F~t,
    G~t for the twisted affine types.  ``twist_order`` is 1 for finite
    and untwisted affine, 2 or 3 for twisted.
    """

    family: str
    rank: int
    twist_order: int = 1


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate_gcm(rows) -> GeneralizedCartanMatrix:
    """Check the three GCM axioms; raise AxisViolation at the first failure.

    Axioms, scanned in row-major order: diagonal entries equal 2;
    off-diagonal entries are nonpositive integers; ``a_ij = 0`` exactly
    when ``a_ji = 0``.
    """
    mat = [list(r) for r in rows]
    n = len(mat)
    if any(len(r) != n for r in mat):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(n):
            a = mat[i][j]
            if not isinstance(a, int):
                raise AxisViolation(i, j, "entries must be integers")
            if i == j:
                if a != 2:
                    raise AxisViolation(i, j, "diagonal entries must equal 2")
            else:
                if a > 0:
                    raise AxisViolation(i, j, "off-diagonal entries must be <= 0")
    for i in range(n):
        for j in range(n):
            if i != j and (mat[i][j] == 0) != (mat[j][i] == 0):
                raise AxisViolation(i, j, "zero pattern must be symmetric")
    return GeneralizedCartanMatrix(tuple(tuple(r) for r in mat))


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def component_indices(A: GeneralizedCartanMatrix) -> list:
    """Connected components of the coupling graph, each sorted ascending."""
    n = A.n
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and not seen[j] and A[i, j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return comps


def decompose(A: GeneralizedCartanMatrix) -> list:
    """Principal submatrices of the indecomposable components of A."""
    return [A.submatrix(idx) for idx in component_indices(A)]


# ---------------------------------------------------------------------------
# classification by principal minors
# ---------------------------------------------------------------------------


def _int_det(rows: list) -> int:
    # Bareiss fraction-free elimination; exact over the integers.
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for s in range(k + 1, n):
                if m[s][k] != 0:
                    m[k], m[s] = m[s], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def principal_minor(A: GeneralizedCartanMatrix, indices: Sequence[int]) -> int:
    idx = list(indices)
    return _int_det([[A[i, j] for j in idx] for i in idx])


def _classify_indecomposable(A: GeneralizedCartanMatrix) -> Kind:
    n = A.n
    all_idx = range(n)
    for size in range(1, n):
        for idx in combinations(all_idx, size):
            if principal_minor(A, idx) <= 0:
                return Kind.INDEFINITE
    d = principal_minor(A, tuple(all_idx))
    if d > 0:
        return Kind.FINITE
    if d == 0:
        return Kind.AFFINE
    return Kind.INDEFINITE


def classify(A: GeneralizedCartanMatrix) -> CartanClass:
    """Classify a GCM; the overall kind aggregates component kinds.

    A decomposable matrix is finite when every component is finite,
    affine when every component is finite or affine with at least one
    affine, and indefinite otherwise.
    """
    comps = []
    kinds = set()
    for idx in component_indices(A):
        k = _classify_indecomposable(A.submatrix(idx))
        comps.append(ComponentClass(indices=idx, kind=k))
        kinds.add(k)
    if Kind.INDEFINITE in kinds:
        overall = Kind.INDEFINITE
    elif Kind.AFFINE in kinds:
        overall = Kind.AFFINE
    else:
        overall = Kind.FINITE
    return CartanClass(kind=overall, components=tuple(comps))


# ---------------------------------------------------------------------------
# named tables
# ---------------------------------------------------------------------------

#: family token -> (min_rank, max_rank or None, twist_order)
_FAMILY_BOUNDS = {
    "A": (1, None, 1),
    "B": (2, None, 1),
    "C": (3, None, 1),
    "D": (4, None, 1),
    "E": (6, 8, 1),
    "F": (4, 4, 1),
    "G": (2, 2, 1),
    "A~": (1, None, 1),
    "B~": (3, None, 1),
    "C~": (2, None, 1),
    "D~": (4, None, 1),
    "E~": (6, 8, 1),
    "F~": (4, 4, 1),
    "G~": (2, 2, 1),
    "A~'": (1, 1, 2),
    "C~'": (2, None, 2),
    "B~t": (3, None, 2),
    "C~t": (2, None, 2),
    "F~t": (4, 4, 2),
    "G~t": (2, 2, 3),
}


def _zeros(n: int) -> list:
    return [[2 if i == j else 0 for j in range(n)] for i in range(n)]


def _set_edge(m: list, i: int, j: int, aij: int, aji: int) -> None:
    m[i][j] = aij
    m[j][i] = aji


def _finite_rows(family: str, l: int) -> list:
    m = _zeros(l)
    if family == "A":
        for i in range(l - 1):
            _set_edge(m, i, i + 1, -1, -1)
    elif family == "B":
        # short root last: the double bond carries -2 below the diagonal
        for i in range(l - 2):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 2, l - 1, -1, -2)
    elif family == "C":
        for i in range(l - 2):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 2, l - 1, -2, -1)
    elif family == "D":
        for i in range(l - 2):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 3, l - 1, -1, -1)
    elif family == "E":
        # chain 1-3-4-5-6[-7[-8]] with node 2 hanging off node 4
        chain = [1, 3, 4, 5, 6, 7, 8][: l - 1]
        for a, b in zip(chain, chain[1:]):
            _set_edge(m, a - 1, b - 1, -1, -1)
        _set_edge(m, 2 - 1, 4 - 1, -1, -1)
    elif family == "F":
        _set_edge(m, 0, 1, -1, -1)
        _set_edge(m, 1, 2, -1, -2)
        _set_edge(m, 2, 3, -1, -1)
    elif family == "G":
        _set_edge(m, 0, 1, -1, -3)
    else:  # pragma: no cover - guarded by the caller
        raise UnknownType(family)
    return m


#: attachment node of the affine vertex on the finite diagram (1-indexed)
_AFFINE_ATTACH = {"A": 1, "B": 2, "C": 1, "D": 2, "E": {6: 2, 7: 1, 8: 8}, "F": 1, "G": 1}


def _affine_rows(family: str, l: int) -> list:
    if family == "A" and l == 1:
        return [[2, -2], [-2, 2]]
    fin = _finite_rows(family, l)
    m = _zeros(l + 1)
    for i in range(l):
        for j in range(l):
            m[i + 1][j + 1] = fin[i][j]
    if family == "A":
        _set_edge(m, 0, 1, -1, -1)
        _set_edge(m, 0, l, -1, -1)
    elif family == "C":
        _set_edge(m, 0, 1, -1, -2)
    else:
        att = _AFFINE_ATTACH[family]
        if isinstance(att, dict):
            att = att[l]
        _set_edge(m, 0, att, -1, -1)
    return m


def _twisted_rows(family: str, l: int) -> list:
    if family == "A~'":
        return [[2, -1], [-4, 2]]
    if family == "C~'":
        m = _zeros(l + 1)
        _set_edge(m, 0, 1, -2, -1)
        for i in range(1, l - 1):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 1, l, -2, -1)
        return m
    if family == "B~t":
        m = _zeros(l + 1)
        _set_edge(m, 0, 2, -1, -1)
        _set_edge(m, 1, 2, -1, -1)
        for i in range(2, l - 1):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 1, l, -2, -1)
        return m
    if family == "C~t":
        m = _zeros(l + 1)
        _set_edge(m, 0, 1, -2, -1)
        for i in range(1, l - 1):
            _set_edge(m, i, i + 1, -1, -1)
        _set_edge(m, l - 1, l, -1, -2)
        return m
    if family == "F~t":
        m = _zeros(5)
        _set_edge(m, 0, 1, -1, -1)
        _set_edge(m, 1, 2, -1, -1)
        _set_edge(m, 2, 3, -2, -1)
        _set_edge(m, 3, 4, -1, -1)
        return m
    if family == "G~t":
        return [[2, -1, 0], [-1, 2, -3], [0, -1, 2]]
    raise UnknownType(family)  # pragma: no cover


def named_matrix(t: Union[NamedType, str]) -> GeneralizedCartanMatrix:
    """Return the GCM of a named type; raise UnknownType for bad combos."""
    if isinstance(t, str):
        t = parse_name(t)
    fam, l = t.family, t.rank
    if fam not in _FAMILY_BOUNDS:
        raise UnknownType(f"unknown family {fam!r}")
    lo, hi, order = _FAMILY_BOUNDS[fam]
    if l < lo or (hi is not None and l > hi):
        raise UnknownType(f"{display_name(t)}: rank {l} outside [{lo}, {hi}]")
    if t.twist_order != order:
        raise UnknownType(f"{display_name(t)}: twist order must be {order}")
    if fam in ("A", "B", "C", "D", "E", "F", "G"):
        rows = _finite_rows(fam, l)
    elif fam.endswith("~"):
        rows = _affine_rows(fam[0], l)
    else:
        rows = _twisted_rows(fam, l)
    return validate_gcm(rows)


def all_named_types(max_rank: int = 8) -> list:
    """Every legal named type with rank <= max_rank (canonical names only)."""
    out = []
    for fam, (lo, hi, order) in _FAMILY_BOUNDS.items():
        top = min(hi, max_rank) if hi is not None else max_rank
        for l in range(lo, top + 1):
            out.append(NamedType(family=fam, rank=l, twist_order=order))
    return out


# ---------------------------------------------------------------------------
# names: parsing and rendering
# ---------------------------------------------------------------------------

_CANONICAL_RE = _re.compile(r"^([A-G])(~?)(\d+)([t']?)$")
_FOLDING_RE = _re.compile(r"^([23])([ADE])~(\d+)$")


def display_name(t: NamedType) -> str:
    fam = t.family
    if fam.endswith("'") or fam.endswith("t"):
        return f"{fam[:2]}{t.rank}{fam[2]}"
    return f"{fam[0]}{'~' if fam.endswith('~') else ''}{t.rank}"


def folding_name(t: NamedType) -> Optional[str]:
    """Order-m folding alias of a twisted type, e.g. B~3t -> 2A~5."""
    fam, l = t.family, t.rank
    if fam == "A~'":
        return "2A~2"
    if fam == "C~'":
        return f"2A~{2 * l}"
    if fam == "B~t":
        return f"2A~{2 * l - 1}"
    if fam == "C~t":
        return f"2D~{l + 1}"
    if fam == "F~t":
        return "2E~6"
    if fam == "G~t":
        return "3D~4"
    return None


def parse_name(s: str) -> NamedType:
    """Parse ``A2``, ``A~1``, ``A~1'``, ``B~3t``, or a folding name ``2A~5``."""
    m = _CANONICAL_RE.match(s)
    if m:
        letter, tilde, rank, variant = m.groups()
        if variant and not tilde:
            raise UnknownType(f"cannot parse type name {s!r}")
        fam = letter + tilde + variant
        order = _FAMILY_BOUNDS.get(fam, (0, 0, 1))[2]
        return NamedType(family=fam, rank=int(rank), twist_order=order)
    m = _FOLDING_RE.match(s)
    if m:
        order, letter, rank = int(m.group(1)), m.group(2), int(m.group(3))
        if order == 2 and letter == "A":
            if rank == 2:
                return NamedType("A~'", 1, 2)
            if rank >= 4 and rank % 2 == 0:
                return NamedType("C~'", rank // 2, 2)
            if rank >= 5 and rank % 2 == 1:
                return NamedType("B~t", (rank + 1) // 2, 2)
        if order == 2 and letter == "D" and rank >= 3:
            return NamedType("C~t", rank - 1, 2)
        if order == 2 and letter == "E" and rank == 6:
            return NamedType("F~t", 4, 2)
        if order == 3 and letter == "D" and rank == 4:
            return NamedType("G~t", 2, 3)
        raise UnknownType(f"no twisted type with folding name {s!r}")
    raise UnknownType(f"cannot parse type name {s!r}")


def match_named(A: GeneralizedCartanMatrix) -> Optional[NamedType]:
    """Literal table lookup of a matrix (no permutation search)."""
    for t in all_named_types(max_rank=max(A.n, 1)):
        try:
            if named_matrix(t).rows == A.rows:
                return t
        except UnknownType:  # pragma: no cover
            continue
    return None
