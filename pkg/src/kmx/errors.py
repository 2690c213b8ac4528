"""Exception hierarchy for kmx.

Every named failure mode raised by the library derives from KmxError so
callers (and the CLI) can distinguish usage errors from genuine bugs.
"""

from __future__ import annotations


class KmxError(Exception):
    """Base class for all kmx-specific errors."""


class AxisViolation(KmxError):
    """A matrix fails one of the generalized-Cartan-matrix axioms.

    Carries the first offending index pair and which axiom failed.
    """

    def __init__(self, i: int, j: int, axiom: str):
        self.i = i
        self.j = j
        self.axiom = axiom
        super().__init__(f"GCM axiom violated at ({i},{j}): {axiom}")


class UnknownType(KmxError):
    """Requested named type does not exist (bad family/rank/twist combo)."""


class SizeMismatch(KmxError):
    """Matrix operands have incompatible shapes."""


class TagMismatch(KmxError):
    """Operands belong to different base algebras."""


class UnsupportedAlgebra(KmxError):
    """Operation not available for this base-algebra tag."""


class UnsupportedOrder(KmxError):
    """Diagram automorphism order not supported by this operation."""


class UnsupportedType(KmxError):
    """Generator construction is only available for untwisted type A."""


class IllegalSpec(KmxError):
    """Involution data is internally inconsistent."""


class NotInvolutive(KmxError):
    """Map fails to square to the identity on the given span."""


class NotNilpotent(KmxError):
    """Exponential-factor payload is not a nilpotent matrix."""


class NonUnitaryDrift(KmxError):
    """Numerical monodromy drifted off the unitary group beyond tolerance."""


class NotInSpan(KmxError):
    """Element does not lie in the span of the supplied basis."""


class BothNull(KmxError):
    """Degenerate plane contains no non-null vector to normalize against."""


class Dependent(KmxError):
    """Sectional curvature of a degenerate (rank < 2) plane is undefined."""


class EmptySlice(KmxError):
    """Pseudo-sphere slice equation has no solutions for these parameters."""


class Unclassifiable(KmxError):
    """Eigenspace split does not match any of the three symmetric types."""
