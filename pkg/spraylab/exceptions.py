"""Error types raised by the spraylab package.

Three families matter to callers:

- ``InputError``: the input is malformed or violates a precondition
  (command-line exit code 2).
- ``NegativeResult``: a verified mathematical "no", e.g. a radii vector that is
  not the image of any point (exit code 1).
- ``InternalError``: an invariant that the mathematics guarantees has failed.
"""

from typing import Any, Optional, Sequence


class SpraylabError(Exception):
    """Base class for every error raised by spraylab."""

    def __init__(self, message: str, details: Optional[Any] = None):
        super().__init__(message)
        self.details = details


# --------------------------
# Input / precondition errors
# --------------------------
class InputError(SpraylabError, ValueError):
    """Malformed input or a violated precondition."""


class DimensionMismatch(InputError):
    """Operands live in spaces of different dimension."""


class ZeroVector(InputError):
    """A vector that must be nonzero is zero."""


class PointOutsideAmbient(InputError):
    """A point does not lie in the affine subspace it should belong to."""


class DuplicatePoint(InputError):
    """Two points of a list that must be pairwise distinct coincide."""

    def __init__(self, message: str, indices: Sequence[int] = ()):
        super().__init__(message, details=list(indices))
        self.indices = tuple(indices)


class ConcentricError(InputError):
    """Two spheres share their center."""


class CentersNotGeneralPosition(InputError):
    """Sphere centers are not in general position."""


class TooManySpheres(InputError):
    """More spheres than the ambient dimension allows."""


class TooManyCenters(InputError):
    """Too many centers for a nondegenerate chain."""


class CenterNotInSpan(InputError):
    """An extra center lies outside the affine span of the chain centers."""


class PointsActuallyInGeneralPosition(InputError):
    """A witness was requested for points that are in general position."""


class UnsatisfiableWitness(InputError):
    """The centers span a hyperplane, so no infinite intersection exists."""


class NotInUSpace(InputError):
    """A dual direction does not satisfy the dependency equation."""


class DependentVectors(InputError):
    """Vectors that must be linearly independent are dependent."""


class CentersNotWellPlaced(InputError):
    """Centers do not lie in general position inside a common hyperplane."""


class DisjointnessPreconditionFailed(InputError):
    """Difference sets of a Z-set construction overlap."""


class SchemaValidationError(InputError):
    """A JSON document does not match its schema."""

    def __init__(self, message: str, errors: Sequence[str] = ()):
        super().__init__(message, details=list(errors))
        self.errors = list(errors)


# --------------------------
# Verified negative results
# --------------------------
class NegativeResult(SpraylabError):
    """A verified mathematical negative answer."""


class NoSolution(NegativeResult):
    """A linear system is inconsistent."""


class NotInE(NegativeResult):
    """A radii vector is not the image of a point of the upper half-space."""


# --------------------------
# Internal errors
# --------------------------
class InternalError(SpraylabError, RuntimeError):
    """An invariant guaranteed by construction failed."""


class GeneralPositionCertificateFailed(InternalError):
    """Derived directions failed the general-position check."""


class InvariantViolation(InternalError):
    """A post-condition re-check failed."""
