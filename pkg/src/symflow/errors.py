"""Exception types shared across the package.

Every error raised on a violated precondition or a failed numerical
guarantee derives from :class:`SymflowError`, so callers can distinguish
"your input broke a hypothesis" from ordinary bugs.
"""


class SymflowError(Exception):
    """Base class for all symflow errors."""


# -- numeric substrate -------------------------------------------------------

class NonHermitianInnerProduct(SymflowError):
    """Inner-product matrix failed the Hermitian positive-definite check."""


class NoConvergence(SymflowError):
    """An iterative eigensolver failed to converge."""


class SingularOnContour(SymflowError):
    """Integrand evaluation failed (or blew up) on a quadrature node."""


# -- symplectic structure ----------------------------------------------------

class BadInnerProduct(SymflowError):
    pass


class NotSkew(SymflowError):
    pass


class Degenerate(SymflowError):
    pass


class InvalidSplitting(SymflowError):
    """Proposed subspaces do not form a symplectic splitting."""


# -- isotropic/Lagrangian pairs ----------------------------------------------

class NotIsotropic(SymflowError):
    pass


class SplitCollision(SymflowError):
    """Subspace meets the negative splitting component; graph form fails."""

    def __init__(self, collision_dim, msg=None):
        super().__init__(msg or f"subspace meets X^- in dimension {collision_dim}")
        self.collision_dim = collision_dim


class VNotInvertible(SymflowError):
    pass


class HypothesisFailed(SymflowError):
    pass


class NotContaining(SymflowError):
    pass


# -- relations / pencils -----------------------------------------------------

class SpectralPoint(SymflowError):
    """Requested resolvent at (or too near) a spectral point."""


# -- spectral flow -----------------------------------------------------------

class NotAdmissible(SymflowError):
    def __init__(self, msg, points=()):
        super().__init__(msg)
        self.points = list(points)


class NotAdmissibleAt(NotAdmissible):
    def __init__(self, s, msg, points=()):
        super().__init__(f"at s={s}: {msg}", points)
        self.s = s


class NotUnitary(SymflowError):
    pass


class RefinementExceeded(SymflowError):
    def __init__(self, s_lo, s_hi, msg=None):
        super().__init__(msg or f"bisection limit hit on [{s_lo}, {s_hi}]")
        self.interval = (s_lo, s_hi)


class NotInvariant(SymflowError):
    pass


class NonConstantM(SymflowError):
    pass


# -- Maslov layer ------------------------------------------------------------

class NotLagrangianAt(SymflowError):
    def __init__(self, s, which, classification):
        super().__init__(f"at s={s}: {which} classifies as '{classification}', not lagrangian")
        self.s = s


class IndexNonZeroAt(SymflowError):
    def __init__(self, s, index):
        super().__init__(f"at s={s}: pair index is {index}, expected 0")
        self.s = s
        self.index = index


class VNotInvertibleAt(SymflowError):
    def __init__(self, s, msg=""):
        super().__init__(f"at s={s}: generator of second curve not invertible {msg}")
        self.s = s


class ProjectionsTooFar(SymflowError):
    pass


class NotStrong(SymflowError):
    pass


class GeneratorMismatch(SymflowError):
    pass


class BadRealStructure(SymflowError):
    pass


# -- CLI ----------------------------------------------------------------------

class ScenarioError(SymflowError):
    """Scenario file is syntactically valid JSON but violates the schema."""
