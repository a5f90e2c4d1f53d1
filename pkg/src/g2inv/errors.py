"""Exception hierarchy.

Every domain error derives from :class:`G2InvError`; the CLI maps these to
exit code 1 and reports ``type(err).__name__`` as the error name.
"""


class G2InvError(Exception):
    """Base class for all domain errors raised by g2inv."""


class DimensionMismatch(G2InvError, ValueError):
    pass


class NotContained(G2InvError, ValueError):
    pass


class NonSymmetric(G2InvError, ValueError):
    pass


class DegreeOverflow(G2InvError, ValueError):
    pass


class WrongDegree(G2InvError, ValueError):
    pass


class WrongDimension(G2InvError, ValueError):
    pass


class NotPositive(G2InvError, ValueError):
    pass


class NotIntegral(G2InvError, ValueError):
    """A characteristic number that must be an integer came out fractional."""


class InconsistentData(G2InvError, ValueError):
    """Over-determined characteristic data that violates a linear relation."""


class RokhlinViolation(G2InvError, ValueError):
    """Signature of a closed spin 4-manifold not divisible by 16."""


class NotRealizable(G2InvError, ValueError):
    """p^2 of a mapping torus must be a multiple of 224."""


class NotLagrangian(G2InvError, ValueError):
    pass


class DegenerateForm(G2InvError, ValueError):
    pass


class NotAutomorphism(G2InvError, ValueError):
    pass


class NotStructurePreserving(G2InvError, ValueError):
    pass


class EmptySdpi(G2InvError, ValueError):
    pass


class NotInSdpi(G2InvError, ValueError):
    pass


class BasePointMismatch(G2InvError, ValueError):
    pass


class MissingParameter(G2InvError, ValueError):
    """An input that cannot be defaulted (e.g. r with 2-torsion in H^4)."""


class NotTwoConnectedWarning(UserWarning):
    """Classification predicate evaluated outside the 2-connected setting."""
