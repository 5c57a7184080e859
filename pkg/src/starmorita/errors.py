"""Exception hierarchy shared across the package.

Every checked failure mode raises a subclass of :class:`StarMoritaError`,
so callers can catch the whole family or pick individual conditions.
Verification checks never raise on a *mathematical* failure -- those are
reported as values -- only on malformed inputs.
"""


class StarMoritaError(Exception):
    pass


class ModeMismatch(StarMoritaError):
    """Exact-polynomial and truncated series were mixed without an explicit cast."""


class NonUnit(StarMoritaError):
    """Inversion of a series whose constant term vanishes."""


class NeedsTruncation(StarMoritaError):
    """Operation only defined modulo a power of the formal parameter."""


class NotFormallySmall(StarMoritaError):
    """exp requires a series with zero constant term."""


class NotUnital(StarMoritaError):
    """log / inverse square root require constant term one."""


class DimensionError(StarMoritaError):
    """Operands live on phase spaces of different dimension."""


class AlgebraMismatch(StarMoritaError):
    """Operands belong to different Lie algebras."""


class HostMismatch(StarMoritaError):
    """Convolution operands carry different host data."""


class NotAMomentumMap(StarMoritaError):
    pass


class NotACharacter(StarMoritaError):
    pass


class NotAMember(StarMoritaError):
    pass


class IncompatibleActions(StarMoritaError):
    pass


class NotACocycle(StarMoritaError):
    pass


class NotEquivariant(StarMoritaError):
    pass


class SingularOmega(StarMoritaError):
    pass


class DegreeError(StarMoritaError):
    """Form degree left the valid range 0..2n."""


class SpecError(StarMoritaError):
    """Malformed problem-spec file or expression."""
