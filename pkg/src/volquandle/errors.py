"""Exception hierarchy shared across the package."""


class VolquandleError(Exception):
    """Base class for all package errors."""


class InputError(VolquandleError):
    """Malformed or inconsistent input data (exit code 1 in the CLI)."""


class MalformedTerm(InputError):
    """A PD-code term could not be parsed."""


class EdgeCountMismatch(InputError):
    """Edge labels of a PD code do not cover 1..2n exactly twice."""


class Disconnected(InputError):
    """The edge successor map of a PD code is not a single cycle."""


class NotParabolic(InputError):
    """A matrix expected to be parabolic is not."""


class BadMatrix(InputError):
    """A matrix is singular or otherwise unusable."""


class RelationViolated(InputError):
    """Holonomy matrices do not satisfy the diagram's Wirtinger relations."""


class UnknownGenerator(InputError):
    """A group word references a generator the representation lacks."""


class ColoringInvalid(InputError):
    """A supplied shadow coloring violates the crossing or region rules."""


class InconsistentExtension(VolquandleError):
    """Region-color extension reached a region with two conflicting colors."""


class OutOfLattice(VolquandleError):
    """A state sum did not land within tolerance of {-V, 0, +V} (exit code 2)."""

    def __init__(self, phi, volume, residual):
        super().__init__(
            f"state sum {phi!r} is not within tolerance of "
            f"{{-V, 0, +V}} for V = {volume!r} (residual {residual!r})"
        )
        self.phi = phi
        self.volume = volume
        self.residual = residual
