"""Exception types raised across the package."""


class InadmissibleBracketError(ValueError):
    """The bracket matrix does not split L into complementary Lagrangians."""


class InvalidComplexStructureError(ValueError):
    pass


class InvalidVacuumFormError(ValueError):
    pass


class IllConditionedError(ValueError):
    """A linear system is too close to singular to trust its solution."""


class DegreeCapError(ValueError):
    """A polynomial prefactor would exceed the configured degree cap."""


class QuadratureBudgetError(ValueError):
    pass


class TruncationError(ValueError):
    pass
