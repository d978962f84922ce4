"""Exception hierarchy shared by every module.

Anything raised for bad mathematical input derives from :class:`DomainError`;
the CLI maps that family to exit code 3.
"""


class HalphenError(Exception):
    pass


class DomainError(HalphenError, ValueError):
    """Input lies outside the domain where the requested quantity exists."""


class DegreeError(DomainError):
    pass


class PoleError(DomainError):
    pass


class StructuralError(DomainError):
    """An operator fails to preserve the polynomial space it is applied on."""


class NoNullVectorError(DomainError):
    pass


class DegenerateBranchError(DomainError):
    pass


class SingularityError(DomainError):
    pass


class RecurrenceInapplicableError(DomainError):
    pass
