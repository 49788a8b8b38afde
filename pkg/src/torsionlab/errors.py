"""Exception types shared across the package."""


class TorsionLabError(Exception):
    pass


class SizeError(TorsionLabError, ValueError):
    """An enumeration would exceed its configured size bound."""


class StructuralError(TorsionLabError, ValueError):
    """Objects live over different quivers/fields, or a quiver is not Dynkin."""


class ContractError(TorsionLabError, ValueError):
    """A precondition of an operation is not met (e.g. not a torsion class)."""


class DecompositionError(TorsionLabError):
    """No splitting idempotent could be found where one must exist."""


class InternalInconsistency(TorsionLabError, RuntimeError):
    """A result failed its own post-check. Signals a bug."""


class TheoremViolation(TorsionLabError, AssertionError):
    """A certified categorical statement failed on concrete data."""

    def __init__(self, statement, detail=""):
        self.statement = statement
        self.detail = detail
        super().__init__(f"{statement}: {detail}" if detail else statement)


class ParseError(TorsionLabError, ValueError):
    pass
