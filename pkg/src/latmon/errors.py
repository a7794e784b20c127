"""Exception types shared across the package."""


class LatmonError(Exception):
    """Base class for every error raised by latmon."""


class CycleDetected(LatmonError):
    pass


class DuplicateLabel(LatmonError):
    pass


class UnknownLabel(LatmonError):
    pass


class NotALattice(LatmonError):
    """A required meet, join or bound is missing.

    ``witness`` is the offending pair of labels (or a single label for a
    missing bound).
    """

    def __init__(self, reason, witness=None):
        super().__init__(f"{reason}: {witness}" if witness is not None else reason)
        self.reason = reason
        self.witness = witness


class SourceTargetMismatch(LatmonError):
    pass


class BudgetExceeded(LatmonError):
    def __init__(self, count, budget):
        super().__init__(f"more than {budget} elements (reached {count})")
        self.count = count
        self.budget = budget


class NotClosed(LatmonError):
    """A candidate sub-carrier is not closed under a required operation."""

    def __init__(self, law, witness):
        super().__init__(f"not closed under {law}: {witness}")
        self.law = law
        self.witness = witness


class NoStructure(LatmonError):
    """The canonical candidate for an (co)algebra structure was rejected.

    ``stage`` is one of ``algebra``, ``coalgebra``, ``t1``; ``law`` names the
    first failing requirement and ``witness`` the first offending element(s)
    in canonical order.
    """

    def __init__(self, stage, law, witness=None):
        super().__init__(f"{stage}: {law}" + (f" at {witness}" if witness is not None else ""))
        self.stage = stage
        self.law = law
        self.witness = witness


class IdentityViolated(LatmonError):
    def __init__(self, which, witness=None):
        super().__init__(f"{which} fails" + (f" at {witness}" if witness is not None else ""))
        self.which = which
        self.witness = witness


class NotFactorable(LatmonError):
    def __init__(self, what, witness=None):
        super().__init__(f"{what}" + (f" at {witness}" if witness is not None else ""))
        self.witness = witness


class NotFree(LatmonError):
    """A frame is not presented as a free algebra by its generators."""


class ParseError(LatmonError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class KindMismatch(LatmonError):
    pass
