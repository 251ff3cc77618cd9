"""Exception hierarchy shared by all gammakit modules."""


class GammaError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class ParamError(GammaError):
    """Invalid or inconsistent parameters."""

    code = "params"


class FormatError(GammaError):
    """Malformed text input (circuit, proof, DIMACS, substitution...)."""

    code = "format"


class CheckError(GammaError):
    """A proof object failed validation.

    ``step`` is the 1-based index of the first offending step (0 for
    structural problems that are not tied to a step).
    """

    code = "check"

    def __init__(self, step: int, reason: str):
        super().__init__(f"step {step}: {reason}")
        self.step = step
        self.reason = reason


class UnclassifiableClause(GammaError):
    """A substituted clause fits none of the reduction cases.

    Signals that the substitution under test is not a valid reduction.
    """

    code = "unclassifiable"

    def __init__(self, position: int, detail: str = ""):
        msg = f"stream position {position} unclassifiable"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.position = position


class SoundnessError(GammaError):
    """An internal invariant that should be unbreakable was broken.

    Raised e.g. when an evaluator finds no falsified clause in a family
    that is unsatisfiable by construction; always indicates a bug.
    """

    code = "soundness"
