"""Exception hierarchy."""


class MopucError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(MopucError, ValueError):
    pass


class MomentUnavailable(MopucError, KeyError):
    """A moment required to build a matrix or series is not known."""

    def __init__(self, k, description=""):
        self.k = k
        where = f" of {description}" if description else ""
        super().__init__(f"moment c_{k}{where} is unavailable")

    def __str__(self):
        return self.args[0]


class NotSymmetric(MopucError, ValueError):
    pass


class InvalidIndex(MopucError, ValueError):
    """Index pair outside the admissible set ``n_j + m_j >= 0``."""


class NotNormal(MopucError, ArithmeticError):
    """The moment matrix of an index is singular, so the polynomials are not unique."""

    def __init__(self, idx, what=""):
        self.idx = idx
        super().__init__(f"index {idx} is not normal" + (f" ({what})" if what else ""))


class IndexClash(MopucError, ValueError):
    pass


class DivisionByZero(MopucError, ZeroDivisionError):
    pass


class SingularEvaluation(MopucError, ValueError):
    pass


class DepthInsufficient(MopucError, ValueError):
    pass


class HypothesisViolated(MopucError, ValueError):
    pass


class QuasiDefiniteViolated(MopucError, ValueError):
    pass
