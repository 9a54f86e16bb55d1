"""Exception types shared across the package."""


class CoinkitError(Exception):
    """Base class for domain errors raised by coinkit."""


class ExprSyntaxError(CoinkitError):
    """Malformed expression text. ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ExponentOverflowError(CoinkitError):
    """Exponent literal exceeds the supported maximum."""

    def __init__(self, exponent: int, limit: int, position: int | None = None):
        where = f" (at position {position})" if position is not None else ""
        super().__init__(f"exponent {exponent} exceeds limit {limit}{where}")
        self.exponent = exponent
        self.limit = limit
        self.position = position


class SizeGuardExceeded(CoinkitError):
    """Exact evaluation refused: the result could be too large.

    ``bound_bits`` is the syntactic upper bound on the result's bit length,
    ``guard_bits`` the configured ceiling it crossed.
    """

    def __init__(self, bound_bits: int, guard_bits: int):
        super().__init__(
            f"exact evaluation refused: result may need {bound_bits} bits "
            f"(guard is {guard_bits})"
        )
        self.bound_bits = bound_bits
        self.guard_bits = guard_bits


class TrialBudgetError(CoinkitError):
    """The trial budget ran out before the requested error bound was reached.

    Carries the verdict accumulated so far in ``verdict``.
    """

    def __init__(self, trials: int, error_bound, target_error, verdict):
        super().__init__(
            f"after {trials} trials the error bound is {error_bound}, "
            f"above the target {target_error}"
        )
        self.trials = trials
        self.error_bound = error_bound
        self.target_error = target_error
        self.verdict = verdict


class NoPrimeInRange(CoinkitError):
    """A prime was requested from an interval that contains none."""

    def __init__(self, lo: int, hi: int):
        super().__init__(f"no prime in [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi


class EnumerationBudgetError(CoinkitError):
    """An exhaustive enumeration would exceed the configured feasibility cap."""

    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(f"{what} needs {needed} bits of enumeration, cap is {cap}")
        self.needed = needed
        self.cap = cap


class KeyLeakageError(CoinkitError):
    """Requested output length is unsafe for the given leakage. Cites the achievable length."""

    def __init__(self, requested_m: int, achievable_m: int):
        if achievable_m >= 1:
            msg = (
                f"cannot safely derive {requested_m} bits; "
                f"at most {achievable_m} bits are achievable for this leakage"
            )
        else:
            msg = (
                f"cannot safely derive {requested_m} bits; "
                f"too little of the key is secret to derive anything"
            )
        super().__init__(msg)
        self.requested_m = requested_m
        self.achievable_m = achievable_m
