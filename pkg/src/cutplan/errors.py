"""Exception types shared across the package."""


class CutplanError(Exception):
    """Base class for every error raised by this package."""


class InputError(CutplanError):
    """Malformed input document, bad field value, or inconsistent arguments."""


class NonCoherentStructure(CutplanError):
    """Truth table is not monotone.

    Carries a witnessing pair of states: ``state_low`` is a failed state that
    is covered by the non-failed state ``state_high``.
    """

    def __init__(self, state_low, state_high):
        self.state_low = tuple(state_low)
        self.state_high = tuple(state_high)
        super().__init__(
            "structure function is not monotone: state %s fails the system but "
            "the larger state %s does not"
            % (_bits(self.state_low), _bits(self.state_high))
        )


class DegenerateStructure(CutplanError):
    """Structure function is constant: the system always or never fails."""


class BudgetTooSmall(CutplanError):
    """Requested test total is below the smallest integer-exact total."""

    def __init__(self, requested: int, n_zero: int):
        self.requested = requested
        self.n_zero = n_zero
        super().__init__(
            "a budget of %d tests cannot realize the optimal fractions; the "
            "smallest usable total is %d" % (requested, n_zero)
        )


class InvalidAlpha(CutplanError):
    """Alpha must lie strictly between 0 and 1."""


class SearchSpaceTooLarge(CutplanError):
    """Brute-force allocation count exceeds the configured cap."""

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(
            "exhaustive search would enumerate %d allocations (cap %d)" % (count, cap)
        )


class TooManyConstraints(CutplanError):
    """Vertex enumeration bound exceeded (rows + variables too large)."""


class InternalInvariantError(CutplanError):
    """A result violated a guaranteed identity; indicates a solver bug."""


def _bits(state) -> str:
    return "".join(str(int(b)) for b in state)
