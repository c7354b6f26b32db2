"""Exception hierarchy.

Two broad families matter to callers: ``InputError`` (the caller handed us
something malformed) and ``LimitError`` (the computation would exceed a
configured budget or size bound).  ``CosetLimitExceeded`` is special: a coset
enumeration that does not close is *inconclusive* -- it never proves the index
infinite -- and the CLI maps it to its own exit code.
"""


class PeriodicaError(Exception):
    """Base class for every error raised by this package."""


class InputError(PeriodicaError):
    """Malformed or invalid caller-supplied data."""


class ParseError(InputError):
    """Text input rejected; carries a 1-based line and optional column."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}: " if column is None else f"line {line}, col {column}: "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class PresentationSyntaxError(ParseError):
    """Group presentation text does not match the grammar."""


class UnknownGenerator(ParseError):
    """A word uses a generator name not declared in the presentation."""


class NotLatinSquare(InputError):
    """A multiplication table row or column is not a permutation."""


class NotAssociative(InputError):
    """A multiplication table violates associativity; names the triple."""


class NoIdentity(InputError):
    """A multiplication table has no two-sided identity element."""


class NoInverse(InputError):
    """Some element of a multiplication table has no two-sided inverse."""


class InvalidPermutation(InputError):
    """A supposed permutation is not a bijection on 0..d-1."""


class InvalidSubgroup(InputError):
    """An element set is not a subgroup, or not one of the ambient lattice."""


class NotComparable(InputError):
    """Interval endpoints are not nested subgroups."""


class NotNormal(InputError):
    """Quotient requested by a non-normal subgroup."""


class NotAChain(InputError):
    """Chain-only shortcut applied to an interval that is not a chain."""


class NotPrime(InputError):
    """A parameter that must be prime is not."""


class AlphabetTooSmall(InputError):
    """Alphabet size q < 2; all counts assume at least two letters."""


class SingularMatrix(InputError):
    """An integer matrix expected to have nonzero determinant is singular."""


class LimitError(PeriodicaError):
    """A configured size bound or work budget would be exceeded."""


class OrderLimitExceeded(LimitError):
    """Group closure grew past the configured maximum order."""


class LatticeLimitExceeded(LimitError):
    """Group too large for exhaustive subgroup enumeration."""


class BudgetExceeded(LimitError):
    """Brute-force enumeration would exceed the configuration budget."""


class CapExceeded(LimitError):
    """A numeric argument (alphabet size, index, word length) is over its cap."""


class CosetLimitExceeded(LimitError):
    """Coset enumeration did not close within the coset budget.

    Inconclusive by nature: the subgroup may have infinite index, or the
    budget may simply be too small.  The two cases cannot be told apart.
    """


class CatalogIncomplete(LimitError):
    """The classification scan needs all groups of an order the catalog
    does not cover completely."""


class DivisibilityViolation(PeriodicaError):
    """An exact-divisibility invariant failed; indicates an internal bug."""
