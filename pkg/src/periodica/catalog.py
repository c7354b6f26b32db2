"""Builtin group catalog, shipped as Cayley-table data files.

The files under ``data/`` are the source of truth (auditable plain text in
the same format ``parse_cayley_text`` accepts); loading validates them like
any other user input.  ``classification_catalog`` exposes the orders at
which the file set is a *complete* list of groups, which the small-alpha
scan requires.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from importlib import resources

from .errors import InputError
from .group_core import FiniteGroup, group_from_cayley_table, parse_cayley_text

BUILTIN_NAMES = (
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z6",
    "Z7",
    "Z8",
    "Z9",
    "Z10",
    "Z11",
    "Z12",
    "Z2xZ2",
    "Z2xZ4",
    "Z3xZ3",
    "S3",
    "D4",
    "Q8",
    "S4",
)

# Orders at which the shipped files list every group up to isomorphism.
_CLASSIFIED = {
    2: ("Z2",),
    3: ("Z3",),
    4: ("Z4", "Z2xZ2"),
    5: ("Z5",),
    6: ("Z6", "S3"),
    7: ("Z7",),
}


def builtin_names() -> tuple[str, ...]:
    return BUILTIN_NAMES


@cache
def builtin_group(name: str) -> FiniteGroup:
    """Load one builtin group by name (validated from its data file)."""
    if name not in BUILTIN_NAMES:
        raise InputError(
            f"unknown builtin group {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        )
    text = resources.files("periodica").joinpath(f"data/{name}.cayley").read_text()
    return group_from_cayley_table(parse_cayley_text(text), label=name)


@dataclass(frozen=True)
class GroupCatalog:
    """Groups keyed by order, with the orders known to be complete."""

    by_order: tuple[tuple[int, tuple[FiniteGroup, ...]], ...]
    complete_orders: frozenset

    def groups_of_order(self, n: int) -> tuple[FiniteGroup, ...]:
        for order, groups in self.by_order:
            if order == n:
                return groups
        return ()


@cache
def classification_catalog() -> GroupCatalog:
    """Every group of each order 2..7: cyclic at the prime orders, both
    groups at orders 4 and 6."""
    return GroupCatalog(
        by_order=tuple(
            (n, tuple(builtin_group(name) for name in names))
            for n, names in sorted(_CLASSIFIED.items())
        ),
        complete_orders=frozenset(_CLASSIFIED),
    )
