"""Ground-truth brute force over the full shift of a small finite group.

A configuration assigns a letter 0..q-1 to every group element; the group
acts by translation, (g.x)(h) = x(g^-1 h).  Everything here counts by direct
enumeration and is the independent oracle against which the lattice formulas
are checked.  Budgets are hard: exceeding one raises, it never samples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import BudgetExceeded
from .group_core import FiniteGroup, Subgroup, SubgroupLattice, _subgroup_from_mask, all_subgroups

DEFAULT_ENUMERATION_BUDGET = 2**24


@dataclass(frozen=True)
class Configuration:
    """One point of the full shift: letters[h] = x(h)."""

    parent: FiniteGroup
    letters: tuple[int, ...]
    q: int

    def encode(self) -> int:
        """Canonical integer code: sum of letters[h] * q^h (a bijection onto
        0..q^n - 1)."""
        code = 0
        for letter in reversed(self.letters):
            code = code * self.q + letter
        return code


def decode_configuration(G: FiniteGroup, code: int, q: int) -> Configuration:
    letters = []
    for _ in range(G.order):
        code, r = divmod(code, q)
        letters.append(r)
    return Configuration(parent=G, letters=tuple(letters), q=q)


@dataclass(frozen=True)
class ShiftTables:
    """Left-translation position permutations: perms[g][h] = g*h, so that
    shifting by g moves the letter at h to position g*h."""

    group: FiniteGroup
    perms: tuple[tuple[int, ...], ...]


def build_shift_tables(G: FiniteGroup) -> ShiftTables:
    return ShiftTables(group=G, perms=G.mul)


def shift(x: Configuration, g: int, T: ShiftTables) -> Configuration:
    """The translate g.x, with (g.x)(h) = x(g^-1 h)."""
    perm = T.perms[g]
    out = [0] * len(x.letters)
    for h, letter in enumerate(x.letters):
        out[perm[h]] = letter
    return Configuration(parent=x.parent, letters=tuple(out), q=x.q)


def _stabilizer_mask(letters: tuple[int, ...], T: ShiftTables) -> int:
    mask = 0
    for g, perm in enumerate(T.perms):
        if all(letters[perm[h]] == letters[h] for h in range(len(letters))):
            mask |= 1 << g
    return mask


def stabilizer(x: Configuration, T: ShiftTables) -> Subgroup:
    """The set of g with g.x = x, as a subgroup (closure is asserted)."""
    G = T.group
    mask = _stabilizer_mask(x.letters, T)
    H = _subgroup_from_mask(G, mask)
    for a in H.members:
        assert (mask >> G.inv[a]) & 1, "stabilizer not closed under inverse"
        for b in H.members:
            assert (mask >> G.mul[a][b]) & 1, "stabilizer not closed under product"
    return H


def _check_budget(G: FiniteGroup, q: int, budget: int) -> None:
    if q**G.order > budget:
        raise BudgetExceeded(
            f"{q}^{G.order} configurations exceed the enumeration budget {budget}"
        )


def right_coset_partition(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Right cosets Hg in order of smallest member; their union is 0..n-1."""
    seen = [False] * G.order
    cosets = []
    for g in G.elements():
        if seen[g]:
            continue
        coset = sorted(G.mul[h][g] for h in H.members)
        for c in coset:
            seen[c] = True
        cosets.append(tuple(coset))
    return cosets


def brute_psi(G: FiniteGroup, H: Subgroup, q: int, *, budget: int = DEFAULT_ENUMERATION_BUDGET) -> int:
    """Exact count of configurations with stabiliser exactly H.

    Enumerates only the configurations fixed by H -- those constant on right
    cosets of H, q^[G:H] candidates instead of q^|G| -- and keeps the ones
    whose full stabiliser does not exceed H.
    """
    _check_budget(G, q, budget)
    T = build_shift_tables(G)
    cosets = right_coset_partition(G, H)
    target = H.mask
    count = 0
    letters = [0] * G.order
    for labels in product(range(q), repeat=len(cosets)):
        for coset, letter in zip(cosets, labels):
            for h in coset:
                letters[h] = letter
        if _stabilizer_mask(tuple(letters), T) == target:
            count += 1
    return count


def brute_orbit_census(
    G: FiniteGroup,
    q: int,
    lattice: SubgroupLattice | None = None,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
):
    """Partition all q^|G| configurations into orbits and tally per stabiliser
    conjugacy class.

    Returns a dict mapping each conjugacy-class id of the lattice to
    (psi_class, alpha): the number of configurations whose stabiliser lies in
    the class, and the number of orbits carrying them.  Every orbit's size is
    asserted to equal the index of its stabiliser.
    """
    _check_budget(G, q, budget)
    if lattice is None:
        lattice = all_subgroups(G)
    T = build_shift_tables(G)
    n = G.order
    total = q**n
    visited = bytearray(-(-total // 8))
    census = {cid: [0, 0] for cid in range(len(lattice.conj_classes))}
    for code in range(total):
        if visited[code >> 3] & (1 << (code & 7)):
            continue
        x = decode_configuration(G, code, q)
        orbit = set()
        for g in G.elements():
            c = shift(x, g, T).encode()
            orbit.add(c)
            visited[c >> 3] |= 1 << (c & 7)
        stab = stabilizer(x, T)
        assert len(orbit) == stab.index, "orbit size must equal the stabiliser index"
        cid = lattice.class_of[lattice.index_of(stab)]
        census[cid][0] += len(orbit)
        census[cid][1] += 1
    assert sum(c[0] for c in census.values()) == total
    return {cid: (c[0], c[1]) for cid, c in census.items()}


def burnside_orbit_count(G: FiniteGroup, q: int) -> int:
    """Total number of orbits on the full shift, by averaging fixed points:
    (1/|G|) * sum over g of q^(number of cycles of translation by g)."""
    total = 0
    for g in G.elements():
        perm = G.mul[g]
        seen = [False] * G.order
        cycles = 0
        for start in range(G.order):
            if seen[start]:
                continue
            cycles += 1
            h = start
            while not seen[h]:
                seen[h] = True
                h = perm[h]
        total += q**cycles
    assert total % G.order == 0, "orbit-count average must be exact"
    return total // G.order
