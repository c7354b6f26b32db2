"""Finite groups as explicit multiplication tables, subgroup enumeration,
and the Mobius function of the subgroup lattice.

Element ids are 0..n-1 with the identity always at id 0.  Subgroups are value
objects identified by their member sets, and the lattice lists them in the
canonical order (order, member tuple), so every downstream report is
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import (
    InvalidPermutation,
    InvalidSubgroup,
    LatticeLimitExceeded,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotComparable,
    NotLatinSquare,
    NotNormal,
    OrderLimitExceeded,
    ParseError,
)

# Associativity of a raw Cayley table is verified in O(n^3) up to this order;
# larger tables are accepted unchecked (closure-built groups are associative
# by construction).
ASSOCIATIVITY_CHECK_BOUND = 256

# Ceiling for permutation closures and quotient constructions.
MAX_CLOSURE_ORDER = 1024

# Practical ceiling for exhaustive subgroup enumeration.
MAX_LATTICE_ORDER = 128


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``mul[a][b]`` is the product a*b, ``inv[a]`` the inverse of a, and the
    identity is element 0.  Instances are immutable and safe to share across
    threads.
    """

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    label: str | None = None

    identity = 0

    @property
    def name(self) -> str:
        return self.label if self.label is not None else f"group-of-order-{self.order}"

    def elements(self) -> range:
        return range(self.order)

    def conjugate(self, g: int, h: int) -> int:
        """g * h * g^-1."""
        return self.mul[self.mul[g][h]][self.inv[g]]

    def power(self, g: int, k: int) -> int:
        """g**k for any integer k (negative powers via the inverse)."""
        if k < 0:
            g, k = self.inv[g], -k
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][g]
        return acc

    def element_order(self, g: int) -> int:
        k, acc = 1, g
        while acc != 0:
            acc = self.mul[acc][g]
            k += 1
        return k

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(self.order))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted tuple of member ids plus its order and index.

    Two subgroups of the same parent are equal exactly when their member
    sets are equal; ``order * index`` always equals the parent order.
    """

    members: tuple[int, ...]
    order: int
    index: int

    @cached_property
    def mask(self) -> int:
        """Bitset of members (bit g set iff g is a member)."""
        m = 0
        for g in self.members:
            m |= 1 << g
        return m

    def contains(self, other: "Subgroup") -> bool:
        return other.mask & self.mask == other.mask

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, index={self.index}, members={{{','.join(map(str, self.members))}}})"


def _mask_to_members(mask: int) -> tuple[int, ...]:
    out = []
    g = 0
    while mask:
        if mask & 1:
            out.append(g)
        mask >>= 1
        g += 1
    return tuple(out)


def _subgroup_from_mask(G: FiniteGroup, mask: int) -> Subgroup:
    members = _mask_to_members(mask)
    return Subgroup(members=members, order=len(members), index=G.order // len(members))


def make_subgroup(G: FiniteGroup, members) -> Subgroup:
    """Validate a member set (closure, identity, Lagrange) and wrap it."""
    mem = sorted(set(int(g) for g in members))
    if not mem or mem[0] != 0:
        raise InvalidSubgroup("a subgroup must contain the identity element 0")
    if mem[-1] >= G.order or mem[0] < 0:
        raise InvalidSubgroup(f"member id out of range 0..{G.order - 1}")
    mset = set(mem)
    for a in mem:
        if G.inv[a] not in mset:
            raise InvalidSubgroup(f"member set not closed under inverse at element {a}")
        for b in mem:
            if G.mul[a][b] not in mset:
                raise InvalidSubgroup(f"member set not closed under product at ({a},{b})")
    if G.order % len(mem) != 0:
        raise InvalidSubgroup("member count does not divide the group order")
    return Subgroup(members=tuple(mem), order=len(mem), index=G.order // len(mem))


def closure_mask(G: FiniteGroup, seed_mask: int) -> int:
    """Bitset of the subgroup generated by the elements in ``seed_mask``."""
    mask = seed_mask | 1
    elems = _mask_to_members(mask)
    frontier = list(elems)
    while frontier:
        fresh = []
        for a in frontier:
            row = G.mul[a]
            for b in elems:
                for c in (row[b], G.mul[b][a]):
                    if not (mask >> c) & 1:
                        mask |= 1 << c
                        fresh.append(c)
        elems = _mask_to_members(mask)
        frontier = fresh
    return mask


def conjugate_mask(G: FiniteGroup, mask: int, g: int) -> int:
    out = 0
    for h in _mask_to_members(mask):
        out |= 1 << G.conjugate(g, h)
    return out


# ---------------------------------------------------------------------------
# Construction


def group_from_cayley_table(table, label=None, *, associativity_bound=ASSOCIATIVITY_CHECK_BOUND) -> FiniteGroup:
    """Build a validated group from an n x n multiplication table.

    The table is checked to be a Latin square with a two-sided identity and
    two-sided inverses; associativity is verified exhaustively for orders up
    to ``associativity_bound``.  Elements are relabeled (by swapping two ids)
    so the identity becomes element 0.
    """
    n = len(table)
    if n == 0:
        raise NotLatinSquare("empty table")
    rows = []
    for i, row in enumerate(table):
        r = [int(x) for x in row]
        if len(r) != n:
            raise NotLatinSquare(f"row {i} has length {len(r)}, expected {n}")
        if sorted(r) != list(range(n)):
            raise NotLatinSquare(f"row {i} is not a permutation of 0..{n - 1}")
        rows.append(r)
    for j in range(n):
        col = [rows[i][j] for i in range(n)]
        if sorted(col) != list(range(n)):
            raise NotLatinSquare(f"column {j} is not a permutation of 0..{n - 1}")

    ident = None
    for e in range(n):
        if all(rows[e][g] == g for g in range(n)) and all(rows[g][e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("table has no two-sided identity element")

    if ident != 0:
        # swap ids 0 <-> ident; the minimal relabeling that puts the identity first
        p = list(range(n))
        p[0], p[ident] = ident, 0
        rows = [[p[rows[p[a]][p[b]]] for b in range(n)] for a in range(n)]

    inv = []
    for g in range(n):
        h = rows[g].index(0)
        if rows[h][g] != 0:
            raise NoInverse(f"element {g}: right inverse {h} is not a left inverse")
        inv.append(h)

    if n <= associativity_bound:
        for a in range(n):
            ra = rows[a]
            for b in range(n):
                ab = ra[b]
                rab = rows[ab]
                rb = rows[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise NotAssociative(f"(a*b)*c != a*(b*c) at triple ({a},{b},{c})")

    return FiniteGroup(
        order=n,
        mul=tuple(tuple(r) for r in rows),
        inv=tuple(inv),
        label=label,
    )


def compose_perms(p, q) -> tuple[int, ...]:
    """Function composition: apply q first, then p."""
    return tuple(p[q[i]] for i in range(len(p)))


def permutation_closure(generators, *, degree=None, max_order=MAX_CLOSURE_ORDER) -> list[tuple[int, ...]]:
    """Close a generator list under composition.

    Returns the element permutations with the identity first and the rest in
    breadth-first discovery order (products elem*gen, generators in input
    order), which fixes the element numbering of the resulting group.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        if not gens:
            degree = 1
        else:
            degree = len(gens[0])
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidPermutation(f"not a permutation of 0..{degree - 1}: {g}")

    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident: 0}
    i = 0
    while i < len(elems):
        e = elems[i]
        i += 1
        for g in gens:
            p = compose_perms(e, g)
            if p not in seen:
                if len(elems) >= max_order:
                    raise OrderLimitExceeded(f"closure exceeds the maximum order {max_order}")
                seen[p] = len(elems)
                elems.append(p)
    return elems


def group_from_perm_list(perms, label=None) -> FiniteGroup:
    """Multiplication table of an already-closed permutation list (identity first)."""
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    mul = tuple(tuple(index[compose_perms(perms[a], perms[b])] for b in range(n)) for a in range(n))
    inv = tuple(mul[a].index(0) for a in range(n))
    return FiniteGroup(order=n, mul=mul, inv=inv, label=label)


def group_from_permutations(generators, label=None, *, degree=None, max_order=MAX_CLOSURE_ORDER) -> FiniteGroup:
    """Group generated by permutations of 0..d-1, as a multiplication table."""
    return group_from_perm_list(permutation_closure(generators, degree=degree, max_order=max_order), label)


# ---------------------------------------------------------------------------
# Subgroup lattice


@dataclass
class SubgroupLattice:
    """All subgroups of a finite group, with inclusion, conjugacy and Mobius data.

    ``subgroups`` is canonically sorted by (order, member tuple); ``above[i]``
    lists every j with subgroups[i] <= subgroups[j] (including i itself);
    ``mu_cache`` memoizes the Mobius recursion and is the only mutable state
    (pure memoization: concurrent lookups agree regardless of interleaving).
    """

    group: FiniteGroup
    subgroups: tuple[Subgroup, ...]
    above: tuple[tuple[int, ...], ...]
    conj_classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    normalizers: tuple[int, ...]
    mu_cache: dict = field(default_factory=dict)

    def __post_init__(self):
        self._mask_index = {h.mask: i for i, h in enumerate(self.subgroups)}

    def __len__(self) -> int:
        return len(self.subgroups)

    @property
    def trivial_index(self) -> int:
        return 0

    @property
    def full_index(self) -> int:
        return len(self.subgroups) - 1

    def index_of(self, H: Subgroup) -> int:
        try:
            return self._mask_index[H.mask]
        except KeyError:
            raise InvalidSubgroup("not a subgroup of this lattice") from None

    def index_of_mask(self, mask: int) -> int:
        try:
            return self._mask_index[mask]
        except KeyError:
            raise InvalidSubgroup("not a subgroup of this lattice") from None

    def leq(self, i: int, j: int) -> bool:
        a, b = self.subgroups[i].mask, self.subgroups[j].mask
        return a & b == a

    def interval_indices(self, lo: int, hi: int) -> list[int]:
        himask = self.subgroups[hi].mask
        return [j for j in self.above[lo] if self.subgroups[j].mask & himask == self.subgroups[j].mask]

    def mobius_by_index(self, lo: int, hi: int) -> int:
        if lo == hi:
            return 1
        if not self.leq(lo, hi):
            return 0
        key = (lo, hi)
        cached = self.mu_cache.get(key)
        if cached is not None:
            return cached
        total = 0
        for j in self.interval_indices(lo, hi):
            if j != hi:
                total += self.mobius_by_index(lo, j)
        self.mu_cache[key] = -total
        return -total


def all_subgroups(G: FiniteGroup, *, max_order=MAX_LATTICE_ORDER) -> SubgroupLattice:
    """Enumerate every subgroup of G and assemble the lattice.

    Seeds with all cyclic subgroups, then saturates under joins of known
    subgroups with cyclic ones; every subgroup is the join of the cyclic
    subgroups of its elements, so the fixed point is the full lattice.
    """
    if G.order > max_order:
        raise LatticeLimitExceeded(
            f"group order {G.order} exceeds the subgroup-enumeration bound {max_order}"
        )

    cyclic = set()
    for g in G.elements():
        mask = 0
        a = g
        while True:
            mask |= 1 << a
            if a == 0:
                break
            a = G.mul[a][g]
        mask |= 1
        cyclic.add(mask)
    cyclic_list = sorted(cyclic)

    masks = set(cyclic)
    work = list(cyclic_list)
    while work:
        h = work.pop()
        for c in cyclic_list:
            if c & h == c:
                continue
            j = closure_mask(G, h | c)
            if j not in masks:
                masks.add(j)
                work.append(j)

    subs = [_subgroup_from_mask(G, m) for m in masks]
    subs.sort(key=lambda s: (s.order, s.members))
    subgroups = tuple(subs)
    mask_index = {h.mask: i for i, h in enumerate(subgroups)}

    above = tuple(
        tuple(j for j in range(len(subgroups)) if subgroups[i].mask & subgroups[j].mask == subgroups[i].mask)
        for i in range(len(subgroups))
    )

    class_of = [-1] * len(subgroups)
    conj_classes = []
    normalizers = []
    for i, H in enumerate(subgroups):
        norm_mask = 0
        for g in G.elements():
            if conjugate_mask(G, H.mask, g) == H.mask:
                norm_mask |= 1 << g
        normalizers.append(mask_index[norm_mask])
        if class_of[i] == -1:
            cls = sorted({mask_index[conjugate_mask(G, H.mask, g)] for g in G.elements()})
            cid = len(conj_classes)
            conj_classes.append(tuple(cls))
            for j in cls:
                class_of[j] = cid

    lat = SubgroupLattice(
        group=G,
        subgroups=subgroups,
        above=above,
        conj_classes=tuple(conj_classes),
        class_of=tuple(class_of),
        normalizers=tuple(normalizers),
    )
    for i, H in enumerate(subgroups):
        N = subgroups[normalizers[i]]
        assert len(lat.conj_classes[class_of[i]]) == G.order // N.order
    return lat


# ---------------------------------------------------------------------------
# Lattice operations


def interval(L: SubgroupLattice, H: Subgroup, K: Subgroup) -> list[Subgroup]:
    """All J with H <= J <= K, endpoints included, in canonical order."""
    lo, hi = L.index_of(H), L.index_of(K)
    if not L.leq(lo, hi):
        raise NotComparable("lower endpoint is not contained in the upper endpoint")
    return [L.subgroups[j] for j in L.interval_indices(lo, hi)]


def mobius(L: SubgroupLattice, H: Subgroup, K: Subgroup) -> int:
    """Mobius value mu(H, K) of the subgroup lattice; 0 for incomparable pairs."""
    return L.mobius_by_index(L.index_of(H), L.index_of(K))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest subgroup of G in which H is normal: {g : g H g^-1 = H}."""
    mask = 0
    for g in G.elements():
        if conjugate_mask(G, H.mask, g) == H.mask:
            mask |= 1 << g
    return _subgroup_from_mask(G, mask)


def conjugacy_class_of(L: SubgroupLattice, H: Subgroup) -> list[Subgroup]:
    """All distinct conjugates of H, in canonical order."""
    cid = L.class_of[L.index_of(H)]
    return [L.subgroups[j] for j in L.conj_classes[cid]]


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return all(conjugate_mask(G, H.mask, g) == H.mask for g in G.elements())


def quotient(G: FiniteGroup, N: Subgroup, label=None) -> FiniteGroup:
    """The group G/N on the cosets of a normal subgroup N.

    Cosets are ordered by their smallest member, which puts the identity
    coset first (element 0 of the quotient).
    """
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    coset_of = [-1] * G.order
    reps = []
    for g in G.elements():
        if coset_of[g] != -1:
            continue
        cid = len(reps)
        reps.append(g)
        for h in N.members:
            coset_of[G.mul[g][h]] = cid
    # reps are discovered in increasing order of smallest member already
    m = len(reps)
    mul = tuple(tuple(coset_of[G.mul[reps[a]][reps[b]]] for b in range(m)) for a in range(m))
    inv = tuple(mul[a].index(0) for a in range(m))
    return FiniteGroup(order=m, mul=mul, inv=inv, label=label)


def subgroup_as_group(G: FiniteGroup, H: Subgroup, label=None) -> FiniteGroup:
    """H itself as a standalone group (members relabeled 0..|H|-1 in order)."""
    pos = {g: i for i, g in enumerate(H.members)}
    mul = tuple(tuple(pos[G.mul[a][b]] for b in H.members) for a in H.members)
    inv = tuple(mul[a].index(0) for a in range(H.order))
    return FiniteGroup(order=H.order, mul=mul, inv=inv, label=label)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(members=(0,), order=1, index=G.order)


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(members=tuple(G.elements()), order=G.order, index=1)


# ---------------------------------------------------------------------------
# Text formats


def parse_cayley_text(text: str):
    """Parse the Cayley-table file format: first line n, then n rows of n ids."""
    lines = text.splitlines()
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        raise ParseError("expected the group order on the first line", line=1)
    try:
        n = int(lines[idx].strip())
    except ValueError:
        raise ParseError(f"expected an integer order, got {lines[idx].strip()!r}", line=idx + 1) from None
    if n <= 0:
        raise ParseError(f"group order must be positive, got {n}", line=idx + 1)
    table = []
    row_line = idx + 1
    for r in range(n):
        while row_line < len(lines) and not lines[row_line].strip():
            row_line += 1
        if row_line >= len(lines):
            raise ParseError(f"missing table row {r} (expected {n} rows)", line=len(lines) + 1)
        parts = lines[row_line].split()
        try:
            row = [int(p) for p in parts]
        except ValueError:
            raise ParseError(f"non-integer entry in table row {r}", line=row_line + 1) from None
        if len(row) != n:
            raise ParseError(f"table row {r} has {len(row)} entries, expected {n}", line=row_line + 1)
        for x in row:
            if not 0 <= x < n:
                raise ParseError(f"entry {x} out of range 0..{n - 1}", line=row_line + 1)
        table.append(row)
        row_line += 1
    return table


def parse_permutations_text(text: str):
    """Parse the permutation-generator format: one generator per line in cycle
    notation, e.g. ``(0 1 2)(3 4)``; ``()`` is the identity."""
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        cycles = []
        i = 0
        while i < len(s):
            if s[i].isspace():
                i += 1
                continue
            if s[i] != "(":
                raise ParseError(f"expected '(' at column {i + 1}", line=lineno, column=i + 1)
            j = s.find(")", i)
            if j == -1:
                raise ParseError("unclosed cycle", line=lineno, column=i + 1)
            body = s[i + 1 : j].replace(",", " ").split()
            try:
                pts = [int(p) for p in body]
            except ValueError:
                raise ParseError("cycle entries must be nonnegative integers", line=lineno, column=i + 1) from None
            if any(p < 0 for p in pts):
                raise ParseError("cycle entries must be nonnegative", line=lineno, column=i + 1)
            if len(set(pts)) != len(pts):
                raise ParseError("repeated point inside a cycle", line=lineno, column=i + 1)
            cycles.append(pts)
            i = j + 1
        flat = [p for c in cycles for p in c]
        if len(set(flat)) != len(flat):
            raise ParseError("cycles of one generator must be disjoint", line=lineno)
        raw.append((lineno, cycles))
    degree = 1
    for _, cycles in raw:
        for c in cycles:
            for p in c:
                degree = max(degree, p + 1)
    perms = []
    for _, cycles in raw:
        perm = list(range(degree))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                perm[a] = b
        perms.append(tuple(perm))
    return perms, degree
