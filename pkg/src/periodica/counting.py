"""Exact counts of configurations with a prescribed least period.

For a subgroup H of a finite group G and an alphabet of size q, ``psi``
computes the number of functions G -> A whose translation stabiliser is
exactly H, by Mobius inversion over the subgroup lattice:

    psi_H = sum over K in [H, G] of mu(H, K) * q^[G:K]

Derived quantities: psi_class = |[H]| * psi_H counts configurations whose
stabiliser is any conjugate of H, and alpha = psi_class / [G:H] counts the
G-orbits with that stabiliser class (the division is always exact).

Closed forms cover cyclic, prime-power cyclic, and rank-two elementary
abelian quotients; ``classify_small_alpha`` scans all normal-period cases
with small orbit counts; ``table_small_values`` tabulates alpha for the
eight quotients of order at most 7.

All arithmetic is exact (Python integers); q^[G:K] leaves 64 bits already
at q=2, index 64.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, replace

from .errors import (
    AlphabetTooSmall,
    CapExceeded,
    CatalogIncomplete,
    DivisibilityViolation,
    NotAChain,
    NotPrime,
)
from .group_core import (
    FiniteGroup,
    Subgroup,
    SubgroupLattice,
    all_subgroups,
    closure_mask,
    quotient,
    subgroup_as_group,
    trivial_subgroup,
)

MAX_ALPHABET = 2**64 - 1
MAX_INDEX = 4096


def _check_q(q: int) -> None:
    if q < 2:
        raise AlphabetTooSmall(f"alphabet size must be at least 2, got {q}")
    if q > MAX_ALPHABET:
        raise CapExceeded(f"alphabet size {q} exceeds the cap 2^64-1")


def _check_index(index: int) -> None:
    if index < 1:
        raise CapExceeded(f"index must be positive, got {index}")
    if index > MAX_INDEX:
        raise CapExceeded(f"index {index} exceeds the cap {MAX_INDEX}")


def fix_count(index: int, q: int) -> int:
    """Number of configurations fixed by a subgroup of the given index: q^index."""
    _check_q(q)
    _check_index(index)
    return q**index


def _exact_div(a: int, b: int, what: str) -> int:
    if a % b != 0:
        raise DivisibilityViolation(f"{what}: {a} is not divisible by {b}")
    return a // b


@dataclass(frozen=True)
class TermEntry:
    """One summand of the inversion formula: mu(H, K) * q^[G:K]."""

    members: tuple[int, ...]
    mu: int
    index: int


@dataclass(frozen=True)
class CountReport:
    """Full result record for one (group, subgroup, q) query.

    ``terms`` expands the signed sum defining ``psi``; ``psi_class`` and
    ``alpha`` follow by the conjugacy-class size and orbit-size division.
    """

    group_label: str
    subgroup: Subgroup
    q: int
    index: int
    class_size: int
    psi: int
    psi_class: int
    alpha: int
    terms: tuple[TermEntry, ...]

    def to_json_dict(self) -> dict:
        """Stable JSON form; unbounded counts serialize as decimal strings."""
        return {
            "group": self.group_label,
            "subgroup_members": list(self.subgroup.members),
            "q": self.q,
            "index": self.index,
            "class_size": self.class_size,
            "psi": str(self.psi),
            "psi_class": str(self.psi_class),
            "alpha": str(self.alpha),
            "terms": [
                {"members": list(t.members), "mu": str(t.mu), "index": t.index}
                for t in self.terms
            ],
        }


def alpha_from_psi(report: CountReport) -> CountReport:
    """Fill psi_class and alpha from psi; the orbit-size division must be exact."""
    psi_class = report.class_size * report.psi
    alpha = _exact_div(psi_class, report.index, "orbit count")
    return replace(report, psi_class=psi_class, alpha=alpha)


def psi(L: SubgroupLattice, H: Subgroup, q: int) -> CountReport:
    """Count configurations with stabiliser exactly H, with the full term list."""
    _check_q(q)
    i = L.index_of(H)
    terms = []
    total = 0
    for j in L.interval_indices(i, L.full_index):
        K = L.subgroups[j]
        mu = L.mobius_by_index(i, j)
        terms.append(TermEntry(members=K.members, mu=mu, index=K.index))
        total += mu * fix_count(K.index, q)
    if total < 0:
        raise DivisibilityViolation(f"negative configuration count {total} (internal bug)")
    class_size = len(L.conj_classes[L.class_of[i]])
    report = CountReport(
        group_label=L.group.name,
        subgroup=H,
        q=q,
        index=H.index,
        class_size=class_size,
        psi=total,
        psi_class=0,
        alpha=0,
        terms=tuple(terms),
    )
    return alpha_from_psi(report)


def psi_normal(Q: FiniteGroup, q: int) -> CountReport:
    """Count for a normal period, reduced to the quotient: least period trivial in Q."""
    L = all_subgroups(Q)
    return psi(L, trivial_subgroup(Q), q)


def psi_chain(index_h: int, index_h1: int, q: int) -> int:
    """Chain-interval shortcut: q^[G:H] - q^[G:H1], H1 the unique cover of H.

    The caller asserts that the interval [H, G] is a chain; use
    ``psi_chain_checked`` to have that verified against a lattice.
    """
    _check_q(q)
    _check_index(index_h)
    _check_index(index_h1)
    if index_h1 >= index_h or index_h % index_h1 != 0:
        raise NotAChain(
            f"cover index {index_h1} must properly divide the subgroup index {index_h}"
        )
    return q**index_h - q**index_h1


def psi_chain_checked(L: SubgroupLattice, H: Subgroup, q: int) -> int:
    """Chain shortcut that first verifies [H, G] really is a chain."""
    i = L.index_of(H)
    idxs = L.interval_indices(i, L.full_index)
    for a in range(len(idxs)):
        for b in range(a + 1, len(idxs)):
            if not (L.leq(idxs[a], idxs[b]) or L.leq(idxs[b], idxs[a])):
                raise NotAChain("interval [H, G] is not totally ordered")
    if len(idxs) < 2:
        raise NotAChain("degenerate chain: H = G has no cover")
    # canonical order sorts by order, so on a chain it is the chain order
    h1 = L.subgroups[idxs[1]]
    return psi_chain(H.index, h1.index, q)


# ---------------------------------------------------------------------------
# Number-theoretic closed forms


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def classical_mobius(d: int) -> int:
    """Mobius function of the divisibility order on positive integers."""
    if d < 1:
        raise CapExceeded(f"mobius argument must be positive, got {d}")
    count = 0
    x = d
    p = 2
    while p * p <= x:
        if x % p == 0:
            x //= p
            if x % p == 0:
                return 0
            count += 1
        p += 1 if p == 2 else 2
    if x > 1:
        count += 1
    return -1 if count % 2 else 1


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def psi_cyclic(n: int, q: int) -> int:
    """Least-period count for a cyclic quotient of order n:
    sum over d | n of mobius(d) * q^(n/d)."""
    _check_q(q)
    _check_index(n)
    return sum(classical_mobius(d) * q ** (n // d) for d in _divisors(n))


def psi_prime_power(p: int, k: int, q: int) -> int:
    """Cyclic quotient of order p^k: q^(p^k) - q^(p^(k-1))."""
    _check_q(q)
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise CapExceeded(f"exponent must be at least 1, got {k}")
    _check_index(p**k)
    return q ** (p**k) - q ** (p ** (k - 1))


def psi_elementary_p2(p: int, q: int) -> int:
    """Elementary abelian quotient of rank 2: q^(p^2) - (p+1) q^p + p q.

    The p+1 subgroups of order p account for every proper nontrivial
    subgroup, which pins the Mobius values down.
    """
    _check_q(q)
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    _check_index(p * p)
    return q ** (p * p) - (p + 1) * q**p + p * q


# ---------------------------------------------------------------------------
# Lyndon words / aperiodic necklaces


def aperiodic_necklace_count(n: int, q: int) -> int:
    """Aperiodic necklaces (= Lyndon words) of length n over q letters."""
    return _exact_div(psi_cyclic(n, q), n, "necklace count")


def lyndon_words(n: int, q: int):
    """Yield the Lyndon words of length exactly n over 0..q-1 in
    lexicographic order (periodic-extension successor method)."""
    _check_q(q)
    if n < 1:
        raise CapExceeded(f"word length must be positive, got {n}")
    w = [0]
    while True:
        if len(w) == n:
            yield tuple(w)
        w = [w[i % len(w)] for i in range(n)]
        while w and w[-1] == q - 1:
            w.pop()
        if not w:
            return
        w[-1] += 1


def is_lyndon(word) -> bool:
    """True iff the word is strictly smaller than all of its proper rotations
    (hence aperiodic and minimal in its rotation class)."""
    w = tuple(word)
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


# ---------------------------------------------------------------------------
# Automorphism-factor structure


@dataclass(frozen=True)
class QuotientDescriptor:
    """Structural fingerprint of a normalizer quotient N_G(H)/H: its order,
    the elementary divisors of its abelianization, and an abelian flag."""

    order: int
    abelian_invariants: tuple[int, ...]
    is_abelian: bool


@dataclass(frozen=True)
class AutFactor:
    quotient: QuotientDescriptor
    alpha: int
    index: int
    class_size: int


@dataclass(frozen=True)
class AutDescription:
    """One factor per conjugacy class of subgroups; the wreath-product pieces
    of the automorphism group of the full shift over a finite group."""

    group_label: str
    q: int
    factors: tuple[AutFactor, ...]


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    """Commutator subgroup of G."""
    seed = 1
    for a in G.elements():
        for b in G.elements():
            c = G.mul[G.inv[a]][G.mul[G.inv[b]][G.mul[a][b]]]
            seed |= 1 << c
    mask = closure_mask(G, seed)
    members = tuple(g for g in G.elements() if (mask >> g) & 1)
    return Subgroup(members=members, order=len(members), index=G.order // len(members))


def abelian_invariants(A: FiniteGroup) -> tuple[int, ...]:
    """Elementary divisors (prime-power cyclic factors) of an abelian group,
    recovered by counting solutions of x^(p^j) = identity."""
    n = A.order
    if n == 1:
        return ()
    out = []
    x, p = n, 2
    primes = []
    while p * p <= x:
        if x % p == 0:
            primes.append(p)
            while x % p == 0:
                x //= p
        p += 1 if p == 2 else 2
    if x > 1:
        primes.append(x)
    for p in primes:
        logs = [0]
        j = 1
        while True:
            cnt = sum(1 for a in range(n) if A.power(a, p**j) == 0)
            e, c = 0, cnt
            while c > 1:
                assert c % p == 0, "subgroup size must be a p-power"
                c //= p
                e += 1
            logs.append(e)
            if logs[-1] == logs[-2]:
                break
            j += 1
        at_least = [logs[j] - logs[j - 1] for j in range(1, len(logs))]
        at_least.append(0)
        for j in range(len(at_least) - 1):
            out.extend([p ** (j + 1)] * (at_least[j] - at_least[j + 1]))
    return tuple(sorted(out))


def abelianization_invariants(G: FiniteGroup) -> tuple[int, ...]:
    return abelian_invariants(quotient(G, derived_subgroup(G)))


def aut_structure(L: SubgroupLattice, q: int) -> AutDescription:
    """Describe the wreath factors: for each class [H], the normalizer
    quotient N_G(H)/H and the orbit count alpha of the class."""
    _check_q(q)
    G = L.group
    factors = []
    covered = 0
    for cls in L.conj_classes:
        rep = cls[0]
        H = L.subgroups[rep]
        N = L.subgroups[L.normalizers[rep]]
        Ngrp = subgroup_as_group(G, N)
        pos = {g: i for i, g in enumerate(N.members)}
        H_in_N = Subgroup(
            members=tuple(sorted(pos[g] for g in H.members)),
            order=H.order,
            index=N.order // H.order,
        )
        Qgrp = quotient(Ngrp, H_in_N)
        desc = QuotientDescriptor(
            order=Qgrp.order,
            abelian_invariants=abelianization_invariants(Qgrp),
            is_abelian=Qgrp.is_abelian(),
        )
        report = psi(L, H, q)
        factors.append(
            AutFactor(quotient=desc, alpha=report.alpha, index=H.index, class_size=len(cls))
        )
        covered += report.alpha * H.index
    if covered != q**G.order:
        raise DivisibilityViolation(
            f"orbit classes cover {covered} of {q**G.order} configurations (internal bug)"
        )
    return AutDescription(group_label=G.name, q=q, factors=tuple(factors))


# ---------------------------------------------------------------------------
# Small-alpha classification scan


@dataclass(frozen=True)
class ClassificationHit:
    alpha: int
    group_label: str
    order: int
    q: int


@dataclass(frozen=True)
class ScanCell:
    """One examined (quotient order, q) cell; ``bound`` is the proven lower
    bound ceil((q^n - q^(n-1)) / n) on any alpha arising in the cell."""

    order: int
    q: int
    bound: int


@dataclass(frozen=True)
class ClassificationResult:
    """Hits plus the certificate that the scan region was closed.

    ``frontier`` lists, for each examined order, the first excluded q (whose
    bound already exceeds alpha_max) and finally the first excluded order at
    q = 2; monotonicity of the bound in both arguments makes these witnesses
    sufficient.
    """

    alpha_max: int
    hits: tuple[ClassificationHit, ...]
    cells: tuple[ScanCell, ...]
    frontier: tuple[ScanCell, ...]

    def attaining(self, value: int) -> tuple[ClassificationHit, ...]:
        return tuple(h for h in self.hits if h.alpha == value)


def _aperiodic_bound(order: int, q: int) -> int:
    """ceil((q^n - q^(n-1)) / n): the aperiodic-count lower bound divided by
    the orbit size.

    The count-level inequality psi_1(Q; q) >= q^n - q^(n-1) is the form that
    holds (the analogous inequality stated directly for alpha fails already
    at n = q = 2, where alpha = 1 but the expression gives 2); dividing by
    the orbit size n yields a valid, monotone lower bound for alpha.
    """
    num = q ** (order - 1) * (q - 1)
    return -(-num // order)


def _cell_alphas(args):
    label, mul_table, qs = args
    mul = tuple(tuple(r) for r in mul_table)
    inv = tuple(row.index(0) for row in mul)
    G = FiniteGroup(order=len(mul), mul=mul, inv=inv, label=label)
    L = all_subgroups(G)
    triv = trivial_subgroup(G)
    return [(label, G.order, q, psi(L, triv, q).alpha) for q in qs]


def classify_small_alpha(alpha_max: int, catalog=None, *, jobs: int = 1) -> ClassificationResult:
    """Exhaustively list all (quotient, q) with orbit count alpha <= alpha_max.

    The scan walks (order, q) cells while the aperiodic lower bound stays
    at or below alpha_max; outside that region every alpha provably exceeds
    the threshold, so the listing is complete.  Needs a catalog containing
    *all* groups of each order in the region.
    """
    if alpha_max < 1:
        raise CapExceeded(f"alpha_max must be at least 1, got {alpha_max}")
    if catalog is None:
        from .catalog import classification_catalog

        catalog = classification_catalog()

    cells = []
    frontier = []
    tasks = []
    n = 2
    while True:
        if _aperiodic_bound(n, 2) > alpha_max:
            frontier.append(ScanCell(order=n, q=2, bound=_aperiodic_bound(n, 2)))
            break
        qs = []
        q = 2
        while _aperiodic_bound(n, q) <= alpha_max:
            cells.append(ScanCell(order=n, q=q, bound=_aperiodic_bound(n, q)))
            qs.append(q)
            q += 1
        frontier.append(ScanCell(order=n, q=q, bound=_aperiodic_bound(n, q)))
        if n not in catalog.complete_orders:
            raise CatalogIncomplete(
                f"scan needs every group of order {n}, which the catalog does not cover"
            )
        for G in catalog.groups_of_order(n):
            tasks.append((G.name, G.mul, tuple(qs)))
        n += 1

    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            chunks = pool.map(_cell_alphas, tasks)
    else:
        chunks = [_cell_alphas(t) for t in tasks]

    hits = []
    for chunk in chunks:
        for label, order, q, alpha in chunk:
            if alpha <= alpha_max:
                hits.append(ClassificationHit(alpha=alpha, group_label=label, order=order, q=q))
    hits.sort(key=lambda h: (h.alpha, h.order, h.q, h.group_label))
    return ClassificationResult(
        alpha_max=alpha_max,
        hits=tuple(hits),
        cells=tuple(cells),
        frontier=tuple(frontier),
    )


# ---------------------------------------------------------------------------
# The reference table of small alpha values


TABLE_GROUPS = ("Z2", "Z3", "Z2xZ2", "Z4", "Z5", "S3", "Z6", "Z7")
TABLE_ALPHABETS = (2, 3, 4, 5)


def table_small_values() -> tuple[tuple[int, ...], ...]:
    """The 8 x 4 grid of alpha values for the quotients Z2, Z3, Z2xZ2, Z4,
    Z5, S3, Z6, Z7 at q = 2..5, computed through the generic lattice path
    (not the closed forms)."""
    from .catalog import builtin_group

    rows = []
    for name in TABLE_GROUPS:
        G = builtin_group(name)
        L = all_subgroups(G)
        triv = trivial_subgroup(G)
        rows.append(tuple(psi(L, triv, q).alpha for q in TABLE_ALPHABETS))
    return tuple(rows)


def table_csv(q_max: int = 5) -> str:
    """Render the reference table as CSV (header ``group,q2,...``)."""
    if not 2 <= q_max <= 5:
        raise CapExceeded(f"q_max must be between 2 and 5, got {q_max}")
    cols = [q for q in TABLE_ALPHABETS if q <= q_max]
    lines = ["group," + ",".join(f"q{q}" for q in cols)]
    values = table_small_values()
    for name, row in zip(TABLE_GROUPS, values):
        lines.append(name + "," + ",".join(str(row[q - 2]) for q in cols))
    return "\n".join(lines) + "\n"
