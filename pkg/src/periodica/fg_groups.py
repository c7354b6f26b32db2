"""Finitely generated group inputs, reduced to finite groups.

Two input routes produce a finite group on which the lattice counting
machinery can run:

* group presentations ``< gens | relators >`` with optional subgroup
  generator words, put through Todd-Coxeter coset enumeration; the image of
  the action on cosets, together with the stabiliser of the subgroup coset,
  spans an interval isomorphic to [H, G] with matching indices, so least
  period counts transfer unchanged (the kernel of the action is the core of
  H, which lies inside every subgroup of the interval);

* sublattices of Z^d given by integer matrices, normalized by Smith reduction
  to a direct sum of cyclic groups (sublattices are normal, so the count
  reduces to the quotient).

Coset enumeration is HLT style with in-order coset definition and standard
coincidence processing, so coset numberings -- and hence all downstream
reports -- are deterministic.  An enumeration that does not close is reported
as inconclusive, never as "infinite index".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CapExceeded,
    CosetLimitExceeded,
    OrderLimitExceeded,
    PresentationSyntaxError,
    SingularMatrix,
    UnknownGenerator,
)
from .group_core import (
    FiniteGroup,
    MAX_CLOSURE_ORDER,
    Subgroup,
    group_from_perm_list,
    permutation_closure,
)

DEFAULT_MAX_COSETS = 4096
DEFAULT_MAX_INDEX = 12


# ---------------------------------------------------------------------------
# Presentations

# Words are tuples of nonzero signed integers: +k is generator k-1, -k its
# inverse.  Column form maps letter +k to column 2(k-1) and -k to 2(k-1)+1,
# so a column's inverse is column ^ 1.


@dataclass(frozen=True)
class Presentation:
    """A finitely presented group plus optional subgroup generator words."""

    generators: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]
    subgroup_words: tuple[tuple[int, ...], ...] = ()

    @property
    def rank(self) -> int:
        return len(self.generators)


def free_reduce(word) -> tuple[int, ...]:
    out = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word) -> tuple[int, ...]:
    return tuple(-letter for letter in reversed(word))


class _PresentationParser:
    """Recursive-descent parser for ``< gens | relators > [; H = words]``."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.gen_index: dict[str, int] = {}

    def error(self, message, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        raise PresentationSyntaxError(message, line=line, column=column)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.error(f"expected {ch!r}, got {got!r}")
        self.pos += 1

    def parse_ident(self):
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or not self.text[self.pos].islower():
            self.error("expected a lowercase generator name")
        while self.pos < len(self.text) and (
            self.text[self.pos].islower() or self.text[self.pos].isdigit() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos], start

    def parse_int(self):
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
            self.error("expected an integer exponent")
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def parse_word(self):
        """factor+ where factor = atom ['^' int]; atoms juxtapose."""
        letters = []
        while True:
            ch = self.peek()
            if ch.islower():
                name, start = self.parse_ident()
                if name not in self.gen_index:
                    line = self.text.count("\n", 0, start) + 1
                    col = start - (self.text.rfind("\n", 0, start) + 1) + 1
                    raise UnknownGenerator(f"unknown generator {name!r}", line=line, column=col)
                atom = (self.gen_index[name] + 1,)
            elif ch == "(":
                self.expect("(")
                atom = self.parse_word()
                self.expect(")")
            elif ch == "[":
                self.expect("[")
                u = self.parse_word()
                self.expect(",")
                v = self.parse_word()
                self.expect("]")
                atom = invert_word(u) + invert_word(v) + u + v
            else:
                break
            if self.peek() == "^":
                self.expect("^")
                k = self.parse_int()
                if k < 0:
                    atom = invert_word(atom) * (-k)
                else:
                    atom = atom * k
            letters.extend(atom)
        if not letters:
            self.error("expected a word")
        return tuple(letters)

    def parse_word_list(self, closing):
        words = []
        if self.peek() != closing and self.peek() != "":
            words.append(self.parse_word())
            while self.peek() == ",":
                self.expect(",")
                words.append(self.parse_word())
        return words

    def parse(self) -> Presentation:
        self.expect("<")
        gens = []
        if self.peek() != "|":
            name, _ = self.parse_ident()
            gens.append(name)
            while self.peek() == ",":
                self.expect(",")
                name, start = self.parse_ident()
                if name in gens:
                    self.error(f"duplicate generator {name!r}", pos=start)
                gens.append(name)
        self.gen_index = {g: i for i, g in enumerate(gens)}
        self.expect("|")
        relators = self.parse_word_list(">")
        self.expect(">")
        subgroup_words = []
        if self.peek() == ";":
            self.expect(";")
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] not in "Hh":
                self.error("expected 'H =' after ';'")
            self.pos += 1
            self.expect("=")
            subgroup_words = self.parse_word_list("")
        if self.peek() != "":
            self.error(f"unexpected trailing input {self.peek()!r}")
        return Presentation(
            generators=tuple(gens),
            relators=tuple(free_reduce(w) for w in relators),
            subgroup_words=tuple(free_reduce(w) for w in subgroup_words),
        )


def parse_presentation(text: str) -> Presentation:
    """Parse ``< gens | relators >`` with an optional ``; H = word, ...`` clause.

    Words use juxtaposition, ``^`` integer exponents (negative allowed),
    parentheses, and the commutator shorthand ``[u,v]`` = u^-1 v^-1 u v.
    Relators are freely reduced.
    """
    return _PresentationParser(text).parse()


def word_to_columns(word) -> tuple[int, ...]:
    return tuple(2 * (k - 1) if k > 0 else 2 * (-k - 1) + 1 for k in word)


# ---------------------------------------------------------------------------
# Coset tables and Todd-Coxeter enumeration


@dataclass(frozen=True)
class CosetTable:
    """A complete coset table: rows are cosets (0 is the subgroup itself),
    columns alternate generator and inverse (g0, g0^-1, g1, g1^-1, ...)."""

    gens: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    complete: bool = True

    @property
    def n_cosets(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return 2 * len(self.gens)

    def column(self, gen_index: int, inverse: bool = False) -> tuple[int, ...]:
        """The permutation a generator (or its inverse) induces on cosets."""
        c = 2 * gen_index + (1 if inverse else 0)
        return tuple(row[c] for row in self.rows)

    def trace(self, coset: int, word) -> int:
        """Follow a word (signed letters) from a coset."""
        for c in word_to_columns(word):
            coset = self.rows[coset][c]
        return coset


class _Enumerator:
    """HLT coset enumeration with union-find coincidence processing.

    Columns pair generator with inverse (column ^ 1); dead cosets keep their
    rows until the coincidence queue re-registers every edge.
    """

    def __init__(self, ncols: int, max_cosets: int):
        self.ncols = ncols
        self.max_cosets = max_cosets
        self.table = [[-1] * ncols]
        self.parent = [0]

    def rep(self, k: int) -> int:
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def alive(self, a: int) -> bool:
        return self.parent[a] == a

    def define(self, a: int, c: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise CosetLimitExceeded(
                f"enumeration did not close within {self.max_cosets} cosets "
                "(infinite index or insufficient budget; indistinguishable)"
            )
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(b)
        self.table[a][c] = b
        self.table[b][c ^ 1] = a
        return b

    def _merge(self, a: int, b: int, queue: list) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            for c in range(self.ncols):
                delta = table[gamma][c]
                if delta == -1:
                    continue
                table[delta][c ^ 1] = -1
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][c] != -1:
                    self._merge(nu, table[mu][c], queue)
                elif table[nu][c ^ 1] != -1:
                    self._merge(mu, table[nu][c ^ 1], queue)
                else:
                    table[mu][c] = nu
                    table[nu][c ^ 1] = mu

    def scan_and_fill(self, a: int, word_cols) -> None:
        table = self.table
        a = self.rep(a)
        f, i = a, 0
        b, j = a, len(word_cols) - 1
        while True:
            while i <= j and table[f][word_cols[i]] != -1:
                f = table[f][word_cols[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word_cols[j] ^ 1] != -1:
                b = table[b][word_cols[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word_cols[i]] = b
                table[b][word_cols[i] ^ 1] = f
                return
            self.define(f, word_cols[i])


def coset_enumerate(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the subgroup generated by ``P.subgroup_words``.

    Returns a complete table whose row count is the subgroup index, with live
    cosets renumbered in definition order.  Raises ``CosetLimitExceeded`` if
    the enumeration does not close within the budget.
    """
    if max_cosets < 1:
        raise CapExceeded(f"max_cosets must be positive, got {max_cosets}")
    ncols = 2 * P.rank
    enum = _Enumerator(ncols, max_cosets)
    relator_cols = [word_to_columns(w) for w in P.relators]
    for w in P.subgroup_words:
        enum.scan_and_fill(0, word_to_columns(w))
    alpha = 0
    while alpha < len(enum.table):
        if enum.alive(alpha):
            for w in relator_cols:
                enum.scan_and_fill(alpha, w)
                if not enum.alive(alpha):
                    break
            if enum.alive(alpha):
                for c in range(ncols):
                    if enum.table[alpha][c] == -1:
                        enum.define(alpha, c)
        alpha += 1

    live = [k for k in range(len(enum.table)) if enum.alive(k)]
    renumber = {old: new for new, old in enumerate(live)}
    rows = tuple(
        tuple(renumber[enum.rep(enum.table[old][c])] for c in range(ncols)) for old in live
    )
    return CosetTable(gens=P.generators, rows=rows, complete=True)


def validate_coset_table(T: CosetTable, P: Presentation) -> None:
    """Assert table consistency: paired permutation columns, all relators
    satisfied everywhere, subgroup words fixing coset 0, transitivity."""
    m = T.n_cosets
    for g in range(len(T.gens)):
        col = T.column(g)
        inv_col = T.column(g, inverse=True)
        assert sorted(col) == list(range(m)), f"column {g} is not a permutation"
        for a in range(m):
            assert inv_col[col[a]] == a, f"columns of generator {g} are not mutually inverse"
    for w in P.relators:
        for a in range(m):
            assert T.trace(a, w) == a, f"relator {w} fails at coset {a}"
    for w in P.subgroup_words:
        assert T.trace(0, w) == 0, f"subgroup word {w} moves coset 0"
    seen = {0}
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for c in range(T.ncols):
            b = T.rows[a][c]
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    assert len(seen) == m, "coset action is not transitive"


def coset_action_group(T: CosetTable, label=None, *, max_order: int = MAX_CLOSURE_ORDER):
    """The image of the group acting on the cosets, with the stabiliser of
    coset 0.

    The interval from the stabiliser to the image is order-isomorphic to the
    interval [H, G] with matching indices, so least period counts computed on
    the pair equal those of the original (presentation, subgroup)."""
    gen_perms = [T.column(g) for g in range(len(T.gens))]
    perms = permutation_closure(gen_perms, degree=T.n_cosets, max_order=max_order)
    G = group_from_perm_list(perms, label)
    members = tuple(i for i, p in enumerate(perms) if p[0] == 0)
    H = Subgroup(members=members, order=len(members), index=G.order // len(members))
    assert H.index == T.n_cosets, "stabiliser index must equal the coset count"
    return G, H


# ---------------------------------------------------------------------------
# Low-index subgroup search


def _standardize(rows, base: int):
    """Renumber cosets in first-visit row-major order from ``base``."""
    ncols = len(rows[0])
    order = [base]
    old2new = {base: 0}
    i = 0
    while i < len(order):
        for c in range(ncols):
            t = rows[order[i]][c]
            if t not in old2new:
                old2new[t] = len(order)
                order.append(t)
        i += 1
    return tuple(tuple(old2new[rows[old][c]] for c in range(ncols)) for old in order)


class _LowIndexSearch:
    """Backtracking over partial coset tables.

    Branches on the first undefined cell in row-major order, trying existing
    cosets (ascending) and then one new coset; after each choice, relator
    scans are driven to a fixed point, treating any forced collision of
    distinct cosets as a dead branch.  Complete tables are kept only when
    coset 0's standardized table is lexicographically least among all
    basepoints (first-in-class), which leaves one representative per
    conjugacy class of subgroups.
    """

    def __init__(self, P: Presentation, max_index: int):
        self.ncols = 2 * P.rank
        self.max_index = max_index
        self.relator_cols = [word_to_columns(w) for w in P.relators]
        self.table = [[-1] * self.ncols]
        self.found: dict[tuple, None] = {}

    def run(self):
        self._dfs()
        return sorted(self.found, key=lambda rows: (len(rows), rows))

    def _first_undefined(self):
        for a, row in enumerate(self.table):
            for c in range(self.ncols):
                if row[c] == -1:
                    return a, c
        return None

    def _scan(self, a: int, word, journal) -> bool:
        """Scan one relator at one coset, recording deductions; False on clash."""
        table = self.table
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] != -1:
                f = table[f][word[i]]
                i += 1
            if i > j:
                return f == b
            while j >= i and table[b][word[j] ^ 1] != -1:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                return False
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                journal.append((f, word[i]))
                return True
            return True  # gap of 2+: no information without defining cosets

    def _propagate(self, journal) -> bool:
        changed = True
        while changed:
            changed = False
            before = len(journal)
            for a in range(len(self.table)):
                for w in self.relator_cols:
                    if not self._scan(a, w, journal):
                        return False
            if len(journal) != before:
                changed = True
        return True

    def _undo(self, journal, created: bool):
        for a, c in reversed(journal):
            b = self.table[a][c]
            self.table[a][c] = -1
            self.table[b][c ^ 1] = -1
        if created:
            self.table.pop()

    def _dfs(self):
        cell = self._first_undefined()
        if cell is None:
            self._emit()
            return
        a, c = cell
        m = len(self.table)
        candidates = [b for b in range(m) if self.table[b][c ^ 1] == -1]
        if m < self.max_index:
            candidates.append(m)
        for b in candidates:
            created = b == m
            if created:
                self.table.append([-1] * self.ncols)
            # (a, c) and its mirror (b, c^1) are always distinct cells, and the
            # candidate filter guarantees the mirror is free
            journal = [(a, c)]
            self.table[a][c] = b
            self.table[b][c ^ 1] = a
            if self._propagate(journal):
                self._dfs()
            self._undo(journal, created)

    def _emit(self):
        rows = tuple(tuple(row) for row in self.table)
        base0 = _standardize(rows, 0)
        if all(_standardize(rows, b) >= base0 for b in range(1, len(rows))):
            self.found.setdefault(base0)


def low_index_subgroups(P: Presentation, max_index: int = DEFAULT_MAX_INDEX) -> list[CosetTable]:
    """All subgroups of index <= max_index, one per conjugacy class, as
    complete coset tables sorted by (index, table)."""
    if max_index < 1:
        raise CapExceeded(f"max_index must be positive, got {max_index}")
    search = _LowIndexSearch(P, max_index)
    tables = search.run()
    return [CosetTable(gens=P.generators, rows=rows, complete=True) for rows in tables]


def _transversal_words(T: CosetTable) -> list[tuple[int, ...]]:
    """Column words reaching each coset from 0 (first-visit row-major order)."""
    words: list = [None] * T.n_cosets
    words[0] = ()
    queue = [0]
    qi = 0
    while qi < len(queue):
        a = queue[qi]
        qi += 1
        for c in range(T.ncols):
            b = T.rows[a][c]
            if words[b] is None:
                words[b] = words[a] + (c,)
                queue.append(b)
    return words


def conjugate_count(T: CosetTable) -> int:
    """Number of distinct conjugates of the subgroup behind the table.

    A point is fixed by the whole coset-0 stabiliser iff it is fixed by every
    Schreier generator; the stabilisers of two points agree exactly when each
    fixes the other's basepoint, so the conjugate count is the coset count
    divided by the number of points fixed by all Schreier generators.
    """
    words = _transversal_words(T)
    rows = T.rows
    schreier = []
    for a in range(T.n_cosets):
        for c in range(T.ncols):
            b = rows[a][c]
            inv = tuple(x ^ 1 for x in reversed(words[b]))
            schreier.append(words[a] + (c,) + inv)
    fixed = 0
    for beta in range(T.n_cosets):
        ok = True
        for w in schreier:
            p = beta
            for c in w:
                p = rows[p][c]
            if p != beta:
                ok = False
                break
        if ok:
            fixed += 1
    assert T.n_cosets % fixed == 0
    return T.n_cosets // fixed


def subgroup_counts_by_index(tables) -> dict[int, int]:
    """Total subgroup counts per index (classes expanded by conjugate count)."""
    out: dict[int, int] = {}
    for T in tables:
        out[T.n_cosets] = out.get(T.n_cosets, 0) + conjugate_count(T)
    return dict(sorted(out.items()))


# ---------------------------------------------------------------------------
# Integer lattices in Z^d


@dataclass(frozen=True)
class IntegerMatrix:
    """A rows x cols integer matrix (arbitrary-precision entries)."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        assert len(self.entries) == self.rows
        assert all(len(r) == self.cols for r in self.entries)

    @staticmethod
    def from_rows(rows) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        return IntegerMatrix(rows=len(entries), cols=len(entries[0]) if entries else 0, entries=entries)


def parse_matrix_text(text: str) -> IntegerMatrix:
    """Rows separated by ';', entries by ',': e.g. ``2,1;0,3``."""
    rows = []
    for part in text.strip().split(";"):
        try:
            row = [int(x) for x in part.split(",")]
        except ValueError:
            raise SingularMatrix(f"matrix entries must be integers: {part!r}") from None
        rows.append(row)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise SingularMatrix("matrix rows must be nonempty and of equal length")
    return IntegerMatrix.from_rows(rows)


def _ordered_factorizations(n: int, parts: int):
    """All tuples of ``parts`` positive integers with the given product."""
    if parts == 1:
        yield (n,)
        return
    d = 1
    while d <= n:
        if n % d == 0:
            for rest in _ordered_factorizations(n // d, parts - 1):
                yield (d,) + rest
        d += 1


def hnf_sublattices(d: int, index: int) -> list[IntegerMatrix]:
    """All sublattices of Z^d of exactly the given index, one Hermite normal
    form representative each: upper triangular, positive diagonal, entries
    right of each pivot reduced modulo the pivot."""
    if d < 1:
        raise CapExceeded(f"dimension must be positive, got {d}")
    if index < 1:
        raise CapExceeded(f"index must be positive, got {index}")
    out = []
    for diag in _ordered_factorizations(index, d):
        slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
        ranges = [range(diag[i]) for i, _ in slots]

        def fill(k, current):
            if k == len(slots):
                entries = [[0] * d for _ in range(d)]
                for i in range(d):
                    entries[i][i] = diag[i]
                for (i, j), v in zip(slots, current):
                    entries[i][j] = v
                out.append(IntegerMatrix.from_rows(entries))
                return
            for v in ranges[k]:
                fill(k + 1, current + [v])

        fill(0, [])
    return out


def smith_normal_form(M: IntegerMatrix) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of an integer matrix (nonnegative,
    zeros trailing for rank deficiency)."""
    a = [list(r) for r in M.entries]
    nr, nc = M.rows, M.cols
    diag = []
    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot in the remaining submatrix
        pivot = None
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            done = True
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        done = False
            if not done:
                continue
            # clear row t
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done:
                break
        # enforce divisibility of the remaining submatrix by the pivot
        offender = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, nc):
                a[t][j] += a[offender][j]
            continue
        diag.append(abs(a[t][t]))
        t += 1
    diag += [0] * (min(nr, nc) - len(diag))
    return tuple(diag)


def direct_sum_cyclic(moduli, label=None) -> FiniteGroup:
    """Direct sum of cyclic groups Z_m for the given moduli (trivial if empty),
    elements encoded mixed-radix with the last modulus fastest."""
    mods = [int(m) for m in moduli if int(m) > 1]
    n = 1
    for m in mods:
        n *= m
    if label is None:
        label = "x".join(f"Z{m}" for m in mods) if mods else "Z1"

    def decode(x):
        out = []
        for m in reversed(mods):
            x, r = divmod(x, m)
            out.append(r)
        return out[::-1]

    def encode(parts):
        x = 0
        for p, m in zip(parts, mods):
            x = x * m + p
        return x

    mul = []
    for a in range(n):
        pa = decode(a)
        row = []
        for b in range(n):
            pb = decode(b)
            row.append(encode([(x + y) % m for x, y, m in zip(pa, pb, mods)]))
        mul.append(tuple(row))
    mul = tuple(mul)
    inv = tuple(row.index(0) for row in mul)
    return FiniteGroup(order=n, mul=mul, inv=inv, label=label)


def smith_quotient(M: IntegerMatrix, label=None, *, max_order: int = MAX_CLOSURE_ORDER) -> FiniteGroup:
    """The finite quotient Z^d / (column span of M) as a direct sum of cyclic
    groups, via Smith reduction.  M must be square with nonzero determinant;
    the group order is |det M|."""
    if M.rows != M.cols:
        raise SingularMatrix(f"sublattice matrix must be square, got {M.rows}x{M.cols}")
    diag = smith_normal_form(M)
    if any(d == 0 for d in diag):
        raise SingularMatrix("sublattice matrix is singular (determinant zero)")
    order = 1
    for d in diag:
        order *= d
    if order > max_order:
        raise OrderLimitExceeded(f"quotient order {order} exceeds the bound {max_order}")
    return direct_sum_cyclic([d for d in diag if d > 1], label=label)
