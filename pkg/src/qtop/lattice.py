"""Finite complete lattices with exact, table-driven order arithmetic.

Elements are the integers 0..n-1.  The order is stored as an explicit
boolean matrix (no Hasse compression; carriers stay small and clarity wins
over space), and join/meet tables are derived once at validation time.
Everything is immutable after validation, so values can be shared freely
between threads and used as cache keys.

The predicates in the second half of the module compare three ways of
saying "this finite lattice looks like a closed-set lattice": generation of
every element as a join of coprimes, the coframe distributive law, and
constructive complete distributivity via the totally-below relation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import MissingJoin, MissingMeet, NotAPartialOrder, SizeLimitExceeded

#: brute-force predicates enumerate all 2^n subsets; refuse anything bigger
BRUTE_FORCE_CAP = 16


@dataclass(frozen=True, repr=False)
class FiniteLattice:
    size: int
    leq: tuple[tuple[bool, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    bottom: int
    top: int
    names: tuple[str, ...] | None = None

    def le(self, x: int, y: int) -> bool:
        return self.leq[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_table[x][y]

    def sup(self, xs) -> int:
        """Join of an arbitrary (possibly empty) iterable; sup([]) = bottom."""
        acc = self.bottom
        table = self.join_table
        for x in xs:
            acc = table[acc][x]
        return acc

    def inf(self, xs) -> int:
        """Meet of an arbitrary (possibly empty) iterable; inf([]) = top."""
        acc = self.top
        table = self.meet_table
        for x in xs:
            acc = table[acc][x]
        return acc

    @property
    def elements(self) -> range:
        return range(self.size)

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else f"e{x}"

    def __repr__(self):
        return f"FiniteLattice(size={self.size})"


def validate_lattice(leq, names=None) -> FiniteLattice:
    """Check a relation matrix for the finite-complete-lattice laws.

    Raises NotAPartialOrder / MissingJoin / MissingMeet with a witness for
    the first violated law; on success returns the lattice with derived
    join/meet tables, bottom and top.
    """
    rows = tuple(tuple(bool(v) for v in row) for row in leq)
    n = len(rows)
    if n < 1:
        raise NotAPartialOrder("carrier must be nonempty", witness=())
    if any(len(row) != n for row in rows):
        raise NotAPartialOrder("relation matrix is not square", witness=())
    if names is not None:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise NotAPartialOrder("names list does not match carrier size", witness=())

    for i in range(n):
        if not rows[i][i]:
            raise NotAPartialOrder(f"not reflexive at {i}", witness=(i,))
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] and rows[j][i]:
                raise NotAPartialOrder(f"antisymmetry fails on ({i}, {j})", witness=(i, j))
    for i in range(n):
        for j in range(n):
            if not rows[i][j]:
                continue
            for k in range(n):
                if rows[j][k] and not rows[i][k]:
                    raise NotAPartialOrder(
                        f"transitivity fails on ({i}, {j}, {k})", witness=(i, j, k)
                    )

    join_t = [[0] * n for _ in range(n)]
    meet_t = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            ubs = [z for z in range(n) if rows[x][z] and rows[y][z]]
            least = next((z for z in ubs if all(rows[z][w] for w in ubs)), None)
            if least is None:
                raise MissingJoin(f"elements {x} and {y} have no join", witness=(x, y))
            join_t[x][y] = join_t[y][x] = least
            lbs = [z for z in range(n) if rows[z][x] and rows[z][y]]
            greatest = next((z for z in lbs if all(rows[w][z] for w in lbs)), None)
            if greatest is None:
                raise MissingMeet(f"elements {x} and {y} have no meet", witness=(x, y))
            meet_t[x][y] = meet_t[y][x] = greatest

    bottom = 0
    top = 0
    for x in range(1, n):
        bottom = meet_t[bottom][x]
        top = join_t[top][x]
    return FiniteLattice(
        size=n,
        leq=rows,
        join_table=tuple(tuple(r) for r in join_t),
        meet_table=tuple(tuple(r) for r in meet_t),
        bottom=bottom,
        top=top,
        names=names,
    )


def join(L: FiniteLattice, elements) -> int:
    return L.sup(elements)


def meet(L: FiniteLattice, elements) -> int:
    return L.inf(elements)


@functools.lru_cache(maxsize=None)
def coprimes(L: FiniteLattice) -> tuple[int, ...]:
    """Elements p > bottom such that p <= u v v forces p <= u or p <= v.

    The pairwise check suffices: finite joins are folds of binary ones.
    Bottom is never counted as coprime.
    """
    leq = L.leq
    join_t = L.join_table
    out = []
    for p in range(L.size):
        if p == L.bottom:
            continue
        leq_p = leq[p]
        if all(
            not leq_p[join_t[u][v]] or leq_p[u] or leq_p[v]
            for u in range(L.size)
            for v in range(L.size)
        ):
            out.append(p)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def is_sup_generated_by_coprimes(L: FiniteLattice) -> tuple[bool, int | None]:
    """Does every element equal the join of the coprimes below it?

    Returns (verdict, first offending element or None).  The equivalent
    separation criterion -- (for all coprime p: p <= x implies p <= y)
    implies x <= y -- is evaluated too and both answers are asserted to
    agree.
    """
    cop = coprimes(L)
    leq = L.leq
    witness = None
    for a in range(L.size):
        if L.sup(p for p in cop if leq[p][a]) != a:
            witness = a
            break
    generated = witness is None

    separated = all(
        leq[x][y]
        for x in range(L.size)
        for y in range(L.size)
        if all(leq[p][y] for p in cop if leq[p][x])
    )
    assert separated == generated, "sup-generation criteria disagree"
    return generated, witness


def is_coframe(L: FiniteLattice) -> tuple[bool, tuple[int, int, int] | None]:
    """Binary distributivity x v (y ^ z) = (x v y) ^ (x v z) over all triples.

    In a finite lattice arbitrary infima are folds of binary ones, so this
    already decides whether finite joins distribute over arbitrary meets.
    """
    join_t = L.join_table
    meet_t = L.meet_table
    for x in range(L.size):
        for y in range(L.size):
            for z in range(L.size):
                if join_t[x][meet_t[y][z]] != meet_t[join_t[x][y]][join_t[x][z]]:
                    return False, (x, y, z)
    return True, None


def totally_below(L: FiniteLattice, x: int, a: int) -> bool:
    """Brute force: every subset B with a <= sup(B) contains some b >= x.

    Enumerates all 2^n subsets, including the empty one (which is why
    nothing is totally below bottom).
    """
    if L.size > BRUTE_FORCE_CAP:
        raise SizeLimitExceeded(
            f"totally_below enumerates 2^{L.size} subsets; cap is {BRUTE_FORCE_CAP}"
        )
    n = L.size
    leq = L.leq
    join_t = L.join_table
    bot = L.bottom
    leq_a = [leq[a][z] for z in range(n)]
    leq_x_mask = sum(1 << b for b in range(n) if leq[x][b])
    for B in range(1 << n):
        s = B
        acc = bot
        while s:
            low = s & -s
            acc = join_t[acc][low.bit_length() - 1]
            s ^= low
        if leq_a[acc] and not (B & leq_x_mask):
            return False
    return True


def _totally_below_direct(L: FiniteLattice, x: int, a: int) -> bool:
    # independent route: the worst subset is everything not above x
    bad = L.sup(b for b in range(L.size) if not L.leq[x][b])
    return not L.leq[a][bad]


def way_below(L: FiniteLattice, x: int, a: int) -> bool:
    """Way-below via the finite reduction: x << a iff x <= a.

    Every directed subset of a finite lattice contains its own join, so the
    defining quantification collapses to plain order.  ``way_below_brute``
    runs the literal directed-subset search for cross-checking.
    """
    return L.leq[x][a]


def way_below_brute(L: FiniteLattice, x: int, a: int) -> bool:
    if L.size > BRUTE_FORCE_CAP:
        raise SizeLimitExceeded(
            f"way_below_brute enumerates 2^{L.size} subsets; cap is {BRUTE_FORCE_CAP}"
        )
    n = L.size
    leq = L.leq
    for D in range(1, 1 << n):
        members = [d for d in range(n) if D >> d & 1]
        directed = all(
            any(leq[d1][e] and leq[d2][e] for e in members)
            for d1 in members
            for d2 in members
        )
        if not directed:
            continue
        if leq[a][L.sup(members)] and not any(leq[x][d] for d in members):
            return False
    return True


def is_ccd(L: FiniteLattice) -> tuple[bool, int | None]:
    """Constructive complete distributivity: a = sup{x : x totally below a}."""
    if L.size > BRUTE_FORCE_CAP:
        raise SizeLimitExceeded(
            f"is_ccd needs totally_below; cap is {BRUTE_FORCE_CAP}"
        )
    for a in range(L.size):
        if L.sup(x for x in range(L.size) if totally_below(L, x, a)) != a:
            return False, a
    return True, None


@dataclass(frozen=True)
class SpatialEmbeddingReport:
    """chi(x) = {p coprime : p <= x}, with the preservation bookkeeping.

    ``chi_all_meets`` says every characteristic map chi_p preserves
    arbitrary meets (binary plus empty checks; folds give the rest in a
    finite lattice).  ``chi_finite_joins_exactly_coprimes`` says chi_p
    preserves finite joins precisely for the coprime p.
    """

    images: tuple[frozenset[int], ...]
    injective: bool
    preserves_binary_meets: bool
    preserves_binary_joins: bool
    chi_all_meets: bool
    chi_finite_joins_exactly_coprimes: bool


def spatial_embedding(L: FiniteLattice) -> SpatialEmbeddingReport:
    cop = coprimes(L)
    leq = L.leq
    n = L.size
    join_t = L.join_table
    meet_t = L.meet_table

    images = tuple(frozenset(p for p in cop if leq[p][x]) for x in range(n))
    injective = len(set(images)) == n
    meets_ok = all(
        images[meet_t[x][y]] == images[x] & images[y]
        for x in range(n)
        for y in range(n)
    )
    joins_ok = all(
        images[join_t[x][y]] == images[x] | images[y]
        for x in range(n)
        for y in range(n)
    )

    chi_all_meets = True
    chi_joins_iff = True
    for p in range(n):
        leq_p = leq[p]
        if not all(
            leq_p[meet_t[x][y]] == (leq_p[x] and leq_p[y])
            for x in range(n)
            for y in range(n)
        ):
            chi_all_meets = False
        preserves_fin_joins = not leq_p[L.bottom] and all(
            leq_p[join_t[x][y]] == (leq_p[x] or leq_p[y])
            for x in range(n)
            for y in range(n)
        )
        if preserves_fin_joins != (p in cop):
            chi_joins_iff = False

    if is_sup_generated_by_coprimes(L)[0]:
        assert injective and meets_ok and joins_ok, (
            "sup-generated lattice must embed into a power of the two-chain"
        )
    return SpatialEmbeddingReport(
        images=images,
        injective=injective,
        preserves_binary_meets=meets_ok,
        preserves_binary_joins=joins_ok,
        chi_all_meets=chi_all_meets,
        chi_finite_joins_exactly_coprimes=chi_joins_iff,
    )


def product_lattice(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Componentwise order on pairs; element (i, j) gets index i*|L2| + j."""
    n1, n2 = L1.size, L2.size
    size = n1 * n2
    rows = [
        [
            L1.leq[i1][j1] and L2.leq[i2][j2]
            for j1 in range(n1)
            for j2 in range(n2)
        ]
        for i1 in range(n1)
        for i2 in range(n2)
    ]
    names = tuple(
        f"({L1.name(i1)},{L2.name(i2)})" for i1 in range(n1) for i2 in range(n2)
    )
    return validate_lattice(rows, names=names)
