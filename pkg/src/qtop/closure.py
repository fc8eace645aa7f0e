"""Quantale-valued closure structures on finite sets.

A structure is the full table of values (cA)(x): subsets of the base set
are bitmasks 0..2^n-1, points are 0..n-1, and table[A][x] is a quantale
element index.  The type itself assumes no axioms; reflexivity (R),
transitivity (T), finite additivity (A) and the two monotonicity variants
are evaluated by ``check_axioms`` into a CheckReport whose failures always
carry a concrete witness.

The operator bar(c) joins v (x) c(c^v A) over all v and reformulates (T)
as bar(c) <= c; the finitely additive core meets the values of all finite
covers and is the coreflection of a space onto its largest topological
substructure below.  Covers are handled as *sets* of nonempty parts:
joins are commutative, associative and idempotent, so the order and
repetition in a cover string never change its value, and parts equal to
the empty set can only raise a cover's value.  Both reductions are
cross-checked against literal oracles in the test suite before being
trusted (``core`` has ``include_empty_parts`` and ``core_string_oracle``
escape hatches for exactly that purpose).

All functions are pure; all values are immutable after construction.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    LevelsInvalid,
    NotAMetric,
    NotFreeMonoidQuantale,
    NotMonotone,
    SizeLimitExceeded,
    ValidationError,
)
from .lattice import coprimes
from .quantale import Quantale, classify, lawvere_chain, lawvere_index

#: cover enumeration touches 2^(2^|A|) families; refuse beyond this base size
CORE_CAP = 4

_BITS: dict[int, tuple[int, ...]] = {}


def bits(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of a subset mask (cached)."""
    try:
        return _BITS[mask]
    except KeyError:
        out = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
        _BITS[mask] = out
        return out


@functools.lru_cache(maxsize=None)
def _inclusion_pairs(n: int) -> tuple[tuple[int, int], ...]:
    # ordered (B, A) with B a proper subset of A
    return tuple(
        (B, A)
        for A in range(1 << n)
        for B in range(A)
        if B & A == B
    )


class Witness(NamedTuple):
    """Counterexample slot layout shared by all reports.

    The slots are read per check: closure axioms use (A, B, x, lhs, rhs)
    literally; level-family checks put the level value or value family in
    ``lhs``/``rhs`` as documented on ``check_levels``.
    """

    check: str
    A: object
    B: object
    x: object
    lhs: object
    rhs: object


@dataclass(frozen=True)
class CheckReport:
    checks: tuple[tuple[str, bool], ...]
    witnesses: tuple[Witness, ...]
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.checks)

    def verdict(self, name: str) -> bool:
        for check, value in self.checks:
            if check == name:
                return value
        raise KeyError(name)

    def witness_for(self, name: str) -> Witness | None:
        return next((w for w in self.witnesses if w.check == name), None)


@dataclass(frozen=True, repr=False)
class ClosureStructure:
    quantale: Quantale
    base_size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = 1 << self.base_size
        if len(self.table) != size or any(len(row) != self.base_size for row in self.table):
            raise ValidationError(
                f"table must have {size} rows of {self.base_size} values"
            )
        nv = self.quantale.lattice.size
        if any(v < 0 or v >= nv for row in self.table for v in row):
            raise ValidationError("closure value out of quantale range")

    def value(self, A: int, x: int) -> int:
        return self.table[A][x]

    @property
    def subset_count(self) -> int:
        return 1 << self.base_size

    def with_table(self, table) -> "ClosureStructure":
        return ClosureStructure(self.quantale, self.base_size, tuple(tuple(r) for r in table))

    def __repr__(self):
        return f"ClosureStructure(points={self.base_size}, quantale={self.quantale!r})"


@dataclass(frozen=True, repr=False)
class SpaceMap:
    domain: ClosureStructure
    codomain: ClosureStructure
    point_map: tuple[int, ...]

    def __post_init__(self):
        if self.domain.quantale != self.codomain.quantale:
            raise ValidationError("domain and codomain must share the quantale")
        if len(self.point_map) != self.domain.base_size:
            raise ValidationError("point map must be total on the domain")
        if any(not 0 <= y < self.codomain.base_size for y in self.point_map):
            raise ValidationError("point map value out of range")

    def image(self, A: int) -> int:
        out = 0
        for x in bits(A):
            out |= 1 << self.point_map[x]
        return out

    def __repr__(self):
        return f"SpaceMap({self.point_map})"


# ---------------------------------------------------------------------------
# raw-table primitives (shared by the public API and the exhaustive suites)


def _axiom_R_witness(Q, n, t):
    leq_k = Q.lattice.leq[Q.unit]
    for A in range(1 << n):
        row = t[A]
        for x in bits(A):
            if not leq_k[row[x]]:
                return (A, x, row[x])
    return None


def _axiom_T_witness(Q, n, t):
    lat = Q.lattice
    leq = lat.leq
    meet_t = lat.meet_table
    tensor = Q.tensor
    top = lat.top
    bot = lat.bottom
    size = 1 << n
    for A in range(size):
        row_a = t[A]
        for B in range(size):
            m = top
            for y in bits(B):
                m = meet_t[m][row_a[y]]
            if m == bot:
                continue  # bottom tensors to bottom, below everything
            row_b = t[B]
            trow = tensor[m]
            for x in range(n):
                lhs = trow[row_b[x]]
                if not leq[lhs][row_a[x]]:
                    return (A, B, x, lhs, row_a[x])
    return None


def _axiom_A_witness(Q, n, t):
    bot = Q.lattice.bottom
    join_t = Q.lattice.join_table
    for x in range(n):
        if t[0][x] != bot:
            return (0, None, x, t[0][x], bot)
    size = 1 << n
    for A in range(size):
        row_a = t[A]
        for B in range(A, size):
            row_u = t[A | B]
            row_b = t[B]
            for x in range(n):
                rhs = join_t[row_a[x]][row_b[x]]
                if row_u[x] != rhs:
                    return (A, B, x, row_u[x], rhs)
    return None


def _monotone_witness(Q, n, t, include_empty=True):
    leq = Q.lattice.leq
    for B, A in _inclusion_pairs(n):
        if B == 0 and not include_empty:
            continue
        row_b = t[B]
        row_a = t[A]
        for x in range(n):
            if not leq[row_b[x]][row_a[x]]:
                return (B, A, x, row_b[x], row_a[x])
    return None


def _level_mask(Q, n, t, v, A):
    leq_v = Q.lattice.leq[v]
    row = t[A]
    mask = 0
    for z in range(n):
        if leq_v[row[z]]:
            mask |= 1 << z
    return mask


def _bar_table(Q, n, t, coprime_only=False):
    lat = Q.lattice
    leq = lat.leq
    join_t = lat.join_table
    tensor = Q.tensor
    bot = lat.bottom
    vs = coprimes(lat) if coprime_only else range(lat.size)
    size = 1 << n
    out = []
    for A in range(size):
        row_a = t[A]
        acc = [bot] * n
        for v in vs:
            if v == bot:
                continue  # the bottom term contributes bottom
            leq_v = leq[v]
            mask = 0
            for z in range(n):
                if leq_v[row_a[z]]:
                    mask |= 1 << z
            crow = t[mask]
            trow = tensor[v]
            for x in range(n):
                acc[x] = join_t[acc[x]][trow[crow[x]]]
        out.append(tuple(acc))
    return tuple(out)


def _table_le(Q, t1, t2):
    leq = Q.lattice.leq
    return all(
        leq[v1][v2] for row1, row2 in zip(t1, t2) for v1, v2 in zip(row1, row2)
    )


def _table_meet(Q, t1, t2):
    meet_t = Q.lattice.meet_table
    return tuple(
        tuple(meet_t[v1][v2] for v1, v2 in zip(row1, row2))
        for row1, row2 in zip(t1, t2)
    )


def _nonempty_submasks(A):
    out = []
    s = A
    while s:
        out.append(s)
        s = (s - 1) & A
    return out


def _core_table(Q, n, t, include_empty_parts=False):
    lat = Q.lattice
    join_t = lat.join_table
    meet_t = lat.meet_table
    bot = lat.bottom
    top = lat.top
    out = []
    for A in range(1 << n):
        if A == 0:
            # the empty family is the one cover of the empty set
            out.append((bot,) * n)
            continue
        parts = _nonempty_submasks(A)
        if include_empty_parts:
            parts = parts + [0]
        p = len(parts)
        unions = [0] * (1 << p)
        for fam in range(1, 1 << p):
            low = fam & -fam
            unions[fam] = unions[fam ^ low] | parts[low.bit_length() - 1]
        best = [top] * n
        for fam in range(1, 1 << p):
            if unions[fam] != A:
                continue
            value = [bot] * n
            rest = fam
            while rest:
                low = rest & -rest
                row = t[parts[low.bit_length() - 1]]
                for x in range(n):
                    value[x] = join_t[value[x]][row[x]]
                rest ^= low
            for x in range(n):
                best[x] = meet_t[best[x]][value[x]]
        out.append(tuple(best))
    return tuple(out)


def _core_table_strings(Q, n, t, max_len=None):
    # literal oracle: covers as strings (M_1, ..., M_m) with repetition,
    # parts drawn from all subsets of A including the empty one
    lat = Q.lattice
    join_t = lat.join_table
    meet_t = lat.meet_table
    bot = lat.bottom
    top = lat.top
    out = []
    for A in range(1 << n):
        parts = [p for p in range(1 << n) if p & A == p]
        limit = (1 << len(bits(A))) + 1 if max_len is None else max_len
        best_row = [top] * n
        if A == 0:
            best_row = [bot] * n  # empty string
        stack = [(0, (bot,) * n, 0)]  # (length, value row, union)
        while stack:
            length, value, union = stack.pop()
            if union == A and (length > 0 or A == 0):
                for x in range(n):
                    best_row[x] = meet_t[best_row[x]][value[x]]
            if length == limit:
                continue
            for part in parts:
                row = t[part]
                nv = tuple(join_t[value[x]][row[x]] for x in range(n))
                stack.append((length + 1, nv, union | part))
        out.append(tuple(best_row))
    return tuple(out)


def _initial_table(Q, n, prepared_maps):
    # prepared_maps: list of (image table over subsets of X, point map, codomain table)
    lat = Q.lattice
    meet_t = lat.meet_table
    top = lat.top
    out = []
    for A in range(1 << n):
        row = [top] * n
        for images, pmap, dtable in prepared_maps:
            drow = dtable[images[A]]
            for x in range(n):
                row[x] = meet_t[row[x]][drow[pmap[x]]]
        out.append(tuple(row))
    return tuple(out)


def _image_table(n, pmap):
    size = 1 << n
    images = [0] * size
    for A in range(1, size):
        low = A & -A
        images[A] = images[A ^ low] | (1 << pmap[low.bit_length() - 1])
    return images


def _rt_hull_table(Q, n, t):
    lat = Q.lattice
    join_t = lat.join_table
    k = Q.unit
    size = 1 << n
    grid = [list(row) for row in t]
    for A in range(size):
        row = grid[A]
        for x in bits(A):
            row[x] = join_t[row[x]][k]
    # monotone closure: fold each immediate subset in ascending mask order
    for A in range(size):
        row = grid[A]
        rest = A
        while rest:
            low = rest & -rest
            sub_row = grid[A ^ low]
            for x in range(n):
                row[x] = join_t[row[x]][sub_row[x]]
            rest ^= low
    cur = tuple(tuple(row) for row in grid)
    while True:
        nxt = _bar_table(Q, n, cur)
        if nxt == cur:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# public operations


def check_axioms(c: ClosureStructure) -> CheckReport:
    """Evaluate (R), (T), (A) and both monotonicity variants.

    (T) quantifies B over *all* subsets including the empty one, whose
    inner meet is top; failures are verdicts with witnesses, never errors.
    """
    Q, n, t = c.quantale, c.base_size, c.table
    k = Q.unit
    checks = []
    witnesses = []

    w = _axiom_R_witness(Q, n, t)
    checks.append(("R", w is None))
    if w is not None:
        witnesses.append(Witness("R", w[0], None, w[1], k, w[2]))

    w = _axiom_T_witness(Q, n, t)
    checks.append(("T", w is None))
    if w is not None:
        witnesses.append(Witness("T", w[0], w[1], w[2], w[3], w[4]))

    w = _axiom_A_witness(Q, n, t)
    checks.append(("A", w is None))
    if w is not None:
        witnesses.append(Witness("A", w[0], w[1], w[2], w[3], w[4]))

    w = _monotone_witness(Q, n, t, include_empty=False)
    checks.append(("monotone-nonempty", w is None))
    if w is not None:
        witnesses.append(Witness("monotone-nonempty", w[1], w[0], w[2], w[3], w[4]))

    w = _monotone_witness(Q, n, t, include_empty=True)
    checks.append(("monotone", w is None))
    if w is not None:
        witnesses.append(Witness("monotone", w[1], w[0], w[2], w[3], w[4]))

    return CheckReport(tuple(checks), tuple(witnesses))


def check_continuous(f: SpaceMap, strict: bool = False) -> CheckReport:
    """(cA)(x) <= d(fA)(fx) for all A, x; with strict=True, equality instead.

    The strict variant is the closure-preserving reading of continuity and
    is exposed for experiments only.
    """
    c, d = f.domain, f.codomain
    leq = c.quantale.lattice.leq
    name = "C-strict" if strict else "C"
    for A in range(c.subset_count):
        fa = f.image(A)
        for x in range(c.base_size):
            lhs = c.table[A][x]
            rhs = d.table[fa][f.point_map[x]]
            bad = (lhs != rhs) if strict else (not leq[lhs][rhs])
            if bad:
                return CheckReport(
                    ((name, False),), (Witness(name, A, None, x, lhs, rhs),)
                )
    return CheckReport(((name, True),), ())


def level_set(c: ClosureStructure, v: int, A: int) -> int:
    """Bitmask of points z with v <= (cA)(z)."""
    return _level_mask(c.quantale, c.base_size, c.table, v, A)


def bar(c: ClosureStructure, coprime_only: bool = False) -> ClosureStructure:
    """(bar c A)(x) = join over v of v (x) c(c^v A)(x).

    With coprime_only the join ranges over the coprimes of the value
    lattice only; for monotone structures over a spatial quantale both
    joins agree.
    """
    return c.with_table(_bar_table(c.quantale, c.base_size, c.table, coprime_only))


def check_T_via_bar(c: ClosureStructure) -> bool:
    """Decide (T) as bar(c) <= c; demands a (fully) monotone input."""
    w = _monotone_witness(c.quantale, c.base_size, c.table)
    if w is not None:
        raise NotMonotone(
            f"structure is not monotone at B={w[0]}, A={w[1]}, x={w[2]}",
            witness=w,
        )
    return _table_le(c.quantale, _bar_table(c.quantale, c.base_size, c.table), c.table)


def core(c: ClosureStructure, include_empty_parts: bool = False) -> ClosureStructure:
    """Finitely additive core: meet of cover values over all finite covers.

    (core c)(empty) is bottom via the empty cover.  Covers are sets of
    nonempty parts; ``include_empty_parts`` re-admits the empty part for
    oracle comparisons.
    """
    if c.base_size > CORE_CAP:
        raise SizeLimitExceeded(
            f"core enumerates covers; cap is {CORE_CAP} points, got {c.base_size}"
        )
    return c.with_table(
        _core_table(c.quantale, c.base_size, c.table, include_empty_parts)
    )


def core_string_oracle(c: ClosureStructure, max_len: int | None = None) -> ClosureStructure:
    """Literal cover-string evaluation of the core, for reduction soundness tests."""
    if c.base_size > 2:
        raise SizeLimitExceeded("the string oracle is meant for |X| <= 2")
    return c.with_table(_core_table_strings(c.quantale, c.base_size, c.table, max_len))


def discrete(Q: Quantale, n: int) -> ClosureStructure:
    """(cA)(x) = k for x in A and bottom otherwise; already finitely additive."""
    k, bot = Q.unit, Q.lattice.bottom
    table = tuple(
        tuple(k if A >> x & 1 else bot for x in range(n)) for A in range(1 << n)
    )
    return ClosureStructure(Q, n, table)


def indiscrete(Q: Quantale, n: int, topological: bool = False) -> ClosureStructure:
    """Constant top; with topological=True the empty set is corrected to bottom."""
    top, bot = Q.lattice.top, Q.lattice.bottom
    table = [(top,) * n for _ in range(1 << n)]
    if topological:
        table[0] = (bot,) * n
    return ClosureStructure(Q, n, tuple(table))


def initial_structure(maps, n: int, quantale: Quantale | None = None) -> ClosureStructure:
    """(cA)(x) = meet over i of d_i(f_i A)(f_i x).

    ``maps`` is a sequence of (point_map, codomain) pairs sharing one
    quantale.  For the empty family the meet is constant top for every
    (A, x) -- the literal formula, which is the indiscrete structure
    except at A = empty; ``vtop_limit`` shows what the coreflection makes
    of it.
    """
    maps = list(maps)
    if not maps and quantale is None:
        raise ValidationError("an empty family needs an explicit quantale")
    Q = quantale if quantale is not None else maps[0][1].quantale
    prepared = []
    for pmap, cod in maps:
        if cod.quantale != Q:
            raise ValidationError("all codomains must share the quantale")
        pmap = tuple(pmap)
        if len(pmap) != n or any(not 0 <= y < cod.base_size for y in pmap):
            raise ValidationError("point map must be total with values in the codomain")
        prepared.append((_image_table(n, pmap), pmap, cod.table))
    return ClosureStructure(Q, n, _initial_table(Q, n, prepared))


def vtop_limit(maps, n: int, quantale: Quantale | None = None) -> ClosureStructure:
    """Core of the initial structure: how limits are formed among topological structures."""
    maps = list(maps)
    for _, cod in maps:
        report = check_axioms(cod)
        for axiom in ("R", "T", "A"):
            if not report.verdict(axiom):
                raise ValidationError(
                    f"limit codomain fails ({axiom})", witness=report.witness_for(axiom)
                )
    return core(initial_structure(maps, n, quantale))


def check_core_theorem(c: ClosureStructure, test_maps=()) -> CheckReport:
    """Coreflection clauses for the finitely additive core of (X, c).

    Requires c to pass (R) and (T).  Verifies that the core passes R, T, A,
    sits below c, is monotone, and that every supplied continuous map from
    a topological space into (X, c) stays continuous into (X, core(c)).
    When the value quantale is not sup-generated by its coprimes the report
    is still produced but flagged exploratory.
    """
    base = check_axioms(c)
    if not (base.verdict("R") and base.verdict("T")):
        raise ValidationError("check_core_theorem needs a structure passing (R) and (T)")
    Q, n = c.quantale, c.base_size
    cp = core(c)
    rep = check_axioms(cp)
    checks = [
        ("core-R", rep.verdict("R")),
        ("core-T", rep.verdict("T")),
        ("core-A", rep.verdict("A")),
        ("core-below", _table_le(Q, cp.table, c.table)),
        ("core-monotone", rep.verdict("monotone")),
    ]
    witnesses = [
        w._replace(check="core-" + w.check)
        for w in rep.witnesses
        if w.check in ("R", "T", "A", "monotone")
    ]

    universal = True
    for g in test_maps:
        if g.codomain != c:
            raise ValidationError("test map must land in the checked structure")
        dom_rep = check_axioms(g.domain)
        if not (dom_rep.verdict("R") and dom_rep.verdict("T") and dom_rep.verdict("A")):
            raise ValidationError("test map domain must be topological")
        if not check_continuous(g).ok:
            raise ValidationError("test map must be continuous into (X, c)")
        lifted = SpaceMap(g.domain, cp, g.point_map)
        r = check_continuous(lifted)
        if not r.ok:
            universal = False
            witnesses.extend(r.witnesses)
    checks.append(("core-universal", universal))

    notes = ()
    if not classify(Q).lattice_spatial:
        notes = ("hypothesis not met -- exploratory",)
    return CheckReport(tuple(checks), tuple(witnesses), notes)


def rt_hull(c: ClosureStructure) -> ClosureStructure:
    """Least structure above c satisfying (R) and (T).

    Forces reflexivity and monotonicity pointwise, then iterates bar to a
    fixpoint; the result is the transitive saturation used to seed random
    closure spaces.
    """
    return c.with_table(_rt_hull_table(c.quantale, c.base_size, c.table))


def random_structure(Q: Quantale, n: int, rng) -> ClosureStructure:
    nv = Q.lattice.size
    table = tuple(
        tuple(rng.randrange(nv) for _ in range(n)) for _ in range(1 << n)
    )
    return ClosureStructure(Q, n, table)


def random_rt_structure(Q: Quantale, n: int, rng) -> ClosureStructure:
    return rt_hull(random_structure(Q, n, rng))


# ---------------------------------------------------------------------------
# level families


@dataclass(frozen=True, repr=False)
class LevelFamily:
    """The family of cut operators c^v A = {z : v <= (cA)(z)}, one per value."""

    quantale: Quantale
    base_size: int
    masks: tuple[tuple[int, ...], ...]  # masks[v][A]

    def __post_init__(self):
        size = 1 << self.base_size
        nv = self.quantale.lattice.size
        if len(self.masks) != nv or any(len(row) != size for row in self.masks):
            raise ValidationError(f"level family needs {nv} rows of {size} masks")
        if any(m < 0 or m >= size for row in self.masks for m in row):
            raise ValidationError("level mask out of range")

    def level(self, v: int, A: int) -> int:
        return self.masks[v][A]

    def __repr__(self):
        return f"LevelFamily(points={self.base_size}, quantale={self.quantale!r})"


def to_levels(c: ClosureStructure) -> LevelFamily:
    """Cut the structure into its level family; input must pass (R) and (T)."""
    rep = check_axioms(c)
    for axiom in ("R", "T"):
        if not rep.verdict(axiom):
            raise LevelsInvalid(axiom, witness=rep.witness_for(axiom),
                                message=f"to_levels needs ({axiom})")
    Q, n, t = c.quantale, c.base_size, c.table
    masks = tuple(
        tuple(_level_mask(Q, n, t, v, A) for A in range(1 << n))
        for v in range(Q.lattice.size)
    )
    return LevelFamily(Q, n, masks)


def from_levels(family: LevelFamily) -> ClosureStructure:
    """(cA)(x) = join of the values whose level set contains x."""
    Q, n = family.quantale, family.base_size
    lat = Q.lattice
    table = tuple(
        tuple(
            lat.sup(v for v in range(lat.size) if family.masks[v][A] >> x & 1)
            for x in range(n)
        )
        for A in range(1 << n)
    )
    return ClosureStructure(Q, n, table)


def check_levels(family: LevelFamily) -> CheckReport:
    """Evaluate the level-family laws C0..C3.

    Witness slots: C0 -> (A=superset, B=subset, x=None, lhs=v);
    C1 -> (A, B=value family, x=point, lhs=v); C2 -> (A, x=point, lhs=k);
    C3 -> (A, x=point, lhs=(u, v)).
    """
    Q, n, masks = family.quantale, family.base_size, family.masks
    lat = Q.lattice
    nv = lat.size
    if nv > 12:
        raise SizeLimitExceeded(
            f"condition C1 quantifies over 2^|V| value families; cap is |V| <= 12, got {nv}"
        )
    size = 1 << n
    full = size - 1
    checks = []
    witnesses = []

    w = None
    for v in range(nv):
        mv = masks[v]
        for B, A in _inclusion_pairs(n):
            if mv[B] & ~mv[A]:
                w = Witness("C0", A, B, None, v, None)
                break
        if w:
            break
    checks.append(("C0", w is None))
    if w:
        witnesses.append(w)

    w = None
    for us in range(1 << nv):
        members = bits(us)
        bound = lat.sup(members)
        leq_row = [lat.leq[v][bound] for v in range(nv)]
        for A in range(size):
            inter = full
            for u in members:
                inter &= masks[u][A]
            for v in range(nv):
                if leq_row[v] and inter & ~masks[v][A]:
                    x = bits(inter & ~masks[v][A])[0]
                    w = Witness("C1", A, tuple(members), x, v, None)
                    break
            if w:
                break
        if w:
            break
    checks.append(("C1", w is None))
    if w:
        witnesses.append(w)

    w = None
    mk = masks[Q.unit]
    for A in range(size):
        if A & ~mk[A]:
            x = bits(A & ~mk[A])[0]
            w = Witness("C2", A, None, x, Q.unit, None)
            break
    checks.append(("C2", w is None))
    if w:
        witnesses.append(w)

    w = None
    tensor = Q.tensor
    for u in range(nv):
        mu = masks[u]
        for v in range(nv):
            mvu = masks[tensor[v][u]]
            mv = masks[v]
            for A in range(size):
                composed = mu[mv[A]]
                if composed & ~mvu[A]:
                    x = bits(composed & ~mvu[A])[0]
                    w = Witness("C3", A, None, x, (u, v), None)
                    break
            if w:
                break
        if w:
            break
    checks.append(("C3", w is None))
    if w:
        witnesses.append(w)

    return CheckReport(tuple(checks), tuple(witnesses))


def levels_coprime_topological(family: LevelFamily) -> tuple[bool, Witness | None]:
    """Coprime-level additivity: c^p(empty) = empty and c^p(A u B) = c^pA u c^pB.

    Over a spatial quantale this characterizes the topological structures
    among the closure structures.
    """
    n = family.base_size
    size = 1 << n
    for p in coprimes(family.quantale.lattice):
        mp = family.masks[p]
        if mp[0]:
            return False, Witness("coprime-topological", 0, None, None, p, mp[0])
        for A in range(size):
            for B in range(A, size):
                if mp[A | B] != mp[A] | mp[B]:
                    return False, Witness(
                        "coprime-topological", A, B, None, p, mp[A | B]
                    )
    return True, None


# ---------------------------------------------------------------------------
# lax powerset extension, approach structures, monoid actions


def powerset_lax_extension(Q: Quantale, r, A: int, B: int) -> int:
    """meet over y in B of (join over x in A of r(x, y)).

    Conventions: the inner join over an empty A is bottom; the outer meet
    over an empty B is top.
    """
    lat = Q.lattice
    return lat.inf(lat.sup(r[x][y] for x in bits(A)) for y in bits(B))


def approach_from_metric(d, truncation: int) -> ClosureStructure:
    """Point-set distance structure of a finite metric over the truncated distance chain.

    delta(x, A) = min over a in A of d(x, a), with delta(x, empty) = inf;
    entries above the truncation clamp to inf.
    """
    n = len(d)
    rows = [list(row) for row in d]
    if any(len(row) != n for row in rows):
        raise NotAMetric("distance matrix must be square")
    for i in range(n):
        if rows[i][i] != 0:
            raise NotAMetric(f"nonzero self-distance at {i}", witness=(i,))
        for j in range(n):
            if rows[i][j] != rows[j][i]:
                raise NotAMetric(f"asymmetric at ({i}, {j})", witness=(i, j))
            if i != j and rows[i][j] <= 0:
                raise NotAMetric(f"non-positive distance at ({i}, {j})", witness=(i, j))
            for k in range(n):
                if rows[i][j] > rows[i][k] + rows[k][j]:
                    raise NotAMetric(
                        f"triangle inequality fails at ({i}, {k}, {j})",
                        witness=(i, k, j),
                    )
    Q = lawvere_chain(truncation)
    table = []
    for A in range(1 << n):
        members = bits(A)
        row = []
        for x in range(n):
            if not members:
                row.append(0)  # inf
            else:
                row.append(lawvere_index(truncation, min(rows[x][a] for a in members)))
        table.append(tuple(row))
    return ClosureStructure(Q, n, tuple(table))


@dataclass(frozen=True, repr=False)
class LaxAction:
    """Right action table A . alpha of a monoid on subsets of the base set."""

    quantale: Quantale
    base_size: int
    act: tuple[tuple[int, ...], ...]  # act[A][alpha] -> subset mask

    def __repr__(self):
        return f"LaxAction(points={self.base_size})"


def monoid_action_view(c: ClosureStructure) -> LaxAction:
    """Read a structure over a free-monoid quantale as A . alpha = {x : alpha in (cA)(x)}."""
    Q = c.quantale
    if Q.monoid is None:
        raise NotFreeMonoidQuantale(
            "the structure's quantale was not built by free_on_monoid"
        )
    m = Q.monoid.size
    n = c.base_size
    act = tuple(
        tuple(
            sum(1 << x for x in range(n) if c.table[A][x] >> alpha & 1)
            for alpha in range(m)
        )
        for A in range(1 << n)
    )
    return LaxAction(Q, n, act)


def action_to_closure(action: LaxAction) -> ClosureStructure:
    """(cA)(x) = {alpha : x in A . alpha}; exact inverse of monoid_action_view."""
    Q = action.quantale
    if Q.monoid is None:
        raise NotFreeMonoidQuantale("the action's quantale carries no monoid data")
    m = Q.monoid.size
    n = action.base_size
    table = tuple(
        tuple(
            sum(1 << alpha for alpha in range(m) if action.act[A][alpha] >> x & 1)
            for x in range(n)
        )
        for A in range(1 << n)
    )
    return ClosureStructure(Q, n, table)


def check_lax_action(action: LaxAction) -> CheckReport:
    """Lax right-action laws: A <= A.eta, (A.a).b <= A.(ab), monotone in A."""
    Q = action.quantale
    view = Q.monoid
    if view is None:
        raise NotFreeMonoidQuantale("the action's quantale carries no monoid data")
    n = action.base_size
    act = action.act
    checks = []
    witnesses = []

    w = next(
        (A for A in range(1 << n) if A & ~act[A][view.neutral]),
        None,
    )
    checks.append(("action-unit", w is None))
    if w is not None:
        witnesses.append(Witness("action-unit", w, None, None, act[w][view.neutral], None))

    w = None
    for A in range(1 << n):
        for a in range(view.size):
            inner = act[A][a]
            for b in range(view.size):
                if act[inner][b] & ~act[A][view.mult[a][b]]:
                    w = Witness("action-compose", A, None, None, (a, b), act[inner][b])
                    break
            if w:
                break
        if w:
            break
    checks.append(("action-compose", w is None))
    if w:
        witnesses.append(w)

    w = None
    for B, A in _inclusion_pairs(n):
        for a in range(view.size):
            if act[B][a] & ~act[A][a]:
                w = Witness("action-monotone", A, B, None, a, None)
                break
        if w:
            break
    checks.append(("action-monotone", w is None))
    if w:
        witnesses.append(w)

    return CheckReport(tuple(checks), tuple(witnesses))
