"""Unital quantales on finite lattices.

A quantale here is a validated tensor table plus a unit on top of a
FiniteLattice; join preservation is checked for binary joins and bottom,
which in a finite lattice gives preservation of all joins.  Residuation is
derived eagerly: residuals[v][w] is the largest u with u (x) v <= w.  Only
this right residual of (-) (x) v is provided; the other residual (for
v (x) u <= w) is not needed anywhere and is deliberately left out.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    BottomNotAbsorbing,
    InvalidMonoidTable,
    JoinNotPreserved,
    NotAssociative,
    SizeLimitExceeded,
    UnitLawFails,
    ValidationError,
)
from .lattice import (
    FiniteLattice,
    coprimes,
    is_sup_generated_by_coprimes,
    product_lattice,
    validate_lattice,
)

#: full (tensor, unit) enumeration explores n^(n^2) tables before pruning
ENUMERATION_CAP = 5


@dataclass(frozen=True)
class MonoidView:
    """Multiplication data kept on quantales built from a free monoid."""

    size: int
    mult: tuple[tuple[int, ...], ...]
    neutral: int
    names: tuple[str, ...]


@dataclass(frozen=True, repr=False)
class Quantale:
    lattice: FiniteLattice
    tensor: tuple[tuple[int, ...], ...]
    unit: int
    residuals: tuple[tuple[int, ...], ...]
    monoid: MonoidView | None = None

    def mul(self, u: int, v: int) -> int:
        return self.tensor[u][v]

    def res(self, v: int, w: int) -> int:
        return self.residuals[v][w]

    def name(self, v: int) -> str:
        return self.lattice.name(v)

    @property
    def size(self) -> int:
        return self.lattice.size

    def __repr__(self):
        return f"Quantale(size={self.lattice.size}, unit={self.name(self.unit)})"


def validate_quantale(lattice: FiniteLattice, tensor, unit: int, monoid=None) -> Quantale:
    """Check unit laws, bottom absorption, join preservation, associativity.

    Raises the first violated law with a witness; on success returns the
    quantale with its residual table derived.
    """
    n = lattice.size
    rows = tuple(tuple(int(v) for v in row) for row in tensor)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValidationError("tensor table must be n x n", witness=(len(rows),))
    if any(v < 0 or v >= n for r in rows for v in r):
        raise ValidationError("tensor entry out of range", witness=())
    if not 0 <= unit < n:
        raise ValidationError("unit out of range", witness=(unit,))

    for v in range(n):
        if rows[unit][v] != v or rows[v][unit] != v:
            raise UnitLawFails(
                f"unit law fails at {lattice.name(v)}", witness=(v,)
            )
    bot = lattice.bottom
    for v in range(n):
        if rows[bot][v] != bot or rows[v][bot] != bot:
            raise BottomNotAbsorbing(
                f"bottom is not absorbing at {lattice.name(v)}", witness=(v,)
            )
    join_t = lattice.join_table
    for u in range(n):
        for u2 in range(u, n):
            w = join_t[u][u2]
            for v in range(n):
                if rows[w][v] != join_t[rows[u][v]][rows[u2][v]]:
                    raise JoinNotPreserved(
                        "tensor fails to preserve a join in the left variable",
                        witness=("left", u, u2, v),
                    )
                if rows[v][w] != join_t[rows[v][u]][rows[v][u2]]:
                    raise JoinNotPreserved(
                        "tensor fails to preserve a join in the right variable",
                        witness=("right", u, u2, v),
                    )
    for u in range(n):
        for v in range(n):
            uv = rows[u][v]
            row_u = rows[u]
            for w in range(n):
                if rows[uv][w] != row_u[rows[v][w]]:
                    raise NotAssociative(
                        "tensor is not associative", witness=(u, v, w)
                    )

    leq = lattice.leq
    residuals = tuple(
        tuple(
            lattice.sup(u for u in range(n) if leq[rows[u][v]][w])
            for w in range(n)
        )
        for v in range(n)
    )
    return Quantale(lattice=lattice, tensor=rows, unit=unit, residuals=residuals, monoid=monoid)


def residual(Q: Quantale, v: int, w: int) -> int:
    """Largest u with u (x) v <= w; adjoint to (-) (x) v."""
    return Q.residuals[v][w]


@dataclass(frozen=True)
class Classification:
    integral: bool
    commutative: bool
    lattice_spatial: bool


def classify(Q: Quantale) -> Classification:
    n = Q.lattice.size
    return Classification(
        integral=Q.unit == Q.lattice.top,
        commutative=all(
            Q.tensor[u][v] == Q.tensor[v][u] for u in range(n) for v in range(u + 1, n)
        ),
        lattice_spatial=is_sup_generated_by_coprimes(Q.lattice)[0],
    )


# ---------------------------------------------------------------------------
# standard constructors


def _chain(n: int, names=None) -> FiniteLattice:
    rows = [[i <= j for j in range(n)] for i in range(n)]
    return validate_lattice(rows, names=names)


def trivial_quantale() -> Quantale:
    lat = validate_lattice([[True]], names=("k",))
    return validate_quantale(lat, ((0,),), 0)


def two_chain_quantale() -> Quantale:
    lat = _chain(2, names=("bot", "top"))
    return validate_quantale(lat, ((0, 0), (0, 1)), 1)


def chain_frame(n: int) -> Quantale:
    """n-element chain with meet as tensor and top as unit."""
    if n < 1:
        raise ValidationError("chain_frame needs n >= 1")
    names = ("bot", "top") if n == 2 else tuple(str(i) for i in range(n))
    lat = _chain(n, names=names)
    tensor = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
    return validate_quantale(lat, tensor, n - 1)


def lawvere_chain(n: int) -> Quantale:
    """Carrier {0..n, inf} under the reversed numeric order.

    Index 0 is bottom = inf and index n+1 is top = 0 = unit; the tensor is
    addition, clamping any sum above n to inf.
    """
    if n < 0:
        raise ValidationError("lawvere_chain needs n >= 0")
    size = n + 2
    names = ("inf",) + tuple(str(n + 1 - i) for i in range(1, size))
    lat = _chain(size, names=names)

    def value(i):
        return None if i == 0 else n + 1 - i  # None plays inf

    def index(v):
        return 0 if v is None or v > n else n + 1 - v

    tensor = tuple(
        tuple(
            0 if i == 0 or j == 0 else index(value(i) + value(j))
            for j in range(size)
        )
        for i in range(size)
    )
    return validate_quantale(lat, tensor, size - 1)


def lawvere_index(n: int, v) -> int:
    """Map a numeric distance into lawvere_chain(n): values above n clamp to inf."""
    if v is None or v != v or v > n:
        return 0
    iv = int(v)
    if iv != v or iv < 0:
        raise ValidationError(f"distance {v!r} is not representable on the chain")
    return n + 1 - iv


def lukasiewicz_chain(n: int) -> Quantale:
    """Carrier {0, 1/n, ..., 1} with tensor max(a+b-1, 0) and unit 1."""
    if n < 1:
        raise ValidationError("lukasiewicz_chain needs n >= 1")
    size = n + 1
    names = tuple(
        "0" if i == 0 else "1" if i == n else f"{i}/{n}" for i in range(size)
    )
    lat = _chain(size, names=names)
    tensor = tuple(tuple(max(i + j - n, 0) for j in range(size)) for i in range(size))
    return validate_quantale(lat, tensor, n)


def free_on_monoid(mult, names=None) -> Quantale:
    """Powerset of a finite monoid, tensored by elementwise products.

    ``mult`` is the multiplication table of the monoid; the quantale
    carrier consists of all subsets as bitmasks, ordered by inclusion, with
    unit {neutral}.  The monoid data is kept on the result so closure
    structures over it can be read as lax monoid actions.
    """
    rows = tuple(tuple(int(v) for v in row) for row in mult)
    m = len(rows)
    if m < 1 or any(len(r) != m for r in rows):
        raise InvalidMonoidTable("multiplication table must be square and nonempty")
    if any(v < 0 or v >= m for r in rows for v in r):
        raise InvalidMonoidTable("multiplication entry out of range")
    for a in range(m):
        for b in range(m):
            ab = rows[a][b]
            for c in range(m):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise InvalidMonoidTable(
                        "monoid multiplication is not associative", witness=(a, b, c)
                    )
    neutral = next(
        (e for e in range(m) if all(rows[e][x] == x and rows[x][e] == x for x in range(m))),
        None,
    )
    if neutral is None:
        raise InvalidMonoidTable("monoid has no neutral element")
    if names is None:
        names = tuple(f"m{i}" for i in range(m))
    else:
        names = tuple(str(s) for s in names)
        if len(names) != m:
            raise InvalidMonoidTable("monoid names do not match table size")

    size = 1 << m
    leq = [[(a & ~b) == 0 for b in range(size)] for a in range(size)]
    subset_names = tuple(
        "{" + ",".join(names[i] for i in range(m) if a >> i & 1) + "}"
        for a in range(size)
    )
    lat = validate_lattice(leq, names=subset_names)

    bit_products = [[1 << rows[i][j] for j in range(m)] for i in range(m)]
    tensor = []
    for a in range(size):
        abits = [i for i in range(m) if a >> i & 1]
        row = []
        for b in range(size):
            acc = 0
            for i in abits:
                prod_i = bit_products[i]
                for j in range(m):
                    if b >> j & 1:
                        acc |= prod_i[j]
            row.append(acc)
        tensor.append(tuple(row))
    view = MonoidView(size=m, mult=rows, neutral=neutral, names=names)
    return validate_quantale(lat, tuple(tensor), 1 << neutral, monoid=view)


def product_quantale(Q1: Quantale, Q2: Quantale) -> Quantale:
    lat = product_lattice(Q1.lattice, Q2.lattice)
    n2 = Q2.lattice.size
    size = lat.size
    tensor = tuple(
        tuple(
            Q1.tensor[a // n2][b // n2] * n2 + Q2.tensor[a % n2][b % n2]
            for b in range(size)
        )
        for a in range(size)
    )
    return validate_quantale(lat, tensor, Q1.unit * n2 + Q2.unit)


_STANDARD_KINDS = {
    "trivial": lambda: trivial_quantale(),
    "two": lambda: two_chain_quantale(),
    "chain_frame": chain_frame,
    "lawvere_chain": lawvere_chain,
    "lukasiewicz_chain": lukasiewicz_chain,
    "free_on_monoid": free_on_monoid,
    "product": product_quantale,
}


def build_standard_quantale(kind: str, *args, **kwargs) -> Quantale:
    try:
        builder = _STANDARD_KINDS[kind]
    except KeyError:
        raise ValidationError(
            f"unknown quantale kind {kind!r}; known: {sorted(_STANDARD_KINDS)}"
        ) from None
    return builder(*args, **kwargs)


# ---------------------------------------------------------------------------
# exhaustive enumeration


def enumerate_quantales(L: FiniteLattice, max_results: int | None = None) -> list[Quantale]:
    """All (tensor, unit) pairs on L passing validate_quantale.

    Backtracks over tensor cells with unit/bottom rows pre-filled and
    monotonicity plus binary-join constraints checked incrementally; every
    completed table is re-validated, so the pruning only speeds things up
    and never decides membership.  Results come back sorted by (flattened
    tensor, unit).
    """
    n = L.size
    if n > ENUMERATION_CAP:
        raise SizeLimitExceeded(
            f"enumerate_quantales caps at |L| <= {ENUMERATION_CAP}, got {n}"
        )
    leq = L.leq
    join_t = L.join_table
    bot = L.bottom
    completed: list[tuple[tuple[tuple[int, ...], ...], int]] = []

    def consistent(grid, i, j):
        val = grid[i][j]
        for a in range(n):
            g = grid[a][j]
            if g is not None:
                if leq[a][i] and not leq[g][val]:
                    return False
                if leq[i][a] and not leq[val][g]:
                    return False
            g = grid[i][a]
            if g is not None:
                if leq[a][j] and not leq[g][val]:
                    return False
                if leq[j][a] and not leq[val][g]:
                    return False
        for u in range(n):
            gu = grid[u][j]
            if gu is None:
                continue
            for v in range(u, n):
                gv = grid[v][j]
                if gv is None:
                    continue
                gw = grid[join_t[u][v]][j]
                if gw is not None and join_t[gu][gv] != gw:
                    return False
        for u in range(n):
            gu = grid[i][u]
            if gu is None:
                continue
            for v in range(u, n):
                gv = grid[i][v]
                if gv is None:
                    continue
                gw = grid[i][join_t[u][v]]
                if gw is not None and join_t[gu][gv] != gw:
                    return False
        return True

    for unit in range(n):
        grid: list[list[int | None]] = [[None] * n for _ in range(n)]
        conflict = False
        for v in range(n):
            for i, j, val in ((bot, v, bot), (v, bot, bot), (unit, v, v), (v, unit, v)):
                cur = grid[i][j]
                if cur is None:
                    grid[i][j] = val
                elif cur != val:
                    conflict = True
        if conflict:
            continue
        cells = [(i, j) for i in range(n) for j in range(n) if grid[i][j] is None]

        def fill(pos):
            if pos == len(cells):
                completed.append((tuple(tuple(row) for row in grid), unit))
                return
            i, j = cells[pos]
            for val in range(n):
                grid[i][j] = val
                if consistent(grid, i, j):
                    fill(pos + 1)
            grid[i][j] = None

        fill(0)

    out = []
    for tensor, unit in completed:
        try:
            out.append(validate_quantale(L, tensor, unit))
        except (NotAssociative, UnitLawFails, JoinNotPreserved, BottomNotAbsorbing):
            continue
    out.sort(key=lambda q: (tuple(itertools.chain.from_iterable(q.tensor)), q.unit))
    if max_results is not None:
        out = out[:max_results]
    return out
