"""Enriched categories over a quantale: the value object, its powers, the
powerset category, Yoneda embeddings, and the equational reading of closure
structures.

The doubly exponential object of functions on a function space is never
materialized: the equational checks evaluate both composites pointwise at
each subset, which keeps everything feasible at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .closure import (
    ClosureStructure,
    CheckReport,
    Witness,
    _axiom_R_witness,
    _axiom_T_witness,
    bits,
    discrete,
)
from .errors import CompositionFails, SizeLimitExceeded, UnitLawFails, ValidationError
from .quantale import Quantale

#: a power category enumerates |V|^n objects; refuse beyond this
POWER_CAP = 4096
#: powerset categories carry 2^n objects
PSET_CAP = 6


@dataclass(frozen=True, repr=False)
class VCategory:
    quantale: Quantale
    size: int
    hom: tuple[tuple[int, ...], ...]
    objects: tuple | None = None  # optional labels (function tuples, subset masks)

    def object_index(self, label) -> int:
        if self.objects is None:
            raise ValidationError("this category has no object labels")
        return self.objects.index(label)

    def __repr__(self):
        return f"VCategory(size={self.size}, quantale={self.quantale!r})"


@dataclass(frozen=True, repr=False)
class VFunctor:
    domain: VCategory
    codomain: VCategory
    point_map: tuple[int, ...]

    def __post_init__(self):
        if self.domain.quantale != self.codomain.quantale:
            raise ValidationError("functor endpoints must share the quantale")
        if len(self.point_map) != self.domain.size:
            raise ValidationError("object map must be total")
        if any(not 0 <= y < self.codomain.size for y in self.point_map):
            raise ValidationError("object map value out of range")
        leq = self.domain.quantale.lattice.leq
        a, b, f = self.domain.hom, self.codomain.hom, self.point_map
        for x in range(self.domain.size):
            for y in range(self.domain.size):
                if not leq[a[x][y]][b[f[x]][f[y]]]:
                    raise ValidationError(
                        "hom values are not preserved laxly", witness=(x, y)
                    )

    def __repr__(self):
        return f"VFunctor({self.domain!r} -> {self.codomain!r})"


def validate_vcategory(Q: Quantale, hom) -> VCategory:
    """Check k <= a(x,x) and a(y,z) (x) a(x,y) <= a(x,z)."""
    rows = tuple(tuple(int(v) for v in row) for row in hom)
    n = len(rows)
    nv = Q.lattice.size
    if any(len(r) != n for r in rows) or any(
        v < 0 or v >= nv for r in rows for v in r
    ):
        raise ValidationError("hom table must be square with values in the quantale")
    leq = Q.lattice.leq
    for x in range(n):
        if not leq[Q.unit][rows[x][x]]:
            raise UnitLawFails(f"k <= hom({x},{x}) fails", witness=(x,))
    tensor = Q.tensor
    for x in range(n):
        for y in range(n):
            a_xy = rows[x][y]
            for z in range(n):
                if not leq[tensor[rows[y][z]][a_xy]][rows[x][z]]:
                    raise CompositionFails(
                        "composition law fails", witness=(x, y, z)
                    )
    return VCategory(Q, n, rows)


def self_category(Q: Quantale) -> VCategory:
    """The value quantale as a category over itself, via its residual hom."""
    return validate_vcategory(Q, Q.residuals)


def hom_pointwise(Q: Quantale, sigma, tau) -> int:
    """[sigma, tau] = meet over x of [sigma(x), tau(x)]."""
    res = Q.residuals
    return Q.lattice.inf(res[s][t] for s, t in zip(sigma, tau))


def function_space(Q: Quantale, n: int) -> tuple[tuple[int, ...], ...]:
    """All functions from an n-point set into the value lattice, lexicographically."""
    count = Q.lattice.size**n
    if count > POWER_CAP:
        raise SizeLimitExceeded(
            f"function space has {count} objects; cap is {POWER_CAP}"
        )
    return tuple(itertools.product(range(Q.lattice.size), repeat=n))


def power_category(Q: Quantale, n: int) -> VCategory:
    """The n-th power of the value object, with pointwise residual meets as hom."""
    carrier = function_space(Q, n)
    res = Q.residuals
    top = Q.lattice.top
    meet_t = Q.lattice.meet_table
    hom = []
    for sigma in carrier:
        row = []
        for tau in carrier:
            acc = top
            for s, t in zip(sigma, tau):
                acc = meet_t[acc][res[s][t]]
            row.append(acc)
        hom.append(tuple(row))
    return VCategory(Q, len(carrier), tuple(hom), objects=carrier)


def f_shriek(Q: Quantale, f, codomain_size: int) -> VFunctor:
    """Precomposition sigma -> sigma . f between function-space categories."""
    f = tuple(f)
    if any(not 0 <= y < codomain_size for y in f):
        raise ValidationError("point map value out of range")
    power_y = power_category(Q, codomain_size)
    power_x = power_category(Q, len(f))
    index = {sigma: i for i, sigma in enumerate(power_x.objects)}
    pm = tuple(
        index[tuple(sigma[y] for y in f)] for sigma in power_y.objects
    )
    return VFunctor(power_y, power_x, pm)


def pset_category(Q: Quantale, n: int) -> VCategory:
    """Subsets of an n-point set, hom(A, B) = [disc A, disc B] pointwise."""
    if n > PSET_CAP:
        raise SizeLimitExceeded(f"pset_category caps at {PSET_CAP} points, got {n}")
    disc = discrete(Q, n).table
    hom = tuple(
        tuple(hom_pointwise(Q, disc[A], disc[B]) for B in range(1 << n))
        for A in range(1 << n)
    )
    cat = validate_vcategory(Q, hom)
    return VCategory(Q, cat.size, cat.hom, objects=tuple(range(1 << n)))


def yoneda(C: VCategory) -> VFunctor:
    """x -> hom(-, x), landing in the power category over C's carrier."""
    power = power_category(C.quantale, C.size)
    index = {sigma: i for i, sigma in enumerate(power.objects)}
    pm = tuple(
        index[tuple(C.hom[z][x] for z in range(C.size))] for x in range(C.size)
    )
    return VFunctor(C, power, pm)


# ---------------------------------------------------------------------------
# equational characterization of closure structures


@dataclass(frozen=True)
class Prop51Verdict:
    i: bool
    ii: bool
    iii: bool

    @property
    def coincide(self) -> bool:
        return self.i == self.ii == self.iii


def check_prop51(c: ClosureStructure) -> Prop51Verdict:
    """Three readings of "c is a closure structure".

    (i) the axioms (R) and (T); (ii) disc A <= cA and
    [disc B, cA] <= [cB, cA]; (iii) [disc B, cA] = [cB, cA].  The three
    verdicts are computed independently; they are proved equivalent and the
    suites assert the coincidence on every table, valid or garbage.
    """
    Q, n, t = c.quantale, c.base_size, c.table
    i = (
        _axiom_R_witness(Q, n, t) is None
        and _axiom_T_witness(Q, n, t) is None
    )
    disc = discrete(Q, n).table
    leq = Q.lattice.leq
    size = 1 << n

    ii = all(
        leq[disc[A][x]][t[A][x]] for A in range(size) for x in range(n)
    )
    iii = True
    for A in range(size):
        for B in range(size):
            h_disc = hom_pointwise(Q, disc[B], t[A])
            h_full = hom_pointwise(Q, t[B], t[A])
            if h_disc != h_full:
                iii = False
            if ii and not leq[h_disc][h_full]:
                ii = False
        if not ii and not iii:
            break
    return Prop51Verdict(i=i, ii=ii, iii=iii)


def check_cor53_and_recover(c: ClosureStructure) -> CheckReport:
    """Composite-map equality, singleton recovery, and the functor corollary.

    The two composites through the function-space Yoneda embedding agree at
    (A, B) exactly when [disc B, cA] = [cB, cA]; both sides are evaluated
    pointwise.  Recovery re-reads c from singleton homs; the corollary
    check asserts that a closure structure is itself hom-preserving from
    the powerset category to the power category.
    """
    Q, n, t = c.quantale, c.base_size, c.table
    disc = discrete(Q, n).table
    size = 1 << n
    verdict = check_prop51(c)
    checks = []
    witnesses = []

    agree = True
    first = None
    for A in range(size):
        for B in range(size):
            lhs = hom_pointwise(Q, disc[B], t[A])
            rhs = hom_pointwise(Q, t[B], t[A])
            if lhs != rhs:
                agree = False
                first = first or Witness("cor53-composites", A, B, None, lhs, rhs)
    ok = agree == verdict.i
    checks.append(("cor53-composites-iff-closure", ok))
    if not ok and first is not None:
        witnesses.append(first)

    recovered = tuple(
        tuple(hom_pointwise(Q, disc[1 << x], t[A]) for x in range(n))
        for A in range(size)
    )
    rec_ok = recovered == t
    checks.append(("remark55-recovery", rec_ok))
    if not rec_ok:
        A, x = next(
            (A, x)
            for A in range(size)
            for x in range(n)
            if recovered[A][x] != t[A][x]
        )
        witnesses.append(Witness("remark55-recovery", A, None, x, recovered[A][x], t[A][x]))

    functor_ok = True
    if verdict.i:
        leq = Q.lattice.leq
        for A in range(size):
            for B in range(size):
                lhs = hom_pointwise(Q, disc[A], disc[B])
                rhs = hom_pointwise(Q, t[A], t[B])
                if not leq[lhs][rhs]:
                    functor_ok = False
                    witnesses.append(Witness("cor52-vfunctor", A, B, None, lhs, rhs))
                    break
            if not functor_ok:
                break
    checks.append(("cor52-vfunctor", functor_ok))

    return CheckReport(tuple(checks), tuple(witnesses))


def yoneda_singleton_identity(Q: Quantale, n: int) -> bool:
    """[disc {x}, sigma] = sigma(x) for every function sigma; the Yoneda instance."""
    disc = discrete(Q, n).table
    for sigma in function_space(Q, n):
        for x in range(n):
            if hom_pointwise(Q, disc[1 << x], sigma) != sigma[x]:
                return False
    return True
