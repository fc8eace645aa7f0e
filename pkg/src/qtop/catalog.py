"""Built-in lattices and quantales used by the suites and tests.

The lattice catalog is chosen to exercise both sides of every predicate:
chains and Boolean lattices are spatial coframes, the diamond and the
pentagon are not.  The quantale catalog keeps one representative per kind:
frames on chains, the truncated distance chains (reversed order), a
Lukasiewicz chain, and the non-integral free quantale on the two-element
idempotent monoid.
"""

from __future__ import annotations

from .lattice import FiniteLattice, product_lattice, validate_lattice
from .quantale import (
    Quantale,
    chain_frame,
    free_on_monoid,
    lawvere_chain,
    lukasiewicz_chain,
    trivial_quantale,
    two_chain_quantale,
)


def chain(n: int) -> FiniteLattice:
    rows = [[i <= j for j in range(n)] for i in range(n)]
    names = ("bot", "top") if n == 2 else tuple(str(i) for i in range(n))
    return validate_lattice(rows, names=names)


def boolean(k: int) -> FiniteLattice:
    """Powerset of a k-element set, elements as bitmasks."""
    size = 1 << k
    rows = [[(a & ~b) == 0 for b in range(size)] for a in range(size)]
    names = tuple(
        "{" + ",".join(str(i) for i in range(k) if a >> i & 1) + "}"
        for a in range(size)
    )
    return validate_lattice(rows, names=names)


def diamond() -> FiniteLattice:
    """Three pairwise incomparable atoms under a shared top (M3)."""
    le = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)}
    rows = [[i == j or (i, j) in le for j in range(5)] for i in range(5)]
    return validate_lattice(rows, names=("bot", "a", "b", "c", "top"))


def pentagon() -> FiniteLattice:
    """bot < a < c < top with b only comparable to bot and top (N5)."""
    le = {(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (1, 4), (3, 4), (2, 4)}
    rows = [[i == j or (i, j) in le for j in range(5)] for i in range(5)]
    return validate_lattice(rows, names=("bot", "a", "b", "c", "top"))


def lattice_catalog() -> dict[str, FiniteLattice]:
    cat = {f"chain{n}": chain(n) for n in range(1, 7)}
    for k in range(1, 5):
        cat[f"bool{k}"] = boolean(k)
    cat["m3"] = diamond()
    cat["n5"] = pentagon()
    cat["square"] = product_lattice(chain(2), chain(2))
    cat["prod_c2_c3"] = product_lattice(chain(2), chain(3))
    return cat


def free_eta_alpha() -> Quantale:
    """Free quantale on the monoid {eta, alpha} with alpha^2 = alpha."""
    return free_on_monoid(((0, 1), (1, 1)), names=("eta", "alpha"))


def bool22_frame() -> Quantale:
    """The four-element Boolean frame: meet tensor, top unit."""
    from .quantale import validate_quantale

    lat = boolean(2)
    tensor = tuple(tuple(a & b for b in range(4)) for a in range(4))
    return validate_quantale(lat, tensor, 3)


def quantale_catalog() -> dict[str, Quantale]:
    return {
        "trivial": trivial_quantale(),
        "two": two_chain_quantale(),
        "chain3_frame": chain_frame(3),
        "lawvere1": lawvere_chain(1),
        "lawvere2": lawvere_chain(2),
        "lukasiewicz2": lukasiewicz_chain(2),
        "free_eta_alpha": free_eta_alpha(),
        "bool22_frame": bool22_frame(),
    }


def acceptance_quantales_v4() -> dict[str, Quantale]:
    """The |V| <= 4 family the exhaustive two-point sweeps run over."""
    cat = quantale_catalog()
    return {
        name: cat[name]
        for name in ("trivial", "two", "lawvere2", "free_eta_alpha", "bool22_frame")
    }


def acceptance_quantales_v3() -> dict[str, Quantale]:
    """The |V| <= 3 family for the all-tables equational sweeps."""
    cat = quantale_catalog()
    return {
        name: cat[name]
        for name in ("trivial", "two", "chain3_frame", "lawvere1", "lukasiewicz2")
    }
