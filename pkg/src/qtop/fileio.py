"""Readers and writers for the lattice / quantale / space / map file formats.

One human-editable text format for everything: YAML documents (nested
key/value with lists).  Elements and points are referred to by name, and
subsets are brace expressions over point names, e.g. "{s,t}".  Writers
render by hand with a fixed field order and quote every name, so output is
byte-stable and reparses to an equal object.

Schemas:

* lattice file: ``size``, ``leq`` (either a full 0/1 matrix or a list of
  [below, above] name pairs, whose reflexive-transitive closure is taken),
  optional ``names``.
* quantale file: ``lattice`` (inline or a path string relative to the
  file), ``tensor`` (matrix of element names), ``unit``.
* space file: ``quantale`` (inline or path), ``points`` (names),
  ``closure`` (map from subset expression to the list of per-point values;
  one entry per subset, totality required).
* map file: ``from`` (path, or a list of point names for bare domains),
  ``to`` (path), ``assignment`` (point name -> point name).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import yaml

from .closure import ClosureStructure, SpaceMap, LevelFamily
from .errors import ParseError, ValidationError
from .lattice import FiniteLattice, validate_lattice
from .quantale import Quantale, validate_quantale


def _load_yaml(text: str, source: str):
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}" if mark else source
        raise ParseError(f"not valid YAML: {exc}", location=where) from None
    if not isinstance(doc, dict):
        raise ParseError("document must be a mapping", location=source)
    return doc


def _field(doc: dict, key: str, source: str):
    if key not in doc:
        raise ParseError(f"missing field {key!r}", location=source)
    return doc[key]


def _name_index(names) -> dict[str, int]:
    index = {}
    for i, name in enumerate(names):
        if name in index:
            raise ParseError(f"duplicate element name {name!r}")
        index[name] = i
    return index


def _element(ref, index: dict[str, int], source: str, what: str) -> int:
    if not isinstance(ref, str):
        raise ParseError(
            f"{what} must be a quoted name, got {ref!r}", location=source
        )
    try:
        return index[ref]
    except KeyError:
        raise ValidationError(f"unknown {what} {ref!r}", witness=(ref,)) from None


# ---------------------------------------------------------------------------
# lattices


def parse_lattice_file(text: str, source: str = "<lattice>") -> FiniteLattice:
    doc = _load_yaml(text, source)
    return _lattice_from_doc(doc, source)


def _lattice_from_doc(doc: dict, source: str) -> FiniteLattice:
    size = _field(doc, "size", source)
    if not isinstance(size, int) or size < 1:
        raise ParseError("size must be a positive integer", location=f"{source}.size")
    names = doc.get("names")
    if names is not None:
        if not isinstance(names, list) or len(names) != size:
            raise ParseError(
                f"names must list {size} strings", location=f"{source}.names"
            )
        names = tuple(str(s) for s in names)
    raw = _field(doc, "leq", source)
    if not isinstance(raw, list) or not raw:
        raise ParseError("leq must be a nonempty list", location=f"{source}.leq")

    if all(isinstance(row, list) and len(row) == size and
           all(isinstance(v, (int, bool)) for v in row) for row in raw) and len(raw) == size:
        rows = [[bool(v) for v in row] for row in raw]
    elif all(isinstance(p, list) and len(p) == 2 for p in raw):
        index = _name_index(names) if names else None
        rel = [[i == j for j in range(size)] for i in range(size)]

        def resolve(ref):
            if isinstance(ref, str):
                if index is None:
                    raise ParseError(
                        "name pairs need a names list", location=f"{source}.leq"
                    )
                if ref not in index:
                    raise ValidationError(f"unknown element {ref!r}", witness=(ref,))
                return index[ref]
            if isinstance(ref, int) and 0 <= ref < size:
                return ref
            raise ParseError(f"bad element reference {ref!r}", location=f"{source}.leq")

        for below, above in raw:
            rel[resolve(below)][resolve(above)] = True
        changed = True  # reflexive-transitive closure of the listed pairs
        while changed:
            changed = False
            for i in range(size):
                for j in range(size):
                    if rel[i][j]:
                        for k in range(size):
                            if rel[j][k] and not rel[i][k]:
                                rel[i][k] = True
                                changed = True
        rows = rel
    else:
        raise ParseError(
            "leq must be a size x size 0/1 matrix or a list of pairs",
            location=f"{source}.leq",
        )
    return validate_lattice(rows, names=names)


def serialize_lattice(L: FiniteLattice) -> str:
    lines = [f"size: {L.size}"]
    lines.append("names: [" + ", ".join(f'"{L.name(i)}"' for i in range(L.size)) + "]")
    lines.append("leq:")
    for row in L.leq:
        lines.append("  - [" + ", ".join("1" if v else "0" for v in row) + "]")
    return "\n".join(lines) + "\n"


def load_lattice(path: str) -> FiniteLattice:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice_file(fh.read(), source=path)


# ---------------------------------------------------------------------------
# quantales


def parse_quantale_file(text: str, source: str = "<quantale>", base_dir: str = ".") -> Quantale:
    doc = _load_yaml(text, source)
    return _quantale_from_doc(doc, source, base_dir)


def _quantale_from_doc(doc: dict, source: str, base_dir: str) -> Quantale:
    lat_ref = _field(doc, "lattice", source)
    if isinstance(lat_ref, str):
        lattice = load_lattice(os.path.join(base_dir, lat_ref))
    elif isinstance(lat_ref, dict):
        lattice = _lattice_from_doc(lat_ref, f"{source}.lattice")
    else:
        raise ParseError("lattice must be inline or a path", location=f"{source}.lattice")
    if lattice.names is None:
        lattice = FiniteLattice(
            size=lattice.size,
            leq=lattice.leq,
            join_table=lattice.join_table,
            meet_table=lattice.meet_table,
            bottom=lattice.bottom,
            top=lattice.top,
            names=tuple(f"e{i}" for i in range(lattice.size)),
        )
    index = _name_index(lattice.names)

    raw = _field(doc, "tensor", source)
    if (
        not isinstance(raw, list)
        or len(raw) != lattice.size
        or any(not isinstance(row, list) or len(row) != lattice.size for row in raw)
    ):
        raise ParseError(
            f"tensor must be a {lattice.size} x {lattice.size} matrix of names",
            location=f"{source}.tensor",
        )
    tensor = tuple(
        tuple(_element(v, index, f"{source}.tensor", "tensor entry") for v in row)
        for row in raw
    )
    unit = _element(_field(doc, "unit", source), index, f"{source}.unit", "unit")
    return validate_quantale(lattice, tensor, unit)


def _quantale_lines(Q: Quantale, indent: str) -> list[str]:
    L = Q.lattice
    lines = [f"{indent}lattice:"]
    lines.append(f"{indent}  size: {L.size}")
    lines.append(
        f"{indent}  names: [" + ", ".join(f'"{L.name(i)}"' for i in range(L.size)) + "]"
    )
    lines.append(f"{indent}  leq:")
    for row in L.leq:
        lines.append(f"{indent}    - [" + ", ".join("1" if v else "0" for v in row) + "]")
    lines.append(f"{indent}tensor:")
    for row in Q.tensor:
        lines.append(
            f"{indent}  - [" + ", ".join(f'"{Q.name(v)}"' for v in row) + "]"
        )
    lines.append(f'{indent}unit: "{Q.name(Q.unit)}"')
    return lines


def serialize_quantale(Q: Quantale) -> str:
    return "\n".join(_quantale_lines(Q, "")) + "\n"


def load_quantale(path: str) -> Quantale:
    with open(path, encoding="utf-8") as fh:
        return parse_quantale_file(
            fh.read(), source=path, base_dir=os.path.dirname(path) or "."
        )


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class Space:
    quantale: Quantale
    structure: ClosureStructure
    points: tuple[str, ...]

    def subset_expr(self, mask: int) -> str:
        return subset_expr(mask, self.points)


def subset_expr(mask: int, points) -> str:
    return "{" + ",".join(points[i] for i in range(len(points)) if mask >> i & 1) + "}"


def parse_subset_expr(expr: str, points: dict[str, int], source: str) -> int:
    text = expr.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"subset expression must be braced, got {expr!r}", location=source)
    body = text[1:-1].strip()
    mask = 0
    if body:
        for part in body.split(","):
            name = part.strip()
            if name not in points:
                raise ParseError(f"unknown point {name!r} in {expr!r}", location=source)
            bit = 1 << points[name]
            if mask & bit:
                raise ParseError(f"duplicate point {name!r} in {expr!r}", location=source)
            mask |= bit
    return mask


def parse_space_file(text: str, source: str = "<space>", base_dir: str = ".") -> Space:
    doc = _load_yaml(text, source)
    q_ref = _field(doc, "quantale", source)
    if isinstance(q_ref, str):
        quantale = load_quantale(os.path.join(base_dir, q_ref))
    elif isinstance(q_ref, dict):
        quantale = _quantale_from_doc(q_ref, f"{source}.quantale", base_dir)
    else:
        raise ParseError("quantale must be inline or a path", location=f"{source}.quantale")

    points_raw = _field(doc, "points", source)
    if not isinstance(points_raw, list) or not all(isinstance(p, str) for p in points_raw):
        raise ParseError("points must be a list of names", location=f"{source}.points")
    points = tuple(points_raw)
    point_index = _name_index(points)
    n = len(points)

    closure_raw = _field(doc, "closure", source)
    if not isinstance(closure_raw, dict):
        raise ParseError("closure must map subset expressions to value lists",
                         location=f"{source}.closure")
    element_index = _name_index(quantale.lattice.names)
    rows: dict[int, tuple[int, ...]] = {}
    for expr, values in closure_raw.items():
        where = f"{source}.closure[{expr!r}]"
        mask = parse_subset_expr(str(expr), point_index, where)
        if mask in rows:
            raise ParseError("subset listed twice", location=where)
        if not isinstance(values, list) or len(values) != n:
            raise ParseError(f"need {n} values, one per point", location=where)
        rows[mask] = tuple(
            _element(v, element_index, where, "closure value") for v in values
        )
    missing = [A for A in range(1 << n) if A not in rows]
    if missing:
        raise ParseError(
            f"closure table is not total; missing {subset_expr(missing[0], points)!r}",
            location=f"{source}.closure",
        )
    table = tuple(rows[A] for A in range(1 << n))
    return Space(quantale, ClosureStructure(quantale, n, table), points)


def serialize_space(space: Space) -> str:
    lines = ["quantale:"]
    lines.extend(_quantale_lines(space.quantale, "  "))
    lines.append("points: [" + ", ".join(f'"{p}"' for p in space.points) + "]")
    lines.append("closure:")
    c = space.structure
    for A in range(c.subset_count):
        values = ", ".join(f'"{space.quantale.name(v)}"' for v in c.table[A])
        lines.append(f'  "{space.subset_expr(A)}": [{values}]')
    return "\n".join(lines) + "\n"


def load_space(path: str) -> Space:
    with open(path, encoding="utf-8") as fh:
        return parse_space_file(
            fh.read(), source=path, base_dir=os.path.dirname(path) or "."
        )


def serialize_levels(space: Space, family: LevelFamily) -> str:
    """Levels document: one block per value, mapping each subset to its level set."""
    lines = ["levels:"]
    Q = space.quantale
    for v in range(Q.lattice.size):
        lines.append(f'  "{Q.name(v)}":')
        for A in range(1 << family.base_size):
            lines.append(
                f'    "{space.subset_expr(A)}": "{space.subset_expr(family.masks[v][A])}"'
            )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# maps


def parse_map_file(
    text: str, source: str = "<map>", base_dir: str = "."
) -> tuple[Space | tuple[str, ...], Space, dict[str, str]]:
    """Returns (domain, codomain space, assignment).

    The domain is either a full Space (when ``from`` is a path) or a bare
    tuple of point names (when ``from`` lists them inline).
    """
    doc = _load_yaml(text, source)
    dom_ref = _field(doc, "from", source)
    if isinstance(dom_ref, str):
        domain: Space | tuple[str, ...] = load_space(os.path.join(base_dir, dom_ref))
    elif isinstance(dom_ref, list) and all(isinstance(p, str) for p in dom_ref):
        domain = tuple(dom_ref)
    else:
        raise ParseError("from must be a space path or a list of point names",
                         location=f"{source}.from")
    cod_ref = _field(doc, "to", source)
    if not isinstance(cod_ref, str):
        raise ParseError("to must be a space path", location=f"{source}.to")
    codomain = load_space(os.path.join(base_dir, cod_ref))
    assignment = _field(doc, "assignment", source)
    if not isinstance(assignment, dict):
        raise ParseError("assignment must map point names", location=f"{source}.assignment")
    return domain, codomain, {str(k): str(v) for k, v in assignment.items()}


def resolve_point_map(
    domain_points, codomain: Space, assignment: dict[str, str], source: str = "<map>"
) -> tuple[int, ...]:
    cod_index = {p: i for i, p in enumerate(codomain.points)}
    out = []
    for p in domain_points:
        if p not in assignment:
            raise ParseError(f"assignment misses point {p!r}", location=source)
        target = assignment[p]
        if target not in cod_index:
            raise ValidationError(f"unknown codomain point {target!r}", witness=(target,))
        out.append(cod_index[target])
    return tuple(out)


def load_map(path: str, default_domain: Space | None = None) -> SpaceMap:
    """Load a map file into a SpaceMap (requires a space-backed domain)."""
    with open(path, encoding="utf-8") as fh:
        domain, codomain, assignment = parse_map_file(
            fh.read(), source=path, base_dir=os.path.dirname(path) or "."
        )
    if isinstance(domain, tuple):
        if default_domain is None or tuple(default_domain.points) != domain:
            raise ValidationError(
                "map file lists bare domain points; supply the matching space"
            )
        domain = default_domain
    pm = resolve_point_map(domain.points, codomain, assignment, source=path)
    return SpaceMap(domain.structure, codomain.structure, pm)
