"""Batch front end: validate files, run checks and constructions, emit reports.

Commands print a deterministic report document to stdout (and to ``--out``
when given).  Check records render as ``name: pass`` or ``name: fail |
witness``; data records render as ``name = value``.  The only varying line
is the trailing ``# elapsed-ms`` comment, so reports are golden-file
friendly.

Exit status: 0 when every check passed, 1 when some check failed (the
report carries the witnesses), 2 for usage, parse or precondition errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from . import suites
from .closure import (
    CheckReport,
    SpaceMap,
    Witness,
    bar,
    check_axioms,
    check_continuous,
    core,
    initial_structure,
    to_levels,
    check_levels,
    levels_coprime_topological,
    vtop_limit,
)
from .errors import ParseError, QtopError, SizeLimitExceeded, ValidationError
from .fileio import (
    Space,
    load_lattice,
    load_map,
    load_quantale,
    load_space,
    parse_map_file,
    resolve_point_map,
    serialize_levels,
    serialize_space,
    subset_expr,
)
from .lattice import (
    coprimes,
    is_ccd,
    is_coframe,
    is_sup_generated_by_coprimes,
    spatial_embedding,
)
from .quantale import classify, enumerate_quantales, validate_quantale
from .vcat import check_cor53_and_recover, check_prop51


@dataclass
class RunConfig:
    command: str
    lattice: str | None = None
    quantale: str | None = None
    space: str | None = None
    maps: list[str] = field(default_factory=list)
    cap_x: int = 2
    cap_v: int = 8
    seed: int = 0
    out: str | None = None
    coprime_only: bool = False
    exploratory: bool = False
    max_results: int | None = None
    structures: int = 200
    sample_maps: int = 50
    mutations: int = 20


class Report:
    def __init__(self, command: str, inputs: list[str], seed: int | None = None):
        self.lines: list[str] = ["# qtop-report", f"# command: {command}"]
        if inputs:
            self.lines.append("# inputs: " + ", ".join(inputs))
        if seed is not None:
            self.lines.append(f"# seed: {seed}")
        self.checks = 0
        self.failed = 0

    def check(self, name: str, ok: bool, witness: str | None = None):
        self.checks += 1
        if ok:
            self.lines.append(f"{name}: pass")
        else:
            self.failed += 1
            suffix = f" | {witness}" if witness else ""
            self.lines.append(f"{name}: fail{suffix}")

    def data(self, name: str, value):
        self.lines.append(f"{name} = {value}")

    def note(self, text: str):
        self.lines.append(f"# {text}")

    def render(self, elapsed_ms: int) -> str:
        body = list(self.lines)
        body.append(f"# summary: {self.checks} checks, {self.failed} failed")
        body.append(f"# elapsed-ms: {elapsed_ms}")
        return "\n".join(body) + "\n"


def _witness_text(space: Space | None, w: Witness) -> str:
    def fmt(slot):
        if slot is None:
            return "-"
        if space is not None and isinstance(slot, int):
            return slot
        return slot

    parts = [f"check={w.check}"]
    if space is not None:
        names = space.points
        Q = space.quantale
        if isinstance(w.A, int):
            parts.append(f"A={subset_expr(w.A, names)}")
        if isinstance(w.B, int):
            parts.append(f"B={subset_expr(w.B, names)}")
        elif isinstance(w.B, tuple):
            parts.append("B=(" + ",".join(Q.name(u) for u in w.B) + ")")
        if isinstance(w.x, int):
            parts.append(f"x={names[w.x]}")
        if isinstance(w.lhs, int):
            parts.append(f"lhs={Q.name(w.lhs)}")
        elif isinstance(w.lhs, tuple):
            parts.append("lhs=(" + ",".join(Q.name(u) for u in w.lhs) + ")")
        if isinstance(w.rhs, int):
            parts.append(f"rhs={Q.name(w.rhs)}")
    else:
        parts.extend(
            f"{k}={fmt(v)}" for k, v in zip(("A", "B", "x", "lhs", "rhs"),
                                            (w.A, w.B, w.x, w.lhs, w.rhs))
        )
    return " ".join(str(p) for p in parts)


def _emit(report_text: str, cfg: RunConfig):
    sys.stdout.write(report_text)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(report_text)


def _add_report(report: Report, space: Space | None, check_report: CheckReport, prefix: str = ""):
    for name, ok in check_report.checks:
        w = check_report.witness_for(name)
        report.check(prefix + name, ok, _witness_text(space, w) if w else None)
    for note in check_report.notes:
        report.note(note)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(cfg: RunConfig) -> int:
    inputs = [p for p in (cfg.lattice, cfg.quantale, cfg.space) if p]
    report = Report("validate", inputs)
    start = time.perf_counter()
    rc = 0
    if cfg.lattice:
        try:
            load_lattice(cfg.lattice)
            report.check("lattice-laws", True)
        except QtopError as exc:
            report.check("lattice-laws", False, str(exc))
            rc = 1
    if cfg.quantale:
        try:
            load_quantale(cfg.quantale)
            report.check("quantale-laws", True)
        except QtopError as exc:
            report.check("quantale-laws", False, str(exc))
            rc = 1
    if cfg.space:
        try:
            load_space(cfg.space)
            report.check("space-wellformed", True)
        except QtopError as exc:
            report.check("space-wellformed", False, str(exc))
            rc = 1
    if not inputs:
        raise ParseError("validate needs --lattice, --quantale or --space")
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return rc


def cmd_check(cfg: RunConfig) -> int:
    if not cfg.space:
        raise ParseError("check needs --space")
    start = time.perf_counter()
    space = load_space(cfg.space)
    report = Report("check", [cfg.space] + cfg.maps)
    _add_report(report, space, check_axioms(space.structure))
    verdict = check_prop51(space.structure)
    report.check("prop51-i", verdict.i)
    report.check("prop51-ii", verdict.ii)
    report.check("prop51-iii", verdict.iii)
    report.check("prop51-agree", verdict.coincide)
    _add_report(report, space, check_cor53_and_recover(space.structure))
    for path in cfg.maps:
        fmap = load_map(path, default_domain=space)
        rep = check_continuous(fmap)
        _add_report(report, space, rep, prefix=f"{path}:")
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return 0 if report.failed == 0 else 1


def cmd_bar(cfg: RunConfig) -> int:
    if not cfg.space:
        raise ParseError("bar needs --space")
    space = load_space(cfg.space)
    result = bar(space.structure, coprime_only=cfg.coprime_only)
    _emit(serialize_space(Space(space.quantale, result, space.points)), cfg)
    return 0


def cmd_core(cfg: RunConfig) -> int:
    if not cfg.space:
        raise ParseError("core needs --space")
    space = load_space(cfg.space)
    result = core(space.structure)
    _emit(serialize_space(Space(space.quantale, result, space.points)), cfg)
    return 0


def _load_initial_family(cfg: RunConfig):
    if not cfg.maps:
        raise ParseError("this command needs at least one --maps file")
    family = []
    domain_points = None
    for path in cfg.maps:
        with open(path, encoding="utf-8") as fh:
            import os

            dom, cod, assignment = parse_map_file(
                fh.read(), source=path, base_dir=os.path.dirname(path) or "."
            )
        points = dom if isinstance(dom, tuple) else tuple(dom.points)
        if domain_points is None:
            domain_points = points
        elif domain_points != points:
            raise ValidationError("all map files must share the same domain points")
        pm = resolve_point_map(points, cod, assignment, source=path)
        family.append((pm, cod.structure, cod))
    return domain_points, family


def cmd_initial(cfg: RunConfig) -> int:
    points, family = _load_initial_family(cfg)
    structure = initial_structure([(pm, c) for pm, c, _ in family], len(points))
    _emit(serialize_space(Space(structure.quantale, structure, points)), cfg)
    return 0


def cmd_limit(cfg: RunConfig) -> int:
    points, family = _load_initial_family(cfg)
    structure = vtop_limit([(pm, c) for pm, c, _ in family], len(points))
    _emit(serialize_space(Space(structure.quantale, structure, points)), cfg)
    return 0


def cmd_levels(cfg: RunConfig) -> int:
    if not cfg.space:
        raise ParseError("levels needs --space")
    start = time.perf_counter()
    space = load_space(cfg.space)
    family = to_levels(space.structure)
    doc = serialize_levels(space, family)
    report = Report("levels", [cfg.space])
    _add_report(report, space, check_levels(family))
    topo, witness = levels_coprime_topological(family)
    report.data("coprime-levels-additive", "yes" if topo else "no")
    text = doc + report.render(int((time.perf_counter() - start) * 1000))
    _emit(text, cfg)
    return 0 if report.failed == 0 else 1


def cmd_lattice_report(cfg: RunConfig) -> int:
    start = time.perf_counter()
    if cfg.lattice:
        L = load_lattice(cfg.lattice)
        source = cfg.lattice
    elif cfg.quantale:
        L = load_quantale(cfg.quantale).lattice
        source = cfg.quantale
    else:
        raise ParseError("lattice-report needs --lattice or --quantale")
    report = Report("lattice-report", [source])
    cop = coprimes(L)
    report.data("coprimes", "{" + ", ".join(L.name(p) for p in cop) + "}")
    generated, witness = is_sup_generated_by_coprimes(L)
    report.data("sup-generated", "yes" if generated else f"no (witness {L.name(witness)})")
    coframe, triple = is_coframe(L)
    report.data(
        "coframe",
        "yes" if coframe else "no (witness " + ",".join(L.name(t) for t in triple) + ")",
    )
    if L.size <= 16:
        ccd, bad = is_ccd(L)
        report.data("ccd", "yes" if ccd else f"no (witness {L.name(bad)})")
        report.check("supgen-coframe-ccd-agree", generated == coframe == ccd)
    emb = spatial_embedding(L)
    report.data("embedding-injective", "yes" if emb.injective else "no")
    report.data("embedding-preserves-meets", "yes" if emb.preserves_binary_meets else "no")
    report.data("embedding-preserves-joins", "yes" if emb.preserves_binary_joins else "no")
    report.check("chi-preserves-all-meets", emb.chi_all_meets)
    report.check("chi-joins-iff-coprime", emb.chi_finite_joins_exactly_coprimes)
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return 0 if report.failed == 0 else 1


def cmd_enumerate(cfg: RunConfig) -> int:
    start = time.perf_counter()
    if cfg.lattice:
        L = load_lattice(cfg.lattice)
        source = cfg.lattice
    elif cfg.quantale:
        L = load_quantale(cfg.quantale).lattice
        source = cfg.quantale
    else:
        raise ParseError("enumerate-quantales needs --lattice or --quantale")
    found = enumerate_quantales(L, max_results=cfg.max_results)
    report = Report("enumerate-quantales", [source])
    report.data("count", len(found))
    for i, Q in enumerate(found):
        rows = "; ".join(
            "[" + ",".join(Q.name(v) for v in row) + "]" for row in Q.tensor
        )
        report.data(f"quantale[{i}].unit", Q.name(Q.unit))
        report.data(f"quantale[{i}].tensor", rows)
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return 0


def _suite_config(cfg: RunConfig) -> suites.SuiteConfig:
    return suites.SuiteConfig(
        seed=cfg.seed,
        sweep_points=min(cfg.cap_x, 2),
        random_points=max(cfg.cap_x, 2),
        random_structures=cfg.structures,
        universal_maps=cfg.sample_maps,
        level_mutations=cfg.mutations,
    )


def _suite_to_report(report: Report, outcome: suites.SuiteOutcome):
    report.check(outcome.name, outcome.passed, "; ".join(outcome.failures) or None)
    for key, value in outcome.counts.items():
        report.data(f"{outcome.name}/{key}", value)
    for note in outcome.notes:
        report.note(f"{outcome.name}: {note}")


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.quantale:
        raise ParseError("verify-theorems needs --quantale")
    start = time.perf_counter()
    Q = load_quantale(cfg.quantale)
    report = Report("verify-theorems", [cfg.quantale], seed=cfg.seed)
    report.data("integral", "yes" if classify(Q).integral else "no")
    report.data("spatial", "yes" if classify(Q).lattice_spatial else "no")
    for outcome in suites.verify_theorems(Q, _suite_config(cfg)):
        _suite_to_report(report, outcome)
    _suite_to_report(report, suites.lattice_theory_suite())
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return 0 if report.failed == 0 else 1


def cmd_search(cfg: RunConfig) -> int:
    if not cfg.quantale:
        raise ParseError("search-counterexample needs --quantale")
    start = time.perf_counter()
    Q = load_quantale(cfg.quantale)
    report = Report("search-counterexample", [cfg.quantale], seed=cfg.seed)
    spatial = classify(Q).lattice_spatial
    report.data("spatial", "yes" if spatial else "no")
    if not spatial and not cfg.exploratory:
        report.note("non-spatial quantale; pass --exploratory to acknowledge")
    outcome = suites.search_counterexample(Q, _suite_config(cfg))
    _suite_to_report(report, outcome)
    _emit(report.render(int((time.perf_counter() - start) * 1000)), cfg)
    return 0 if report.failed == 0 else 1


COMMANDS = {
    "validate": cmd_validate,
    "check": cmd_check,
    "bar": cmd_bar,
    "core": cmd_core,
    "initial": cmd_initial,
    "limit": cmd_limit,
    "levels": cmd_levels,
    "lattice-report": cmd_lattice_report,
    "enumerate-quantales": cmd_enumerate,
    "verify-theorems": cmd_verify,
    "search-counterexample": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtop",
        description="quantale-valued closure and topological space toolkit",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--lattice", help="lattice file")
    parser.add_argument("--quantale", help="quantale file")
    parser.add_argument("--space", help="space file")
    parser.add_argument("--maps", action="append", default=[], help="map file (repeatable)")
    parser.add_argument("--cap-x", type=int, default=2, help="base-set size for suites")
    parser.add_argument("--cap-v", type=int, default=8, help="value-lattice cap for sweeps")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="also write the report/document here")
    parser.add_argument("--coprime-only", action="store_true")
    parser.add_argument("--exploratory", action="store_true")
    parser.add_argument("--max-results", type=int, default=None)
    parser.add_argument("--structures", type=int, default=200,
                        help="random structures per randomized suite")
    parser.add_argument("--sample-maps", type=int, default=50,
                        help="universal-property map samples")
    parser.add_argument("--mutations", type=int, default=20,
                        help="level-family mutations")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cap_x < 1 or args.cap_v < 1:
        print("caps must be at least 1", file=sys.stderr)
        return 2
    cfg = RunConfig(
        command=args.command,
        lattice=args.lattice,
        quantale=args.quantale,
        space=args.space,
        maps=args.maps,
        cap_x=args.cap_x,
        cap_v=args.cap_v,
        seed=args.seed,
        out=args.out,
        coprime_only=args.coprime_only,
        exploratory=args.exploratory,
        max_results=args.max_results,
        structures=args.structures,
        sample_maps=args.sample_maps,
        mutations=args.mutations,
    )
    try:
        return COMMANDS[args.command](cfg)
    except (ParseError, SizeLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QtopError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 1


def entry():  # console-script hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
