"""Command line front end.

Subcommands: dilog, parse, volume, invariant, enumerate, symmetry.
Exit codes: 0 success, 1 input or validation error, 2 numeric failure
(a state sum off the {-V, 0, +V} lattice, or unparseable numbers).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .diagram import Diagram, parse_pd
from .dilog import bloch_wigner
from .errors import InputError, OutOfLattice, VolquandleError
from .fixtures import FIXTURES
from .holquandle import HolonomyRep, QuandleElement, load_holonomy, word_to_text
from .invariant import (
    CLASSIFICATION_TOL,
    coloring_from_doc,
    natural_coloring,
    phi,
    reference_volume,
    symmetry_report,
    tally_colorings,
)

MAX_DEPTH = 6
MAX_CAP = 10**6


@dataclass
class RunConfig:
    """Validated run parameters shared by the heavier subcommands."""

    depth: int = 2
    cap: int = 100000
    tol: float = CLASSIFICATION_TOL
    precision: int = 12
    as_json: bool = False

    def __post_init__(self):
        if not 0 <= self.depth <= MAX_DEPTH:
            raise InputError(f"depth must be in 0..{MAX_DEPTH}")
        if not 1 <= self.cap <= MAX_CAP:
            raise InputError(f"cap must be in 1..{MAX_CAP}")
        if self.tol <= 0:
            raise InputError("tol must be positive")
        if self.precision < 1:
            raise InputError("precision must be at least 1")


def _config(args) -> RunConfig:
    return RunConfig(
        depth=getattr(args, "depth", 2),
        cap=getattr(args, "cap", 100000),
        tol=getattr(args, "tol", CLASSIFICATION_TOL),
        precision=args.precision,
        as_json=args.json,
    )


def _fmt(x: float, precision: int) -> str:
    return f"{x:.{precision}f}"


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _read_json(path: str) -> dict:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _fixture(args) -> dict | None:
    name = getattr(args, "fixture", None)
    if name is None:
        return None
    try:
        return FIXTURES[name]
    except KeyError:
        raise InputError(f"unknown fixture {name!r}") from None


def _load_diagram(args) -> Diagram:
    fixture = _fixture(args)
    if getattr(args, "pd", None):
        return parse_pd(_read_text(args.pd))
    if fixture is not None:
        return parse_pd(fixture["pd"])
    raise InputError("no diagram given: use --pd FILE or --fixture NAME")


def _load_rep(args, d: Diagram, reversed_: bool = False) -> HolonomyRep | None:
    key = "holonomy_reversed" if reversed_ else "holonomy"
    path = getattr(args, key, None)
    if path:
        return load_holonomy(_read_json(path), d)
    fixture = _fixture(args)
    if fixture is not None:
        return load_holonomy(fixture[key], d)
    return None


def _require_rep(args, d: Diagram) -> HolonomyRep:
    h = _load_rep(args, d)
    if h is None:
        raise InputError("no holonomy given: use --holonomy FILE or --fixture NAME")
    return h


def _base_meridian(args, h: HolonomyRep) -> QuandleElement:
    text = getattr(args, "base_meridian", None)
    if text is None:
        text = h.generators[0]
    return h.element(text)


def _reference_volume(d: Diagram, h: HolonomyRep, w: QuandleElement) -> float:
    try:
        return reference_volume(h, d, w)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _emit(doc: dict, lines: list[str], cfg: RunConfig) -> None:
    if cfg.as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _phi_doc(result, cfg: RunConfig) -> tuple[dict, list[str]]:
    p = cfg.precision
    doc = {
        "phi": float(_fmt(result.phi, p)),
        "volume": float(_fmt(result.volume, p)),
        "k": result.k,
        "residual": float(f"{result.residual:.{p}e}"),
    }
    lines = [
        f"phi      = {_fmt(result.phi, p)}",
        f"volume   = {_fmt(result.volume, p)}",
        f"k        = {result.k:+d}",
        f"residual = {result.residual:.{p}e}",
    ]
    return doc, lines


def cmd_dilog(args) -> int:
    try:
        z = complex(float(args.re), float(args.im))
    except ValueError:
        print("dilog: arguments must be real numbers", file=sys.stderr)
        return 2
    value = bloch_wigner(z)
    if args.json:
        print(json.dumps({"z": [z.real, z.imag], "D": value}))
    else:
        print(_fmt(value, args.precision))
    return 0


def cmd_parse(args) -> int:
    cfg = _config(args)
    d = _load_diagram(args)
    doc = d.to_json_dict()
    doc["writhe"] = sum(d.signs())
    doc["n_arcs"] = len(d.arcs)
    doc["n_regions"] = d.n_regions
    lines = [f"crossings: {d.n_crossings}"]
    for cr in d.crossings:
        lines.append(
            "  X({},{},{},{})  sign {:+d}".format(*cr.edges, cr.sign)
        )
    lines.append(f"arcs: {len(d.arcs)}")
    for i, arc in enumerate(d.arcs):
        lines.append(f"  arc {i}: edges {list(arc)}")
    lines.append(f"regions: {d.n_regions}")
    lines.append(f"writhe: {sum(d.signs())}")
    _emit(doc, lines, cfg)
    return 0


def cmd_volume(args) -> int:
    cfg = _config(args)
    d = _load_diagram(args)
    h = _require_rep(args, d)
    w = _base_meridian(args, h)
    volume = _reference_volume(d, h, w)
    s = natural_coloring(d, h)
    result = phi(d, s, w, volume, tol=cfg.tol)
    doc, lines = _phi_doc(result, cfg)
    _emit(doc, lines, cfg)
    return 0


def cmd_invariant(args) -> int:
    cfg = _config(args)
    d = _load_diagram(args)
    h = _require_rep(args, d)
    if not getattr(args, "coloring", None):
        raise InputError("no coloring given: use --coloring FILE")
    coloring_doc = _read_json(args.coloring)
    s = coloring_from_doc(d, h, coloring_doc)
    if getattr(args, "base_meridian", None) is None and "base_meridian" in coloring_doc:
        w = h.element(coloring_doc["base_meridian"])
    else:
        w = _base_meridian(args, h)
    volume = _reference_volume(d, h, w)
    result = phi(d, s, w, volume, tol=cfg.tol)
    doc, lines = _phi_doc(result, cfg)
    _emit(doc, lines, cfg)
    return 0


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    d = _load_diagram(args)
    h = _require_rep(args, d)
    w = _base_meridian(args, h)
    tally = tally_colorings(d, h, cfg.depth, cfg.cap, w=w, tol=cfg.tol)
    doc = tally.to_json_dict()
    doc["depth"] = cfg.depth
    lines = [f"colorings: {tally.total} (depth {cfg.depth})"]
    for k in (-1, 0, 1):
        lines.append(f"  k = {k:+d}: {tally.counts.get(k, 0)}")
    lines.append(f"max residual: {tally.max_residual:.{cfg.precision}e}")
    lines.append(f"truncated: {'yes' if tally.truncated else 'no'}")
    _emit(doc, lines, cfg)
    return 0


def cmd_symmetry(args) -> int:
    cfg = _config(args)
    d = _load_diagram(args)
    h_std = _require_rep(args, d)
    h_rev = _load_rep(args, d, reversed_=True)
    report = symmetry_report(d, h_std, h_rev, cfg.depth, cfg.cap, tol=cfg.tol)
    doc = report.to_json_dict()

    def witness_doc(tally, k):
        s = tally.first_witness.get(k)
        if s is None:
            return None
        return {str(i): word_to_text(e.word) for i, e in sorted(s.arc_colors.items())}

    doc["witnesses"] = {
        "negatively_amphicheiral": witness_doc(report.standard, -1),
        "invertible": None
        if report.reversed_ is None
        else witness_doc(report.reversed_, 1),
        "positively_amphicheiral": None
        if report.reversed_ is None
        else witness_doc(report.reversed_, -1),
    }
    lines = []
    for flag in ("negatively_amphicheiral", "invertible", "positively_amphicheiral"):
        lines.append(f"{flag}: {doc[flag]}")
        witness = doc["witnesses"][flag]
        if witness is not None:
            arcs = ", ".join(f"{i}: {word}" for i, word in witness.items())
            lines.append(f"  witness arcs {{{arcs}}}")
    _emit(doc, lines, cfg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="volquandle",
        description=(
            "Hyperbolic-volume quandle cocycle invariant of knot diagrams"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, files=True, search=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--precision", type=int, default=12, help="printed digits")
        if files:
            p.add_argument("--pd", help="PD-code file")
            p.add_argument("--holonomy", help="holonomy JSON file")
            p.add_argument("--fixture", help="built-in fixture name (fig8)")
        if search:
            p.add_argument("--depth", type=int, default=2, help="conjugation depth")
            p.add_argument("--cap", type=int, default=100000, help="coloring cap")
            p.add_argument(
                "--tol", type=float, default=CLASSIFICATION_TOL,
                help="lattice classification tolerance",
            )
            p.add_argument("--base-meridian", help="word for the base meridian w")

    p = sub.add_parser("dilog", help="evaluate the Bloch-Wigner function D")
    p.add_argument("re", help="real part")
    p.add_argument("im", help="imaginary part")
    common(p, files=False)
    p.set_defaults(func=cmd_dilog)

    p = sub.add_parser("parse", help="parse a PD code and print the diagram")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("volume", help="state sum of the natural coloring")
    common(p, search=True)
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("invariant", help="state sum of a supplied coloring")
    common(p, search=True)
    p.add_argument("--coloring", help="coloring JSON file")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("enumerate", help="classify all pool colorings")
    common(p, search=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("symmetry", help="bounded symmetry detection")
    common(p, search=True)
    p.add_argument("--holonomy-reversed", help="reversed-orientation holonomy JSON")
    p.set_defaults(func=cmd_symmetry)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OutOfLattice as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VolquandleError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
