"""The state-sum invariant: cocycle, shadow colorings, Phi, symmetry flags.

Coloring conventions (coupled with the ones in `diagram`):

* Crossing rule: color(under_out) = color(under_in) * color(over) at a
  positive crossing, and the inverse operation at a negative one.
* Region rule: crossing an arc along its normal (right side of the arc's
  orientation to its left side) sends r to r * (arc color).
* Boltzmann weight at a crossing: sign * vol_w(r, x, y) with y the over
  color, r the source-region color from the crossing frame, and x the
  under color on the source side (the incoming under-arc at a positive
  crossing, the outgoing one at a negative crossing).

These choices were calibrated together so that every valid coloring's
state sum lands on {-V, 0, +V} and the generator coloring of the built-in
figure-eight diagram yields +V.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import Diagram
from .errors import ColoringInvalid, InconsistentExtension, OutOfLattice
from .hypgeom import IdealTetrahedron, ideal_tet_volume
from .holquandle import (
    HolonomyRep,
    QuandleElement,
    arc_colorings,
    quandle_op,
    quandle_op_inv,
    word_to_text,
)

CLASSIFICATION_TOL = 1e-6


@dataclass(frozen=True)
class ShadowColoring:
    """Arc and region colors of a diagram; both maps are by integer id."""

    arc_colors: dict[int, QuandleElement] = field(compare=False)
    region_colors: dict[int, QuandleElement] = field(compare=False)
    rep: HolonomyRep = field(compare=False)

    def to_json_dict(self, base_meridian: QuandleElement | None = None) -> dict:
        doc = {
            "arcs": {str(i): word_to_text(e.word) for i, e in self.arc_colors.items()},
            "regions": {
                str(i): word_to_text(e.word) for i, e in self.region_colors.items()
            },
        }
        if base_meridian is not None:
            doc["base_meridian"] = word_to_text(base_meridian.word)
        return doc


@dataclass(frozen=True)
class PhiResult:
    phi: float
    volume: float
    k: int
    residual: float

    def to_json_dict(self) -> dict:
        return {
            "phi": self.phi,
            "volume": self.volume,
            "k": self.k,
            "residual": self.residual,
        }


def cocycle_vol(
    w: QuandleElement, z: QuandleElement, x: QuandleElement, y: QuandleElement
) -> float:
    """Signed volume of the four-tetrahedron chain attached to (z, x, y).

    Tetrahedra (by fixed points): (w, z, x, y), (w, z*x, y, x),
    (w, (z*x)*y, x*y, y), (w, (z*y), y, x*y).
    """
    xinv = x.matrix.inverse()
    yinv = y.matrix.inverse()
    fw, fz, fx, fy = (e.fixed_point for e in (w, z, x, y))
    f_zx = xinv.apply(fz)
    f_zxy = yinv.apply(f_zx)
    f_xy = yinv.apply(fx)
    f_zy = yinv.apply(fz)
    total = 0.0
    for tet in (
        IdealTetrahedron(fw, fz, fx, fy),
        IdealTetrahedron(fw, f_zx, fy, fx),
        IdealTetrahedron(fw, f_zxy, f_xy, fy),
        IdealTetrahedron(fw, f_zy, fy, f_xy),
    ):
        total += ideal_tet_volume(tet)
    return total


def cocycle_residuals(
    w: QuandleElement,
    pool: list[QuandleElement],
    samples: int,
    seed: int = 0,
) -> float:
    """Max residual of the 2-cocycle identity over random (r, x, y, z)."""
    if not pool:
        raise ValueError("pool must be nonempty")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        r, x, y, z = (rng.choice(pool) for _ in range(4))
        lhs = (
            cocycle_vol(w, r, x, y)
            + cocycle_vol(w, quandle_op(r, y), quandle_op(x, y), z)
            + cocycle_vol(w, r, y, z)
        )
        rhs = (
            cocycle_vol(w, quandle_op(r, x), y, z)
            + cocycle_vol(w, r, x, z)
            + cocycle_vol(w, quandle_op(r, z), quandle_op(x, z), quandle_op(y, z))
        )
        worst = max(worst, abs(lhs - rhs))
    return worst


def _region_rule_ok(near: QuandleElement, far: QuandleElement, arc: QuandleElement):
    # near = right side of the arc, far = left (normal) side
    return quandle_op(near, arc).equals(far)


def validate_coloring(d: Diagram, s: ShadowColoring) -> list[str]:
    """All crossing-rule and region-rule violations; empty list means valid."""
    violations = []
    for i in range(len(d.arcs)):
        if i not in s.arc_colors:
            violations.append(f"arc {i} has no color")
    for r in range(d.n_regions):
        if r not in s.region_colors:
            violations.append(f"region {r} has no color")
    if violations:
        return violations
    for ci in range(d.n_crossings):
        f = d.crossing_frame(ci)
        cin = s.arc_colors[f.under_in_arc]
        cout = s.arc_colors[f.under_out_arc]
        over = s.arc_colors[f.over_arc]
        expected = quandle_op(cin, over) if f.sign > 0 else quandle_op_inv(cin, over)
        if not expected.equals(cout):
            violations.append(f"crossing {ci}: under-arc colors break the crossing rule")
    for e in d.edges:
        arc = s.arc_colors[d.arc_of_edge(e)]
        near = s.region_colors[d.region_right(e)]
        far = s.region_colors[d.region_left(e)]
        if not _region_rule_ok(near, far, arc):
            violations.append(f"edge {e}: region colors break the region rule")
    return violations


def _extend_regions(
    d: Diagram,
    arc_colors: dict[int, QuandleElement],
    base_region: int,
    base_color: QuandleElement,
) -> dict[int, QuandleElement]:
    colors = {base_region: base_color}
    for region, steps in d.region_steps_from(base_region):
        if region == base_region:
            continue
        color = base_color
        for arc, direction in steps:
            op = quandle_op if direction > 0 else quandle_op_inv
            color = op(color, arc_colors[arc])
        colors[region] = color
    return colors


def natural_coloring(
    d: Diagram,
    h: HolonomyRep,
    base_region: int = 0,
    base_color: QuandleElement | None = None,
) -> ShadowColoring:
    """Arcs colored by their Wirtinger generators, regions extended."""
    if h.arc_generators is None:
        raise ColoringInvalid(
            "representation has no arc-to-generator assignment for this diagram"
        )
    arc_colors = {i: h.element(text) for i, text in enumerate(h.arc_generators)}
    if base_color is None:
        base_color = h.element(((h.generators[0], 1),))
    region_colors = _extend_regions(d, arc_colors, base_region, base_color)
    s = ShadowColoring(arc_colors, region_colors, h)
    bad = validate_coloring(d, s)
    if bad:
        raise InconsistentExtension("; ".join(bad))
    return s


def coloring_from_doc(d: Diagram, h: HolonomyRep, doc: dict) -> ShadowColoring:
    """Build a ShadowColoring from its JSON document; raises on violations."""
    try:
        arc_words = doc["arcs"]
        region_words = doc["regions"]
    except (KeyError, TypeError) as exc:
        raise ColoringInvalid(f"malformed coloring document: {exc}") from exc
    arc_colors = {int(i): h.element(word) for i, word in arc_words.items()}
    region_colors = {int(i): h.element(word) for i, word in region_words.items()}
    s = ShadowColoring(arc_colors, region_colors, h)
    bad = validate_coloring(d, s)
    if bad:
        raise ColoringInvalid("; ".join(bad))
    return s


def boltzmann_weight(
    d: Diagram, s: ShadowColoring, crossing: int, w: QuandleElement
) -> float:
    """sign * vol_w(source region color, source-side under color, over color)."""
    f = d.crossing_frame(crossing)
    r = s.region_colors[f.source_region]
    x_arc = f.under_in_arc if f.sign > 0 else f.under_out_arc
    x = s.arc_colors[x_arc]
    y = s.arc_colors[f.over_arc]
    return f.sign * cocycle_vol(w, r, x, y)


def phi(
    d: Diagram,
    s: ShadowColoring,
    w: QuandleElement,
    volume: float,
    tol: float = CLASSIFICATION_TOL,
) -> PhiResult:
    """State sum over all crossings, classified onto {-V, 0, +V}."""
    if volume <= 0:
        raise ValueError("reference volume must be positive")
    total = sum(boltzmann_weight(d, s, ci, w) for ci in range(d.n_crossings))
    k = max(-1, min(1, round(total / volume)))
    residual = abs(total - k * volume)
    if residual >= tol:
        raise OutOfLattice(total, volume, residual)
    return PhiResult(phi=total, volume=volume, k=k, residual=residual)


@dataclass
class ColoringEnumeration:
    colorings: list[ShadowColoring]
    truncated: bool


def iter_colorings(d: Diagram, pool: list[QuandleElement], base_region: int = 0):
    """All valid colorings with arc and base-region colors from the pool.

    Deterministic: arcs are assigned in id order with forced-arc
    propagation through the crossing rule; the base-region color runs
    through the pool in order for each complete arc coloring.
    """
    if not pool:
        return
    frames = [d.crossing_frame(ci) for ci in range(d.n_crossings)]
    rep = pool[0].rep
    for arc_colors in arc_colorings(frames, len(d.arcs), pool):
        for base_color in pool:
            region_colors = _extend_regions(d, arc_colors, base_region, base_color)
            yield ShadowColoring(arc_colors, region_colors, rep)


def enumerate_colorings(
    d: Diagram, pool: list[QuandleElement], cap: int, base_region: int = 0
) -> ColoringEnumeration:
    """Collect up to `cap` colorings; flags truncation."""
    out: list[ShadowColoring] = []
    truncated = False
    for s in iter_colorings(d, pool, base_region):
        if len(out) >= cap:
            truncated = True
            break
        out.append(s)
    return ColoringEnumeration(out, truncated)


def reference_volume(h: HolonomyRep, d: Diagram, w: QuandleElement) -> float:
    """Declared volume if any, else the natural coloring's state sum."""
    if h.volume is not None:
        return h.volume
    if h.orientation == "standard" and h.arc_generators is not None:
        result = natural_coloring(d, h)
        total = sum(
            boltzmann_weight(d, result, ci, w) for ci in range(d.n_crossings)
        )
        if total > CLASSIFICATION_TOL:
            return total
    raise ValueError(
        "holonomy document declares no volume and none could be derived"
    )


@dataclass
class KTally:
    """Phi outcomes over one enumeration run."""

    counts: dict[int, int]
    first_witness: dict[int, ShadowColoring]
    max_residual: float
    truncated: bool
    total: int

    def to_json_dict(self) -> dict:
        return {
            "k_counts": {str(k): v for k, v in sorted(self.counts.items())},
            "max_residual": self.max_residual,
            "truncated": self.truncated,
            "total_colorings": self.total,
        }


def tally_colorings(
    d: Diagram,
    h: HolonomyRep,
    depth: int,
    cap: int,
    w: QuandleElement | None = None,
    tol: float = CLASSIFICATION_TOL,
) -> KTally:
    """Enumerate pool colorings at the given conjugation depth and classify."""
    from .holquandle import enumerate_conjugates

    pool = enumerate_conjugates(h, depth)
    if w is None:
        w = h.element(((h.generators[0], 1),))
    volume = reference_volume(h, d, w)
    counts: dict[int, int] = {}
    witness: dict[int, ShadowColoring] = {}
    max_residual = 0.0
    run = enumerate_colorings(d, pool, cap)
    for s in run.colorings:
        result = phi(d, s, w, volume, tol)
        counts[result.k] = counts.get(result.k, 0) + 1
        witness.setdefault(result.k, s)
        max_residual = max(max_residual, result.residual)
    return KTally(
        counts=counts,
        first_witness=witness,
        max_residual=max_residual,
        truncated=run.truncated,
        total=len(run.colorings),
    )


@dataclass
class SymmetryReport:
    """Bounded-search symmetry flags; False means 'not detected within bound'."""

    negatively_amphicheiral: bool
    invertible: bool | None
    positively_amphicheiral: bool | None
    standard: KTally
    reversed_: KTally | None

    @staticmethod
    def _flag(value) -> str:
        if value is None:
            return "not computed"
        return "detected" if value else "not detected within bound"

    def to_json_dict(self) -> dict:
        doc = {
            "negatively_amphicheiral": self._flag(self.negatively_amphicheiral),
            "invertible": self._flag(self.invertible),
            "positively_amphicheiral": self._flag(self.positively_amphicheiral),
            "standard": self.standard.to_json_dict(),
        }
        if self.reversed_ is not None:
            doc["reversed"] = self.reversed_.to_json_dict()
        return doc


def symmetry_report(
    d: Diagram,
    h_std: HolonomyRep,
    h_rev: HolonomyRep | None,
    depth: int,
    cap: int,
    tol: float = CLASSIFICATION_TOL,
) -> SymmetryReport:
    """Detect invertibility and amphicheirality from bounded enumerations.

    A coloring over the standard representation with k = -1 witnesses
    negative amphicheirality; over the reversed representation, k = +1
    witnesses invertibility and k = -1 positive amphicheirality.
    """
    std = tally_colorings(d, h_std, depth, cap, tol=tol)
    rev = None if h_rev is None else tally_colorings(d, h_rev, depth, cap, tol=tol)
    return SymmetryReport(
        negatively_amphicheiral=std.counts.get(-1, 0) > 0,
        invertible=None if rev is None else rev.counts.get(1, 0) > 0,
        positively_amphicheiral=None if rev is None else rev.counts.get(-1, 0) > 0,
        standard=std,
        reversed_=rev,
    )
