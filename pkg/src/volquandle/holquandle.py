"""The knot quandle realized through a holonomy representation.

Elements are group words in meridian generators; identity is decided by
the evaluated matrices (up to sign, tolerance 1e-9), never by the words
themselves. The quandle operation is conjugation: a * b = b^-1 a b.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (
    BadMatrix,
    NotParabolic,
    RelationViolated,
    UnknownGenerator,
)
from .hypgeom import BoundaryPoint, MoebiusMap, is_parabolic, parabolic_fixed_point

Letter = tuple[str, int]
GroupWord = tuple[Letter, ...]

MATRIX_TOL = 1e-9
_KEY_GRID = 1e-7


def reduce_word(letters) -> GroupWord:
    """Freely reduce: cancel adjacent g g^-1 pairs."""
    out: list[Letter] = []
    for name, exp in letters:
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


def invert_word(word: GroupWord) -> GroupWord:
    return tuple((name, -exp) for name, exp in reversed(word))


def word_from_text(text: str, names=None) -> GroupWord:
    """Parse 'z^-1 y z' style words; names may themselves end in '^-1'."""
    letters = []
    for token in text.split():
        if names is not None and token in names:
            letters.append((token, 1))
        elif token.endswith("^-1"):
            letters.append((token[:-3], -1))
        else:
            letters.append((token, 1))
    return reduce_word(letters)


def word_to_text(word: GroupWord) -> str:
    return " ".join(name if exp == 1 else f"{name}^-1" for name, exp in word)


def _sign_normalized_key(m: MoebiusMap) -> tuple:
    """Rounded entries with the overall +-1 ambiguity removed."""
    entries = m.entries()
    sign = 1.0
    for e in entries:
        lead = e.real if abs(e.real) >= abs(e.imag) else e.imag
        if abs(lead) > 1e-6:
            if lead < 0:
                sign = -1.0
            break
    return tuple(
        (round(sign * e.real / _KEY_GRID), round(sign * e.imag / _KEY_GRID))
        for e in entries
    )


@dataclass(frozen=True)
class QuandleElement:
    """A meridian word with its evaluated matrix and boundary fixed point."""

    word: GroupWord
    matrix: MoebiusMap
    fixed_point: BoundaryPoint
    rep: "HolonomyRep | None" = field(default=None, compare=False, repr=False)

    def equals(self, other: "QuandleElement", tol: float = MATRIX_TOL) -> bool:
        return self.matrix.eq_up_to_sign(other.matrix, tol)

    def dedup_key(self) -> tuple:
        return _sign_normalized_key(self.matrix)

    def __repr__(self):
        return f"QuandleElement({word_to_text(self.word)!r})"


@dataclass(frozen=True)
class HolonomyRep:
    """Parabolic generator matrices, validated against a companion diagram."""

    generators: tuple[str, ...]
    matrices: dict[str, MoebiusMap] = field(compare=False)
    orientation: str = "standard"
    volume: float | None = None
    arc_generators: tuple[str, ...] | None = None  # arc id -> generator name

    def matrix(self, name: str) -> MoebiusMap:
        try:
            return self.matrices[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def element(self, word) -> QuandleElement:
        """Build a QuandleElement from a word or word text."""
        if isinstance(word, str):
            word = word_from_text(word, names=self.generators)
        word = reduce_word(word)
        m = evaluate(self, word)
        if not is_parabolic(m):
            raise NotParabolic(
                f"word {word_to_text(word)!r} does not evaluate to a parabolic map"
            )
        return QuandleElement(word, m, parabolic_fixed_point(m), self)

    def generator_elements(self) -> list[QuandleElement]:
        return [self.element(((name, 1),)) for name in self.generators]


def evaluate(h: HolonomyRep, word: GroupWord) -> MoebiusMap:
    """Homomorphism extension: ordered product of generator matrices."""
    m = MoebiusMap.identity()
    for name, exp in word:
        g = h.matrix(name)
        m = m.compose(g if exp == 1 else g.inverse())
    return m


def _word_matrix(word: GroupWord, fallback: MoebiusMap, rep) -> MoebiusMap:
    # Re-evaluating the reduced word from the generator matrices avoids
    # the error amplification of conjugating already-conjugated matrices
    # (each chained conjugation multiplies the error by |b|^2).
    if rep is None:
        return fallback
    return evaluate(rep, word)


def quandle_op(a: QuandleElement, b: QuandleElement) -> QuandleElement:
    """a * b = b^-1 a b."""
    word = reduce_word(invert_word(b.word) + a.word + b.word)
    binv = b.matrix.inverse()
    matrix = _word_matrix(word, binv.compose(a.matrix).compose(b.matrix), a.rep)
    return QuandleElement(word, matrix, binv.apply(a.fixed_point), a.rep)


def quandle_op_inv(a: QuandleElement, b: QuandleElement) -> QuandleElement:
    """The unique c with quandle_op(c, b) = a; c = b a b^-1."""
    word = reduce_word(b.word + a.word + invert_word(b.word))
    matrix = _word_matrix(
        word, b.matrix.compose(a.matrix).compose(b.matrix.inverse()), a.rep
    )
    return QuandleElement(word, matrix, b.matrix.apply(a.fixed_point), a.rep)


class ElementPool:
    """Deduplicated, deterministically ordered set of quandle elements."""

    def __init__(self, elements=()):
        self._buckets: dict[tuple, list[int]] = {}
        self.elements: list[QuandleElement] = []
        for e in elements:
            self.add(e)

    def add(self, e: QuandleElement) -> bool:
        if self.find(e) is not None:
            return False
        self._buckets.setdefault(e.dedup_key(), []).append(len(self.elements))
        self.elements.append(e)
        return True

    def find(self, e: QuandleElement) -> int | None:
        """Index of an equal element, or None. Key lookup + exact confirm."""
        for idx in self._buckets.get(e.dedup_key(), ()):
            if self.elements[idx].equals(e):
                return idx
        return None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def enumerate_conjugates(h: HolonomyRep, depth: int) -> list[QuandleElement]:
    """All g^-1 x g with x a generator, |g| <= depth; deduplicated, ordered."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    letters: list[Letter] = []
    for name in h.generators:
        letters.append((name, 1))
        letters.append((name, -1))
    words: list[GroupWord] = [()]
    frontier: list[GroupWord] = [()]
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for letter in letters:
                extended = reduce_word(w + (letter,))
                if len(extended) == len(w) + 1:
                    nxt.append(extended)
        words.extend(nxt)
        frontier = nxt
    pool = ElementPool()
    base = h.generator_elements()
    for g in words:
        ginv = invert_word(g)
        for x in base:
            word = reduce_word(ginv + x.word + g)
            m = evaluate(h, word)
            fp = parabolic_fixed_point(m)
            pool.add(QuandleElement(word, m, fp, h))
    return pool.elements


def _relation_holds(m_in, m_out, m_over, sign, tol=MATRIX_TOL):
    conj = m_over if sign > 0 else m_over.inverse()
    return m_out.eq_up_to_sign(conj.inverse().compose(m_in).compose(conj), tol)


def arc_colorings(frames, n_arcs: int, pool, flip: int = 1):
    """All arc colorings from `pool` satisfying every crossing relation.

    Deterministic backtracking in arc-id order with forced propagation:
    once an under-arc and the over-arc at a crossing are colored, the
    other under-arc is determined. `flip = -1` checks the relations with
    the conjugation direction exchanged (reversed-orientation case).
    Yields dicts arc id -> canonical pool element.
    """
    pool = list(pool)
    if not pool:
        return
    index = ElementPool(pool)

    def propagate(assign):
        """Force colors via crossings; returns forced arcs or None."""
        forced: list[int] = []
        changed = True
        while changed:
            changed = False
            for f in frames:
                known_in = f.under_in_arc in assign
                known_out = f.under_out_arc in assign
                if f.over_arc not in assign or known_in == known_out:
                    continue
                over = assign[f.over_arc]
                sign = flip * f.sign
                if known_in:
                    op = quandle_op if sign > 0 else quandle_op_inv
                    cand, target = op(assign[f.under_in_arc], over), f.under_out_arc
                else:
                    op = quandle_op_inv if sign > 0 else quandle_op
                    cand, target = op(assign[f.under_out_arc], over), f.under_in_arc
                at = index.find(cand)
                if at is None:
                    for t in forced:
                        del assign[t]
                    return None
                assign[target] = pool[at]
                forced.append(target)
                changed = True
        for f in frames:
            if (
                f.under_in_arc in assign
                and f.under_out_arc in assign
                and f.over_arc in assign
            ):
                op = quandle_op if flip * f.sign > 0 else quandle_op_inv
                got = op(assign[f.under_in_arc], assign[f.over_arc])
                if not got.equals(assign[f.under_out_arc]):
                    for t in forced:
                        del assign[t]
                    return None
        return forced

    def backtrack(assign):
        if len(assign) == n_arcs:
            yield dict(assign)
            return
        arc = min(i for i in range(n_arcs) if i not in assign)
        for color in pool:
            assign[arc] = color
            forced = propagate(assign)
            if forced is not None:
                yield from backtrack(assign)
                for t in forced:
                    del assign[t]
            del assign[arc]

    yield from backtrack({})


def find_arc_assignment(d, h: HolonomyRep) -> tuple[str, ...] | None:
    """Arc coloring words realizing the diagram's Wirtinger generators.

    Relations are conjugations at positive crossings and inverse
    conjugations at negative ones; a reversed-orientation representation
    satisfies them with the two roles exchanged. When arcs and generators
    are in bijection only permutations are tried; otherwise a depth-1
    conjugate pool is searched, requiring every generator to appear
    (so the declared matrices really are Wirtinger images).
    """
    flip = -1 if h.orientation == "reversed" else +1
    frames = [d.crossing_frame(ci) for ci in range(d.n_crossings)]
    n_arcs = len(d.arcs)
    if len(h.generators) == n_arcs:
        mats = [h.matrices[g] for g in h.generators]
        for perm in itertools.permutations(range(len(mats))):
            ok = True
            for f in frames:
                if not _relation_holds(
                    mats[perm[f.under_in_arc]],
                    mats[perm[f.under_out_arc]],
                    mats[perm[f.over_arc]],
                    flip * f.sign,
                ):
                    ok = False
                    break
            if ok:
                return tuple(h.generators[perm[a]] for a in range(n_arcs))
        return None
    pool = enumerate_conjugates(h, 1)
    gens = ElementPool(h.generator_elements())
    for coloring in arc_colorings(frames, n_arcs, pool, flip):
        used = {gens.find(c) for c in coloring.values()}
        used.discard(None)
        if len(used) == len(gens):
            return tuple(
                word_to_text(coloring[a].word) for a in range(n_arcs)
            )
    return None


def load_holonomy(doc: dict, d) -> HolonomyRep:
    """Validate a holonomy document against a diagram.

    doc: {"generators": [names], "matrices": {name: 2x2 of [re, im]},
          "orientation": "standard"|"reversed", "volume": optional}
    """
    try:
        names = tuple(doc["generators"])
        raw = doc["matrices"]
    except (KeyError, TypeError) as exc:
        raise BadMatrix(f"malformed holonomy document: {exc}") from exc
    orientation = doc.get("orientation", "standard")
    if orientation not in ("standard", "reversed"):
        raise BadMatrix(f"unknown orientation tag {orientation!r}")
    matrices = {}
    for name in names:
        if name not in raw:
            raise BadMatrix(f"no matrix for generator {name!r}")
        m = MoebiusMap.from_json(raw[name])
        if not is_parabolic(m):
            raise NotParabolic(f"generator {name!r} is not parabolic")
        matrices[name] = m
    volume = doc.get("volume")
    rep = HolonomyRep(
        generators=names,
        matrices=matrices,
        orientation=orientation,
        volume=None if volume is None else float(volume),
    )
    assignment = find_arc_assignment(d, rep)
    if assignment is None and d.n_crossings > 0:
        raise RelationViolated(
            "no assignment of generators to arcs satisfies the "
            "crossing relations (up to sign, tolerance 1e-9)"
        )
    if d.n_crossings == 0 and len(names) == 1:
        assignment = (names[0],)
    return HolonomyRep(
        generators=names,
        matrices=matrices,
        orientation=orientation,
        volume=rep.volume,
        arc_generators=assignment,
    )


def holonomy_to_json_dict(h: HolonomyRep) -> dict:
    doc = {
        "generators": list(h.generators),
        "matrices": {name: h.matrices[name].to_json() for name in h.generators},
        "orientation": h.orientation,
    }
    if h.volume is not None:
        doc["volume"] = h.volume
    return doc
