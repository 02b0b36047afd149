import cmath
import itertools
import math
import random

import pytest

from volquandle.errors import BadMatrix, NotParabolic
from volquandle.hypgeom import (
    INFINITY,
    BoundaryPoint,
    IdealTetrahedron,
    MoebiusMap,
    cross_ratio,
    ideal_tet_volume,
    is_parabolic,
    parabolic_fixed_point,
)

_S = math.sqrt(3.0)


def bp(value):
    return BoundaryPoint.finite(value)


def random_map(rng):
    while True:
        entries = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(4)]
        if abs(entries[0] * entries[3] - entries[1] * entries[2]) > 0.1:
            return MoebiusMap(*entries)


def random_tetrahedron(rng):
    while True:
        vs = [
            bp(complex(rng.uniform(-3, 3), rng.uniform(-3, 3))) for _ in range(4)
        ]
        if all(
            not vs[i].approx_eq(vs[j], 1e-2)
            for i in range(4)
            for j in range(i + 1, 4)
        ):
            return IdealTetrahedron(*vs)


class TestBoundaryPoint:
    def test_infinity_singleton(self):
        assert INFINITY.is_infinity
        assert not bp(3 + 4j).is_infinity

    def test_immutable(self):
        with pytest.raises(AttributeError):
            bp(1.0).value = 2.0

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            bp(complex("inf"))

    def test_approx_eq(self):
        assert bp(1.0).approx_eq(bp(1.0 + 1e-12))
        assert not bp(1.0).approx_eq(INFINITY)
        assert INFINITY.approx_eq(INFINITY)

    def test_json(self):
        assert INFINITY.to_json() == "inf"
        assert bp(1 + 2j).to_json() == [1.0, 2.0]


class TestMoebiusMap:
    def test_normalized_to_det_one(self):
        m = MoebiusMap(2.0, 0.0, 0.0, 2.0)
        det = m.a * m.d - m.b * m.c
        assert abs(det - 1.0) < 1e-14

    def test_singular_rejected(self):
        with pytest.raises(BadMatrix):
            MoebiusMap(1.0, 2.0, 2.0, 4.0)

    def test_compose_inverse(self):
        rng = random.Random(3)
        for _ in range(100):
            m = random_map(rng)
            assert m.compose(m.inverse()).is_identity_up_to_sign()

    def test_apply_moves_infinity_to_pole_image(self):
        m = MoebiusMap(1.0, 2.0, 3.0, 4.0)
        assert m.apply(INFINITY).approx_eq(bp(1.0 / 3.0))
        # preimage of infinity is -d/c
        assert m.apply(bp(-4.0 / 3.0)).is_infinity

    def test_translation_fixes_infinity(self):
        m = MoebiusMap(1.0, 5.0, 0.0, 1.0)
        assert m.apply(INFINITY).is_infinity

    def test_eq_up_to_sign(self):
        m = MoebiusMap(1.0, 1.0, 0.0, 1.0)
        n = MoebiusMap(-1.0, -1.0, 0.0, -1.0)
        assert m.eq_up_to_sign(n)
        assert not m.eq_up_to_sign(MoebiusMap(1.0, 2.0, 0.0, 1.0))

    def test_json_round_trip(self):
        rng = random.Random(9)
        m = random_map(rng)
        n = MoebiusMap.from_json(m.to_json())
        assert m.eq_up_to_sign(n, 1e-14)

    def test_from_json_malformed(self):
        with pytest.raises(BadMatrix):
            MoebiusMap.from_json([[1, 2], [3]])


class TestParabolic:
    def test_translation_is_parabolic(self):
        assert is_parabolic(MoebiusMap(1.0, 1.0, 0.0, 1.0))

    def test_identity_is_not(self):
        assert not is_parabolic(MoebiusMap.identity())
        assert not is_parabolic(MoebiusMap(-1.0, 0.0, 0.0, -1.0))

    def test_loxodromic_is_not(self):
        assert not is_parabolic(MoebiusMap(2.0, 0.0, 0.0, 0.5))

    def test_fixed_point_upper_triangular(self):
        assert parabolic_fixed_point(MoebiusMap(1.0, 1.0, 0.0, 1.0)).is_infinity

    def test_fixed_point_generic(self):
        m = MoebiusMap(1.0, 0.0, 1.0, 1.0)
        p = parabolic_fixed_point(m)
        assert p.approx_eq(bp(0.0))
        assert m.apply(p).approx_eq(p)

    def test_non_parabolic_raises(self):
        with pytest.raises(NotParabolic):
            parabolic_fixed_point(MoebiusMap(2.0, 0.0, 0.0, 0.5))

    def test_fixed_point_is_fixed_random_conjugates(self):
        rng = random.Random(17)
        base = MoebiusMap(1.0, 1.0, 0.0, 1.0)
        for _ in range(200):
            g = random_map(rng)
            m = g.inverse().compose(base).compose(g)
            p = parabolic_fixed_point(m)
            assert m.apply(p).approx_eq(p, 1e-8)


class TestCrossRatio:
    def test_standard_position(self):
        z = cross_ratio(bp(0.0), INFINITY, bp(1.0), bp(2 + 1j))
        # (v3 - v0)(v2 - v1)/((v2 - v0)(v3 - v1)) with v1 = infinity
        assert abs(z - (2 + 1j)) < 1e-14

    def test_degenerate_pair_gives_marker(self):
        z = cross_ratio(bp(0.0), bp(1.0), bp(0.0), bp(2.0))
        assert isinstance(z, BoundaryPoint) or z in (0.0, 1.0)

    def test_moebius_invariance(self):
        rng = random.Random(29)
        for _ in range(1000):
            t = random_tetrahedron(rng)
            g = random_map(rng)
            moved = IdealTetrahedron(*(g.apply(v) for v in t.vertices()))
            assert abs(t.shape() - moved.shape()) < 1e-6 * max(1.0, abs(t.shape()))


class TestIdealTetVolume:
    def test_regular_ideal_tetrahedron(self):
        omega = complex(0.5, _S / 2.0)
        t = IdealTetrahedron(bp(0.0), INFINITY, bp(1.0), bp(omega))
        assert abs(ideal_tet_volume(t) - 1.0149416064096535) < 1e-12

    def test_moebius_invariance(self):
        rng = random.Random(31)
        for _ in range(1000):
            t = random_tetrahedron(rng)
            g = random_map(rng)
            moved = IdealTetrahedron(*(g.apply(v) for v in t.vertices()))
            assert abs(ideal_tet_volume(t) - ideal_tet_volume(moved)) < 1e-8

    def test_permutation_parity(self):
        rng = random.Random(43)
        t = random_tetrahedron(rng)
        vol = ideal_tet_volume(t)
        assert abs(vol) > 1e-3
        for perm in itertools.permutations(range(4)):
            parity = 1
            p = list(perm)
            for i in range(4):
                while p[i] != i:
                    j = p[i]
                    p[i], p[j] = p[j], p[i]
                    parity = -parity
            vs = t.vertices()
            permuted = IdealTetrahedron(*(vs[i] for i in perm))
            assert abs(ideal_tet_volume(permuted) - parity * vol) < 1e-9

    def test_degenerate_inputs_zero(self):
        a, b, c = bp(0.0), bp(1.0), bp(2 + 3j)
        assert ideal_tet_volume(IdealTetrahedron(a, a, b, c)) == 0.0
        assert ideal_tet_volume(IdealTetrahedron(a, b, b, c)) == 0.0
        assert ideal_tet_volume(IdealTetrahedron(INFINITY, INFINITY, a, b)) == 0.0
        # four concyclic (real cross-ratio) points are flat
        flat = IdealTetrahedron(bp(0.0), bp(1.0), bp(2.0), bp(5.0))
        assert ideal_tet_volume(flat) == 0.0

    def test_nearly_coincident_vertices_zero(self):
        a = bp(1.25 + 0.5j)
        a_noise = bp(1.25 + 1e-12 + 0.5j)
        t = IdealTetrahedron(a, a_noise, bp(3.0), INFINITY)
        assert ideal_tet_volume(t) == 0.0

    def test_orientation_reversal_negates(self):
        rng = random.Random(47)
        for _ in range(100):
            t = random_tetrahedron(rng)
            swapped = IdealTetrahedron(t.v1, t.v0, t.v2, t.v3)
            assert abs(ideal_tet_volume(t) + ideal_tet_volume(swapped)) < 1e-9
