import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import direct_sum, random_series
from schlicht.errors import DomainError, SingularityError
from schlicht.series import (
    DiskPoint,
    NormalizedSeries,
    SampleGrid,
    alexander_transform,
    default_grid,
    evaluate,
    evaluate_d1,
    evaluate_d2,
    functional_q,
    functional_s,
    probe_grid,
    weighted_sum,
)


class TestNormalizedSeries:
    def test_degree(self):
        assert NormalizedSeries().degree == 1
        assert NormalizedSeries([0.1, 0.2]).degree == 3

    def test_equality_by_coefficients(self):
        assert NormalizedSeries([0.25, -0.1]) == NormalizedSeries([[0.25, 0.0], [-0.1, 0.0]])
        assert NormalizedSeries([0.25]) != NormalizedSeries([0.26])

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            NormalizedSeries([float("nan")])
        with pytest.raises(DomainError):
            NormalizedSeries([[1.0, float("inf")]])

    def test_json_literal_forms(self):
        assert NormalizedSeries.from_json({"coeffs": [0.25, -0.1]}) == NormalizedSeries([0.25, -0.1])
        f = NormalizedSeries.from_json({"coeffs": [[0.1, 0.2]]})
        assert f.coeffs == (0.1 + 0.2j,)
        assert NormalizedSeries.from_json(f.to_json()) == f


class TestEvaluate:
    def test_identity(self):
        assert evaluate(NormalizedSeries(), 0.5 + 0.1j) == 0.5 + 0.1j

    @pytest.mark.parametrize("coeffs, z, expected", [
        ([-0.25], 0.8, 0.8 - 0.25 * 0.64),
        ([-0.5], -0.5, -0.5 - 0.5 * 0.25),
    ])
    def test_examples(self, coeffs, z, expected):
        assert evaluate(NormalizedSeries(coeffs), z) == pytest.approx(expected, abs=1e-15)

    def test_outside_disk(self):
        f = NormalizedSeries([0.1])
        for fn in (evaluate, evaluate_d1, evaluate_d2, functional_s, functional_q):
            with pytest.raises(DomainError):
                fn(f, 1.0)
        with pytest.raises(DomainError):
            evaluate(f, np.array([0.1, 1.2j]))

    def test_matches_naive_power_sum(self, rng):
        for _ in range(50):
            f = random_series(rng)
            z = 0.95 * cmath.rect(rng.random(), 2 * math.pi * rng.random())
            expected = z + direct_sum(f.coeffs, z)
            assert evaluate(f, z) == pytest.approx(expected, rel=1e-13, abs=1e-15)

    def test_vectorized_matches_scalar(self, rng):
        f = random_series(rng)
        zs = default_grid().points()[::97]
        vec = evaluate_d1(f, zs)
        for z, v in zip(zs, vec):
            assert v == pytest.approx(evaluate_d1(f, complex(z)), rel=1e-14, abs=1e-15)


class TestDerivatives:
    def test_d1_examples(self):
        assert evaluate_d1(NormalizedSeries(), 0.3j) == 1
        assert evaluate_d1(NormalizedSeries([-0.25]), 0.8) == pytest.approx(0.6, abs=1e-15)
        assert evaluate_d1(NormalizedSeries([-0.5]), 0.9) == pytest.approx(0.1, abs=1e-15)

    def test_d2_examples(self):
        assert evaluate_d2(NormalizedSeries(), 0.3j) == 0
        for z in (0.0, 0.4j, -0.7):
            assert evaluate_d2(NormalizedSeries([-0.25]), z) == pytest.approx(-0.5)
        f = NormalizedSeries([-0.1, -0.05])
        assert evaluate_d2(f, 0.999999) == pytest.approx(-0.5, abs=1e-6)

    def test_central_differences(self, rng):
        h = 1e-5
        for _ in range(100):
            f = random_series(rng)
            z = 0.9 * cmath.rect(rng.random(), 2 * math.pi * rng.random())
            fd1 = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h)
            fd2 = (evaluate_d1(f, z + h) - evaluate_d1(f, z - h)) / (2 * h)
            d1, d2 = evaluate_d1(f, z), evaluate_d2(f, z)
            assert abs(fd1 - d1) <= 1e-6 * max(1.0, abs(d1))
            assert abs(fd2 - d2) <= 1e-6 * max(1.0, abs(d2))


class TestFunctionals:
    def test_identity(self):
        assert functional_s(NormalizedSeries(), 0.3j) == 1
        assert functional_q(NormalizedSeries(), 0.3j) == 0

    def test_s_closed_forms(self):
        # z - c z^2 on the real axis: s = (1 - 2 c r) / (1 - c r)
        f = NormalizedSeries([-0.5])
        assert functional_s(f, 0.8) == pytest.approx(0.2 / 0.6, rel=1e-14)
        g = NormalizedSeries([-0.6])
        assert functional_s(g, 0.95) == pytest.approx((1 - 1.14) / (1 - 0.57), rel=1e-14)
        assert functional_s(g, 0.95).real == pytest.approx(-0.3256, abs=1e-4)

    def test_q_closed_forms(self):
        f = NormalizedSeries([-0.25])
        r = 0.9999
        assert functional_q(f, r) == pytest.approx(-(r / 2) / (1 - r / 2), rel=1e-14)
        assert functional_q(f, r).real == pytest.approx(-0.9998, abs=1e-4)
        g = NormalizedSeries([-0.5])
        assert functional_q(g, -0.5) == pytest.approx(1 / 3, rel=1e-14)

    def test_limits_at_origin(self, rng):
        for _ in range(20):
            f = random_series(rng)
            z = 1e-6 * cmath.rect(1, 2 * math.pi * rng.random())
            assert abs(functional_s(f, z) - 1) < 1e-4
            assert abs(functional_q(f, z)) < 1e-4
        assert functional_s(NormalizedSeries([0.3]), 0) == 1

    def test_zero_guard(self):
        # f(z)/z = 1 - 2 z vanishes at z = 0.5, f'(z) = 1 - 4 z at z = 0.25
        f = NormalizedSeries([-2.0])
        with pytest.raises(SingularityError) as exc:
            functional_s(f, 0.5)
        assert exc.value.point == 0.5
        with pytest.raises(SingularityError):
            functional_q(f, 0.25)


class TestAlexander:
    def test_examples(self):
        assert alexander_transform(NormalizedSeries()) == NormalizedSeries()
        assert alexander_transform(NormalizedSeries([-0.25])) == NormalizedSeries([-0.5])
        g = alexander_transform(NormalizedSeries([0.0, 0.1]))
        assert g.coeffs == pytest.approx((0.0, 0.3), abs=1e-16)

    def test_is_z_times_derivative(self, rng):
        f = random_series(rng)
        z = 0.3 + 0.4j
        assert evaluate(alexander_transform(f), z) == pytest.approx(z * evaluate_d1(f, z), rel=1e-14)

    def test_weighted_sum_identity(self, rng):
        for _ in range(200):
            f = random_series(rng)
            w = lambda n: n * n - 0.3 * n + 1.0  # noqa: E731
            lhs = weighted_sum(f, lambda n: n * w(n))
            rhs = weighted_sum(alexander_transform(f), w)
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestWeightedSum:
    def test_examples(self):
        assert weighted_sum(NormalizedSeries(), lambda n: n) == 0
        assert weighted_sum(NormalizedSeries([-0.25]), lambda n: n * (n - 1)) == pytest.approx(0.5)
        f = NormalizedSeries([0.1, 0.05])
        assert weighted_sum(f, lambda n: n - 0.5) == pytest.approx(1.5 * 0.1 + 2.5 * 0.05)

    def test_uses_moduli(self):
        f = NormalizedSeries([0.3j, [-0.4, 0.3]])
        assert weighted_sum(f, lambda n: np.ones_like(n)) == pytest.approx(0.3 + 0.5)


@settings(max_examples=100, deadline=None)
@given(
    a=st.lists(st.floats(-1, 1), min_size=1, max_size=6),
    b=st.lists(st.floats(-1, 1), min_size=1, max_size=6),
    s=st.floats(-2, 2),
    t=st.floats(-2, 2),
    re=st.floats(-0.6, 0.6),
    im=st.floats(-0.6, 0.6),
)
def test_evaluation_is_linear_in_coefficients(a, b, s, t, re, im):
    n = max(len(a), len(b))
    a = a + [0.0] * (n - len(a))
    b = b + [0.0] * (n - len(b))
    z = complex(re, im)
    fa, fb = NormalizedSeries(a), NormalizedSeries(b)
    combo = NormalizedSeries([s * x + t * y for x, y in zip(a, b)])
    lhs = evaluate(combo, z) - z
    rhs = s * (evaluate(fa, z) - z) + t * (evaluate(fb, z) - z)
    assert abs(lhs - rhs) <= 1e-12 * (1 + abs(s) + abs(t)) * n


class TestGrid:
    def test_default_grid(self):
        g = default_grid()
        assert g.radii == (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
        assert g.angle_count == 720
        assert g.size == 11 * 720
        assert probe_grid().max_radius() == 0.9999

    def test_canonical_order(self):
        g = SampleGrid([0.5, 0.9], 4)
        pts = g.points()
        assert pts[0] == pytest.approx(0.5)
        assert pts[1] == pytest.approx(0.5j)
        assert pts[4] == pytest.approx(0.9)
        assert g.point_at(5) == DiskPoint(0.9, math.pi / 2)

    @pytest.mark.parametrize("radii, angles", [
        ([], 8), ([0.5, 0.5], 8), ([0.6, 0.5], 8), ([1.0], 8), ([0.0], 8), ([0.5], 3),
    ])
    def test_invalid(self, radii, angles):
        with pytest.raises(DomainError):
            SampleGrid(radii, angles)

    def test_disk_point(self):
        with pytest.raises(DomainError):
            DiskPoint(1.0, 0.0)
        with pytest.raises(DomainError):
            DiskPoint(0.5, 2 * math.pi)
        assert DiskPoint(0.5, math.pi).z == pytest.approx(-0.5)

    def test_json(self):
        g = SampleGrid.from_json({"radii": [0.2, 0.7], "angles": 16})
        assert g.to_json() == {"radii": [0.2, 0.7], "angles": 16}
