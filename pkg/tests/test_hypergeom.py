import math

import mpmath
import numpy as np
import pytest

from schlicht.criteria import RParam, check, get_criterion
from schlicht.errors import DomainError
from schlicht.hypergeom import (
    HyperParams,
    check_r_membership,
    condition_lhs,
    condition_rhs,
    gamma_pos,
    gauss_value_at_1,
    pochhammer,
    tail_estimate,
    truncated_r12_check,
    zf_coefficients,
    zf_series,
)
from schlicht.series import NormalizedSeries, default_grid
from schlicht.verify import margin_R


def partial_gauss(a, b, c, N):
    """sum_{n=0}^{N} (a)_n (b)_n / ((c)_n n!) by a cumulative product of term ratios."""
    n = np.arange(N, dtype=float)
    ratios = (a + n) * (b + n) / ((c + n) * (n + 1))
    return 1.0 + float(np.sum(np.cumprod(ratios)))


def bracket_sum_oracle(a, b, c, N=10_000):
    """sum_{n>=2} n(n-1) A_n from partial sums at N and 2N.

    The terms decay like n^(1-s) with s = c-a-b, so the error of the partial
    sum at N behaves like K N^(2-s); one Richardson step removes it.
    """
    M = 2 * N
    k = np.arange(1, M + 1, dtype=float)
    ratios = (a + k - 1) * (b + k - 1) / ((c + k - 1) * k)
    A = np.cumprod(np.concatenate(([1.0], ratios)))[1:]  # A_2 .. A_{M+1} over A_1 = 1
    n = np.arange(2, M + 2, dtype=float)
    terms = n * (n - 1) * A
    s_n, s_2n = terms[: N - 1].sum(), terms.sum()
    p = c - a - b - 2
    return s_2n + (s_2n - s_n) / (2.0 ** p - 1)


class TestPochhammer:
    def test_examples(self):
        assert pochhammer(3.7, 0) == 1
        assert pochhammer(2, 3) == 24
        for n in range(11):
            assert pochhammer(1, n) == math.factorial(n)

    def test_recurrence(self, rng):
        for _ in range(20):
            lam = complex(rng.normal(), rng.normal()) if rng.random() < 0.5 else float(rng.normal())
            for n in range(31):
                assert pochhammer(lam, n + 1) == pochhammer(lam, n) * (lam + n)

    def test_negative_n(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, -1)


class TestGamma:
    def test_examples(self):
        assert gamma_pos(1) == 1
        assert gamma_pos(5) == 24
        assert gamma_pos(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)

    def test_against_high_precision(self, rng):
        mpmath.mp.dps = 30
        for x in np.concatenate([rng.uniform(0.01, 170, 200), [1e-6, 0.5, 169.9]]):
            ref = float(mpmath.gamma(mpmath.mpf(float(x))))
            assert abs(gamma_pos(float(x)) - ref) <= 1e-12 * ref

    def test_recurrence(self, rng):
        for x in rng.uniform(0.1, 20, 100):
            assert gamma_pos(x + 1) / (x * gamma_pos(x)) == pytest.approx(1, rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -0.5, -2.0])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            gamma_pos(x)


class TestGauss:
    def test_examples(self):
        assert gauss_value_at_1(0, 2.5, 7) == 1
        assert gauss_value_at_1(1, 1, 3) == pytest.approx(2, rel=1e-14)
        assert gauss_value_at_1(1, 2, 4) == pytest.approx(3, rel=1e-14)
        assert partial_gauss(1, 1, 3, 10**6) == pytest.approx(2, rel=1e-5)

    def test_domain(self):
        with pytest.raises(DomainError, match=r"RE\(c-a-b\)>0"):
            gauss_value_at_1(1, 2, 3)

    def test_large_arguments(self):
        ref = float(mpmath.hyp2f1(2.5, 1.5, 300, 1))
        assert gauss_value_at_1(2.5, 1.5, 300) == pytest.approx(ref, rel=1e-12)

    def test_against_partial_sums(self, rng):
        for _ in range(100):
            a, b = rng.uniform(0, 3, 2)
            c = a + b + rng.uniform(2, 6)
            closed = gauss_value_at_1(a, b, c)
            assert abs(closed - partial_gauss(a, b, c, 10**5)) / closed <= 1e-6


class TestCoefficients:
    def test_examples(self):
        assert zf_series(HyperParams(0, 1.5, 3), 10) == NormalizedSeries([0] * 9)
        A = zf_coefficients(HyperParams(1, 1, 3), 5)
        assert A[0] == pytest.approx(1 / 3)
        A = zf_coefficients(HyperParams(0.5, 0.5, 4), 3)
        assert A[0] == pytest.approx(1 / 16, rel=1e-15)
        assert A[1] == pytest.approx(9 / 640, rel=1e-15)

    def test_matches_pochhammer_form(self, rng):
        for _ in range(20):
            a = complex(*rng.normal(size=2))
            b = complex(*rng.normal(size=2))
            c = float(rng.uniform(0.5, 5))
            A = zf_coefficients(HyperParams(a, b, c), 30)
            for n in range(2, 31):
                direct = (pochhammer(a, n - 1) * pochhammer(b, n - 1)
                          / (pochhammer(c, n - 1) * math.factorial(n - 1)))
                assert A[n - 2] == pytest.approx(direct, rel=1e-12, abs=1e-300)

    def test_pole_rejected(self):
        with pytest.raises(DomainError):
            HyperParams(1, 1, -2)
        with pytest.raises(DomainError):
            HyperParams(1, 1, 1e-13)


class TestBracketIdentity:
    def test_condition_one_lhs(self, rng):
        for _ in range(50):
            a, b = rng.uniform(0, 3, 2)
            c = a + b + rng.uniform(3, 6)
            oracle = bracket_sum_oracle(a, b, c)
            lhs = condition_lhs(HyperParams(a, b, c), "condition-1")
            assert abs(lhs - oracle) <= 1e-5 * lhs

    def test_condition_two_lhs(self, rng):
        # the condition-2 bracket equals sum n^2 A_n + 1 over n >= 2
        for _ in range(20):
            a, b = rng.uniform(0, 3, 2)
            c = a + b + rng.uniform(3, 6)
            p = HyperParams(a, b, c)
            first = bracket_sum_oracle(a, b, c)
            F = gauss_value_at_1(a, b, c)
            n_a = F - 1  # sum_{n>=2} A_n
            s2 = a * b / (c - a - b - 1) * F  # sum_{n>=2} (n-1) A_n
            second = first + s2 + n_a + 1
            assert condition_lhs(p, "condition-2") == pytest.approx(second, rel=1e-5)


class TestMembership:
    def test_zero_a(self):
        v = check_r_membership(HyperParams(0, 2.0, 5), RParam(0, 0))
        assert v.holds and v.condition_used == "condition-1" and v.lhs == 0 and v.rhs == 1

    def test_worked_example(self):
        p, rp = HyperParams(0.5, 0.5, 4), RParam(0.5, 0)
        F = float(mpmath.hyp2f1(0.5, 0.5, 4, 1))
        assert F == pytest.approx(1.0865, abs=1e-4)
        lhs = F * ((0.5 * 1.5) ** 2 / (1 * 2) + 2 * 0.25 / 2)
        v = check_r_membership(p, rp)
        assert v.holds and v.condition_used == "condition-1"
        assert v.lhs == pytest.approx(lhs, rel=1e-12)
        assert v.lhs == pytest.approx(0.5772, abs=1e-4)
        assert v.rhs == pytest.approx(2 / 3)
        assert v.status == "implied"

    def test_inconclusive(self):
        v = check_r_membership(HyperParams(2, 2, 6.0001), RParam(0.5, 0))
        assert not v.holds and v.condition_used == "none"
        assert v.lhs > 1e4
        assert v.status == "inconclusive"

    def test_condition_two_fallback(self):
        # condition 1 fails, condition 2 holds
        p, rp = HyperParams(0.2, 0.2, 2.5), RParam(0.5, 0.2)
        c1 = condition_lhs(p, "condition-1"), condition_rhs(rp, "condition-1")
        c2 = condition_lhs(p, "condition-2"), condition_rhs(rp, "condition-2")
        assert c1[0] > c1[1] and c2[0] <= c2[1]
        v = check_r_membership(p, rp)
        assert v.holds and v.condition_used == "condition-2"

    def test_no_gate(self):
        with pytest.raises(DomainError, match="c>"):
            check_r_membership(HyperParams(1, 1, 3), RParam(0.5, 0))

    def test_conjugate_relaxed_gate(self):
        p = HyperParams(complex(0.5, 1), complex(0.5, -1), 3.5)
        assert p.conjugate_pair
        v = check_r_membership(p, RParam(0.5, 0))
        assert v.range_note
        assert not v.holds
        assert all(not r.evaluable and "not evaluable" in r.note for r in v.conditions)

    def test_json_round_trip(self):
        v = check_r_membership(HyperParams(0.5, 0.5, 4), RParam(0.5, 0))
        assert type(v).from_json(v.to_json()) == v


class TestEndToEnd:
    def test_worked_example_geometry(self):
        p, rp = HyperParams(0.5, 0.5, 4), RParam(0.5, 0)
        f = zf_series(p, 200)
        assert check(f, get_criterion("th7-nn1-r", rp)).passed
        assert margin_R(f, rp, default_grid()).margin >= -1e-9

    def test_condition_one_soundness(self, rng):
        hits = 0
        for _ in range(300):
            a = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            b = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            c = abs(a) + abs(b) + 2 + rng.uniform(0.5, 10)
            rp = RParam(float(rng.uniform(0, 2)), float(rng.uniform(-1, 0.9)))
            p = HyperParams(a, b, c)
            if check_r_membership(p, rp).condition_used != "condition-1":
                continue
            hits += 1
            res = check(zf_series(p, 200), get_criterion("th7-nn1-r", rp))
            assert res.sum <= res.bound + 1e-6
        assert hits > 30

    def test_condition_two_soundness(self, rng):
        # condition 2 certifies through the n^2-weighted row
        hits = 0
        for _ in range(600):
            a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            b = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            c = abs(a) + abs(b) + 2 + rng.uniform(0.2, 6)
            al = float(rng.uniform(0, 1))
            rp = RParam(al, float(rng.uniform(-1, 1 - al)))
            p = HyperParams(a, b, c)
            report = {r.name: r for r in check_r_membership(p, rp).conditions}["condition-2"]
            if not report.holds:
                continue
            hits += 1
            spec = get_criterion("th7-n2-r", rp)
            res = check(zf_series(p, 200), spec)
            assert res.sum <= res.bound + 1e-6
            assert check(zf_series(p, 200), get_criterion("liu-r", rp)).passed
        assert hits > 30

    def test_truncation_check(self):
        t = truncated_r12_check(HyperParams(0.5, 0.5, 4), RParam(0.5, 0))
        assert t.passed and t.N == 200
        # the estimated tail closes the gap to the full series sum
        full = condition_lhs(HyperParams(0.5, 0.5, 4), "condition-1")
        assert t.partial_sum + t.tail_estimate == pytest.approx(full, rel=1e-3)

    def test_tail_estimate(self):
        n = np.arange(2, 2001, dtype=float)
        terms = n ** -3.0
        est = tail_estimate(terms)
        true_tail = float(mpmath.zeta(3, 2001))
        assert est == pytest.approx(true_tail, rel=5e-3)
        assert tail_estimate(1 / n) == math.inf
