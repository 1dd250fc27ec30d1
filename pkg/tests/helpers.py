"""Random generators and naive oracles shared by the tests."""

import numpy as np

from schlicht.negative import TSeries
from schlicht.series import NormalizedSeries


def random_series(rng, max_degree=10, scale=0.3, real=False) -> NormalizedSeries:
    """Random polynomial z + a_2 z^2 + ... with degree in [2, max_degree]."""
    N = int(rng.integers(2, max_degree + 1))
    a = rng.normal(size=N - 1) * scale
    if not real:
        a = a + 1j * rng.normal(size=N - 1) * scale
    return NormalizedSeries(a)


def random_tseries(rng, max_degree=8) -> TSeries:
    N = int(rng.integers(2, max_degree + 1))
    a = rng.exponential(size=N - 1) * (rng.random(size=N - 1) < 0.8)
    if not a.any():
        a[0] = 1.0
    return TSeries(a)


def direct_sum(coeffs, z, start=2):
    """Naive power sum sum_k coeffs[k] z^(start+k)."""
    return sum(c * z ** (start + k) for k, c in enumerate(coeffs))


ACCEPTANCE_LINES: list[str] = []


class criterion:
    """Context manager that records one PASS/FAIL line for an acceptance criterion."""

    def __init__(self, number, title, max_seconds=None):
        self.number, self.title, self.max_seconds = number, title, max_seconds

    def __enter__(self):
        import time
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        import time
        elapsed = time.perf_counter() - self._t0
        ok = exc_type is None
        detail = f"{elapsed:.2f}s"
        if ok and self.max_seconds is not None and elapsed >= self.max_seconds:
            ok = False
            detail += f" exceeds {self.max_seconds}s"
        if exc_type is not None:
            detail += f" ({exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        line = f"{'PASS' if ok else 'FAIL'}  criterion {self.number:>2}: {self.title} [{detail}]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(line)
        return False
