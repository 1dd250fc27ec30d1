"""Truncated power series f(z) = z + a_2 z^2 + ... + a_N z^N on the unit disk.

The first two Taylor coefficients (a_0 = 0, a_1 = 1) are implicit.  All
evaluation routines accept either a Python scalar or a numpy array of points
and use Horner's scheme from the highest degree down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, SingularityError

ZERO_GUARD = 1e-12

ComplexLike = Union[complex, float, int, np.ndarray]


def _as_complex_tuple(values: Iterable) -> tuple[complex, ...]:
    out = []
    for v in values:
        if isinstance(v, (list, tuple)):
            if len(v) != 2:
                raise DomainError(f"complex coefficient must be [re, im], got {v!r}")
            v = complex(float(v[0]), float(v[1]))
        else:
            v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"coefficient {v!r} is not finite")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class NormalizedSeries:
    """Coefficients ``a_2 .. a_N`` of a normalized analytic function.

    ``NormalizedSeries([-0.25])`` is ``z - 0.25 z^2``; the empty series is the
    identity ``z``.
    """

    coeffs: tuple[complex, ...] = field(default=())

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _as_complex_tuple(coeffs))

    @property
    def degree(self) -> int:
        return 1 + len(self.coeffs)

    @property
    def indices(self) -> np.ndarray:
        """Exponents ``n = 2..N`` matching ``coeffs``."""
        return np.arange(2, self.degree + 1)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=complex)

    def is_real(self) -> bool:
        return all(c.imag == 0.0 for c in self.coeffs)

    def scaled(self, factor: float) -> "NormalizedSeries":
        """Multiply every a_n (n >= 2) by ``factor``."""
        return NormalizedSeries(c * factor for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "NormalizedSeries":
        if "coeffs" not in obj:
            raise DomainError("series literal needs a 'coeffs' key")
        return cls(obj["coeffs"])

    def __repr__(self) -> str:
        terms = ["z"]
        for n, c in zip(range(2, self.degree + 1), self.coeffs):
            c_str = f"{c.real:g}" if c.imag == 0 else f"({c.real:g}{c.imag:+g}j)"
            terms.append(f"{c_str}*z^{n}")
        return f"NormalizedSeries({' + '.join(terms)})"


@dataclass(frozen=True)
class DiskPoint:
    radius: float
    angle: float

    def __post_init__(self):
        if not (0.0 <= self.radius < 1.0):
            raise DomainError(f"radius {self.radius} outside [0, 1)")
        if not (0.0 <= self.angle < 2.0 * math.pi):
            raise DomainError(f"angle {self.angle} outside [0, 2*pi)")

    @property
    def z(self) -> complex:
        return self.radius * complex(math.cos(self.angle), math.sin(self.angle))

    def to_json(self) -> dict:
        return {"r": self.radius, "theta": self.angle}

    @classmethod
    def from_json(cls, obj: dict) -> "DiskPoint":
        return cls(float(obj["r"]), float(obj["theta"]))


DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99)
PROBE_RADIUS = 0.9999
DEFAULT_ANGLES = 720


@dataclass(frozen=True)
class SampleGrid:
    """Polar sample of the disk: every radius paired with ``angle_count``
    equally spaced angles ``2*pi*j/angle_count``.

    Samples are enumerated radius-major (radii ascending, then angles
    ascending); reductions over the grid follow that order so witnesses are
    reproducible.
    """

    radii: tuple[float, ...]
    angle_count: int = DEFAULT_ANGLES

    def __init__(self, radii: Sequence[float], angle_count: int = DEFAULT_ANGLES):
        radii = tuple(float(r) for r in radii)
        if not radii:
            raise DomainError("grid needs at least one radius")
        if any(not (0.0 < r < 1.0) for r in radii):
            raise DomainError(f"grid radii must lie in (0, 1): {radii}")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise DomainError("grid radii must be strictly increasing")
        if int(angle_count) != angle_count or angle_count < 4:
            raise DomainError(f"angle_count must be an integer >= 4, got {angle_count}")
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "angle_count", int(angle_count))

    @property
    def angles(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.angle_count) / self.angle_count

    @property
    def size(self) -> int:
        return len(self.radii) * self.angle_count

    def points(self) -> np.ndarray:
        """Flat complex array of sample points in canonical order."""
        r = np.asarray(self.radii)[:, None]
        return (r * np.exp(1j * self.angles)[None, :]).ravel()

    def point_at(self, index: int) -> DiskPoint:
        i, j = divmod(int(index), self.angle_count)
        return DiskPoint(self.radii[i], float(self.angles[j]))

    def with_radius(self, radius: float) -> "SampleGrid":
        radii = sorted(set(self.radii) | {float(radius)})
        return SampleGrid(radii, self.angle_count)

    def max_radius(self) -> float:
        return self.radii[-1]

    def to_json(self) -> dict:
        return {"radii": list(self.radii), "angles": self.angle_count}

    @classmethod
    def from_json(cls, obj: dict) -> "SampleGrid":
        return cls(obj["radii"], obj.get("angles", DEFAULT_ANGLES))


def default_grid() -> SampleGrid:
    return SampleGrid(DEFAULT_RADII, DEFAULT_ANGLES)


def probe_grid() -> SampleGrid:
    return default_grid().with_radius(PROBE_RADIUS)


def _check_domain(z: ComplexLike) -> None:
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("evaluation point must satisfy |z| < 1")


def _horner(coeffs: np.ndarray, z: ComplexLike) -> ComplexLike:
    """Evaluate sum(coeffs[k] * z**k) by Horner's rule."""
    acc = np.zeros_like(z, dtype=complex) if isinstance(z, np.ndarray) else 0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def f_over_z(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    """``1 + sum a_n z^(n-1)``, the analytic continuation of f(z)/z at 0."""
    _check_domain(z)
    return _horner(np.concatenate(([1.0 + 0j], f.as_array())), z)


def evaluate(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    return z * f_over_z(f, z)


def evaluate_d1(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    _check_domain(z)
    c = np.concatenate(([1.0 + 0j], f.indices * f.as_array()))
    return _horner(c, z)


def evaluate_d2(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    _check_domain(z)
    n = f.indices
    c = n * (n - 1) * f.as_array()
    if c.size == 0:
        return np.zeros_like(z, dtype=complex) if isinstance(z, np.ndarray) else 0j
    return _horner(c, z)


def _guarded_ratio(num, den, z, what: str):
    small = np.abs(den) < ZERO_GUARD
    if np.any(small):
        bad = complex(np.asarray(z).ravel()[np.argmax(np.asarray(small).ravel())]) \
            if isinstance(z, np.ndarray) else complex(z)
        raise SingularityError(f"{what} vanishes near z = {bad!r}", bad)
    return num / den


def functional_s(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    """``z f'(z) / f(z)``; equals 1 at the origin."""
    return _guarded_ratio(evaluate_d1(f, z), f_over_z(f, z), z, "f(z)/z")


def functional_q(f: NormalizedSeries, z: ComplexLike) -> ComplexLike:
    """``z f''(z) / f'(z)``; equals 0 at the origin."""
    return _guarded_ratio(z * evaluate_d2(f, z), evaluate_d1(f, z), z, "f'(z)")


def alexander_transform(f: NormalizedSeries) -> NormalizedSeries:
    """Map f to z f'(z), i.e. a_n -> n a_n."""
    return NormalizedSeries(f.indices * f.as_array())


Weight = Callable[[np.ndarray], np.ndarray]


def weighted_sum(f: NormalizedSeries, weight: Weight) -> float:
    """``sum_{n=2}^N weight(n) |a_n|``; ``weight`` must accept an integer array."""
    if not f.coeffs:
        return 0.0
    w = np.asarray(weight(f.indices.astype(float)), dtype=float)
    return float(np.sum(w * np.abs(f.as_array())))
