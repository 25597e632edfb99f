"""Holomorphic building blocks: double poles, transfers, combinations.

All objects are callables accepting a complex scalar or ndarray and returning
the same shape.  They carry enough structure (pole locations, coefficients)
for the closed-form pairing routines to pattern-match on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .domains import Membership, membership
from .exceptions import EvaluationOutsideDomainError
from .moebius import MoebiusMap


def _wrap(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _unwrap(res, scalar):
    return complex(res) if scalar else res


@dataclass(frozen=True)
class RationalSection:
    """coefficient / (z - pole)^2 — the basic second-order section."""

    pole: complex
    coefficient: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "pole", complex(self.pole))
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    def __call__(self, z):
        arr, scalar = _wrap(z)
        return _unwrap(self.coefficient / (arr - self.pole) ** 2, scalar)

    def scaled(self, c: complex) -> "RationalSection":
        return RationalSection(self.pole, self.coefficient * complex(c))


@dataclass(frozen=True)
class LinearCombination:
    """Finite linear combination of sections (coefficients on the left)."""

    coefficients: Tuple[complex, ...]
    parts: Tuple[Callable, ...]

    def __post_init__(self):
        if len(self.coefficients) != len(self.parts):
            raise ValueError("coefficient/part length mismatch")
        object.__setattr__(self, "coefficients", tuple(complex(c) for c in self.coefficients))
        object.__setattr__(self, "parts", tuple(self.parts))

    def __call__(self, z):
        arr, scalar = _wrap(z)
        acc = np.zeros(arr.shape, dtype=complex)
        for c, p in zip(self.coefficients, self.parts):
            acc = acc + c * np.asarray(p(arr), dtype=complex)
        return _unwrap(acc, scalar)


@dataclass(frozen=True)
class MoebiusTransfer:
    """Weighted composition f -> (map') * (f o map).

    This is the natural unitary between square-integrable holomorphic
    functions on the image and on the source of ``map``.
    """

    map: MoebiusMap
    fn: Callable

    def __call__(self, z):
        arr, scalar = _wrap(z)
        w = self.map(arr)
        return _unwrap(self.map.derivative(arr) * np.asarray(self.fn(w), dtype=complex), scalar)


@dataclass(frozen=True)
class CallableSection:
    """Plain callable with an optional label, for ad-hoc functions."""

    fn: Callable
    label: str = ""

    def __call__(self, z):
        arr, scalar = _wrap(z)
        return _unwrap(np.asarray(self.fn(arr), dtype=complex), scalar)


def checked(fn: Callable, domain, allow_boundary: bool = True) -> Callable:
    """Wrap ``fn`` so evaluation outside the closure of ``domain`` raises.

    The wrapper samples membership pointwise, so use it for diagnostics and
    spot checks rather than in quadrature inner loops.
    """

    def inner(z):
        arr, scalar = _wrap(z)
        for w in np.atleast_1d(arr).ravel():
            m = membership(domain, complex(w))
            bad = m is Membership.EXTERIOR or (m is Membership.BOUNDARY and not allow_boundary)
            if bad:
                raise EvaluationOutsideDomainError(f"point {complex(w)} lies outside the domain closure")
        return _unwrap(np.asarray(fn(arr), dtype=complex), scalar)

    return inner
