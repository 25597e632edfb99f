"""Moebius (fractional-linear) maps on the extended plane.

A map is stored by its four coefficients ``z -> (a z + b) / (c z + d)``.
The point at infinity is represented by the :data:`AT_INFINITY` sentinel,
never by floating-point overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import MoebiusPoleError


class _Infinity:
    """Sentinel for the point at infinity on the extended plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"


AT_INFINITY = _Infinity()

#: relative threshold below which |c z + d| counts as a pole hit
POLE_RTOL = 1e-13


@dataclass(frozen=True)
class MoebiusMap:
    """The map ``z -> (a z + b) / (c z + d)`` with ``a d - b c != 0``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        if scale == 0.0 or abs(det) <= 1e-14 * scale * scale:
            raise ValueError("degenerate Moebius map: |ad - bc| is numerically zero")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def pole(self):
        """Preimage of infinity (AT_INFINITY for affine maps)."""
        if self.c == 0:
            return AT_INFINITY
        return -self.d / self.c

    def __call__(self, z):
        if z is AT_INFINITY:
            if self.c == 0:
                return AT_INFINITY
            return self.a / self.c
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        bad = np.abs(den) <= POLE_RTOL * (abs(self.c) * np.abs(z) + abs(self.d) + 1e-300)
        if np.any(bad):
            raise MoebiusPoleError(f"Moebius map evaluated at pole (|cz+d| ~ 0), z={z[bad] if z.ndim else z}")
        out = (self.a * z + self.b) / den
        return complex(out) if out.ndim == 0 else out

    def derivative(self, z):
        """d/dz of the map; equals ``det / (c z + d)^2``."""
        z = np.asarray(z, dtype=complex)
        den = self.c * z + self.d
        bad = np.abs(den) <= POLE_RTOL * (abs(self.c) * np.abs(z) + abs(self.d) + 1e-300)
        if np.any(bad):
            raise MoebiusPoleError("Moebius derivative evaluated at pole")
        out = self.det / (den * den)
        return complex(out) if out.ndim == 0 else out

    def inverse(self) -> "MoebiusMap":
        """The inverse map ``w -> (d w - b) / (-c w + a)``."""
        return MoebiusMap(self.d, -self.b, -self.c, self.a)


IDENTITY_MAP = MoebiusMap(1.0, 0.0, 0.0, 1.0)
INVERSION_MAP = MoebiusMap(0.0, 1.0, 1.0, 0.0)  # z -> 1/z


def evaluate_extended(mapping: MoebiusMap, z):
    """Evaluate on the extended plane: the pole maps to AT_INFINITY, never raises."""
    if z is AT_INFINITY:
        return mapping(z)
    z = complex(z)
    den = mapping.c * z + mapping.d
    if abs(den) <= POLE_RTOL * (abs(mapping.c) * abs(z) + abs(mapping.d) + 1e-300):
        return AT_INFINITY
    return (mapping.a * z + mapping.b) / den
