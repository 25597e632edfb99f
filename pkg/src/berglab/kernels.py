"""Reproducing kernels for square-integrable holomorphic functions.

Closed forms are available for disks (interior and exterior), half-planes,
sectors (through the power map), and Moebius images of these.  The pinched
cusp region has no catalogued closed form and asks for one raise
:class:`~berglab.exceptions.KernelUnavailableError`.

Conventions: the inner product is linear in the first slot, and the kernel
reproduces through ``f(w) = (f, K(., w))``; consequently
``K(z, w) = conj(K(w, z))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import domains as dom
from .exceptions import KernelUnavailableError
from .functions import LinearCombination, RationalSection
from .moebius import MoebiusMap


def _half_plane_mirror_factor(normal: complex) -> complex:
    """u with boundary-line mirror z -> u^2 * conj(z); u = -i * normal."""
    return -1j * complex(normal)


def _sector_arg(w, opening: float):
    """Argument of sector-frame points, continuous on arg in [0, opening]."""
    gap = 2.0 * math.pi - opening
    th = np.angle(w)
    return np.where(th < -0.5 * gap, th + 2.0 * math.pi, th)


def _sector_power(w, alpha: float, opening: float):
    """w**alpha with the branch adapted to sector-frame arguments."""
    r = np.abs(w)
    th = _sector_arg(w, opening)
    out = np.where(r > 0.0, np.exp(alpha * (np.log(np.where(r > 0, r, 1.0)) + 1j * th)), 0.0)
    return out


def kernel(domain) -> Callable:
    """Two-argument reproducing kernel ``K(z, w)``, vectorized over both."""
    if isinstance(domain, dom.DiskInterior):
        c, R = domain.center, domain.radius

        def K(z, w):
            Z = np.asarray(z, dtype=complex) - c
            Wbar = np.conj(np.asarray(w, dtype=complex) - c)
            return (R * R) / (np.pi * (R * R - Z * Wbar) ** 2)

        return K
    if isinstance(domain, dom.DiskExterior):
        c, R = domain.center, domain.radius

        def K(z, w):
            Z = np.asarray(z, dtype=complex) - c
            Wbar = np.conj(np.asarray(w, dtype=complex) - c)
            return (R * R) / (np.pi * (Z * Wbar - R * R) ** 2)

        return K
    if isinstance(domain, dom.HalfPlane):
        u = _half_plane_mirror_factor(domain.normal)
        u2 = u * u

        def K(z, w):
            zz = np.asarray(z, dtype=complex)
            ww = np.asarray(w, dtype=complex)
            return -u2 / (np.pi * (zz - u2 * np.conj(ww)) ** 2)

        return K
    if isinstance(domain, dom.Sector):
        alpha = math.pi / domain.opening
        v = domain.vertex
        delta = domain.angle_lo
        op = domain.opening
        rot = np.exp(-1j * delta)

        def K(z, w):
            zeta = (np.asarray(z, dtype=complex) - v) * rot
            eta = (np.asarray(w, dtype=complex) - v) * rot
            pz = _sector_power(zeta, alpha, op)
            pw = _sector_power(eta, alpha, op)
            dpz = alpha * _sector_power(zeta, alpha - 1.0, op) * rot
            dpw = alpha * _sector_power(eta, alpha - 1.0, op) * rot
            return dpz * np.conj(dpw) * (-1.0 / (np.pi * (pz - np.conj(pw)) ** 2))

        return K
    if isinstance(domain, dom.MoebiusImage):
        base_kernel = kernel(domain.base)
        inv = domain.map.inverse()

        def K(z, w):
            zz = np.asarray(z, dtype=complex)
            ww = np.asarray(w, dtype=complex)
            return inv.derivative(zz) * np.conj(inv.derivative(ww)) * base_kernel(inv(zz), inv(ww))

        return K
    if isinstance(domain, (dom.CuspDomain, dom.ComplementView)):
        raise KernelUnavailableError(
            f"no closed-form reproducing kernel for {type(domain).__name__}"
        )
    raise TypeError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class KernelSection:
    """The section k_w = K(., w) as a callable of one variable."""

    domain: object
    point: complex

    def __post_init__(self):
        object.__setattr__(self, "point", complex(self.point))
        object.__setattr__(self, "_K", kernel(self.domain))

    def __call__(self, z):
        res = getattr(self, "_K")(z, self.point)
        return complex(res) if np.ndim(z) == 0 else res


def section_family(domain, points) -> list:
    return [KernelSection(domain, complex(p)) for p in points]


# ---------------------------------------------------------------------------
# rational expansions k_w = sum c_i / (z - p_i)^2, when available


def rational_expansion(domain, w: complex) -> Optional[LinearCombination]:
    """Expand ``K(., w)`` into double poles, or return None if not expressible.

    Available for half-planes, disks (both sides), sectors whose opening
    divides pi evenly, and Moebius images of these (when no expansion pole is
    carried to infinity).
    """
    w = complex(w)
    if isinstance(domain, dom.HalfPlane):
        u = _half_plane_mirror_factor(domain.normal)
        u2 = u * u
        return LinearCombination((-u2 / math.pi,), (RationalSection(u2 * np.conj(w)),))
    if isinstance(domain, (dom.DiskInterior, dom.DiskExterior)):
        c, R = domain.center, domain.radius
        Wbar = np.conj(w - c)
        if Wbar == 0:
            return None  # the kernel at the center is constant, not a double pole
        # the interior and exterior kernels differ by (R^2 - Z Wbar)^2 vs
        # (Z Wbar - R^2)^2, i.e. not at all once squared
        coeff = R * R / (math.pi * Wbar * Wbar)
        return LinearCombination((complex(coeff),), (RationalSection(c + R * R / Wbar),))
    if isinstance(domain, dom.Sector):
        alpha = math.pi / domain.opening
        m = round(alpha)
        if m < 1 or abs(alpha - m) > 1e-12:
            return None
        v = domain.vertex
        delta = domain.angle_lo
        eta_bar = np.conj((w - v) * np.exp(-1j * delta))
        if eta_bar == 0:
            return None
        phase = np.exp(2j * delta)
        coeffs = []
        parts = []
        for k in range(m):
            omega = np.exp(2j * math.pi * k / m)
            coeffs.append(complex(-phase * omega / math.pi))
            parts.append(RationalSection(v + np.exp(1j * delta) * omega * eta_bar))
        return LinearCombination(tuple(coeffs), tuple(parts))
    if isinstance(domain, dom.MoebiusImage):
        base = rational_expansion(domain.base, complex(domain.map.inverse()(w)))
        if base is None:
            return None
        mp = domain.map
        coeffs = []
        parts = []
        for c0, part in zip(base.coefficients, base.parts):
            if not isinstance(part, RationalSection):
                return None
            p = part.pole
            denom = mp.c * p + mp.d
            if abs(denom) < 1e-14 * (abs(mp.c * p) + abs(mp.d) + 1.0):
                return None  # expansion pole would be carried to infinity
            coeffs.append(complex(c0 * part.coefficient * mp.derivative(p)))
            parts.append(RationalSection(mp(p)))
        return LinearCombination(tuple(coeffs), tuple(parts))
    return None
