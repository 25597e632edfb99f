"""Deterministic exterior point families for finite models.

Points come from an unscrambled 2-d Halton stream pushed through a
domain-specific chart into the complement, then filtered greedily: a
candidate is kept only if it clears the boundary margin and sits at least
``separation * scale`` away from every point already accepted.  Because the
stream and the filter are both sequential, the first ``n`` points of a larger
request always reproduce a smaller one — refinements are nested by
construction.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.stats import qmc

from .domains import (
    CuspDomain,
    DiskExterior,
    DiskInterior,
    Domain,
    HalfPlane,
    Membership,
    MoebiusImage,
    Sector,
    boundary_distance,
    membership,
)
from .exceptions import DegeneratePointsError
from .moebius import AT_INFINITY

__all__ = [
    "domain_scale",
    "halton_pairs",
    "exterior_points",
    "cusp_approach_points",
    "validate_separation",
]

#: default rejection threshold, as a fraction of the domain scale
SEPARATION = 1e-2


def domain_scale(domain: Domain) -> float:
    """A representative length for separation and margin thresholds."""
    if isinstance(domain, (DiskInterior, DiskExterior)):
        return float(domain.radius)
    if isinstance(domain, CuspDomain):
        return float(domain.scale)
    if isinstance(domain, MoebiusImage):
        return domain_scale(domain.base)
    return 1.0


def halton_pairs(n: int, skip: int = 0) -> np.ndarray:
    """First ``n`` points of the unscrambled (2, 3) Halton sequence."""
    sampler = qmc.Halton(d=2, scramble=False)
    sampler.fast_forward(skip + 1)  # drop the degenerate (0, 0) head
    return sampler.random(n)


def _complement_chart(domain: Domain, u: np.ndarray) -> np.ndarray:
    """Map unit-square samples into a window of the complement of ``domain``."""
    u1, u2 = u[:, 0], u[:, 1]
    if isinstance(domain, HalfPlane):
        udir = domain.boundary_direction
        lateral = 4.0 * (2.0 * u1 - 1.0)
        depth = 0.3 + 2.5 * u2
        return lateral * udir - depth * domain.normal
    if isinstance(domain, Sector):
        gap = 2.0 * math.pi - domain.opening
        margin = 0.12 * gap
        phi = domain.angle_hi + margin + (gap - 2.0 * margin) * u1
        r = 0.35 * (4.0 / 0.35) ** u2
        return domain.vertex + r * np.exp(1j * phi)
    if isinstance(domain, DiskInterior):
        r = domain.radius * (1.2 + 2.5 * u2)
        return domain.center + r * np.exp(2j * np.pi * u1)
    if isinstance(domain, DiskExterior):
        r = domain.radius * (0.08 + 0.78 * np.sqrt(u2))
        return domain.center + r * np.exp(2j * np.pi * u1)
    if isinstance(domain, CuspDomain):
        s = domain.scale
        x = s * (-1.2 + 3.9 * u1)
        y = s * (-1.6 + 3.8 * u2)
        return x + 1j * y
    if isinstance(domain, MoebiusImage):
        base = _complement_chart(domain.base, u)
        return base  # mapped (and re-filtered) by the caller
    raise TypeError(f"no exterior chart for {type(domain).__name__}")


def exterior_points(
    domain: Domain,
    n: int,
    separation: float = SEPARATION,
    margin: float = 0.05,
    skip: int = 0,
) -> np.ndarray:
    """``n`` deterministic well-separated points outside the closure.

    Nested: the first ``k`` points for any ``k <= n`` are exactly
    ``exterior_points(domain, k)`` with the same options.
    """
    scale = domain_scale(domain)
    sep = separation * scale
    clear = margin * scale
    accepted: list[complex] = []
    offset = skip
    budget = 200 * n + 2000
    while len(accepted) < n and budget > 0:
        block = min(budget, 4 * (n - len(accepted)) + 32)
        u = halton_pairs(block, skip=offset)
        offset += block
        budget -= block
        cand = _complement_chart(domain, u)
        if isinstance(domain, MoebiusImage):
            pole = domain.map.pole()
            keep = np.ones(cand.shape, dtype=bool)
            if pole is not AT_INFINITY:
                keep &= np.abs(cand - pole) > 1e-9 * (1.0 + np.abs(cand))
            cand = np.array([domain.map(c) for c in cand[keep]], dtype=complex)
        for z in cand:
            z = complex(z)
            if not np.isfinite(z.real) or not np.isfinite(z.imag):
                continue
            if membership(domain, z) is not Membership.EXTERIOR:
                continue
            if boundary_distance(domain, z) < clear:
                continue
            if accepted and min(abs(z - w) for w in accepted) < sep:
                continue
            accepted.append(z)
            if len(accepted) == n:
                break
    if len(accepted) < n:
        raise DegeneratePointsError(
            f"could only place {len(accepted)} of {n} exterior points "
            f"(separation {sep:g}, margin {clear:g})"
        )
    return np.array(accepted, dtype=complex)


def cusp_approach_points(domain: CuspDomain, n: int = 8, level: int = 0) -> np.ndarray:
    """A fan of exterior points closing in on the cusp tip as ``level`` grows.

    The fan sits at radius ``scale * 2^-(level+1)`` from the tip, spread over
    the directions that avoid the thin interior wedge along the positive real
    axis, so every point stays outside the closure at every level.
    """
    if n < 1:
        raise ValueError("need at least one point")
    s = domain.scale
    radius = s * 0.5 ** (level + 1)
    angles = np.linspace(0.45 * math.pi, 1.55 * math.pi, n)
    pts = radius * np.exp(1j * angles)
    for z in pts:
        if membership(domain, complex(z)) is not Membership.EXTERIOR:
            raise DegeneratePointsError(
                f"cusp approach point {z} fell inside the domain"
            )
    return pts.astype(complex)


def validate_separation(points, scale: float, separation: float = SEPARATION) -> None:
    """Raise :class:`DegeneratePointsError` on near-coincident points."""
    pts = np.asarray(points, dtype=complex).ravel()
    thresh = separation * scale
    for i in range(pts.size):
        for j in range(i + 1, pts.size):
            if abs(pts[i] - pts[j]) < thresh:
                raise DegeneratePointsError(
                    f"points {i} and {j} are {abs(pts[i] - pts[j]):.3e} apart, "
                    f"below the separation threshold {thresh:.3e}"
                )
