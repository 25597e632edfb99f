"""Boundary reflections: involutions swapping a domain with its complement.

Every reflection here fixes the boundary pointwise and is an involution of
the extended plane.  The catalogue:

* half-plane    — the Euclidean mirror across the boundary line,
* disk          — inversion in the circle,
* sector        — the angle-affine map that keeps |z - vertex| and maps the
                  exterior angular range linearly onto the interior one,
* Moebius image — conjugation of the base reflection by the map.

The pinched cusp region admits no such global bi-Lipschitz reflection and
raises :class:`~berglab.exceptions.ReflectionUnavailableError`.
"""

from __future__ import annotations

import math

import numpy as np

from . import domains as dom
from .exceptions import ReflectionUnavailableError
from .moebius import AT_INFINITY, evaluate_extended
from .quadrature import QuadConfig, QuadResult, integrate_domain


def reflection_available(domain) -> bool:
    if isinstance(domain, (dom.CuspDomain, dom.ComplementView)):
        return False
    if isinstance(domain, dom.MoebiusImage):
        return reflection_available(domain.base)
    return isinstance(domain, (dom.HalfPlane, dom.Sector, dom.DiskInterior, dom.DiskExterior))


def _sector_angle_maps(opening: float):
    """(interior->exterior, exterior->interior) angle maps and the ratio k."""
    th0 = opening
    gap = 2.0 * math.pi - th0
    k = th0 / gap

    def nu(theta):  # (0, th0) -> (th0, 2 pi), decreasing
        return 2.0 * math.pi - gap * theta / th0

    def mu(theta):  # (th0, 2 pi) -> (0, th0), decreasing
        return th0 * (2.0 * math.pi - theta) / gap

    return nu, mu, k


def reflect(domain, z):
    """Reflect a single extended-plane point across the boundary of ``domain``."""
    if isinstance(domain, (dom.CuspDomain, dom.ComplementView)):
        raise ReflectionUnavailableError(
            "the pinched cusp region has no bi-Lipschitz boundary reflection"
        )
    if isinstance(domain, dom.MoebiusImage):
        zb = evaluate_extended(domain.map.inverse(), z)
        rb = reflect(domain.base, zb)
        return evaluate_extended(domain.map, rb)
    if isinstance(domain, dom.HalfPlane):
        if z is AT_INFINITY:
            return AT_INFINITY
        u = -1j * domain.normal
        return u * u * np.conj(complex(z))
    if isinstance(domain, (dom.DiskInterior, dom.DiskExterior)):
        c, R = domain.center, domain.radius
        if z is AT_INFINITY:
            return c
        z = complex(z)
        if abs(z - c) < 1e-300:
            return AT_INFINITY
        return c + R * R / np.conj(z - c)
    if isinstance(domain, dom.Sector):
        if z is AT_INFINITY:
            return AT_INFINITY
        z = complex(z)
        zeta = (z - domain.vertex) * np.exp(-1j * domain.angle_lo)
        r = abs(zeta)
        if r == 0.0:
            return domain.vertex
        theta = math.atan2(zeta.imag, zeta.real) % (2.0 * math.pi)
        nu, mu, _ = _sector_angle_maps(domain.opening)
        new_theta = nu(theta) if theta <= domain.opening else mu(theta)
        return domain.vertex + r * np.exp(1j * (domain.angle_lo + new_theta))
    raise TypeError(f"unknown domain {domain!r}")


def reflect_many(domain, z):
    """Vectorized reflection of an array of finite points."""
    zz = np.asarray(z, dtype=complex)
    if isinstance(domain, (dom.CuspDomain, dom.ComplementView)):
        raise ReflectionUnavailableError(
            "the pinched cusp region has no bi-Lipschitz boundary reflection"
        )
    if isinstance(domain, dom.HalfPlane):
        u = -1j * domain.normal
        return u * u * np.conj(zz)
    if isinstance(domain, (dom.DiskInterior, dom.DiskExterior)):
        c, R = domain.center, domain.radius
        return c + R * R / np.conj(zz - c)
    if isinstance(domain, dom.Sector):
        zeta = (zz - domain.vertex) * np.exp(-1j * domain.angle_lo)
        r = np.abs(zeta)
        theta = np.mod(np.angle(zeta), 2.0 * math.pi)
        nu, mu, _ = _sector_angle_maps(domain.opening)
        new_theta = np.where(theta <= domain.opening, nu(theta), mu(theta))
        return domain.vertex + r * np.exp(1j * (domain.angle_lo + new_theta))
    if isinstance(domain, dom.MoebiusImage):
        inv = domain.map.inverse()
        return domain.map(reflect_many(domain.base, inv(zz)))
    raise TypeError(f"unknown domain {domain!r}")


def sector_compression_ratio(domain: dom.Sector) -> float:
    """The constant angular compression k = opening / (2 pi - opening)."""
    return _sector_angle_maps(domain.opening)[2]


# ---------------------------------------------------------------------------
# pulled-back inner product over the complement


def pullback_inner(domain, f, g, config: QuadConfig | None = None) -> QuadResult:
    """Inner product of f o rho and g o rho over the complement of ``domain``.

    This is the transplanted pairing that the reflection principle compares
    against the native one on the domain itself.
    """
    ext = dom.complement(domain)

    def integrand(w):
        zr = reflect_many(domain, w)
        return np.asarray(f(zr), dtype=complex) * np.conj(np.asarray(g(zr), dtype=complex))

    return integrate_domain(ext, integrand, config)


def pullback_norm(domain, f, config: QuadConfig | None = None) -> QuadResult:
    ext = dom.complement(domain)

    def integrand(w):
        zr = reflect_many(domain, w)
        return np.abs(np.asarray(f(zr), dtype=complex)) ** 2 + 0j

    res = integrate_domain(ext, integrand, config)
    val = math.sqrt(max(float(np.real(res.value)), 0.0))
    err = float(np.real(res.abs_error)) / (2.0 * val) if val > 0 else float(np.real(res.abs_error))
    return QuadResult(val, err, res.cells_used, res.converged)


# ---------------------------------------------------------------------------
# sampled distortion constants


def bilipschitz_estimate(domain, n_pairs: int = 2000, seed: int = 0, window: float = 8.0):
    """Sampled (lower, upper) distortion constants of the reflection.

    Pairs are drawn in the complement of the domain inside ``|z| <= window``
    (anchored near the boundary, with partner offsets spread over several
    length scales), and the quotient |rho(z1) - rho(z2)| / |z1 - z2| is
    recorded.  Returns the (min, max) quotients seen — empirical estimates of
    the bi-Lipschitz constants on that window.
    """
    if not reflection_available(domain):
        raise ReflectionUnavailableError("no reflection for this domain")
    rng = np.random.default_rng(seed)
    ext = dom.complement(domain)

    anchors = []
    tries = 0
    while len(anchors) < n_pairs and tries < 200 * n_pairs:
        tries += 1
        z = complex(rng.uniform(-window, window), rng.uniform(-window, window))
        if dom.membership(ext, z) is dom.Membership.INTERIOR:
            anchors.append(z)
    if len(anchors) < max(8, n_pairs // 10):
        raise ValueError("could not sample enough points in the complement window")

    scales = np.logspace(-4, 0, 9)
    lo, hi = math.inf, 0.0
    for z1 in anchors:
        h = float(rng.choice(scales))
        phi = rng.uniform(0.0, 2.0 * math.pi)
        z2 = z1 + h * complex(math.cos(phi), math.sin(phi))
        if dom.membership(ext, z2) is not dom.Membership.INTERIOR:
            continue
        d = abs(z1 - z2)
        if d < 1e-12:
            continue
        w1 = reflect(domain, z1)
        w2 = reflect(domain, z2)
        if w1 is AT_INFINITY or w2 is AT_INFINITY:
            continue
        q = abs(complex(w1) - complex(w2)) / d
        lo = min(lo, q)
        hi = max(hi, q)
    if not math.isfinite(lo) or hi == 0.0:
        raise ValueError("no valid reflection pairs sampled")
    return lo, hi
