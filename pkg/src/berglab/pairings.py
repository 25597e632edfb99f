"""Inner products of second-order rational sections over catalogue domains.

The workhorse of the package: for ``r_p(z) = (z - p)^(-2)`` with poles outside
the closure of a domain ``G``, the Bergman pairing

    (r_p, r_q)_G = integral over G of r_p(z) * conj(r_q(z)) dA(z)

reduces by Stokes' theorem to a contour integral of ``-r_p(z) / (zbar - qbar)``
over the positively oriented boundary.  For domains bounded by rays (half
planes, sectors) each ray contributes a one-dimensional integral with a closed
form; for disks a monomial expansion gives a rational closed form; Moebius
images reduce to their base domain through the change-of-variables identity
for second-order poles.  Everything else falls back to adaptive quadrature or
a composite boundary rule.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .domains import (
    CuspDomain,
    DiskExterior,
    DiskInterior,
    Domain,
    HalfPlane,
    Membership,
    MoebiusImage,
    Sector,
    membership,
)
from .exceptions import ConfigError, PoleInsideDomainError
from .functions import RationalSection
from .moebius import MoebiusMap
from .quadrature import _NODES15, _W15, QuadConfig, integrate_domain

__all__ = [
    "ray_core_integral",
    "ray_core_integral_numeric",
    "two_ray_pair",
    "pair_closed",
    "pair_quadrature",
    "pair_rational",
    "gram_rational",
    "transform_pole_image",
    "BoundaryRule",
    "boundary_rule",
    "pair_contour",
]

# Relative threshold below which (a - b) switches the ray integral to its
# series form.  The closed form cancels roughly |a/(a-b)| digits, so at the
# threshold it still carries ~1e-11 relative accuracy, while the four-term
# series is exact to well past double precision.
_SERIES_RTOL = 1e-5


def ray_core_integral(a, b):
    """Integral of ``(t - a)^(-2) (t - b)^(-1)`` for ``t`` from 0 to infinity.

    ``a`` and ``b`` must lie off the closed positive real axis.  Broadcasts
    over numpy arrays.  The closed form is

        I(a, b) = -J / (a - b)^2 - 1 / (a (a - b)),

    where ``J = log(b/a)`` continued along the path ``H(t) = (t-a)/(t-b)``
    from ``H(0) = a/b`` to ``H(inf) = 1``.  ``Im H`` has a single zero in
    ``t``, so the path crosses the negative real axis at most once; the
    crossing adds ``2 pi i`` with the sign of ``Im(a + conj(b))``.  All cut
    bookkeeping is done on ``a/b`` as rounded, so the correction always
    matches the branch the principal log actually took.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a, b = np.broadcast_arrays(a, b)
    eps = a - b
    scale = np.maximum(np.abs(a), np.abs(b))
    # The series is the principal-branch closed form re-expanded, so it is
    # only trustworthy when the segment [a, b] stays clear of the ray; gate
    # it on the distance of both poles to the closed positive axis.
    dist_a = np.where(a.real > 0.0, np.abs(a.imag), np.abs(a))
    dist_b = np.where(b.real > 0.0, np.abs(b.imag), np.abs(b))
    near = (np.abs(eps) <= _SERIES_RTOL * scale) & (
        np.abs(eps) <= 0.1 * np.minimum(dist_a, dist_b)
    )

    out = np.empty(a.shape, dtype=complex)

    if np.any(near):
        an = a[near]
        x = eps[near] / an
        # I = (1/a^2) * sum_{k>=0} x^k / (k + 2), truncated at O(x^4) ~ 1e-24.
        out[near] = (0.5 + x * (1.0 / 3.0 + x * (0.25 + x * 0.2))) / (an * an)

    gen = ~near
    if np.any(gen):
        ag = a[gen]
        bg = b[gen]
        eg = eps[gen]
        # Everything below must read the start point H(0) = a/b through the
        # same rounding path as np.log does, or the unwinding count and the
        # principal branch can land on opposite sides of the cut when a/b
        # falls within an ulp of the negative axis.
        q = ag / bg
        mq = q.imag
        d = (ag + np.conj(bg)).imag  # Im H(t) = (m - d t) / |t - b|^2
        with np.errstate(divide="ignore", invalid="ignore"):
            t_star = np.abs(bg) ** 2 * mq / np.where(d != 0.0, d, 1.0)
            h_star = (t_star - ag) / (t_star - bg)
        on_axis = mq == 0.0
        # Transversal crossing of the negative axis at some t* > 0: needs the
        # single zero of Im H on the positive side (sign(mq) = sign(d)) and a
        # negative real part there.  Downward crossings (d > 0) add a turn,
        # upward ones remove it.
        crossing = (
            ~on_axis
            & (d != 0.0)
            & (np.sign(mq) == np.sign(d))
            & (h_star.real < 0.0)
        )
        sigma = np.where(crossing, np.sign(d), 0.0)
        # Start exactly on the cut (in doubles): the principal log already
        # chose a side via the sign of the zero, so count the turn only when
        # the path leaves toward the *other* side.
        start = on_axis & (q.real < 0.0)
        below = np.copysign(1.0, mq) < 0.0
        sigma = np.where(start & ~below & (d > 0.0), 1.0, sigma)
        sigma = np.where(start & below & (d < 0.0), -1.0, sigma)
        j = -np.log(q) + 2j * np.pi * sigma
        out[gen] = -j / (eg * eg) - 1.0 / (ag * eg)

    if out.ndim == 0:
        return complex(out)
    return out


def ray_core_integral_numeric(a, b):
    """Quadrature oracle for :func:`ray_core_integral` (scalar, slow)."""
    a = complex(a)
    b = complex(b)

    def f(s):
        t = s / (1.0 - s)
        return 1.0 / ((t - a) ** 2 * (t - b) * (1.0 - s) ** 2)

    re, _ = quad(lambda s: f(s).real, 0.0, 1.0, limit=400)
    im, _ = quad(lambda s: f(s).imag, 0.0, 1.0, limit=400)
    return complex(re, im)


def two_ray_pair(vertex, beta_out, beta_in, p, q):
    """Pairing over a region bounded by two rays from ``vertex``.

    The positively oriented boundary leaves the vertex along angle
    ``beta_out`` and returns from infinity along angle ``beta_in``.  ``p`` is
    the pole of the first slot, ``q`` (scalar or array) of the second.
    """
    q = np.asarray(q, dtype=complex)
    terms = []
    for beta, sign in ((beta_in, 1.0), (beta_out, -1.0)):
        rot = cmath.exp(-1j * beta)
        aa = (complex(p) - complex(vertex)) * rot
        bb = np.conj((q - complex(vertex)) * rot)
        terms.append(sign * ray_core_integral(aa, bb))
    total = (terms[0] + terms[1]) / 2j
    if np.ndim(q) == 0:
        return complex(total)
    return total


def _moebius_preimage(mapping: MoebiusMap, w):
    """Inverse image of a pole, or None when it is pushed to infinity."""
    inv = mapping.inverse()
    w = complex(w)
    den = inv.c * w + inv.d
    if abs(den) <= 1e-13 * (abs(inv.c) * abs(w) + abs(inv.d) + 1e-300):
        return None
    return (inv.a * w + inv.b) / den


def pair_closed(domain: Domain, p, q):
    """Closed-form ``(r_p, r_q)`` with ``q`` vectorized; None if unavailable.

    No membership validation happens here; callers are expected to have
    checked that the poles lie outside the closure.
    """
    q = np.asarray(q, dtype=complex)
    scalar = q.ndim == 0

    if isinstance(domain, HalfPlane):
        u = domain.boundary_direction
        beta = cmath.phase(u)
        out = two_ray_pair(0.0, beta, beta + math.pi, p, q)
    elif isinstance(domain, Sector):
        out = two_ray_pair(domain.vertex, domain.angle_lo, domain.angle_hi, p, q)
    elif isinstance(domain, DiskInterior):
        x = domain.radius**2 / ((complex(p) - domain.center) * np.conj(q - domain.center))
        out = (math.pi / domain.radius**2) * x * x / (1.0 - x) ** 2
    elif isinstance(domain, DiskExterior):
        y = (complex(p) - domain.center) * np.conj(q - domain.center) / domain.radius**2
        out = (math.pi / domain.radius**2) / (1.0 - y) ** 2
    elif isinstance(domain, MoebiusImage):
        pb = _moebius_preimage(domain.map, p)
        if pb is None:
            return None
        qb = np.asarray([_moebius_preimage(domain.map, qq) for qq in np.atleast_1d(q)])
        if any(v is None for v in qb):
            return None
        inner = pair_closed(domain.base, pb, qb.astype(complex))
        if inner is None:
            return None
        inv = domain.map.inverse()
        out = inv.derivative(complex(p)) * np.conj(inv.derivative(np.atleast_1d(q))) * inner
        if scalar:
            return complex(out[0])
        return out
    else:
        return None

    if scalar:
        return complex(out)
    return np.asarray(out, dtype=complex)


def pair_quadrature(domain: Domain, p, q, config: QuadConfig | None = None):
    """Adaptive-quadrature evaluation of ``(r_p, r_q)`` over the domain."""
    config = config or QuadConfig()
    rp = RationalSection(complex(p))
    rq = RationalSection(complex(q))

    def integrand(z):
        return rp(z) * np.conj(rq(z))

    return integrate_domain(domain, integrand, config).value


def _require_exterior(domain: Domain, pole, what: str) -> None:
    if membership(domain, pole) is not Membership.EXTERIOR:
        raise PoleInsideDomainError(
            f"{what} pole {pole} must lie strictly outside the closure of {domain!r}"
        )


def pair_rational(domain: Domain, p, q, config: QuadConfig | None = None, method: str = "auto"):
    """Bergman pairing ``(r_p, r_q)`` of two rational sections over ``domain``.

    method: "auto" (closed form, then contour, then quadrature), "closed",
    "contour", or "quadrature".
    """
    _require_exterior(domain, p, "first-slot")
    _require_exterior(domain, q, "second-slot")
    if method not in ("auto", "closed", "contour", "quadrature"):
        raise ConfigError(f"unknown pairing method {method!r}")

    if method in ("auto", "closed"):
        val = pair_closed(domain, p, q)
        if val is not None:
            return val
        if method == "closed":
            raise ConfigError(f"no closed-form pairing for {type(domain).__name__}")
    if method in ("auto", "contour"):
        try:
            rule = boundary_rule(domain)
        except ConfigError:
            if method == "contour":
                raise
        else:
            return complex(pair_contour(rule, p, q))
    return pair_quadrature(domain, p, q, config)


def gram_rational(
    domain: Domain,
    poles,
    config: QuadConfig | None = None,
    method: str = "auto",
):
    """Gram matrix ``G[i, j] = (r_{poles[j]}, r_{poles[i]})`` over ``domain``."""
    poles = np.asarray(poles, dtype=complex)
    for p in poles:
        _require_exterior(domain, p, "gram")
    n = poles.size
    gram = np.empty((n, n), dtype=complex)

    done = False
    if method in ("auto", "closed") and n:
        cols = pair_closed(domain, poles[0], poles)
        if cols is not None:
            gram[:, 0] = cols
            for j in range(1, n):
                gram[:, j] = pair_closed(domain, poles[j], poles)
            done = True
        elif method == "closed":
            raise ConfigError(f"no closed-form pairing for {type(domain).__name__}")
    if not done and method in ("auto", "contour"):
        try:
            rule = boundary_rule(domain)
        except ConfigError:
            if method == "contour":
                raise
        else:
            for j in range(n):
                gram[:, j] = pair_contour(rule, poles[j], poles)
            done = True
    if not done:
        for j in range(n):
            for i in range(n):
                if i < j:
                    gram[i, j] = np.conj(gram[j, i])
                else:
                    gram[i, j] = pair_quadrature(domain, poles[j], poles[i], config)
    # The pairing is Hermitian in its arguments; fold roundoff asymmetry.
    return 0.5 * (gram + gram.conj().T)


def transform_pole_image(domain: Domain, p):
    """Express the transform of ``r_p`` as ``const * r_image`` when possible.

    Returns ``(const, image)`` such that the domain transform of ``r_p``
    equals ``const / (xi - image)^2`` for exterior ``xi``, or None when the
    transform is not itself a single rational section (sectors, cusps) or the
    image degenerates to infinity.
    """
    if isinstance(domain, HalfPlane):
        u = domain.boundary_direction
        return (-math.pi * u * u, u * u * np.conj(complex(p)))
    if isinstance(domain, (DiskInterior, DiskExterior)):
        d = np.conj(complex(p) - domain.center)
        if abs(d) <= 1e-300:
            return None
        const = math.pi * domain.radius**2 / (d * d)
        return (const, domain.center + domain.radius**2 / d)
    if isinstance(domain, MoebiusImage):
        pb = _moebius_preimage(domain.map, p)
        if pb is None:
            return None
        base = transform_pole_image(domain.base, pb)
        if base is None:
            return None
        c_base, omega = base
        pole_scale = abs(domain.map.c) * abs(omega) + abs(domain.map.d)
        if abs(domain.map.c * omega + domain.map.d) <= 1e-13 * (pole_scale + 1e-300):
            return None
        inv = domain.map.inverse()
        const = np.conj(inv.derivative(complex(p))) * c_base * domain.map.derivative(omega)
        return (complex(const), complex(domain.map(omega)))
    return None


@dataclass(frozen=True)
class BoundaryRule:
    """Composite quadrature rule along a positively oriented boundary.

    ``weights`` already include the complex velocity dz/dt, so a contour
    integral of ``g`` is just ``sum(weights * g(nodes))``.
    """

    nodes: np.ndarray
    weights: np.ndarray
    label: str = ""


def _panel_nodes(breaks):
    """GK15 nodes/weights on each panel of a strictly increasing break list."""
    ts = []
    ws = []
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        ts.append(mid + half * _NODES15)
        ws.append(half * _W15)
    return np.concatenate(ts), np.concatenate(ws)


def _graded_breaks(n_panels: int, toward_zero: bool, ratio: float = 0.5):
    """Panel break points on [0, 1], geometrically refined toward one end."""
    pts = [1.0]
    for _ in range(n_panels - 1):
        pts.append(pts[-1] * ratio)
    pts.append(0.0)
    pts = np.array(pts[::-1])
    if not toward_zero:
        pts = 1.0 - pts[::-1]
    return pts


def boundary_rule(domain: Domain, refinement: int = 1) -> BoundaryRule:
    """Build a composite GK15 rule on the boundary of a bounded-boundary domain.

    ``refinement`` doubles the panel counts; comparing successive refinements
    gives an a-posteriori error estimate.  Unsupported for domains whose
    boundary passes through infinity.
    """
    if refinement < 1:
        raise ConfigError("refinement must be >= 1")
    if isinstance(domain, (DiskInterior, DiskExterior)):
        n = 24 * refinement
        t, wt = _panel_nodes(np.linspace(0.0, 1.0, n + 1))
        if isinstance(domain, DiskInterior):
            z = domain.center + domain.radius * np.exp(2j * np.pi * t)
            dz = 2j * np.pi * domain.radius * np.exp(2j * np.pi * t)
        else:
            z = domain.center + domain.radius * np.exp(-2j * np.pi * t)
            dz = -2j * np.pi * domain.radius * np.exp(-2j * np.pi * t)
        return BoundaryRule(z, wt * dz, label=type(domain).__name__)
    if isinstance(domain, CuspDomain):
        s = domain.scale
        n_grade = 14 + 6 * refinement
        # Segment 0 -> s along the real axis, graded into the cusp tip at 0.
        t1, w1 = _panel_nodes(_graded_breaks(n_grade, toward_zero=True))
        z1 = s * t1.astype(complex)
        dz1 = np.full_like(z1, s)
        # Cap arc from s around to s(1 + i): the right half circle, swept
        # counterclockwise from angle -pi/2 to +pi/2.
        t2, w2 = _panel_nodes(np.linspace(0.0, 1.0, 8 * refinement + 1))
        phi = -0.5 * math.pi + math.pi * t2
        z2 = s * (1.0 + 0.5j) + 0.5 * s * np.exp(1j * phi)
        dz2 = 0.5 * s * 1j * math.pi * np.exp(1j * phi)
        # Parabola x + i x^2 from x = 1 back to the tip, graded toward x = 0.
        t3, w3 = _panel_nodes(_graded_breaks(n_grade, toward_zero=False))
        x = 1.0 - t3
        z3 = s * (x + 1j * x * x)
        dz3 = -s * (1.0 + 2j * x)
        return BoundaryRule(
            np.concatenate([z1, z2, z3]),
            np.concatenate([w1 * dz1, w2 * dz2, w3 * dz3]),
            label="CuspDomain",
        )
    if isinstance(domain, MoebiusImage):
        base = boundary_rule(domain.base, refinement)
        dz = domain.map.derivative(base.nodes)
        return BoundaryRule(
            domain.map(base.nodes), base.weights * dz, label=f"moebius({base.label})"
        )
    raise ConfigError(
        f"{type(domain).__name__} has an unbounded boundary; no contour rule available"
    )


def pair_contour(rule: BoundaryRule, p, q):
    """Evaluate ``(r_p, r_q)`` from a boundary rule; ``q`` may be an array.

    Stokes' theorem turns the area pairing into
    ``(1/2i) * contour integral of -(z - p)^(-2) / (zbar - qbar) dz``.
    """
    q = np.asarray(q, dtype=complex)
    scalar = q.ndim == 0
    qv = np.atleast_1d(q)
    f = 1.0 / (rule.nodes - complex(p)) ** 2
    g = -1.0 / (np.conj(rule.nodes)[:, None] - np.conj(qv)[None, :])
    vals = (rule.weights * f) @ g / 2j
    if scalar:
        return complex(vals[0])
    return vals
