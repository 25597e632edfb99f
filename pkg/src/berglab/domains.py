"""Catalogue of planar domains used throughout the package.

Variants
--------
HalfPlane(normal)            open half-plane {Re(conj(normal) * z) > 0}; boundary
                             is the line through the origin orthogonal to ``normal``.
Sector(vertex, bisector, opening)
                             open infinite sector of the given opening angle,
                             symmetric about the bisector direction.
DiskInterior(center, radius) / DiskExterior(center, radius)
MoebiusImage(base, map)      image of a catalogued domain under a Moebius map.
CuspDomain(scale)            bounded region pinched between y = 0 and y = x^2 for
                             0 < x < 1 and closed on the right by a circular arc.
                             It carries an outward-pointing zero-angle cusp at the
                             origin and is deliberately *not* a quasidisk.

Membership queries return one of ``interior`` / ``exterior`` / ``boundary``; a
point counts as boundary when its distance to the boundary is below
``eps = 1e-9 * (1 + |z|)`` unless an explicit tolerance is given.  Infinity is
the :data:`~berglab.moebius.AT_INFINITY` sentinel throughout.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .exceptions import DegeneratePairError
from .moebius import AT_INFINITY, MoebiusMap


class Membership(str, Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    BOUNDARY = "boundary"


def default_eps(z: complex) -> float:
    return 1e-9 * (1.0 + abs(z))


@dataclass(frozen=True)
class HalfPlane:
    """Half-plane with unit inward normal ``normal`` and boundary through 0."""

    normal: complex = 1j

    def __post_init__(self):
        n = complex(self.normal)
        if n == 0:
            raise ValueError("normal must be nonzero")
        object.__setattr__(self, "normal", n / abs(n))

    @property
    def boundary_direction(self) -> complex:
        # walking along this direction keeps the interior on the left
        return -1j * self.normal


@dataclass(frozen=True)
class Sector:
    """Infinite open sector at ``vertex`` of angle ``opening`` about ``bisector``."""

    vertex: complex = 0.0
    bisector: float = math.pi / 4
    opening: float = math.pi / 2

    def __post_init__(self):
        if not (0.0 < self.opening < 2.0 * math.pi):
            raise ValueError("opening must lie strictly between 0 and 2*pi")
        object.__setattr__(self, "vertex", complex(self.vertex))

    @property
    def angle_lo(self) -> float:
        return self.bisector - self.opening / 2.0

    @property
    def angle_hi(self) -> float:
        return self.bisector + self.opening / 2.0


@dataclass(frozen=True)
class DiskInterior:
    center: complex = 0.0
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center", complex(self.center))


@dataclass(frozen=True)
class DiskExterior:
    center: complex = 0.0
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center", complex(self.center))


@dataclass(frozen=True)
class MoebiusImage:
    base: "Domain"
    map: MoebiusMap


@dataclass(frozen=True)
class CuspDomain:
    scale: float = 1.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")


@dataclass(frozen=True)
class ComplementView:
    """Open complement of a catalogued domain (used for integration)."""

    inner: "Domain"


Domain = Union[HalfPlane, Sector, DiskInterior, DiskExterior, MoebiusImage, CuspDomain, ComplementView]


# ---------------------------------------------------------------------------
# basic predicates


def is_unbounded(domain: Domain) -> bool:
    if isinstance(domain, (HalfPlane, Sector, DiskExterior)):
        return True
    if isinstance(domain, DiskInterior):
        return False
    if isinstance(domain, CuspDomain):
        return False
    if isinstance(domain, ComplementView):
        return not is_unbounded(domain.inner) or isinstance(domain.inner, (HalfPlane, Sector))
    if isinstance(domain, MoebiusImage):
        # unbounded iff some boundary point or interior point maps to infinity,
        # i.e. the pole of the inverse map belongs to the closure of the image
        pole = domain.map.pole()
        if pole is AT_INFINITY:
            return is_unbounded(domain.base)
        return membership(domain.base, pole) in (Membership.INTERIOR, Membership.BOUNDARY)
    raise TypeError(f"unknown domain {domain!r}")


def infinity_on_boundary(domain: Domain) -> bool:
    if isinstance(domain, (HalfPlane, Sector)):
        return True
    if isinstance(domain, (DiskInterior, DiskExterior, CuspDomain)):
        return False
    if isinstance(domain, ComplementView):
        return infinity_on_boundary(domain.inner) or not is_unbounded(domain.inner)
    if isinstance(domain, MoebiusImage):
        pole = domain.map.pole()
        if pole is AT_INFINITY:
            return infinity_on_boundary(domain.base)
        return membership(domain.base, pole) is Membership.BOUNDARY
    raise TypeError(f"unknown domain {domain!r}")


def is_quasidisk(domain: Domain) -> bool:
    """Catalogue-level flag; CuspDomain is the designated non-quasidisk."""
    if isinstance(domain, CuspDomain):
        return False
    if isinstance(domain, MoebiusImage):
        return is_quasidisk(domain.base)
    if isinstance(domain, ComplementView):
        return is_quasidisk(domain.inner)
    return True


# ---------------------------------------------------------------------------
# membership


def _sector_frame(domain: Sector, z: complex) -> complex:
    """Coordinates in which the sector occupies angles (0, opening)."""
    return (z - domain.vertex) * np.exp(-1j * domain.angle_lo)


def _ray_distance(zeta: complex) -> float:
    """Distance from ``zeta`` to the ray [0, +oo) on the real axis."""
    if zeta.real >= 0.0:
        return abs(zeta.imag)
    return abs(zeta)


def boundary_distance(domain: Domain, z: complex) -> float:
    """Euclidean distance from ``z`` to the boundary of ``domain``."""
    z = complex(z)
    if isinstance(domain, HalfPlane):
        return abs((np.conj(domain.normal) * z).real)
    if isinstance(domain, Sector):
        zeta = _sector_frame(domain, z)
        zeta_hi = zeta * np.exp(-1j * domain.opening)
        return min(_ray_distance(zeta), _ray_distance(zeta_hi))
    if isinstance(domain, (DiskInterior, DiskExterior)):
        return abs(abs(z - domain.center) - domain.radius)
    if isinstance(domain, CuspDomain):
        return _cusp_boundary_distance(domain, z)
    if isinstance(domain, ComplementView):
        return boundary_distance(domain.inner, z)
    if isinstance(domain, MoebiusImage):
        # first-order estimate through the inverse map
        inv = domain.map.inverse()
        z0 = inv(z)
        return boundary_distance(domain.base, z0) / max(abs(inv.derivative(z)), 1e-300)
    raise TypeError(f"unknown domain {domain!r}")


def membership(domain: Domain, z, eps: float | None = None) -> Membership:
    """Classify ``z`` as interior / exterior / boundary for ``domain``."""
    if z is AT_INFINITY:
        if infinity_on_boundary(domain):
            return Membership.BOUNDARY
        if isinstance(domain, ComplementView):
            inner = membership(domain.inner, z, eps)
            return Membership.INTERIOR if inner is Membership.EXTERIOR else Membership.EXTERIOR
        if isinstance(domain, MoebiusImage):
            pole = domain.map.pole()
            if pole is AT_INFINITY:
                return membership(domain.base, AT_INFINITY, eps)
            # map sends its pole to infinity, so oo inherits the pole's status
            return membership(domain.base, pole, eps)
        return Membership.INTERIOR if is_unbounded(domain) else Membership.EXTERIOR
    z = complex(z)
    if eps is None:
        eps = default_eps(z)

    if isinstance(domain, ComplementView):
        inner = membership(domain.inner, z, eps)
        if inner is Membership.BOUNDARY:
            return Membership.BOUNDARY
        return Membership.INTERIOR if inner is Membership.EXTERIOR else Membership.EXTERIOR

    if isinstance(domain, MoebiusImage):
        inv = domain.map.inverse()
        pole_of_inv = inv.pole()  # = image of infinity under ``map``
        if pole_of_inv is not AT_INFINITY and abs(z - pole_of_inv) <= eps:
            return membership(domain.base, AT_INFINITY, eps)
        z0 = inv(z)
        eps_base = eps * abs(inv.derivative(z))
        return membership(domain.base, z0, eps_base)

    dist = boundary_distance(domain, z)
    if dist <= eps:
        return Membership.BOUNDARY

    if isinstance(domain, HalfPlane):
        s = (np.conj(domain.normal) * z).real
        return Membership.INTERIOR if s > 0 else Membership.EXTERIOR
    if isinstance(domain, Sector):
        zeta = _sector_frame(domain, z)
        theta = math.atan2(zeta.imag, zeta.real) % (2.0 * math.pi)
        inside = 0.0 < theta < domain.opening and abs(zeta) > 0.0
        return Membership.INTERIOR if inside else Membership.EXTERIOR
    if isinstance(domain, DiskInterior):
        return Membership.INTERIOR if abs(z - domain.center) < domain.radius else Membership.EXTERIOR
    if isinstance(domain, DiskExterior):
        return Membership.INTERIOR if abs(z - domain.center) > domain.radius else Membership.EXTERIOR
    if isinstance(domain, CuspDomain):
        return Membership.INTERIOR if _cusp_raw_inside(domain, z) else Membership.EXTERIOR
    raise TypeError(f"unknown domain {domain!r}")


def complement(domain: Domain) -> Domain:
    """Open complement of the closure, as an integrable catalogue domain."""
    if isinstance(domain, HalfPlane):
        return HalfPlane(-domain.normal)
    if isinstance(domain, Sector):
        return Sector(domain.vertex, domain.bisector + math.pi, 2.0 * math.pi - domain.opening)
    if isinstance(domain, DiskInterior):
        return DiskExterior(domain.center, domain.radius)
    if isinstance(domain, DiskExterior):
        return DiskInterior(domain.center, domain.radius)
    if isinstance(domain, MoebiusImage):
        return MoebiusImage(complement(domain.base), domain.map)
    if isinstance(domain, CuspDomain):
        return ComplementView(domain)
    if isinstance(domain, ComplementView):
        return domain.inner
    raise TypeError(f"unknown domain {domain!r}")


# ---------------------------------------------------------------------------
# cusp geometry (scale = 1 reference shape, then scaled)
#
# boundary pieces, walked with the interior on the left:
#   (0,0) -> (1,0)   along y = 0
#   (1,0) -> (1,1)   circular arc, center (1, 1/2), radius 1/2, bulging right
#   (1,1) -> (0,0)   along the parabola y = x^2

_CUSP_ARC_CENTER = 1.0 + 0.5j
_CUSP_ARC_RADIUS = 0.5


def _cusp_raw_inside(domain: CuspDomain, z: complex) -> bool:
    s = domain.scale
    x, y = z.real / s, z.imag / s
    if 0.0 < x < 1.0 and 0.0 < y < x * x:
        return True
    if x >= 1.0 and (x - 1.0) ** 2 + (y - 0.5) ** 2 < _CUSP_ARC_RADIUS**2:
        return True
    if x == 1.0 and 0.0 < y < 1.0:
        return True
    return False


def _dist_to_parabola(x: float, y: float) -> float:
    # distance from (x, y) to {(t, t^2): 0 <= t <= 1}; coarse scan + refinement
    ts = np.linspace(0.0, 1.0, 257)
    d2 = (ts - x) ** 2 + (ts * ts - y) ** 2
    k = int(np.argmin(d2))
    lo, hi = max(0.0, ts[k] - 1.0 / 128), min(1.0, ts[k] + 1.0 / 128)
    for _ in range(40):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        f1 = (m1 - x) ** 2 + (m1 * m1 - y) ** 2
        f2 = (m2 - x) ** 2 + (m2 * m2 - y) ** 2
        if f1 < f2:
            hi = m2
        else:
            lo = m1
    t = 0.5 * (lo + hi)
    return math.hypot(t - x, t * t - y)


def _cusp_boundary_distance(domain: CuspDomain, z: complex) -> float:
    s = domain.scale
    x, y = z.real / s, z.imag / s
    # segment y = 0, 0 <= x <= 1
    tx = min(max(x, 0.0), 1.0)
    d_seg = math.hypot(x - tx, y)
    # parabola
    d_par = _dist_to_parabola(x, y)
    # right closing arc: the half of the circle with x >= 1
    dc = math.hypot(x - 1.0, y - 0.5)
    if x >= 1.0:
        d_arc = abs(dc - _CUSP_ARC_RADIUS)
    else:
        d_arc = min(math.hypot(x - 1.0, y - 0.0), math.hypot(x - 1.0, y - 1.0))
    return s * min(d_seg, d_par, d_arc)


# ---------------------------------------------------------------------------
# boundary parameterization


@dataclass(frozen=True)
class BoundaryPoint:
    t: float
    point: object  # complex, or AT_INFINITY


def _ray_param(t_local: float) -> float:
    # [0, 1) -> [0, oo), with t -> 1 running off to infinity
    return t_local / (1.0 - t_local)


def boundary_param(domain: Domain, t: float) -> BoundaryPoint:
    """Point on the boundary at parameter ``t`` in [0, 1).

    Unbounded variants pass through infinity at ``t = 0.5`` and report the
    AT_INFINITY sentinel there.  The orientation keeps the interior on the
    left throughout.
    """
    t = float(t) % 1.0
    if isinstance(domain, HalfPlane):
        u = domain.boundary_direction
        if t == 0.5:
            return BoundaryPoint(t, AT_INFINITY)
        if t < 0.5:
            return BoundaryPoint(t, u * _ray_param(2.0 * t))
        return BoundaryPoint(t, -u * _ray_param(2.0 * (1.0 - t)))
    if isinstance(domain, Sector):
        if t == 0.5:
            return BoundaryPoint(t, AT_INFINITY)
        if t < 0.5:
            s = _ray_param(2.0 * t)
            return BoundaryPoint(t, domain.vertex + s * np.exp(1j * domain.angle_lo))
        s = _ray_param(2.0 * (1.0 - t))
        return BoundaryPoint(t, domain.vertex + s * np.exp(1j * domain.angle_hi))
    if isinstance(domain, DiskInterior):
        return BoundaryPoint(t, domain.center + domain.radius * np.exp(2j * math.pi * t))
    if isinstance(domain, DiskExterior):
        return BoundaryPoint(t, domain.center + domain.radius * np.exp(-2j * math.pi * t))
    if isinstance(domain, ComplementView):
        bp = boundary_param(domain.inner, -t % 1.0)
        return BoundaryPoint(t, bp.point)
    if isinstance(domain, MoebiusImage):
        bp = boundary_param(domain.base, t)
        return BoundaryPoint(t, domain.map(bp.point))
    if isinstance(domain, CuspDomain):
        s = domain.scale
        if t < 1.0 / 3.0:
            x = 3.0 * t
            return BoundaryPoint(t, s * complex(x, 0.0))
        if t < 2.0 / 3.0:
            phi = -0.5 * math.pi + 3.0 * (t - 1.0 / 3.0) * math.pi
            p = _CUSP_ARC_CENTER + _CUSP_ARC_RADIUS * np.exp(1j * phi)
            return BoundaryPoint(t, s * complex(p))
        x = 3.0 * (1.0 - t)
        return BoundaryPoint(t, s * complex(x, x * x))
    raise TypeError(f"unknown domain {domain!r}")


# ---------------------------------------------------------------------------
# three-point quasidisk estimate


def quasidisk_ratio(domain: Domain, t1: float, t2: float, n_arc: int = 256) -> float:
    """diam(smaller boundary arc between the two points) / |z1 - z2|."""
    z1 = boundary_param(domain, t1).point
    z2 = boundary_param(domain, t2).point
    if z1 is AT_INFINITY or z2 is AT_INFINITY:
        raise ValueError("three-point ratio requires finite boundary points")
    chord = abs(z1 - z2)
    if chord < 1e-12 * (1.0 + abs(z1) + abs(z2)):
        raise DegeneratePairError(f"boundary points at t={t1}, t={t2} nearly coincide")
    lo, hi = sorted((t1 % 1.0, t2 % 1.0))
    arcs = []
    for a, b in ((lo, hi), (hi, lo + 1.0)):
        ts = np.linspace(a, b, n_arc)
        pts = [boundary_param(domain, tt).point for tt in ts]
        if any(p is AT_INFINITY for p in pts) or (
            is_unbounded(domain) and a < 0.5 <= b
        ):
            arcs.append(math.inf)
            continue
        zz = np.array([complex(p) for p in pts])
        d = np.abs(zz[None, :] - zz[:, None]).max()
        arcs.append(float(d))
    return min(arcs) / chord


def quasidisk_constant(domain: Domain, n_samples: int = 96, window: float = 8.0) -> float:
    """Sampled sup of the three-point ratio over boundary pairs.

    For unbounded domains the sampling is restricted to the window
    ``|z| <= window`` and only the finite arc (not through infinity) is used.
    The estimate is monotone nondecreasing under nested refinement of the
    sample set.
    """
    zs = _boundary_window_samples(domain, n_samples, window)
    n = len(zs)
    if n < 3:
        raise ValueError("need at least 3 boundary samples")
    pts = np.asarray(zs, dtype=complex)
    dist = np.abs(pts[None, :] - pts[:, None])
    closed = not is_unbounded(domain)

    if closed:
        ext = np.concatenate([pts, pts])
        dmat = np.abs(ext[None, :] - ext[:, None])
    else:
        ext = pts
        dmat = dist

    m = len(ext)
    # diam[i][j] = diameter of the sampled sub-path ext[i..j]; fill all lengths
    # first so complementary-arc lookups below are valid.
    diam = np.zeros((m, m))
    max_len = n - 1
    for length in range(1, m):
        i = np.arange(0, m - length)
        j = i + length
        diam[i, j] = np.maximum(np.maximum(diam[i, j - 1], diam[i + 1, j]), dmat[i, j])

    best = 0.0
    for length in range(1, max_len + 1):
        stop = min(n, m - length)  # ii < n so the complementary lookup is valid
        for ii in range(0, stop):
            jj = ii + length
            a, b = ii % n, jj % n
            if a == b:
                continue
            chord = dist[a, b]
            if chord < 1e-12 * (1.0 + abs(pts[a]) + abs(pts[b])):
                continue
            d_here = diam[ii, jj]
            if closed:
                other = diam[jj, ii + n] if ii + n < m else math.inf
                d_here = min(d_here, other)
            ratio = d_here / chord
            if ratio > best:
                best = float(ratio)
    return best


def _boundary_window_samples(domain: Domain, n: int, window: float):
    if isinstance(domain, HalfPlane):
        u = domain.boundary_direction
        s = np.linspace(-window, window, n)
        return [u * si for si in s]
    if isinstance(domain, Sector):
        half = max(2, n // 2)
        s = np.linspace(window, 0.0, half, endpoint=False)
        lo = [domain.vertex + si * np.exp(1j * domain.angle_hi) for si in s]
        s2 = np.linspace(0.0, window, half + 1)
        hi = [domain.vertex + si * np.exp(1j * domain.angle_lo) for si in s2]
        return lo + hi
    if is_unbounded(domain):
        # generic unbounded: walk parameters away from the infinity marker
        ts = [tt for tt in np.linspace(0.0, 1.0, n, endpoint=False) if abs(tt - 0.5) > 1.0 / (2 * n)]
        pts = []
        for tt in sorted(((t + 0.5) % 1.0 for t in ts)):
            p = boundary_param(domain, tt).point
            if p is not AT_INFINITY and abs(p) <= window:
                pts.append(complex(p))
        return pts
    ts = np.linspace(0.0, 1.0, n, endpoint=False)
    return [complex(boundary_param(domain, tt).point) for tt in ts]


# ---------------------------------------------------------------------------
# serialization


def _c2pair(z: complex):
    return [float(np.real(z)), float(np.imag(z))]


def _pair2c(p) -> complex:
    return complex(float(p[0]), float(p[1]))


def domain_to_dict(domain: Domain) -> dict:
    if isinstance(domain, HalfPlane):
        return {"variant": "half_plane", "normal": _c2pair(domain.normal)}
    if isinstance(domain, Sector):
        return {
            "variant": "sector",
            "vertex": _c2pair(domain.vertex),
            "bisector": float(domain.bisector),
            "opening": float(domain.opening),
        }
    if isinstance(domain, DiskInterior):
        return {"variant": "disk_interior", "center": _c2pair(domain.center), "radius": float(domain.radius)}
    if isinstance(domain, DiskExterior):
        return {"variant": "disk_exterior", "center": _c2pair(domain.center), "radius": float(domain.radius)}
    if isinstance(domain, MoebiusImage):
        m = domain.map
        return {
            "variant": "moebius_image",
            "base": domain_to_dict(domain.base),
            "map": {"a": _c2pair(m.a), "b": _c2pair(m.b), "c": _c2pair(m.c), "d": _c2pair(m.d)},
        }
    if isinstance(domain, CuspDomain):
        return {"variant": "cusp", "scale": float(domain.scale)}
    raise TypeError(f"cannot serialize {domain!r}")


def domain_from_dict(data: dict) -> Domain:
    try:
        variant = data["variant"]
        if variant == "half_plane":
            return HalfPlane(_pair2c(data["normal"]))
        if variant == "sector":
            return Sector(_pair2c(data["vertex"]), float(data["bisector"]), float(data["opening"]))
        if variant == "disk_interior":
            return DiskInterior(_pair2c(data["center"]), float(data["radius"]))
        if variant == "disk_exterior":
            return DiskExterior(_pair2c(data["center"]), float(data["radius"]))
        if variant == "moebius_image":
            m = data["map"]
            mm = MoebiusMap(_pair2c(m["a"]), _pair2c(m["b"]), _pair2c(m["c"]), _pair2c(m["d"]))
            return MoebiusImage(domain_from_dict(data["base"]), mm)
        if variant == "cusp":
            return CuspDomain(float(data["scale"]))
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"bad domain description: {exc}") from exc
    raise ValueError(f"unknown domain variant {variant!r}")


def domain_to_json(domain: Domain) -> str:
    return json.dumps(domain_to_dict(domain), sort_keys=True)


def domain_from_json(text: str) -> Domain:
    return domain_from_dict(json.loads(text))


# named shortcuts accepted by the CLI
NAMED_DOMAINS = {
    "halfplane": HalfPlane(1j),
    "upper-half-plane": HalfPlane(1j),
    "sector": Sector(0.0, math.pi / 4, math.pi / 2),
    "quadrant": Sector(0.0, math.pi / 4, math.pi / 2),
    "disk": DiskInterior(0.0, 1.0),
    "disk-exterior": DiskExterior(0.0, 1.0),
    "cusp": CuspDomain(1.0),
}
