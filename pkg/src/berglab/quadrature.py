"""Adaptive two-dimensional quadrature over catalogued domains.

Each domain is covered by one or more *charts*: smooth maps from a parameter
rectangle into the plane together with the area Jacobian.  Every cell of the
parameter rectangle is estimated with a tensor Gauss-Kronrod 7/15 rule (the
7-point values are the odd-index subset of the 15-point grid, so a cell costs
225 integrand evaluations and the embedded difference gives the local error).
Cells live in a max-heap keyed by their worst error component; refinement pops
a batch of the worst cells, splits each into four, and re-estimates.  The
final value is re-summed over surviving cells in creation order, which makes
results independent of heap tie-breaking and bit-for-bit reproducible.

Unbounded domains are handled either by compactifying charts that push
infinity to a parameter edge (``unbounded_chart="inversion"``, the default) or
by truncating at a large radius and bounding the tail from sampled decay of
the integrand (``"polar-decay"``).  The latter raises
:class:`~berglab.exceptions.NonIntegrableTailError` when the samples do not
decay fast enough for a finite integral.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from . import domains as dom
from .exceptions import ConfigError, NonIntegrableTailError

# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 constants (nodes on [-1, 1], descending |x|)

_XGK = np.array(
    [
        0.991455371120813,
        0.949107912342759,
        0.864864423359769,
        0.741531185599394,
        0.586087235467691,
        0.405845151377397,
        0.207784955007898,
        0.0,
    ]
)
_WGK = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
    ]
)
_WG = np.array(
    [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
    ]
)

# ascending 15-point grid and matching weights
_NODES15 = np.concatenate([-_XGK[:7], [0.0], _XGK[:7][::-1]])
_W15 = np.concatenate([_WGK[:7], [_WGK[7]], _WGK[:7][::-1]])
# embedded 7-point weights, zero except at the odd-index (Gauss) nodes
_W7 = np.zeros(15)
_W7[[1, 3, 5, 7, 9, 11, 13]] = [_WG[0], _WG[1], _WG[2], _WG[3], _WG[2], _WG[1], _WG[0]]

_WMAT15 = np.outer(_W15, _W15)
_WMAT7 = np.outer(_W7, _W7)


@dataclass(frozen=True)
class Patch:
    """One chart: parameter rectangle -> plane, with area Jacobian.

    ``to_plane(u, v)`` and ``jacobian(u, v)`` take equal-shape float arrays.
    ``mask(z)``, when present, marks which plane points belong to the domain;
    the integrand is only evaluated where the mask is true.
    """

    to_plane: Callable
    jacobian: Callable
    u_range: tuple = (0.0, 1.0)
    v_range: tuple = (0.0, 1.0)
    mask: Optional[Callable] = None
    label: str = ""


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-8
    rel_tol: Optional[float] = None
    max_cells: int = 40000
    unbounded_chart: str = "inversion"
    truncation_radius: float = 64.0

    def __post_init__(self):
        if self.unbounded_chart not in ("inversion", "polar-decay"):
            raise ConfigError(
                f"unbounded_chart must be 'inversion' or 'polar-decay', got {self.unbounded_chart!r}"
            )
        if self.abs_tol <= 0:
            raise ConfigError("abs_tol must be positive")
        if self.rel_tol is not None and self.rel_tol <= 0:
            raise ConfigError("rel_tol must be positive when given")
        if self.max_cells < 16:
            raise ConfigError("max_cells too small")


@dataclass(frozen=True)
class QuadResult:
    value: object  # complex, or complex ndarray for vector integrands
    abs_error: object  # float, or float ndarray
    cells_used: int
    converged: bool


# ---------------------------------------------------------------------------
# cell evaluation


def _eval_rects(patch: Patch, rects, integrand, m_out):
    """Evaluate a batch of parameter rectangles on one patch.

    Returns (values, errors): arrays of shape (ncells, m) — Kronrod value and
    |Kronrod - Gauss| per component.
    """
    nc = len(rects)
    U = np.empty((nc, 15, 15))
    V = np.empty((nc, 15, 15))
    scale = np.empty(nc)
    for k, (u0, u1, v0, v1) in enumerate(rects):
        un = 0.5 * (u0 + u1) + 0.5 * (u1 - u0) * _NODES15
        vn = 0.5 * (v0 + v1) + 0.5 * (v1 - v0) * _NODES15
        U[k] = un[:, None]
        V[k] = vn[None, :]
        scale[k] = 0.25 * (u1 - u0) * (v1 - v0)
    uu = U.ravel()
    vv = V.ravel()
    zz = np.asarray(patch.to_plane(uu, vv), dtype=complex)
    jac = np.asarray(patch.jacobian(uu, vv), dtype=float)
    if patch.mask is not None:
        ok = np.asarray(patch.mask(zz), dtype=bool)
    else:
        ok = np.ones(zz.shape, dtype=bool)
    fvals = np.zeros((zz.size, m_out), dtype=complex)
    if ok.any():
        raw = np.asarray(integrand(zz[ok]), dtype=complex)
        if raw.ndim == 1:
            raw = raw[:, None]
        fvals[ok] = raw
    fj = fvals * jac[:, None]
    fj = fj.reshape(nc, 15, 15, m_out)
    val_k = np.einsum("ij,cijm->cm", _WMAT15, fj) * scale[:, None]
    val_g = np.einsum("ij,cijm->cm", _WMAT7, fj) * scale[:, None]
    return val_k, np.abs(val_k - val_g)


def integrate_patches(patches: Sequence[Patch], integrand, config: QuadConfig | None = None,
                      extra_error=None) -> QuadResult:
    """Adaptively integrate ``integrand`` over the union of ``patches``."""
    if config is None:
        config = QuadConfig()

    # probe the output arity on a tiny sample
    p0 = patches[0]
    u0, u1 = p0.u_range
    v0, v1 = p0.v_range
    zp = np.asarray(p0.to_plane(np.array([0.5 * (u0 + u1)]), np.array([0.5 * (v0 + v1)])), dtype=complex)
    if p0.mask is not None and not np.all(p0.mask(zp)):
        probe = None
        for pt in patches:
            uu = np.linspace(pt.u_range[0], pt.u_range[1], 13)[1:-1]
            vv = np.linspace(pt.v_range[0], pt.v_range[1], 13)[1:-1]
            Ug, Vg = np.meshgrid(uu, vv)
            zg = np.asarray(pt.to_plane(Ug.ravel(), Vg.ravel()), dtype=complex)
            okg = pt.mask(zg) if pt.mask is not None else np.ones(zg.shape, bool)
            if np.any(okg):
                probe = zg[okg][:1]
                break
        if probe is None:
            raise ConfigError("all patches are fully masked out")
        zp = probe
    out0 = np.asarray(integrand(zp), dtype=complex)
    scalar_out = out0.ndim <= 1
    m_out = 1 if scalar_out else out0.shape[-1]

    cap = 4096
    val_buf = np.zeros((cap, m_out), dtype=complex)
    err_buf = np.zeros((cap, m_out), dtype=float)
    active = np.zeros(cap, dtype=bool)
    heap: list = []
    n_created = 0
    rect_of: dict = {}

    def _grow(need):
        nonlocal cap, val_buf, err_buf, active
        while cap < need:
            cap *= 2
        val_buf = np.concatenate([val_buf, np.zeros((cap - val_buf.shape[0], m_out), complex)])
        err_buf = np.concatenate([err_buf, np.zeros((cap - err_buf.shape[0], m_out), float)])
        active = np.concatenate([active, np.zeros(cap - active.shape[0], bool)])

    def _push(patch_idx, rects, vals, errs):
        nonlocal n_created
        if n_created + len(rects) > cap:
            _grow(n_created + len(rects))
        for r, v, e in zip(rects, vals, errs):
            idx = n_created
            n_created += 1
            val_buf[idx] = v
            err_buf[idx] = e
            active[idx] = True
            rect_of[idx] = (patch_idx, r)
            heapq.heappush(heap, (-float(e.max()), idx))

    # seed: 4x4 grid of root cells per patch
    for pi, patch in enumerate(patches):
        ue = np.linspace(patch.u_range[0], patch.u_range[1], 5)
        ve = np.linspace(patch.v_range[0], patch.v_range[1], 5)
        rects = [(ue[i], ue[i + 1], ve[j], ve[j + 1]) for i in range(4) for j in range(4)]
        vals, errs = _eval_rects(patch, rects, integrand, m_out)
        _push(pi, rects, vals, errs)

    batch = 64
    while True:
        tot_err = err_buf[: n_created][active[: n_created]].sum(axis=0)
        tot_val = val_buf[: n_created][active[: n_created]].sum(axis=0)
        tol = np.full(m_out, config.abs_tol)
        if config.rel_tol is not None:
            tol = np.maximum(tol, config.rel_tol * np.abs(tot_val))
        if np.all(tot_err <= tol):
            converged = True
            break
        if n_created >= config.max_cells:
            converged = False
            break
        popped = []
        while heap and len(popped) < batch:
            negerr, idx = heapq.heappop(heap)
            if not active[idx]:
                continue
            if negerr == 0.0:
                heapq.heappush(heap, (negerr, idx))
                break
            popped.append(idx)
        if not popped:
            converged = bool(np.all(tot_err <= tol))
            break
        by_patch: dict = {}
        for idx in popped:
            active[idx] = False
            pi, (u0, u1, v0, v1) = rect_of.pop(idx)
            um, vm = 0.5 * (u0 + u1), 0.5 * (v0 + v1)
            by_patch.setdefault(pi, []).extend(
                [(u0, um, v0, vm), (um, u1, v0, vm), (u0, um, vm, v1), (um, u1, vm, v1)]
            )
        for pi, rects in by_patch.items():
            vals, errs = _eval_rects(patches[pi], rects, integrand, m_out)
            _push(pi, rects, vals, errs)

    # deterministic final summation in creation order
    live = np.flatnonzero(active[: n_created])
    value = val_buf[live].sum(axis=0)
    err = err_buf[live].sum(axis=0)
    if extra_error is not None:
        extra = np.broadcast_to(np.asarray(extra_error, float), err.shape)
        err = err + extra
        tol = np.full(m_out, config.abs_tol)
        if config.rel_tol is not None:
            tol = np.maximum(tol, config.rel_tol * np.abs(value))
        converged = converged and bool(np.all(err <= tol))
    if scalar_out:
        return QuadResult(complex(value[0]), float(err[0]), int(len(live)), bool(converged))
    return QuadResult(value, err, int(len(live)), bool(converged))


# ---------------------------------------------------------------------------
# charts per domain


def _polar_disk_patch(center: complex, radius: float, mask=None, label="disk") -> Patch:
    c, R = complex(center), float(radius)

    def to_plane(u, v):
        return c + R * u * np.exp(2j * np.pi * v)

    def jacobian(u, v):
        return 2.0 * np.pi * R * R * u

    return Patch(to_plane, jacobian, mask=mask, label=label)


def _disk_exterior_patch(center: complex, radius: float, label="disk-ext") -> Patch:
    c, R = complex(center), float(radius)

    def to_plane(u, v):
        return c + (R / u) * np.exp(2j * np.pi * v)

    def jacobian(u, v):
        return 2.0 * np.pi * R * R / u**3

    return Patch(to_plane, jacobian, label=label)


def _half_plane_patch(normal: complex) -> Patch:
    n = complex(normal)

    def to_plane(u, v):
        w = u * np.exp(2j * np.pi * v)
        return n * (1.0 - w) / (1.0 + w)

    def jacobian(u, v):
        w = u * np.exp(2j * np.pi * v)
        return 8.0 * np.pi * u / np.abs(1.0 + w) ** 4

    return Patch(to_plane, jacobian, label="half-plane")


def _sector_patch(sector: dom.Sector) -> Patch:
    v0 = sector.vertex
    a_lo = sector.angle_lo
    th = sector.opening

    def to_plane(u, v):
        r = u / (1.0 - u)
        return v0 + r * np.exp(1j * (a_lo + th * v))

    def jacobian(u, v):
        r = u / (1.0 - u)
        return th * r / (1.0 - u) ** 2

    return Patch(to_plane, jacobian, label="sector")


def _cusp_patches(cusp: dom.CuspDomain) -> list[Patch]:
    s = cusp.scale

    def region_to_plane(u, v):
        return s * (u + 1j * v * u * u)

    def region_jac(u, v):
        return s * s * u * u

    def halfdisk_to_plane(u, v):
        phi = -0.5 * np.pi + np.pi * v
        return s * (dom._CUSP_ARC_CENTER + dom._CUSP_ARC_RADIUS * u * np.exp(1j * phi))

    def halfdisk_jac(u, v):
        return s * s * np.pi * dom._CUSP_ARC_RADIUS**2 * u

    return [
        Patch(region_to_plane, region_jac, label="cusp-region"),
        Patch(halfdisk_to_plane, halfdisk_jac, label="cusp-cap"),
    ]


def _cusp_complement_patches(cusp: dom.CuspDomain) -> list[Patch]:
    s = cusp.scale
    c = s * (0.75 + 0.5j)
    R0 = 2.0 * s

    def mask(z):
        zz = np.atleast_1d(z)
        x = np.real(zz) / s
        y = np.imag(zz) / s
        in_region = (x > 0.0) & (x <= 1.0) & (y >= 0.0) & (y <= x * x)
        in_cap = (x >= 1.0) & ((x - 1.0) ** 2 + (y - 0.5) ** 2 <= dom._CUSP_ARC_RADIUS**2)
        return ~(in_region | in_cap)

    near = _polar_disk_patch(c, R0, mask=mask, label="cusp-comp-near")
    far = _disk_exterior_patch(c, R0, label="cusp-comp-far")
    return [near, far]


def _sector_truncated_patch(sector: dom.Sector, R: float) -> Patch:
    v0, a_lo, th = sector.vertex, sector.angle_lo, sector.opening

    def to_plane(u, v):
        return v0 + R * u * np.exp(1j * (a_lo + th * v))

    def jacobian(u, v):
        return th * R * R * u

    return Patch(to_plane, jacobian, label="sector-trunc")


def _half_plane_truncated_patch(normal: complex, R: float) -> Patch:
    n = complex(normal)
    a_lo = math.atan2(n.imag, n.real) - 0.5 * math.pi

    def to_plane(u, v):
        return R * u * np.exp(1j * (a_lo + np.pi * v))

    def jacobian(u, v):
        return np.pi * R * R * u

    return Patch(to_plane, jacobian, label="half-plane-trunc")


def _compose_moebius(patch: Patch, mapping) -> Patch:
    def to_plane(u, v):
        return mapping(patch.to_plane(u, v))

    def jacobian(u, v):
        z = patch.to_plane(u, v)
        return patch.jacobian(u, v) * np.abs(mapping.derivative(z)) ** 2

    new_mask = None
    if patch.mask is not None:
        inv = mapping.inverse()

        def new_mask(z):
            return patch.mask(inv(z))

    return Patch(to_plane, jacobian, patch.u_range, patch.v_range, new_mask, patch.label + "+moebius")


def _tail_samples(domain, R: float):
    """Sample points on the arc |z - anchor| = R inside an unbounded domain."""
    if isinstance(domain, dom.HalfPlane):
        n = domain.normal
        a_lo = math.atan2(n.imag, n.real) - 0.5 * math.pi
        th = np.linspace(a_lo + 1e-3, a_lo + math.pi - 1e-3, 64)
        return R * np.exp(1j * th), math.pi
    if isinstance(domain, dom.Sector):
        th = np.linspace(domain.angle_lo + 1e-3 * domain.opening,
                         domain.angle_hi - 1e-3 * domain.opening, 64)
        return domain.vertex + R * np.exp(1j * th), domain.opening
    if isinstance(domain, dom.DiskExterior):
        th = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        return domain.center + R * np.exp(1j * th), 2.0 * math.pi
    raise ConfigError(f"polar-decay charts not available for {type(domain).__name__}")


def _polar_decay_setup(domain, integrand, config: QuadConfig):
    """Truncated charts plus a sampled tail bound for the error budget."""
    R = config.truncation_radius
    maxima = []
    for r in (R, 2.0 * R, 4.0 * R):
        zs, theta = _tail_samples(domain, r)
        vals = np.abs(np.asarray(integrand(zs), dtype=complex))
        if vals.ndim == 1:
            vals = vals[:, None]
        maxima.append(vals.max(axis=0))
    m1, m2, m3 = maxima
    tiny = 1e-300
    q12 = np.log2((m1 + tiny) / (m2 + tiny))
    q23 = np.log2((m2 + tiny) / (m3 + tiny))
    q = np.minimum(q12, q23)
    relevant = m1 > 0
    if np.any(relevant & (q <= 2.05)):
        raise NonIntegrableTailError(
            f"sampled decay exponent {q.min():.3f} at radius {R:g} is too slow for a finite tail"
        )
    tail = np.where(relevant, theta * m1 * R * R / np.maximum(q - 2.0, 1e-12), 0.0)

    if isinstance(domain, dom.HalfPlane):
        patches = [_half_plane_truncated_patch(domain.normal, R)]
    elif isinstance(domain, dom.Sector):
        patches = [_sector_truncated_patch(domain, R)]
    else:  # DiskExterior
        c, R0 = domain.center, domain.radius

        def to_plane(u, v):
            rho = R0 + (R - R0) * u
            return c + rho * np.exp(2j * np.pi * v)

        def jacobian(u, v):
            rho = R0 + (R - R0) * u
            return 2.0 * np.pi * rho * (R - R0)

        patches = [Patch(to_plane, jacobian, label="annulus-trunc")]
    return patches, tail


def charts_for(domain, config: QuadConfig | None = None) -> list[Patch]:
    """Inversion-style charts covering ``domain`` (infinity pushed to an edge)."""
    if config is None:
        config = QuadConfig()
    if isinstance(domain, dom.DiskInterior):
        return [_polar_disk_patch(domain.center, domain.radius)]
    if isinstance(domain, dom.DiskExterior):
        return [_disk_exterior_patch(domain.center, domain.radius)]
    if isinstance(domain, dom.HalfPlane):
        return [_half_plane_patch(domain.normal)]
    if isinstance(domain, dom.Sector):
        return [_sector_patch(domain)]
    if isinstance(domain, dom.CuspDomain):
        return _cusp_patches(domain)
    if isinstance(domain, dom.ComplementView) and isinstance(domain.inner, dom.CuspDomain):
        return _cusp_complement_patches(domain.inner)
    if isinstance(domain, dom.MoebiusImage):
        return [_compose_moebius(p, domain.map) for p in charts_for(domain.base, config)]
    raise ConfigError(f"no charts registered for {type(domain).__name__}")


def integrate_domain(domain, integrand, config: QuadConfig | None = None) -> QuadResult:
    """Integrate a pointwise (vector-valued) integrand over a catalogued domain.

    ``integrand`` maps a complex ndarray of points to values of shape
    ``(npts,)`` or ``(npts, m)``; integration is against plane Lebesgue
    measure.
    """
    if config is None:
        config = QuadConfig()
    extra = None
    if config.unbounded_chart == "polar-decay" and dom.is_unbounded(domain) and isinstance(
        domain, (dom.HalfPlane, dom.Sector, dom.DiskExterior)
    ):
        patches, extra = _polar_decay_setup(domain, integrand, config)
    else:
        patches = charts_for(domain, config)
    return integrate_patches(patches, integrand, config, extra_error=extra)


# ---------------------------------------------------------------------------
# Bergman-style inner products


def inner_b2(domain, f, g, config: QuadConfig | None = None) -> QuadResult:
    """(f, g) = integral of f * conj(g) over ``domain`` (linear in ``f``)."""

    def integrand(z):
        return np.asarray(f(z)) * np.conj(np.asarray(g(z)))

    return integrate_domain(domain, integrand, config)


def norm_b2(domain, f, config: QuadConfig | None = None) -> QuadResult:
    """L2 norm of ``f`` over ``domain``."""

    def integrand(z):
        return np.abs(np.asarray(f(z))) ** 2 + 0j

    res = integrate_domain(domain, integrand, config)
    val = math.sqrt(max(float(np.real(res.value)), 0.0))
    err = float(np.real(res.abs_error)) / (2.0 * val) if val > 0 else float(np.real(res.abs_error))
    return QuadResult(val, err, res.cells_used, res.converged)
