"""The domain transform: pairing a section against second-order poles outside.

For ``f`` in the Bergman space of ``G`` and ``xi`` outside the closure,

    (T f)(xi) = factor * integral over G of conj(f(z)) / (z - xi)^2 dA(z),

which equals ``factor * conj((f, r_xi)_G)``.  The map is conjugate-linear in
``f`` and produces a function holomorphic on the complement.  ``factor`` is
1 for plain Lebesgue measure and ``1/pi`` under the area-over-pi convention,
which makes the transform a contraction with unit norm on half planes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .domains import (
    Domain,
    Membership,
    Sector,
    complement,
    membership,
)
from .exceptions import ConfigError, PointInsideDomainError
from .functions import LinearCombination, RationalSection
from .kernels import KernelSection, rational_expansion
from .pairings import (
    boundary_rule,
    gram_rational,
    pair_closed,
    pair_contour,
    transform_pole_image,
)
from .quadrature import QuadConfig, integrate_domain, norm_b2

__all__ = [
    "TransformConfig",
    "transform_factor",
    "hilbert_transform",
    "transform_norm_ratio",
    "transform_gram",
    "SurjectivityReport",
    "surjectivity_diagnostic",
    "holomorphy_residual",
]

_NORMALIZATIONS = ("lebesgue", "lebesgue-over-pi")


@dataclass(frozen=True)
class TransformConfig:
    """Measure normalization plus the quadrature budget for fallbacks."""

    normalization: str = "lebesgue"
    quad: QuadConfig = field(default_factory=QuadConfig)

    def __post_init__(self):
        if self.normalization not in _NORMALIZATIONS:
            raise ConfigError(
                f"normalization must be one of {_NORMALIZATIONS}, got {self.normalization!r}"
            )


def transform_factor(config: TransformConfig | None) -> float:
    if config is not None and config.normalization == "lebesgue-over-pi":
        return 1.0 / np.pi
    return 1.0


def _rational_parts(domain: Domain, f):
    """Flatten ``f`` into [(coeff, pole)] when it is a finite rational sum."""
    if isinstance(f, RationalSection):
        return [(f.coefficient, f.pole)]
    if isinstance(f, KernelSection):
        expansion = rational_expansion(domain, f.point)
        if expansion is None:
            return None
        return _rational_parts(domain, expansion)
    if isinstance(f, LinearCombination):
        parts = []
        for c, g in zip(f.coefficients, f.parts):
            sub = _rational_parts(domain, g)
            if sub is None:
                return None
            parts.extend((c * cs, ps) for cs, ps in sub)
        return parts
    return None


def _pole_transform_values(domain: Domain, pole, xi, method: str):
    """Values of the (unit-coefficient, Lebesgue) transform of r_pole at xi."""
    if method in ("auto", "closed"):
        image = transform_pole_image(domain, pole)
        if image is not None:
            const, center = image
            return const / (xi - center) ** 2
        vals = pair_closed(domain, pole, xi)
        if vals is not None:
            return np.conj(vals)
        if method == "closed":
            raise ConfigError(f"no closed-form transform on {type(domain).__name__}")
    if method in ("auto", "contour"):
        try:
            rule = boundary_rule(domain)
        except ConfigError:
            if method == "contour":
                raise
        else:
            return np.conj(pair_contour(rule, pole, xi))
    return None


def hilbert_transform(
    domain: Domain,
    f,
    xi,
    config: TransformConfig | None = None,
    method: str = "auto",
):
    """Evaluate the transform of ``f`` at exterior points ``xi``.

    ``xi`` may be a scalar or an array; points inside the domain or on its
    boundary raise :class:`PointInsideDomainError`.  ``method`` selects the
    evaluation route: "auto", "closed", "contour", or "quadrature".
    """
    if method not in ("auto", "closed", "contour", "quadrature"):
        raise ConfigError(f"unknown transform method {method!r}")
    cfg = config or TransformConfig()
    factor = transform_factor(cfg)
    xi_arr = np.asarray(xi, dtype=complex)
    scalar = xi_arr.ndim == 0
    flat = np.atleast_1d(xi_arr)
    for point in flat:
        if membership(domain, point) is not Membership.EXTERIOR:
            raise PointInsideDomainError(
                f"transform evaluation point {point} is not strictly outside the domain"
            )

    out = None
    if method != "quadrature":
        parts = _rational_parts(domain, f)
        if parts is not None:
            acc = np.zeros(flat.shape, dtype=complex)
            for coeff, pole in parts:
                vals = _pole_transform_values(domain, pole, flat, method)
                if vals is None:
                    acc = None
                    break
                acc = acc + np.conj(coeff) * vals
            out = acc
        elif method in ("closed",):
            raise ConfigError("closed-form transform requires a rational section sum")
        if out is None and method == "contour":
            try:
                rule = boundary_rule(domain)
            except ConfigError:
                raise
            fv = f(rule.nodes)
            g = -1.0 / (np.conj(rule.nodes)[:, None] - np.conj(flat)[None, :])
            out = np.conj((rule.weights * fv) @ g / 2j)

    if out is None:
        # (f, r_xi) for every xi in one adaptive pass, then conjugate.
        def integrand(z):
            base = 1.0 / (z[:, None] - flat[None, :]) ** 2
            return f(z)[:, None] * np.conj(base)

        res = integrate_domain(domain, integrand, cfg.quad)
        vals = np.atleast_1d(np.asarray(res.value))
        out = np.conj(vals)

    out = factor * out
    if scalar:
        return complex(out[0])
    return out


def _norm_from_parts(domain: Domain, parts, config: QuadConfig | None):
    poles = np.array([p for _, p in parts], dtype=complex)
    coeffs = np.array([c for c, _ in parts], dtype=complex)
    gram = gram_rational(domain, poles, config)
    val = float(np.real(coeffs.conj() @ gram @ coeffs))
    return np.sqrt(max(val, 0.0))


def transform_norm_ratio(
    domain: Domain,
    f,
    config: TransformConfig | None = None,
    method: str = "auto",
):
    """Norm of the transform over the complement divided by the norm of ``f``."""
    cfg = config or TransformConfig()
    factor = transform_factor(cfg)
    outside = complement(domain)
    parts = _rational_parts(domain, f) if method != "quadrature" else None

    if parts is not None:
        denom = _norm_from_parts(domain, parts, cfg.quad)
        images = [transform_pole_image(domain, p) for _, p in parts]
        if all(im is not None for im in images):
            out_parts = [
                (np.conj(c) * im[0], im[1]) for (c, _), im in zip(parts, images)
            ]
            numer = _norm_from_parts(outside, out_parts, cfg.quad)
            return factor * numer / denom

        def integrand(xi):
            acc = np.zeros(xi.shape, dtype=complex)
            for coeff, pole in parts:
                acc += np.conj(coeff) * np.conj(pair_closed(domain, pole, xi))
            return np.abs(acc) ** 2

        res = integrate_domain(outside, integrand, cfg.quad)
        return factor * np.sqrt(max(float(np.real(res.value)), 0.0)) / denom

    denom = norm_b2(domain, f, cfg.quad).value

    def integrand(xi):
        vals = np.array(
            [hilbert_transform(domain, f, complex(x), cfg, method="auto") for x in xi]
        )
        return np.abs(vals) ** 2

    res = integrate_domain(outside, integrand, cfg.quad)
    # the factor is already inside hilbert_transform here
    return np.sqrt(max(float(np.real(res.value)), 0.0)) / denom


def transform_gram(
    domain: Domain,
    poles,
    config: TransformConfig | None = None,
):
    """Gram-type matrix of transformed rational sections over the complement.

    Returns ``Phi`` with ``Phi[i, j]`` the complement-domain integral of
    ``T r_i * conj(T r_j)``; the quadratic form ``c^H Phi c`` is the squared
    complement norm of the transform of ``sum c_i r_i``.
    """
    cfg = config or TransformConfig()
    factor = transform_factor(cfg)
    poles = np.asarray(poles, dtype=complex)
    n = poles.size
    outside = complement(domain)

    images = [transform_pole_image(domain, p) for p in poles]
    if all(im is not None for im in images):
        consts = np.array([im[0] for im in images], dtype=complex)
        centers = np.array([im[1] for im in images], dtype=complex)
        phi = np.empty((n, n), dtype=complex)
        for i in range(n):
            # row i: (r_{im_i}, r_{im_j}) over the complement, j = 0..n-1
            phi[i, :] = consts[i] * np.conj(consts) * pair_closed(outside, centers[i], centers)
        phi = 0.5 * (phi + phi.conj().T)
        return factor**2 * phi

    if isinstance(domain, Sector):
        def values(xi):
            cols = [np.conj(pair_closed(domain, p, xi)) for p in poles]
            return np.stack(cols, axis=-1)
    else:
        rule = boundary_rule(domain)

        def values(xi):
            cols = [np.conj(pair_contour(rule, p, xi)) for p in poles]
            return np.stack(cols, axis=-1)

    def column_block(lo, hi):
        def integrand(xi):
            v = values(xi)
            prods = v[:, :, None] * np.conj(v[:, None, lo:hi])
            return prods.reshape(xi.shape[0], n * (hi - lo))

        return integrand

    # Integrate the matrix in column blocks: the adaptive cell history scales
    # with the integrand width, and at n^2 components a 40-point model eats
    # gigabytes before converging.
    block = max(1, 120 // n)
    phi = np.empty((n, n), dtype=complex)
    for lo in range(0, n, block):
        hi = min(n, lo + block)
        res = integrate_domain(outside, column_block(lo, hi), cfg.quad)
        phi[:, lo:hi] = np.asarray(res.value).reshape(n, hi - lo)
    phi = 0.5 * (phi + phi.conj().T)
    return factor**2 * phi


@dataclass(frozen=True)
class SurjectivityReport:
    """Spread of the transform's energy ratios over a trial pole family."""

    eigenvalues: np.ndarray
    spread: float
    normalization: str


def surjectivity_diagnostic(
    domain: Domain,
    poles,
    config: TransformConfig | None = None,
) -> SurjectivityReport:
    """Generalized eigenvalues of (transform Gram, section Gram).

    The eigenvalue range brackets ``|T h|^2 / |h|^2`` over the span of the
    trial sections; a spread far from 1 signals the transform losing (or
    wildly rescaling) directions, the finite-dimensional shadow of failing
    surjectivity onto the complement space.
    """
    cfg = config or TransformConfig()
    poles = np.asarray(poles, dtype=complex)
    phi = transform_gram(domain, poles, cfg)
    gram = gram_rational(domain, poles, cfg.quad)
    eigs = scipy.linalg.eigvalsh(phi, gram)
    eigs = np.sort(eigs.real)
    small = max(eigs[0], np.finfo(float).tiny)
    return SurjectivityReport(
        eigenvalues=eigs,
        spread=float(eigs[-1] / small),
        normalization=cfg.normalization,
    )


def holomorphy_residual(
    domain: Domain,
    f,
    xi,
    step: float = 1e-4,
    config: TransformConfig | None = None,
):
    """Central-difference Wirtinger derivatives of the transform at ``xi``.

    Returns ``(dbar_abs, dz_abs)``: the conjugate-derivative magnitude should
    vanish (to O(step^2)) for a holomorphic transform, while the ordinary
    derivative magnitude gives the scale against which to judge it.
    """
    xi = complex(xi)
    pts = np.array([xi + step, xi - step, xi + 1j * step, xi - 1j * step])
    vals = hilbert_transform(domain, f, pts, config)
    dx = (vals[0] - vals[1]) / (2.0 * step)
    dy = (vals[2] - vals[3]) / (2.0 * step)
    dbar = 0.5 * (dx + 1j * dy)
    dz = 0.5 * (dx - 1j * dy)
    return float(abs(dbar)), float(abs(dz))
