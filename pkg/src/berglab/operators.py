"""Finite reflection models: Gram matrices, operator square roots, and B.

A model is anchored at exterior points ``xi_1..xi_N``.  Reflecting them
through the boundary gives interior points ``w_j``; the model tracks the
kernel sections ``k_j = K(., w_j)`` and the rational sections
``r_j = (. - xi_j)^(-2)`` together with four quadratic forms on their span:

* ``gram_kernel``    -- (k_j, k_i) over the domain (exact, via the kernel),
* ``gram_pullback``  -- the same sections paired through the reflection
                        pulled back over the complement,
* ``gram_rational``  -- (r_j, r_i) over the domain,
* ``frame_rational`` -- transforms of the r-sections paired over the
                        complement.

From the two pencils ``(gram_kernel, gram_pullback)`` and
``(frame_rational, gram_rational)`` come the square roots R and S, the
coefficient map A, and the change-of-basis operator B that sends each kernel
section to its rational partner.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .domains import (
    Domain,
    HalfPlane,
    Membership,
    Sector,
    complement,
    membership,
)
from .exceptions import DegeneratePointsError, PointInsideDomainError
from .functions import LinearCombination, RationalSection
from .kernels import KernelSection, kernel
from .pairings import gram_rational as _pair_gram
from .pairings import pair_closed, pair_contour, boundary_rule
from .points import SEPARATION, domain_scale, validate_separation
from .quadrature import QuadConfig, integrate_domain, norm_b2
from .reflections import reflect, reflect_many
from .transform import TransformConfig, hilbert_transform, transform_factor, transform_gram

__all__ = [
    "ConditioningReport",
    "FiniteModel",
    "build_finite_model",
    "ApplyBResult",
    "apply_B",
    "OrthosimilarResult",
    "orthosimilar_reconstruct",
    "ParsevalResult",
    "parseval_check",
    "KernelIdentityResult",
    "kernel_integral_identity",
    "ReflectionPrincipleResult",
    "reflection_principle",
    "verify_model",
]

#: condition number beyond which a model is flagged (but still returned)
ILL_CONDITIONED = 1e12


@dataclass(frozen=True)
class ConditioningReport:
    cond_gram_kernel: float
    cond_gram_pullback: float
    cond_gram_rational: float
    cond_frame_rational: float
    min_eigenvalues: dict
    frame_spread: float
    ill_conditioned: bool


@dataclass(frozen=True)
class FiniteModel:
    domain: Domain
    config: TransformConfig
    poles: np.ndarray
    kernel_points: np.ndarray
    gram_kernel: np.ndarray
    gram_pullback: np.ndarray
    gram_rational: np.ndarray
    frame_rational: np.ndarray | None
    eval_matrix: np.ndarray
    transfer_matrix: np.ndarray
    sqrt_transfer: np.ndarray
    sqrt_transform: np.ndarray | None
    coeff_map: np.ndarray | None
    b_matrix: np.ndarray
    conditioning: ConditioningReport

    @property
    def size(self) -> int:
        return self.poles.size

    @property
    def frame_kernel(self) -> np.ndarray:
        """Frame matrix of the kernel sections over the complement.

        Coincides entry-by-entry with ``gram_pullback``: the reproducing
        property collapses the double pairing under the integral sign.
        """
        return self.gram_pullback


def _kernel_matrix(domain: Domain, z, w) -> np.ndarray:
    K = kernel(domain)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    out = np.empty((z.size, w.size), dtype=complex)
    for j in range(w.size):
        out[:, j] = K(z, complex(w[j]))
    return out


def _rational_matrix(z, poles) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    poles = np.asarray(poles, dtype=complex)
    return 1.0 / (z[:, None] - poles[None, :]) ** 2


def _pullback_scale(domain: Domain) -> float | None:
    """Constant pairing ratio when the mirror rescales area uniformly.

    For the half-plane the mirror is an isometry; for a sector the angle maps
    scale area by the fixed opening/gap ratio.  Other domains return ``None``
    and take the quadrature route.
    """
    if isinstance(domain, HalfPlane):
        return 1.0
    if isinstance(domain, Sector):
        return domain.opening / (2.0 * math.pi - domain.opening)
    return None


def _pullback_gram(domain: Domain, kernel_points, gram_kernel, quad: QuadConfig):
    """Gram of kernel sections in the pairing pulled back over the complement."""
    k = _pullback_scale(domain)
    if k is not None:
        return gram_kernel / k
    K = kernel(domain)
    pts = np.asarray(kernel_points, dtype=complex)
    n = pts.size
    outside = complement(domain)

    def integrand(xi):
        y = reflect_many(domain, xi)
        v = np.empty((xi.size, n), dtype=complex)
        for j in range(n):
            v[:, j] = K(y, complex(pts[j]))
        prods = v[:, :, None] * np.conj(v[:, None, :])
        return prods.reshape(xi.size, n * n)

    res = integrate_domain(outside, integrand, quad)
    gram = np.asarray(res.value).reshape(n, n)
    return 0.5 * (gram + gram.conj().T)


def _pencil_eig(top: np.ndarray, bottom: np.ndarray):
    """Eigen-pairs of a Hermitian-definite pencil with diagonal equilibration.

    Both matrices are congruence-scaled to unit diagonal on ``bottom`` before
    factoring; the eigenvalues are unchanged and the vectors are mapped back,
    but the Cholesky step inside ``eigh`` sees the correlation matrix instead
    of a Gram whose diagonal may span many orders of magnitude.
    """
    d = np.sqrt(np.abs(np.real(np.diag(bottom))))
    d = np.where(d > 0.0, d, 1.0)
    top_s = top / np.outer(d, d)
    bot_s = bottom / np.outer(d, d)
    try:
        vals, vecs = scipy.linalg.eigh(top_s, bot_s)
    except scipy.linalg.LinAlgError:
        # The Cholesky step fails once ``bottom`` loses numerical rank even
        # after scaling; whiten with its floored eigendecomposition instead.
        bv, bu = scipy.linalg.eigh(bot_s)
        floor = np.finfo(float).eps * max(float(bv[-1]), 1.0)
        white = bu / np.sqrt(np.maximum(bv, floor))
        core = white.conj().T @ top_s @ white
        vals, inner = scipy.linalg.eigh(0.5 * (core + core.conj().T))
        vecs = white @ inner
    return vals, vecs / d[:, None]


def _sqrt_of_pencil(top: np.ndarray, bottom: np.ndarray):
    """Square root of ``bottom^-1 top`` for a Hermitian-definite pencil.

    Returns ``(root, eigenvalues)`` with ``root @ root = solve(bottom, top)``
    and ``root`` self-adjoint in the geometry induced by ``bottom``.
    """
    vals, vecs = _pencil_eig(top, bottom)
    floor = np.finfo(float).eps * max(abs(vals[0]), abs(vals[-1]), 1.0)
    safe = np.maximum(vals, floor)
    root = vecs @ np.diag(np.sqrt(safe)) @ vecs.conj().T @ bottom
    return root, vals


def _scaled_solve(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve ``gram @ x = rhs`` after symmetric diagonal equilibration.

    Gram matrices of sections at widely different boundary distances carry a
    huge diagonal spread; scaling to unit diagonal before the LU solve keeps
    the pivoting honest and costs one rescale on each side.
    """
    d = np.sqrt(np.abs(np.real(np.diag(gram))))
    d = np.where(d > 0.0, d, 1.0)
    scaled = gram / np.outer(d, d)
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.ndim == 1:
        return np.linalg.solve(scaled, rhs / d) / d
    return np.linalg.solve(scaled, rhs / d[:, None]) / d[:, None]


def _project_coeffs(gram: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Projection coefficients ``gram^+ rhs`` via a truncated eigen-solve.

    Tight clusters of sections make the Gram numerically rank-deficient long
    before the projection itself degrades; an LU solve then returns noise with
    huge coefficients.  Dropping eigenvalues below ``n*eps*lambda_max`` keeps
    the computed combination inside the resolvable part of the span, which is
    exactly the least-squares answer for the projection problem.
    """
    d = np.sqrt(np.abs(np.real(np.diag(gram))))
    d = np.where(d > 0.0, d, 1.0)
    scaled = gram / np.outer(d, d)
    vals, vecs = scipy.linalg.eigh(0.5 * (scaled + scaled.conj().T))
    cut = vals.size * np.finfo(float).eps * max(float(vals[-1]), 0.0)
    keep = vals > cut
    y = vecs[:, keep].conj().T @ (np.asarray(rhs, dtype=complex) / d)
    return (vecs[:, keep] @ (y / vals[keep])) / d


def build_finite_model(
    domain: Domain,
    points,
    config: TransformConfig | None = None,
    light: bool = False,
) -> FiniteModel:
    """Assemble the Gram matrices and operator factors for exterior ``points``.

    ``light=True`` skips the transform-side frame matrix (the only piece that
    may need complement quadrature) along with the operators derived from it;
    projections and the B machinery stay available.
    """
    cfg = config or TransformConfig()
    poles = np.asarray(points, dtype=complex).ravel()
    if poles.size < 1:
        raise DegeneratePointsError("a finite model needs at least one point")
    scale = domain_scale(domain)
    validate_separation(poles, scale, SEPARATION)
    for p in poles:
        if membership(domain, complex(p)) is not Membership.EXTERIOR:
            raise PointInsideDomainError(
                f"model point {p} is not strictly outside the domain"
            )

    w = reflect_many(domain, poles)
    for wi in w:
        if membership(domain, complex(wi)) is not Membership.INTERIOR:
            raise PointInsideDomainError(
                f"reflected point {wi} did not land inside the domain"
            )

    gram_kernel = _kernel_matrix(domain, w, w)
    gram_kernel = 0.5 * (gram_kernel + gram_kernel.conj().T)
    eval_matrix = _rational_matrix(w, poles)
    gram_rat = _pair_gram(domain, poles, cfg.quad)
    gram_pull = _pullback_gram(domain, w, gram_kernel, cfg.quad)

    pull_scale = _pullback_scale(domain)
    if pull_scale is not None:
        # The two pairings differ by an exact scalar here, so the transfer
        # factor is a scalar matrix; running the near-singular Gram through a
        # generalized eigensolver against itself would only amplify noise.
        eye = np.eye(poles.size, dtype=complex)
        transfer = pull_scale * eye
        sqrt_transfer = math.sqrt(pull_scale) * eye
        transfer_eigs = np.full(poles.size, pull_scale)
    else:
        transfer = _scaled_solve(gram_pull, gram_kernel)
        sqrt_transfer, transfer_eigs = _sqrt_of_pencil(gram_kernel, gram_pull)
    b_matrix = _scaled_solve(gram_kernel, eval_matrix)

    if light:
        frame_rat = None
        sqrt_transform = None
        coeff_map = None
        frame_eigs = np.array([1.0])
    else:
        frame_rat = transform_gram(domain, poles, cfg)
        frame_inv_root, frame_eigs = _sqrt_of_pencil(frame_rat, gram_rat)
        sqrt_transform = np.linalg.inv(frame_inv_root)
        coeff_map = sqrt_transform @ np.linalg.inv(sqrt_transfer)

    def _mineig(m):
        return float(scipy.linalg.eigvalsh(m)[0])

    min_eigs = {
        "gram_kernel": _mineig(gram_kernel),
        "gram_pullback": _mineig(gram_pull),
        "gram_rational": _mineig(gram_rat),
        "transfer_pencil": float(np.min(transfer_eigs)),
    }
    conds = {
        "gram_kernel": float(np.linalg.cond(gram_kernel)),
        "gram_pullback": float(np.linalg.cond(gram_pull)),
        "gram_rational": float(np.linalg.cond(gram_rat)),
    }
    if frame_rat is not None:
        min_eigs["frame_rational"] = _mineig(frame_rat)
        min_eigs["frame_pencil"] = float(np.min(frame_eigs))
        conds["frame_rational"] = float(np.linalg.cond(frame_rat))
    min_frame_eig = float(np.min(frame_eigs))
    spread = float(np.max(frame_eigs)) / min_frame_eig if min_frame_eig > 0.0 else float("inf")
    report = ConditioningReport(
        cond_gram_kernel=conds["gram_kernel"],
        cond_gram_pullback=conds["gram_pullback"],
        cond_gram_rational=conds["gram_rational"],
        cond_frame_rational=conds.get("frame_rational", float("nan")),
        min_eigenvalues=min_eigs,
        frame_spread=spread,
        ill_conditioned=any(c > ILL_CONDITIONED for c in conds.values()),
    )
    return FiniteModel(
        domain=domain,
        config=cfg,
        poles=poles,
        kernel_points=np.asarray(w, dtype=complex),
        gram_kernel=gram_kernel,
        gram_pullback=gram_pull,
        gram_rational=gram_rat,
        frame_rational=frame_rat,
        eval_matrix=eval_matrix,
        transfer_matrix=transfer,
        sqrt_transfer=sqrt_transfer,
        sqrt_transform=sqrt_transform,
        coeff_map=coeff_map,
        b_matrix=b_matrix,
        conditioning=report,
    )


@dataclass(frozen=True)
class ApplyBResult:
    coefficients: np.ndarray
    residual: float
    holdout: complex


def apply_B(model: FiniteModel, holdout, config: QuadConfig | None = None) -> ApplyBResult:
    """Apply the section-swap operator to the kernel section of a holdout point.

    The holdout's reflected kernel section is projected onto the model span,
    the projection coefficients are transported to the rational sections, and
    the result is compared against the holdout's own rational section.  The
    returned residual is relative: ``|B P k_h - r_h| / |r_h|`` in the Bergman
    norm, evaluated entirely through closed-form pairings.
    """
    xi_h = complex(holdout)
    if membership(model.domain, xi_h) is not Membership.EXTERIOR:
        raise PointInsideDomainError(f"holdout {xi_h} is not strictly outside the domain")
    w_h = reflect(model.domain, xi_h)
    if not isinstance(w_h, (complex, float, np.complexfloating)):
        raise PointInsideDomainError(
            f"holdout {xi_h} reflects to infinity; move it off the mirror center"
        )
    kappa = _kernel_matrix(model.domain, model.kernel_points, [w_h])[:, 0]
    coeffs = _project_coeffs(model.gram_kernel, kappa)

    quad = config or model.config.quad
    scale = domain_scale(model.domain)
    dists = np.abs(model.poles - xi_h)
    m = int(np.argmin(dists))
    if dists[m] < 1e-10 * scale:
        # Holdout coincides with a model pole: difference the coefficients
        # instead of bordering the Gram, dodging catastrophic cancellation.
        d = coeffs.copy()
        d[m] -= 1.0
        num_sq = float(np.real(d.conj() @ model.gram_rational @ d))
        den_sq = float(np.real(model.gram_rational[m, m]))
    else:
        col = pair_closed(model.domain, xi_h, model.poles)
        if col is None:
            rule = boundary_rule(model.domain)
            col = pair_contour(rule, xi_h, model.poles)
            rhh = complex(pair_contour(rule, xi_h, xi_h))
        else:
            rhh = complex(pair_closed(model.domain, xi_h, xi_h))
        n = model.size
        bord = np.empty((n + 1, n + 1), dtype=complex)
        bord[:n, :n] = model.gram_rational
        bord[:n, n] = col
        bord[n, :n] = np.conj(col)
        bord[n, n] = rhh
        e = np.concatenate([coeffs, [-1.0]])
        num_sq = float(np.real(e.conj() @ bord @ e))
        den_sq = float(np.real(rhh))
    residual = math.sqrt(max(num_sq, 0.0) / den_sq)
    return ApplyBResult(coefficients=coeffs, residual=residual, holdout=xi_h)


def _pullback_moments(model: FiniteModel, f, quad: QuadConfig):
    """One adaptive pass: (f, k_m) in the pullback pairing plus the pullback norm."""
    K = kernel(model.domain)
    pts = model.kernel_points
    n = pts.size
    outside = complement(model.domain)

    def integrand(xi):
        y = reflect_many(model.domain, xi)
        fy = np.asarray(f(y), dtype=complex)
        cols = np.empty((xi.size, n + 1), dtype=complex)
        for j in range(n):
            cols[:, j] = fy * np.conj(K(y, complex(pts[j])))
        cols[:, n] = np.abs(fy) ** 2
        return cols

    res = integrate_domain(outside, integrand, quad)
    vals = np.asarray(res.value)
    return vals[:n], float(np.real(vals[n]))


def _b2_norm_sq(model: FiniteModel, f, quad: QuadConfig) -> float:
    if isinstance(f, KernelSection):
        K = kernel(model.domain)
        return float(np.real(K(np.array([f.point]), f.point)[0]))
    if isinstance(f, (RationalSection, LinearCombination)):
        from .transform import _rational_parts

        parts = _rational_parts(model.domain, f)
        if parts is not None:
            ps = np.array([p for _, p in parts], dtype=complex)
            cs = np.array([c for c, _ in parts], dtype=complex)
            g = _pair_gram(model.domain, ps, quad)
            return float(np.real(cs.conj() @ g @ cs))
    return float(norm_b2(model.domain, f, quad).value ** 2)


@dataclass(frozen=True)
class OrthosimilarResult:
    values: np.ndarray
    reference: np.ndarray
    coefficients: np.ndarray
    sup_abs_error: float
    sup_rel_error: float


def orthosimilar_reconstruct(
    model: FiniteModel,
    f,
    eval_points,
    config: QuadConfig | None = None,
) -> OrthosimilarResult:
    """Reconstruct ``f`` from pullback moments against the R-transported frame.

    Analysis happens in the pullback pairing against the sections
    ``R k_j`` (whose pullback Gram mirrors the plain kernel Gram), synthesis
    maps the frame coefficients back through R onto the kernel sections.  For
    ``f`` inside the span this reproduces the interpolation projection; the
    reconstruction error at ``eval_points`` measures coverage.
    """
    quad = config or model.config.quad
    zs = np.asarray(eval_points, dtype=complex).ravel()
    for z in zs:
        if membership(model.domain, complex(z)) is not Membership.INTERIOR:
            raise PointInsideDomainError(f"evaluation point {z} is not inside the domain")

    tau, _ = _pullback_moments(model, f, quad)
    r_mat = model.sqrt_transfer
    eta = r_mat.conj().T @ tau
    gram_phi = r_mat.conj().T @ model.gram_pullback @ r_mat
    a = _scaled_solve(gram_phi, eta)
    coeffs = r_mat @ a

    K = kernel(model.domain)
    vals = np.zeros(zs.shape, dtype=complex)
    for j in range(model.size):
        vals += coeffs[j] * K(zs, complex(model.kernel_points[j]))
    ref = np.asarray(f(zs), dtype=complex)
    diff = np.abs(vals - ref)
    denom = max(float(np.max(np.abs(ref))), np.finfo(float).tiny)
    return OrthosimilarResult(
        values=vals,
        reference=ref,
        coefficients=coeffs,
        sup_abs_error=float(np.max(diff)),
        sup_rel_error=float(np.max(diff) / denom),
    )


@dataclass(frozen=True)
class ParsevalResult:
    pullback_norm_sq: float
    b2_norm_sq: float
    rel_error: float


def parseval_check(
    model: FiniteModel,
    f,
    f_norm_sq: float | None = None,
    config: QuadConfig | None = None,
) -> ParsevalResult:
    """Compare the pullback energy of ``R f`` with the plain energy of ``f``.

    R is extended off the span as the identity plus its in-span correction;
    the pullback side is integrated numerically over the complement while the
    plain side uses closed forms, so the two routes are independent.
    """
    quad = config or model.config.quad
    beta = np.asarray(f(model.kernel_points), dtype=complex)
    c = _scaled_solve(model.gram_kernel, beta)
    d = (model.sqrt_transfer - np.eye(model.size)) @ c

    tau, f_pull_sq = _pullback_moments(model, f, quad)
    cross = 2.0 * float(np.real(d @ np.conj(tau)))
    quad_term = float(np.real(d.conj() @ model.gram_pullback @ d))
    lhs = f_pull_sq + cross + quad_term

    rhs = f_norm_sq if f_norm_sq is not None else _b2_norm_sq(model, f, quad)
    rel = abs(lhs - rhs) / abs(rhs)
    return ParsevalResult(pullback_norm_sq=lhs, b2_norm_sq=rhs, rel_error=rel)


@dataclass(frozen=True)
class KernelIdentityResult:
    approx: complex
    exact: complex
    abs_error: float
    rel_error: float


def kernel_integral_identity(model: FiniteModel, z, w) -> KernelIdentityResult:
    """Reproduce K(z, w) from the complement integral of whitened sections.

    The continuum identity writes the kernel as the complement integral of
    ``(S r_xi)(z) conj((S r_xi)(w))`` with S the inverse square root of the
    rational frame operator.  At rank N the integral contracts to the
    sandwich ``S G_R^-1 Phi G_R^-1 S*`` between evaluation vectors, which the
    frame factorization collapses onto the span-projection kernel; its
    deviation from K measures how much of the kernel section escapes the
    span, plus any inconsistency between Phi and the computed root.
    """
    z = complex(z)
    w = complex(w)
    for point in (z, w):
        if membership(model.domain, point) is not Membership.INTERIOR:
            raise PointInsideDomainError(f"kernel argument {point} is not inside the domain")
    if model.frame_rational is None or model.sqrt_transform is None:
        raise ValueError("model was built light; rebuild with light=False for this check")
    # Evaluate the sandwich in factored order: with the frame pencil (Phi, G)
    # diagonalized as Phi V = G V diag(lam), V* G V = I, the whitening matrix
    # is W = V lam^-1/2 V* and the sandwich is W Phi W.  Large configurations
    # push the Gram past numerical rank, where the G-normalized eigenvectors
    # in the null directions carry enormous amplitudes and the sandwich turns
    # into an explicit inverse of a singular matrix; restricting the whitening
    # to the eigenvalue-resolvable part of G evaluates the same span
    # projection on the subspace the data can actually represent.
    d = np.sqrt(np.abs(np.real(np.diag(model.gram_rational))))
    d = np.where(d > 0.0, d, 1.0)
    gram_s = model.gram_rational / np.outer(d, d)
    phi_s = model.frame_rational / np.outer(d, d)
    gv, gu = scipy.linalg.eigh(0.5 * (gram_s + gram_s.conj().T))
    cut = gv.size * np.finfo(float).eps * max(float(gv[-1]), 0.0)
    keep = gv > cut
    low = gu[:, keep] / np.sqrt(gv[keep])
    core = low.conj().T @ phi_s @ low
    lam, inner = scipy.linalg.eigh(0.5 * (core + core.conj().T))
    floor = np.finfo(float).eps * max(abs(float(lam[0])), abs(float(lam[-1])), 1.0)
    basis = low @ inner
    whiten = basis @ np.diag(1.0 / np.sqrt(np.maximum(lam, floor))) @ basis.conj().T
    middle = (whiten @ phi_s @ whiten) / np.outer(d, d)
    rz = 1.0 / (z - model.poles) ** 2
    rw = 1.0 / (w - model.poles) ** 2
    approx = complex(rz @ middle @ np.conj(rw))
    exact = complex(kernel(model.domain)(np.array([z]), w)[0])
    abs_err = abs(approx - exact)
    return KernelIdentityResult(
        approx=approx,
        exact=exact,
        abs_error=abs_err,
        rel_error=abs_err / max(abs(exact), np.finfo(float).tiny),
    )


@dataclass(frozen=True)
class ReflectionPrincipleResult:
    lhs: np.ndarray
    rhs: np.ndarray
    max_abs_error: float
    max_rel_error: float


def reflection_principle(
    model: FiniteModel,
    coefficients,
    xi,
    config: TransformConfig | None = None,
) -> ReflectionPrincipleResult:
    """Check conj(f(reflected xi)) against the transform of B^-1 f.

    ``f`` is the combination of the model's kernel sections with the given
    coefficients.  The identity pins the plain-area normalization, so the
    transform is always taken with factor 1 here regardless of the model's
    configuration; only the quadrature budget of ``config`` is honored.
    """
    cfg = TransformConfig(normalization="lebesgue", quad=(config or model.config).quad)
    c = np.asarray(coefficients, dtype=complex).ravel()
    if c.size != model.size:
        raise ValueError("coefficient vector length must match the model size")
    xi_arr = np.asarray(xi, dtype=complex).ravel()

    y = reflect_many(model.domain, xi_arr)
    K = kernel(model.domain)
    fvals = np.zeros(xi_arr.shape, dtype=complex)
    for j in range(model.size):
        fvals += c[j] * K(y, complex(model.kernel_points[j]))
    lhs = np.conj(fvals)

    gamma = _scaled_solve(model.gram_rational, model.eval_matrix.conj().T @ c)
    rhs = np.zeros(xi_arr.shape, dtype=complex)
    for j in range(model.size):
        section = KernelSection(model.domain, complex(model.kernel_points[j]))
        rhs += np.conj(gamma[j]) * hilbert_transform(model.domain, section, xi_arr, cfg)

    diff = np.abs(lhs - rhs)
    denom = max(float(np.max(np.abs(lhs))), np.finfo(float).tiny)
    return ReflectionPrincipleResult(
        lhs=lhs,
        rhs=rhs,
        max_abs_error=float(np.max(diff)),
        max_rel_error=float(np.max(diff) / denom),
    )


def verify_model(model: FiniteModel) -> dict:
    """Residuals of the exact operator identities the factorization promises."""
    n = model.size
    eye = np.eye(n)

    def relerr(a, b):
        denom = max(np.linalg.norm(b), np.finfo(float).tiny)
        return float(np.linalg.norm(a - b) / denom)

    r_mat = model.sqrt_transfer
    factor = transform_factor(model.config)
    checks = {
        "sqrt_transfer_squares": relerr(r_mat @ r_mat, model.transfer_matrix),
        "gram_kernel_hermitian": float(
            np.linalg.norm(model.gram_kernel - model.gram_kernel.conj().T)
        ),
        "transfer_selfadjoint": relerr(
            model.gram_pullback @ model.transfer_matrix,
            (model.gram_pullback @ model.transfer_matrix).conj().T,
        ),
        "min_eigenvalue": min(model.conditioning.min_eigenvalues.values()),
        "frame_spread": model.conditioning.frame_spread,
        "normalization_factor": factor,
    }
    if model.sqrt_transform is not None and model.frame_rational is not None:
        s_mat = model.sqrt_transform
        frame_coeff = _scaled_solve(model.gram_rational, model.frame_rational)
        checks["sqrt_transform_inverts_frame"] = relerr(s_mat @ frame_coeff @ s_mat, eye)
        checks["mixed_identity"] = relerr(
            np.linalg.solve(s_mat, model.coeff_map @ r_mat), eye
        )
    return checks
